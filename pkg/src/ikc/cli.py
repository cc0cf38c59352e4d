"""Command-line front end for the kernel.

Exit codes: 0 for a positive verdict, 1 for a negative one (subtype false,
non-member, refuted or unknown search, failed check), 2 for input errors.
Arguments ending in .trm/.typ/.env/.jdg/.drv are read from files; anything
else is parsed as a literal s-expression.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .derivations import check_derivation, parse_derivation
from .envs import env_empty, parse_env, print_judgment
from .errors import InputSyntaxError, KernelError
from .gen import enumerate_closed
from .props import SUITES, run_suites
from .reduction import (
    FuelExhausted,
    NormalForm,
    Relation,
    Verdict,
    check_local_confluence,
    equiv,
    normalize,
    step_positions,
)
from .search import Found, Refuted, Unknown, bounded_typecheck
from .semantics import (
    EXAMPLE_TYPES,
    completeness_sample,
    oracle_membership,
    saturation_check,
    soundness_check,
    verdict_line,
)
from .syntax import parse_term, print_term
from .transform import subject_expand_beta, subject_reduce
from .types import parse_type, print_type, subtype

_FILE_EXTS = (".trm", ".typ", ".env", ".jdg", ".drv")


def _load(arg: str) -> str:
    if arg.endswith(_FILE_EXTS):
        p = Path(arg)
        if not p.is_file():
            raise InputSyntaxError(f"no such file: {arg}")
        return p.read_text()
    return arg


def _default_fuel() -> int:
    try:
        return int(os.environ.get("IKC_FUEL", "10000"))
    except ValueError:
        return 10000


# ---------------------------------------------------------------- verbs


def _cmd_check_term(ns) -> int:
    from .syntax import free_vars

    try:
        m = parse_term(_load(ns.term))
    except InputSyntaxError:
        raise
    except KernelError as e:
        print(f"ill-formed\t{e}")
        return 1
    fv = ", ".join(
        f"{k.name}{list(k.idx)}"
        for k in sorted(free_vars(m), key=lambda k: (k.name, k.idx))
    )
    print(f"{print_term(m)}\tok\tdegree {list(m.degree)}; free [{fv}]")
    return 0


def _cmd_reduce(ns) -> int:
    m = parse_term(_load(ns.term))
    r = Relation.of(ns.rel)
    print(print_term(m))
    for _ in range(ns.fuel):
        nxt = step_positions(m, r)
        if not nxt:
            break
        kind, path, m = nxt[0]
        print(f"  -{kind}-> {print_term(m)}")
    return 0


def _cmd_nf(ns) -> int:
    m = parse_term(_load(ns.term))
    out = normalize(m, Relation.of(ns.rel), ns.fuel)
    match out:
        case NormalForm(term, steps):
            print(f"{print_term(term)}\tnormal\t{steps} steps")
            return 0
        case FuelExhausted(term, steps):
            print(f"{print_term(term)}\tfuel exhausted\t{steps} steps")
            return 1
    raise AssertionError(out)


def _cmd_equiv(ns) -> int:
    m = parse_term(_load(ns.term))
    n = parse_term(_load(ns.other))
    v = equiv(m, n, Relation.of(ns.rel), ns.fuel)
    print(v.value)
    return 0 if v is Verdict.EQUIVALENT else 1


def _cmd_confluence(ns) -> int:
    m = parse_term(_load(ns.term))
    report = check_local_confluence(m, Relation.of(ns.rel), ns.size)
    if report.unjoined:
        t, a, b = report.unjoined[0]
        print(
            f"{print_term(t)}\tunjoined\t{print_term(a)} vs {print_term(b)}"
        )
        return 1
    print(f"{print_term(m)}\tconfluent\t{report.peaks_checked} peaks joined")
    return 0


def _cmd_subtype(ns) -> int:
    u = parse_type(_load(ns.left))
    v = parse_type(_load(ns.right))
    ok = subtype(u, v)
    print(f"{print_type(u)} <= {print_type(v)}\t{'true' if ok else 'false'}")
    return 0 if ok else 1


def _cmd_check_deriv(ns) -> int:
    d = parse_derivation(_load(ns.deriv))
    try:
        j = check_derivation(d)
    except KernelError as e:
        print(f"invalid\t{e}")
        return 1
    print(print_judgment(j))
    return 0


def _cmd_sr(ns) -> int:
    d = parse_derivation(_load(ns.deriv))
    n = parse_term(_load(ns.term))
    try:
        d2 = subject_reduce(d, n, Relation.of(ns.rel), ns.fuel)
    except KernelError as e:
        print(f"failed\t{e}")
        return 1
    print(print_judgment(check_derivation(d2)))
    if ns.out:
        from .derivations import print_derivation

        Path(ns.out).write_text(print_derivation(d2) + "\n")
    return 0


def _cmd_expand(ns) -> int:
    d = parse_derivation(_load(ns.deriv))
    m = parse_term(_load(ns.term))
    try:
        d2 = subject_expand_beta(d, m, ns.fuel)
    except KernelError as e:
        print(f"failed\t{e}")
        return 1
    print(print_judgment(check_derivation(d2)))
    if ns.out:
        from .derivations import print_derivation

        Path(ns.out).write_text(print_derivation(d2) + "\n")
    return 0


def _cmd_typecheck(ns) -> int:
    m = parse_term(_load(ns.term))
    g = parse_env(_load(ns.env)) if ns.env else env_empty()
    u = parse_type(_load(ns.type))
    out = bounded_typecheck(m, g, u, ns.fuel)
    match out:
        case Found(d):
            print(print_judgment(check_derivation(d)))
            if ns.out:
                from .derivations import print_derivation

                Path(ns.out).write_text(print_derivation(d) + "\n")
            return 0
        case Refuted(reason):
            print(f"RefutedByGeneration\t{reason}")
            return 1
        case Unknown(reason):
            print(f"Unknown\t{reason}")
            return 1
    raise AssertionError(out)


def _tag(ns) -> str:
    if ns.tag not in EXAMPLE_TYPES:
        raise InputSyntaxError(
            f"unknown interpretation tag: {ns.tag}; "
            f"expected one of {', '.join(sorted(EXAMPLE_TYPES))}"
        )
    return ns.tag


def _cmd_oracle(ns) -> int:
    tag = _tag(ns)
    m = parse_term(_load(ns.term))
    v = oracle_membership(tag, m, ns.fuel)
    print(verdict_line(m, v))
    return 0 if v.member else 1


def _cmd_soundness(ns) -> int:
    tag = _tag(ns)
    d = parse_derivation(_load(ns.deriv))
    ok = soundness_check(d, tag, ns.fuel)
    print(f"soundness\t{'pass' if ok else 'FAIL'}\t{tag}")
    return 0 if ok else 1


def _cmd_completeness(ns) -> int:
    tag = _tag(ns)
    r = completeness_sample(tag, ns.size, ns.fuel)
    for m in r.refuted_terms:
        print(f"{print_term(m)}\trefuted\tcompleteness violation")
    for m in r.unknown_terms:
        print(f"{print_term(m)}\tunknown\tsearch gave up")
    print(
        f"{tag}\t{'pass' if r.refuted == 0 else 'FAIL'}\t"
        f"members {r.members}, found {r.found}, unknown {r.unknown}, "
        f"refuted {r.refuted}"
    )
    return 0 if r.refuted == 0 else 1


def _cmd_saturation(ns) -> int:
    tag = _tag(ns)
    from .semantics import _DEGREES

    degree = _DEGREES[tag]
    members = [
        m
        for m in enumerate_closed(ns.size, degree=degree)
        if oracle_membership(tag, m, ns.fuel).member
    ]
    ambient = enumerate_closed(ns.size + 2, degree=degree)
    report = saturation_check(members, ambient, Relation.of(ns.rel), 3)
    for m, hit in report.violations[:10]:
        print(f"{print_term(m)}\tescapes\treaches {print_term(hit)}")
    ok = not report.violations
    print(
        f"{tag}\t{'pass' if ok else 'FAIL'}\t"
        f"{len(members)} members, {report.checked} ambient terms"
    )
    return 0 if ok else 1


def _cmd_props(ns) -> int:
    try:
        results = run_suites(ns.suite, ns.size, ns.seed)
    except KeyError as e:
        raise InputSyntaxError(
            f"unknown suite {e.args[0]}; expected one of {', '.join(sorted(SUITES))}"
        ) from None
    ok = True
    for r in results:
        print(f"{r.name}\t{'pass' if r.ok else 'FAIL'}\t{r.detail}")
        ok = ok and r.ok
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    fuel = _default_fuel()
    top = argparse.ArgumentParser(
        prog="ikc",
        description="kernel for a degree-indexed lambda-calculus with "
        "intersection types and expansion heads",
    )
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check-term")
    p.add_argument("term")
    p.set_defaults(handler=_cmd_check_term)

    p = sub.add_parser("reduce")
    p.add_argument("term")
    p.add_argument("--rel", default="beta", choices=[r.value for r in Relation])
    p.add_argument("--fuel", type=int, default=min(fuel, 100))
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("nf")
    p.add_argument("term")
    p.add_argument("--rel", default="beta", choices=[r.value for r in Relation])
    p.add_argument("--fuel", type=int, default=fuel)
    p.set_defaults(handler=_cmd_nf)

    p = sub.add_parser("equiv")
    p.add_argument("term")
    p.add_argument("other")
    p.add_argument("--rel", default="beta", choices=[r.value for r in Relation])
    p.add_argument("--fuel", type=int, default=fuel)
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("confluence")
    p.add_argument("term")
    p.add_argument("--rel", default="beta", choices=[r.value for r in Relation])
    p.add_argument("--size", type=int, default=3)
    p.set_defaults(handler=_cmd_confluence)

    p = sub.add_parser("subtype")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_subtype)

    p = sub.add_parser("check-deriv")
    p.add_argument("deriv")
    p.set_defaults(handler=_cmd_check_deriv)

    p = sub.add_parser("sr")
    p.add_argument("deriv")
    p.add_argument("term")
    p.add_argument("--rel", default="betaeta", choices=[r.value for r in Relation])
    p.add_argument("--fuel", type=int, default=fuel)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_sr)

    p = sub.add_parser("expand")
    p.add_argument("deriv")
    p.add_argument("term")
    p.add_argument("--fuel", type=int, default=fuel)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_expand)

    p = sub.add_parser("typecheck")
    p.add_argument("term")
    p.add_argument("--env", default="")
    p.add_argument("--type", required=True)
    p.add_argument("--fuel", type=int, default=max(fuel, 100000))
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_typecheck)

    p = sub.add_parser("oracle")
    p.add_argument("tag")
    p.add_argument("term")
    p.add_argument("--fuel", type=int, default=2000)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("soundness")
    p.add_argument("deriv")
    p.add_argument("tag")
    p.add_argument("--fuel", type=int, default=2000)
    p.set_defaults(handler=_cmd_soundness)

    p = sub.add_parser("completeness")
    p.add_argument("tag")
    p.add_argument("--size", type=int, default=7)
    p.add_argument("--fuel", type=int, default=max(fuel, 100000))
    p.set_defaults(handler=_cmd_completeness)

    p = sub.add_parser("saturation")
    p.add_argument("tag")
    p.add_argument("--size", type=int, default=7)
    p.add_argument("--rel", default="beta", choices=[r.value for r in Relation])
    p.add_argument("--fuel", type=int, default=2000)
    p.set_defaults(handler=_cmd_saturation)

    p = sub.add_parser("props")
    p.add_argument("suite", nargs="*")
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_props)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.handler(ns)
    except InputSyntaxError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except (KernelError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
