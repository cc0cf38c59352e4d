"""Regenerate the derivation corpus under corpus/.

Every certificate is built here (by hand from the rule constructors, or
discovered by the bounded search), checked, and written as a .drv file.
Run from the repository root:

    python3 tools/make_corpus.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ikc.derivations import (
    ArrE,
    ArrI,
    ArrIW,
    Ax,
    ExpRule,
    InterI,
    MacroAx,
    MacroInterI,
    OmegaRule,
    SubRule,
    check_derivation,
    print_derivation,
    var_intro,
)
from ikc.envs import Judgment, env_empty, parse_env
from ikc.search import Found, bounded_typecheck
from ikc.syntax import parse_term
from ikc.types import CAtom, parse_type

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"

EXAMPLE3_TERM = (
    "(lam x [3 2] (lam y [3] (app y[3] (app x[3 2]"
    " (lam u [3 2 1] (lam v [3 2 1 0]"
    " (app u[3 2 1] (app v[3 2 1 0] v[3 2 1 0]))))))))"
)
EXAMPLE3_TYPE = (
    "(e 3 (-> (e 2 (-> (e 1 (-> (-> (e 0 b) c)"
    " (-> (e 0 (^ a (-> a b))) c))) d))"
    " (-> (^ (-> (e 2 d) a) b) a)))"
)
ETA_COUNTER_TERM = "(lam y [] (lam x [] (app y[] x[])))"


def pt(s):
    return parse_type(s)


def vi(name, s):
    return var_intro(name, parse_type(s))


def env(s):
    return parse_env(s)


def discover(term_text, typ_text, fuel=100000):
    m = parse_term(term_text)
    u = parse_type(typ_text)
    out = bounded_typecheck(m, env_empty(), u, fuel)
    if not isinstance(out, Found):
        raise SystemExit(f"search failed for {term_text}: {out}")
    return out.derivation


def build() -> list[tuple[str, object, str, str, str]]:
    """(name, derivation, subject, env, type); the last three re-checked."""
    aa = "(-> a a)"
    w_arr = "(-> (^ a (-> a b)) b)"
    nat = "(-> (-> a a) (-> a a))"
    natp_f = "(-> (e 1 a) a)"

    d_fun = SubRule(vi("y", "(^ a (-> a b))"), env("((y [] (^ a (-> a b))))"), pt("(-> a b)"))
    d_arg = SubRule(vi("y", "(^ a (-> a b))"), env("((y [] (^ a (-> a b))))"), pt("a"))

    entries = [
        (
            "id0",
            ArrI("y", (), pt("a"), vi("y", "a")),
            "(lam y [] y[])", "()", aa,
        ),
        (
            "id0-inter",
            InterI(
                ArrI("y", (), pt("a"), vi("y", "a")),
                ArrI("y", (), pt("b"), vi("y", "b")),
            ),
            "(lam y [] y[])", "()", "(^ (-> a a) (-> b b))",
        ),
        (
            "id1",
            ExpRule(1, ArrI("y", (), pt("a"), vi("y", "a"))),
            "(lam y [1] y[1])", "()", "(e 1 (-> a a))",
        ),
        (
            "exp-chain",
            ExpRule(2, ExpRule(1, ArrI("y", (), pt("a"), vi("y", "a")))),
            "(lam y [2 1] y[2 1])", "()", "(e 2 (e 1 (-> a a)))",
        ),
        (
            "d-comb",
            ArrI("y", (), pt("(^ a (-> a b))"), ArrE(d_fun, d_arg)),
            "(lam y [] (app y[] y[]))", "()", w_arr,
        ),
        (
            "d-macros",
            ArrI(
                "y", (), pt("(^ a (-> a b))"),
                ArrE(
                    SubRule(
                        MacroInterI(Ax("y", CAtom("a")), MacroAx("y", pt("(-> a b)"))),
                        env("((y [] (^ a (-> a b))))"),
                        pt("(-> a b)"),
                    ),
                    SubRule(
                        MacroAx("y", pt("(^ a (-> a b))")),
                        env("((y [] (^ a (-> a b))))"),
                        pt("a"),
                    ),
                ),
            ),
            "(lam y [] (app y[] y[]))", "()", w_arr,
        ),
        (
            "omega-empty",
            OmegaRule(parse_term("(lam y [] y[])")),
            "(lam y [] y[])", "()", "(w [])",
        ),
        (
            "omega-open",
            OmegaRule(parse_term("(app x[] y[])")),
            "(app x[] y[])", "((x [] (w [])) (y [] (w [])))", "(w [])",
        ),
        (
            "arriw",
            ArrIW("x", (), vi("y", "a")),
            "(lam x [] y[])", "((y [] a))", "(-> (w []) a)",
        ),
        (
            "arriw-sub",
            SubRule(ArrIW("x", (), vi("y", "a")), env("((y [] a))"), pt("(-> b a)")),
            "(lam x [] y[])", "((y [] a))", "(-> b a)",
        ),
        (
            "k-comb",
            ArrI("x", (), pt("a"), ArrIW("y", (), vi("x", "a"))),
            "(lam x [] (lam y [] x[]))", "()", "(-> a (-> (w []) a))",
        ),
        (
            "deep-abs",
            ArrI("x", (), pt("a"), ArrIW("y", (), ArrIW("z", (), vi("x", "a")))),
            "(lam x [] (lam y [] (lam z [] x[])))", "()",
            "(-> a (-> (w []) (-> (w []) a)))",
        ),
        (
            "app-redex",
            ArrE(ArrI("x", (), pt("a"), vi("x", "a")), vi("y", "a")),
            "(app (lam x [] x[]) y[])", "((y [] a))", "a",
        ),
        (
            "eta-redex",
            ArrI("x", (), pt("a"), ArrE(vi("y", aa), vi("x", "a"))),
            "(lam x [] (app y[] x[]))", f"((y [] {aa}))", aa,
        ),
        (
            "h-redex",
            ArrI("w", (), pt("a"), ArrE(ArrI("x", (), pt("a"), vi("x", "a")), vi("w", "a"))),
            "(lam w [] (app (lam x [] x[]) w[]))", "()", aa,
        ),
        (
            "var-losing",
            ArrE(ArrIW("x", (), vi("y", "a")), OmegaRule(parse_term("(lam z [] z[])"))),
            "(app (lam x [] y[]) (lam z [] z[]))", "((y [] a))", "a",
        ),
        (
            "omega-arg-app",
            ArrE(
                vi("x", "(-> (w []) a)"),
                OmegaRule(parse_term("(app (lam w [] w[]) (lam z [] z[]))")),
            ),
            "(app x[] (app (lam w [] w[]) (lam z [] z[])))",
            "((x [] (-> (w []) a)))", "a",
        ),
        (
            "expanded-app",
            ExpRule(1, ArrE(vi("x", "(-> a b)"), vi("y", "a"))),
            "(app x[1] y[1])",
            "((x [1] (e 1 (-> a b))) (y [1] (e 1 a)))", "(e 1 b)",
        ),
        (
            "interi-pair",
            InterI(
                SubRule(Ax("y", CAtom("a")), env("((y [] (^ a b)))"), pt("a")),
                SubRule(Ax("y", CAtom("b")), env("((y [] (^ a b)))"), pt("b")),
            ),
            "y[]", "((y [] (^ a b)))", "(^ a b)",
        ),
        (
            "macro-meet",
            MacroInterI(Ax("x", CAtom("a")), MacroAx("x", pt("(-> b b)"))),
            "x[]", "((x [] (^ a (-> b b))))", "(^ a (-> b b))",
        ),
        (
            "sub-env",
            SubRule(vi("x", aa), env(f"((x [] (^ b {aa})))"), pt(aa)),
            "x[]", f"((x [] (^ b {aa})))", aa,
        ),
        (
            "sub-top",
            SubRule(vi("y", "a"), env("((y [] a))"), pt("(w [])")),
            "y[]", "((y [] a))", "(w [])",
        ),
        (
            "nat0-id",
            ArrI("f", (), pt(aa), vi("f", aa)),
            "(lam f [] f[])", "()", nat,
        ),
        (
            "nat0-one",
            ArrI("f", (), pt(aa), ArrI("y", (), pt("a"), ArrE(vi("f", aa), vi("y", "a")))),
            "(lam f [] (lam y [] (app f[] y[])))", "()", nat,
        ),
        (
            "nat0-two",
            ArrI(
                "f", (), pt(aa),
                ArrI("y", (), pt("a"), ArrE(vi("f", aa), ArrE(vi("f", aa), vi("y", "a")))),
            ),
            "(lam f [] (lam y [] (app f[] (app f[] y[]))))", "()", nat,
        ),
        (
            "nat0-redex",
            ArrE(
                ArrI("g", (), pt(nat), vi("g", nat)),
                ArrI("f", (), pt(aa), ArrI("y", (), pt("a"), ArrE(vi("f", aa), vi("y", "a")))),
            ),
            "(app (lam g [] g[]) (lam f [] (lam y [] (app f[] y[]))))", "()", nat,
        ),
        (
            "nat1",
            ExpRule(
                1,
                ArrI("f", (), pt(aa), ArrI("y", (), pt("a"), ArrE(vi("f", aa), vi("y", "a")))),
            ),
            "(lam f [1] (lam y [1] (app f[1] y[1])))", "()", f"(e 1 {nat})",
        ),
        (
            "natp0",
            ArrI(
                "f", (), pt(natp_f),
                ArrI("y", (1,), pt("(e 1 a)"), ArrE(vi("f", natp_f), vi("y", "(e 1 a)"))),
            ),
            "(lam f [] (lam y [1] (app f[] y[1])))", "()",
            f"(-> {natp_f} {natp_f})",
        ),
        (
            "id0-redex",
            discover("(app (lam x [] (app x[] x[])) (lam y [] y[]))", aa),
            "(app (lam x [] (app x[] x[])) (lam y [] y[]))", "()", aa,
        ),
        (
            "example3",
            discover(EXAMPLE3_TERM, EXAMPLE3_TYPE),
            EXAMPLE3_TERM, "()", EXAMPLE3_TYPE,
        ),
    ]
    return entries


def main() -> int:
    CORPUS.mkdir(exist_ok=True)
    entries = build()
    for name, deriv, subject, genv, typ in entries:
        j = check_derivation(deriv)
        want = Judgment(parse_term(subject), parse_env(genv), parse_type(typ))
        if j != want:
            raise SystemExit(f"{name}: checked judgment differs\n  got  {j}\n  want {want}")
        (CORPUS / f"{name}.drv").write_text(print_derivation(deriv) + "\n")
        print(f"{name}.drv\tok")
    (CORPUS / "example3.trm").write_text(EXAMPLE3_TERM + "\n")
    (CORPUS / "example3.typ").write_text(EXAMPLE3_TYPE + "\n")
    (CORPUS / "eta-counter.trm").write_text(ETA_COUNTER_TERM + "\n")
    print(f"{len(entries)} certificates")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
