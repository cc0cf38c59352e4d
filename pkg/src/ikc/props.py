"""Seeded, reproducible property suites over the kernel.

Each suite returns (name, ok, detail) so callers can print one line per
property.  The suites are deliberately closed-form: enumeration bounds and
seeds fully determine the work, so two runs with the same flags agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gen import (
    enumerate_canon_types,
    enumerate_terms,
    random_canon_type,
    random_term,
)
from .reduction import Relation, check_local_confluence, step_positions
from .rulesearch import derivable_pairs
from .syntax import Term, free_vars, lift
from .types import omega, subtype


@dataclass(slots=True)
class PropResult:
    name: str
    ok: bool
    detail: str


def _step_invariants(pool: list[Term]) -> PropResult:
    checked = 0
    for m in pool:
        deg = m.degree
        fv = free_vars(m)
        for r in Relation:
            for _, _, reduct in step_positions(m, r):
                checked += 1
                if reduct.degree != deg:
                    return PropResult(
                        "step-invariants", False, f"degree changed on {m}"
                    )
                fv2 = free_vars(reduct)
                if r is Relation.ETA and fv2 != fv:
                    return PropResult(
                        "step-invariants", False, f"eta changed fv on {m}"
                    )
                if not fv2 <= fv:
                    return PropResult(
                        "step-invariants", False, f"fv grew on {m}"
                    )
    return PropResult("step-invariants", True, f"{checked} steps checked")


def prop_step_invariants(size: int, seed: int, extra: int = 200) -> PropResult:
    pool = enumerate_terms(size)
    rng = random.Random(seed)
    pool += [random_term(rng, size + 3) for _ in range(extra)]
    return _step_invariants(pool)


def prop_lift_step_commute(size: int, seed: int, extra: int = 200) -> PropResult:
    """Lifting a term lifts each of its reducts, step for step."""
    pool = enumerate_terms(min(size, 5))
    rng = random.Random(seed)
    pool += [random_term(rng, size) for _ in range(extra)]
    checked = 0
    for m in pool:
        up = lift(m, 1)
        for r in Relation:
            lifted = sorted(
                str(lift(reduct, 1)) for _, _, reduct in step_positions(m, r)
            )
            ups = sorted(str(reduct) for _, _, reduct in step_positions(up, r))
            checked += 1
            if lifted != ups:
                return PropResult(
                    "lift-step-commute", False, f"mismatch on {m} under {r.name}"
                )
    return PropResult("lift-step-commute", True, f"{checked} term/relation pairs")


def prop_subtype_order(count: int, seed: int) -> PropResult:
    """Reflexivity, transitivity, and the omega top at each degree."""
    rng = random.Random(seed)
    tys = [random_canon_type(rng, rng.randint(1, 4)) for _ in range(count)]
    for u in tys:
        if not subtype(u, u):
            return PropResult("subtype-order", False, f"not reflexive on {u}")
        if not subtype(u, omega(u.degree)):
            return PropResult("subtype-order", False, f"omega not top for {u}")
    hits = 0
    for _ in range(count):
        u, v, w = rng.choice(tys), rng.choice(tys), rng.choice(tys)
        if subtype(u, v) and subtype(v, w):
            hits += 1
            if not subtype(u, w):
                return PropResult(
                    "subtype-order", False, f"not transitive on {u}, {v}, {w}"
                )
    return PropResult(
        "subtype-order", True, f"{len(tys)} types, {hits} transitivity hits"
    )


def prop_subtype_oracle(depth: int = 2) -> PropResult:
    """Decision procedure against the bounded rule-derivation search."""
    tys = enumerate_canon_types(depth)
    facts = derivable_pairs(tys, max_depth=4)
    bad = 0
    for u in tys:
        for v in tys:
            if subtype(u, v) != ((u, v) in facts):
                bad += 1
    if bad:
        return PropResult("subtype-oracle", False, f"{bad} disagreements")
    return PropResult(
        "subtype-oracle", True, f"{len(tys)} types, {len(tys)**2} pairs agree"
    )


def prop_local_confluence(size: int, depth: int = 3) -> PropResult:
    pool = enumerate_terms(size)
    for r in Relation:
        for m in pool:
            report = check_local_confluence(m, r, depth)
            if report.unjoined:
                return PropResult(
                    "local-confluence", False, f"unjoined peak on {m} under {r.name}"
                )
    return PropResult(
        "local-confluence", True, f"{len(pool)} terms x {len(Relation)} relations"
    )


SUITES = {
    "step-invariants": lambda size, seed: prop_step_invariants(size, seed),
    "lift-step-commute": lambda size, seed: prop_lift_step_commute(size, seed),
    "subtype-order": lambda size, seed: prop_subtype_order(max(size, 4) * 250, seed),
    "subtype-oracle": lambda size, seed: prop_subtype_oracle(min(size, 3)),
    "local-confluence": lambda size, seed: prop_local_confluence(min(size, 5)),
}


def run_suites(names: list[str], size: int, seed: int) -> list[PropResult]:
    picked = names or sorted(SUITES)
    out = []
    for name in picked:
        if name not in SUITES:
            raise KeyError(name)
        out.append(SUITES[name](size, seed))
    return out
