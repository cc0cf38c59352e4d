"""Reduction engines: beta, eta, their union, and head reduction.

beta fires on (lam x^L. P) Q only when d(Q) = L; a degree mismatch is not an
error, the application is simply stuck.  eta fires on lam x^L. (P x^L) when
x^L is not free in P.  Head reduction contracts the spine-head beta redex
only, never under a binder, so its step set is empty or a singleton and is
always contained in the beta step set.

Reduction preserves the degree, never grows the free-variable set, and eta
preserves it exactly; the constructors re-check all of that on every rebuilt
term, so a violation would surface as a loud formation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

from .syntax import (
    Abs,
    App,
    Term,
    Var,
    VarKey,
    alpha_canon,
    alpha_eq,
    substitute,
)

Path = tuple[str, ...]  # entries: "fun" | "arg" | "body"


class Relation(Enum):
    BETA = "beta"
    ETA = "eta"
    BETAETA = "betaeta"
    H = "h"

    @classmethod
    def of(cls, name: str) -> "Relation":
        return cls(name)


def beta_contract(m: App) -> Term:
    f = m.fun
    assert isinstance(f, Abs)
    return substitute(f.body, {VarKey(f.var, f.idx): m.arg})


def is_beta_redex(m: Term) -> bool:
    return isinstance(m, App) and isinstance(m.fun, Abs) and m.arg.degree == m.fun.idx


def is_eta_redex(m: Term) -> bool:
    if not (isinstance(m, Abs) and isinstance(m.body, App)):
        return False
    arg = m.body.arg
    return (
        isinstance(arg, Var)
        and arg.name == m.var
        and arg.idx == m.idx
        and m.body.fun._fv.get(m.var) != m.idx
    )


def _tagged(m: Term, path: Path) -> Iterator[tuple[str, Path, Term]]:
    """All betaeta steps of m in leftmost-outermost order, with positions."""
    match m:
        case Var():
            return
        case Abs(var, idx, body):
            if is_eta_redex(m):
                yield "eta", path, m.body.fun
            for kind, p, r in _tagged(body, path + ("body",)):
                yield kind, p, Abs(var, idx, r)
        case App(fun, arg):
            if is_beta_redex(m):
                yield "beta", path, beta_contract(m)
            for kind, p, r in _tagged(fun, path + ("fun",)):
                yield kind, p, App(r, arg)
            for kind, p, r in _tagged(arg, path + ("arg",)):
                yield kind, p, App(fun, r)


def _head_position(m: Term) -> tuple[Path, Term] | None:
    """The head beta step of m, if the spine head is a contractible redex."""
    spine = 0
    t = m
    while isinstance(t, App) and isinstance(t.fun, App):
        spine += 1
        t = t.fun
    if not is_beta_redex(t):
        return None
    reduct: Term = beta_contract(t)
    rebuild: list[Term] = []
    u = m
    for _ in range(spine):
        rebuild.append(u.arg)
        u = u.fun
    for a in reversed(rebuild):
        reduct = App(reduct, a)
    return ("fun",) * spine, reduct


def step_positions(m: Term, r: Relation) -> list[tuple[str, Path, Term]]:
    """(kind, path, reduct) triples in leftmost-outermost order, no dedup."""
    if r is Relation.H:
        hp = _head_position(m)
        return [("beta", hp[0], hp[1])] if hp else []
    steps = list(_tagged(m, ()))
    if r is Relation.BETA:
        return [s for s in steps if s[0] == "beta"]
    if r is Relation.ETA:
        return [s for s in steps if s[0] == "eta"]
    return steps


def step(m: Term, r: Relation) -> list[Term]:
    """One-step reducts, deduplicated up to alpha, leftmost-outermost order."""
    out: list[Term] = []
    seen = set()
    for _, _, reduct in step_positions(m, r):
        key = alpha_canon(reduct)
        if key not in seen:
            seen.add(key)
            out.append(reduct)
    return out


# ---------------------------------------------------------------- normalize


@dataclass(frozen=True)
class NormalForm:
    term: Term
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    term: Term
    steps: int


ReductionOutcome = Union[NormalForm, FuelExhausted]


def normalize(m: Term, r: Relation, fuel: int) -> ReductionOutcome:
    """Deterministic leftmost-outermost normalisation; fuel counts steps."""
    steps = 0
    while steps < fuel:
        nxt = step_positions(m, r)
        if not nxt:
            return NormalForm(m, steps)
        m = nxt[0][2]
        steps += 1
    if not step_positions(m, r):
        return NormalForm(m, steps)
    return FuelExhausted(m, steps)


# ---------------------------------------------------------------- equivalence


class Verdict(Enum):
    EQUIVALENT = "Equivalent"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


def equiv(m: Term, n: Term, r: Relation, fuel: int) -> Verdict:
    """Joint breadth-first search for a common reduct.

    Equivalent on a shared reduct; Distinct when both reduction graphs were
    exhausted without meeting, or both normalise to non-alpha-equal normal
    forms; Unknown when fuel ran out first.
    """
    ka, kb = alpha_canon(m), alpha_canon(n)
    if ka == kb:
        return Verdict.EQUIVALENT
    seen_a, seen_b = {ka}, {kb}
    front_a, front_b = [m], [n]
    budget = fuel
    complete = False
    while budget > 0:
        if not front_a and not front_b:
            complete = True
            break
        # expand the smaller nonempty frontier first to keep the search balanced
        if front_a and (not front_b or len(front_a) <= len(front_b)):
            front, seen, other = front_a, seen_a, seen_b
            front_a = []
            is_a = True
        else:
            front, seen, other = front_b, seen_b, seen_a
            front_b = []
            is_a = False
        new: list[Term] = []
        for t in front:
            for reduct in step(t, r):
                budget -= 1
                key = alpha_canon(reduct)
                if key in other:
                    return Verdict.EQUIVALENT
                if key not in seen:
                    seen.add(key)
                    new.append(reduct)
                if budget <= 0:
                    break
            if budget <= 0:
                break
        if is_a:
            front_a = new
        else:
            front_b = new
    if complete:
        return Verdict.DISTINCT
    na, nb = normalize(m, r, fuel), normalize(n, r, fuel)
    if isinstance(na, NormalForm) and isinstance(nb, NormalForm):
        if not alpha_eq(na.term, nb.term):
            return Verdict.DISTINCT
        return Verdict.EQUIVALENT
    return Verdict.UNKNOWN


# ---------------------------------------------------------------- confluence


@dataclass
class ConfluenceReport:
    peaks_checked: int
    unjoined: list[tuple[Term, Term, Term]]

    @property
    def ok(self) -> bool:
        return not self.unjoined


def _reachable(m: Term, r: Relation, depth: int, cache: dict) -> dict:
    """Canonical-form keyed map of terms reachable within depth steps."""
    seen = {alpha_canon(m): m}
    front = [m]
    for _ in range(depth):
        nxt = []
        for t in front:
            key = (alpha_canon(t), r)
            if key not in cache:
                cache[key] = step(t, r)
            for reduct in cache[key]:
                k = alpha_canon(reduct)
                if k not in seen:
                    seen[k] = reduct
                    nxt.append(reduct)
        if not nxt:
            break
        front = nxt
    return seen


def check_local_confluence(
    m: Term, r: Relation, depth: int, join_depth: int | None = None
) -> ConfluenceReport:
    """Check every peak among terms reachable from m within depth steps.

    A peak t1 <- t -> t2 counts as joined when the reducts of t1 and t2 share
    a term within join_depth further steps (default depth + 2).
    """
    if join_depth is None:
        join_depth = depth + 2
    cache: dict = {}
    space = _reachable(m, r, depth, cache)
    peaks = 0
    unjoined: list[tuple[Term, Term, Term]] = []
    for t in space.values():
        reducts = step(t, r)
        if len(reducts) < 2:
            continue
        for i in range(len(reducts)):
            for j in range(i + 1, len(reducts)):
                peaks += 1
                if not _joinable(reducts[i], reducts[j], r, join_depth, cache):
                    unjoined.append((t, reducts[i], reducts[j]))
    return ConfluenceReport(peaks, unjoined)


def _joinable(t1: Term, t2: Term, r: Relation, depth: int, cache: dict) -> bool:
    a = _reachable(t1, r, depth, cache)
    b = _reachable(t2, r, depth, cache)
    return not a.keys().isdisjoint(b.keys())
