"""Bounded enumeration and seeded random generation of terms and types.

The enumerators are exhaustive over their stated pools, so test suites can
quantify over "every well-formed term of size <= n" honestly.  The closed
enumerator names binders by nesting depth, which yields exactly one
representative per alpha class.
"""

from __future__ import annotations

import random

from .syntax import (
    Abs,
    App,
    Index,
    Term,
    Var,
    is_closed,
    joinable,
    prefix_leq,
    term_size,
)
from .types import (
    CanonT,
    CanonType,
    CanonType as CT,
    CArrow,
    CAtom,
    mk_canon,
)

# ---------------------------------------------------------------- terms


def enumerate_terms(
    max_size: int,
    names: tuple[str, ...] = ("x", "y", "z"),
    indexes: tuple[Index, ...] = ((), (1,)),
) -> list[Term]:
    """All well-formed terms of size <= max_size over the given pools."""
    by_size: list[list[Term]] = [[]]
    by_size.append([Var(n, i) for n in names for i in indexes])
    for size in range(2, max_size + 1):
        layer: list[Term] = []
        for body in by_size[size - 1]:
            for n in names:
                for i in indexes:
                    if prefix_leq(body.degree, i):
                        layer.append(Abs(n, i, body))
        for fsize in range(1, size - 1):
            for f in by_size[fsize]:
                for a in by_size[size - 1 - fsize]:
                    if prefix_leq(f.degree, a.degree) and joinable(f, a):
                        layer.append(App(f, a))
        by_size.append(layer)
    return [m for layer in by_size for m in layer]


def enumerate_closed(
    max_size: int,
    indexes: tuple[Index, ...] = ((), (1,)),
    degree: Index | None = None,
) -> list[Term]:
    """All closed terms of size <= max_size, one per alpha class.

    Binders are named by nesting depth (v0, v1, ...), so distinct terms in
    the output are never alpha-equivalent.  When degree is given, only terms
    of exactly that degree are returned.
    """
    cache: dict[tuple[int, tuple], list[Term]] = {}

    def go(size: int, bound: tuple[tuple[str, Index], ...]) -> list[Term]:
        key = (size, bound)
        hit = cache.get(key)
        if hit is not None:
            return hit
        out: list[Term] = []
        if size >= 1:
            out.extend(Var(n, i) for n, i in bound)
        if size >= 2:
            depth = len(bound)
            name = f"v{depth}"
            for i in indexes:
                for body in go(size - 1, bound + ((name, i),)):
                    if prefix_leq(body.degree, i):
                        out.append(Abs(name, i, body))
            for fsize in range(1, size - 1):
                for f in go(fsize, bound):
                    for a in go(size - 1 - fsize, bound):
                        if prefix_leq(f.degree, a.degree):
                            out.append(App(f, a))
        cache[key] = out
        return out

    seen: set[Term] = set()
    result = []
    for m in go(max_size, ()):
        if m not in seen and is_closed(m):
            seen.add(m)
            if degree is None or m.degree == degree:
                result.append(m)
    result.sort(key=term_size)
    return result


def random_term(
    rng: random.Random,
    size: int,
    names: tuple[str, ...] = ("x", "y", "z"),
    indexes: tuple[Index, ...] = ((), (1,)),
) -> Term:
    """A pseudo-random well-formed term of at most the requested size."""
    if size <= 1:
        return Var(rng.choice(names), rng.choice(indexes))
    shape = rng.random()
    if shape < 0.45 or size == 2:
        body = random_term(rng, size - 1, names, indexes)
        fits = [i for i in indexes if prefix_leq(body.degree, i)]
        idx = rng.choice(fits) if fits else body.degree
        return Abs(rng.choice(names), idx, body)
    fsize = rng.randint(1, size - 2)
    for _ in range(8):
        f = random_term(rng, fsize, names, indexes)
        a = random_term(rng, size - 1 - fsize, names, indexes)
        if prefix_leq(f.degree, a.degree) and joinable(f, a):
            return App(f, a)
    return random_term(rng, size - 1, names, indexes)


# ---------------------------------------------------------------- types


def enumerate_canon_types(
    max_depth: int,
    atoms: tuple[str, ...] = ("a", "b"),
    heads: tuple[int, ...] = (0, 1),
) -> list[CanonType]:
    """All canonical types up to a structural depth bound.

    Depth: an atom costs 1, an arrow costs 1 plus its deepest side, each
    expansion head costs 1, and an intersection of two components costs 1.
    Intersections are kept to at most two components, so the universe stays
    finite and small.
    """
    comps_at: dict[int, list[CanonT]] = {0: []}
    types_at: dict[int, list[CanonType]] = {0: []}

    def comps_upto(d: int) -> list[CanonT]:
        return [c for k in range(d + 1) for c in comps_at.get(k, [])]

    def types_upto(d: int) -> list[CanonType]:
        return [t for k in range(d + 1) for t in types_at.get(k, [])]

    for d in range(1, max_depth + 1):
        layer_c: list[CanonT] = []
        if d == 1:
            layer_c.extend(CAtom(a) for a in atoms)
        for arg in types_upto(d - 1):
            for res in comps_upto(d - 1):
                layer_c.append(CArrow(arg, res))
        comps_at[d] = layer_c

        seen: set[CanonType] = set()
        layer_t: list[CanonType] = []

        def emit(t: CanonType) -> None:
            if t not in seen:
                seen.add(t)
                layer_t.append(t)

        for plen in range(0, d + 1):
            inner = d - plen
            prefixes = _prefixes(heads, plen)
            for prefix in prefixes:
                if inner == 0:
                    emit(CT(prefix, ()))
                    continue
                for c in comps_at.get(inner, []):
                    emit(CT(prefix, (c,)))
                pool = comps_upto(inner - 1)
                for i, c1 in enumerate(pool):
                    for c2 in pool[i + 1:]:
                        emit(mk_canon(prefix, (c1, c2)))
        types_at[d] = [
            t for t in layer_t if t not in set(types_upto(d - 1))
        ]

    return types_upto(max_depth)


def _prefixes(heads: tuple[int, ...], length: int) -> list[Index]:
    out: list[Index] = [()]
    for _ in range(length):
        out = [p + (h,) for p in out for h in heads]
    return [p for p in out if len(p) == length]


def random_canon_type(
    rng: random.Random,
    depth: int,
    atoms: tuple[str, ...] = ("a", "b"),
    heads: tuple[int, ...] = (0, 1),
) -> CanonType:
    """A pseudo-random canonical type of bounded structural depth."""

    def comp(d: int) -> CanonT:
        if d <= 1 or rng.random() < 0.4:
            return CAtom(rng.choice(atoms))
        return CArrow(go(d - 1), comp(d - 1))

    def go(d: int) -> CanonType:
        plen = rng.randint(0, min(d, 2))
        prefix = tuple(rng.choice(heads) for _ in range(plen))
        inner = d - plen
        if inner <= 0:
            return CT(prefix, ())
        n = rng.choice((0, 1, 1, 1, 2))
        return mk_canon(prefix, tuple(comp(inner) for _ in range(n)))

    return go(depth)
