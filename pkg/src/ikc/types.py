"""Intersection types with expansion prefixes and omega, in canonical form.

Raw types follow the surface grammar (atoms, arrows, intersections, omega
with an index, single-step expansions).  Canonicalisation quotients by
associativity/commutativity/idempotence of the intersection, neutrality of
same-degree omega, and distribution of expansions over intersections:

    CanonType = (prefix, components)   components sorted, duplicate-free
    CanonT    = Atom(name) | Arrow(CanonType, CanonT)

Empty components = omega at the prefix.  A type's degree is its prefix;
arrows and atoms live at degree [].  The subtype procedure compares
same-prefix component sets: every right component must be dominated by some
left component, arrows contravariantly on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DegreeError, InputSyntaxError, ShapeError
from .syntax import Index, index_str, prefix_leq
from . import sexpr

# ---------------------------------------------------------------- raw grammar


@dataclass(frozen=True, slots=True)
class RAtom:
    name: str


@dataclass(frozen=True, slots=True)
class ROmega:
    idx: Index


@dataclass(frozen=True, slots=True)
class RArrow:
    arg: "RawType"
    res: "RawType"


@dataclass(frozen=True, slots=True)
class RInter:
    left: "RawType"
    right: "RawType"


@dataclass(frozen=True, slots=True)
class RExp:
    head: int
    body: "RawType"


RawType = Union[RAtom, ROmega, RArrow, RInter, RExp]


# ---------------------------------------------------------------- canonical


@dataclass(frozen=True, slots=True)
class CAtom:
    name: str


@dataclass(frozen=True, slots=True)
class CArrow:
    arg: "CanonType"
    res: "CanonT"


CanonT = Union[CAtom, CArrow]


@dataclass(frozen=True, slots=True)
class CanonType:
    prefix: Index
    comps: tuple[CanonT, ...]

    @property
    def degree(self) -> Index:
        return self.prefix

    def is_omega(self) -> bool:
        return not self.comps


def comp_key(t: CanonT):
    match t:
        case CAtom(name):
            return (0, name)
        case CArrow(arg, res):
            return (1, type_key(arg), comp_key(res))
    raise AssertionError(t)


def type_key(u: CanonType):
    return (u.prefix, tuple(comp_key(t) for t in u.comps))


def mk_canon(prefix: Index, comps) -> CanonType:
    uniq = {comp_key(t): t for t in comps}
    return CanonType(prefix, tuple(uniq[k] for k in sorted(uniq)))


def omega(prefix: Index = ()) -> CanonType:
    return CanonType(prefix, ())


def atom(name: str) -> CanonType:
    return CanonType((), (CAtom(name),))


def arrow(arg: CanonType, res: CanonType) -> CanonType:
    """Arrow whose result must canonicalise to a single degree-[] component."""
    if res.prefix != () or len(res.comps) != 1:
        raise ShapeError("arrow result must be a single component at degree []")
    return CanonType((), (CArrow(arg, res.comps[0]),))


def canonicalize(raw: RawType) -> CanonType:
    match raw:
        case RAtom(name):
            return CanonType((), (CAtom(name),))
        case ROmega(idx):
            return CanonType(idx, ())
        case RExp(head, body):
            c = canonicalize(body)
            return CanonType((head,) + c.prefix, c.comps)
        case RInter(left, right):
            cl, cr = canonicalize(left), canonicalize(right)
            if cl.prefix != cr.prefix:
                raise DegreeError(
                    f"intersection of degrees {index_str(cl.prefix)} and {index_str(cr.prefix)}"
                )
            return mk_canon(cl.prefix, cl.comps + cr.comps)
        case RArrow(arg, res):
            cres = canonicalize(res)
            if cres.prefix != () or len(cres.comps) != 1:
                raise ShapeError("arrow result must be a single component at degree []")
            return CanonType((), (CArrow(canonicalize(arg), cres.comps[0]),))
    raise AssertionError(raw)


def inter(u: CanonType, v: CanonType) -> CanonType:
    if u.prefix != v.prefix:
        raise DegreeError(
            f"intersection of degrees {index_str(u.prefix)} and {index_str(v.prefix)}"
        )
    return mk_canon(u.prefix, u.comps + v.comps)


def expand_type(i: int, u: CanonType) -> CanonType:
    return CanonType((i,) + u.prefix, u.comps)


def expand_seq(k: Index, u: CanonType) -> CanonType:
    return CanonType(k + u.prefix, u.comps)


def lower_type(u: CanonType, k: Index) -> CanonType:
    if not prefix_leq(k, u.prefix):
        raise DegreeError(
            f"cannot lower degree {index_str(u.prefix)} by {index_str(k)}"
        )
    return CanonType(u.prefix[len(k):], u.comps)


def singleton(u: CanonType) -> CanonT:
    """The unique component of a degree-[] single-component type."""
    if u.prefix != () or len(u.comps) != 1:
        raise ShapeError("expected a single component at degree []")
    return u.comps[0]


# ---------------------------------------------------------------- subtyping


def subtype(u: CanonType, v: CanonType) -> bool:
    """Decide u <= v on canonical forms.

    Mixed degrees are simply not related (the relation preserves degree).
    """
    if u.prefix != v.prefix:
        return False
    return all(any(comp_leq(t, t2) for t in u.comps) for t2 in v.comps)


def comp_leq(t: CanonT, t2: CanonT) -> bool:
    match t, t2:
        case CAtom(a), CAtom(b):
            return a == b
        case CArrow(arg1, res1), CArrow(arg2, res2):
            # contravariant argument, covariant result
            return subtype(arg2, arg1) and comp_leq(res1, res2)
        case _:
            return False


# ---------------------------------------------------------------- parsing


def _raw_of(node) -> RawType:
    if isinstance(node, str):
        return RAtom(node)
    if isinstance(node, list):
        if not node or not isinstance(node[0], str):
            raise InputSyntaxError("expected a type form")
        tag = node[0]
        if tag == "w":
            if len(node) != 2 or not sexpr.is_index(node[1]):
                raise InputSyntaxError("(w ...) needs one index")
            return ROmega(tuple(node[1][1]))
        if tag == "->":
            if len(node) != 3:
                raise InputSyntaxError("(-> ...) needs two types")
            return RArrow(_raw_of(node[1]), _raw_of(node[2]))
        if tag == "^":
            if len(node) != 3:
                raise InputSyntaxError("(^ ...) needs two types")
            return RInter(_raw_of(node[1]), _raw_of(node[2]))
        if tag == "e":
            if len(node) != 3 or not isinstance(node[1], int):
                raise InputSyntaxError("(e ...) needs a natural and a type")
            return RExp(node[1], _raw_of(node[2]))
        raise InputSyntaxError(f"unknown type head {tag!r}")
    raise InputSyntaxError(f"expected a type, got {node!r}")


def parse_raw_type(text: str) -> RawType:
    return _raw_of(sexpr.read_one(text))


def parse_type(text: str) -> CanonType:
    return canonicalize(parse_raw_type(text))


def print_comp(t: CanonT) -> str:
    match t:
        case CAtom(name):
            return name
        case CArrow(arg, res):
            return f"(-> {print_type(arg)} {print_comp(res)})"
    raise AssertionError(t)


def _print_body(comps: tuple[CanonT, ...]) -> str:
    if len(comps) == 1:
        return print_comp(comps[0])
    return f"(^ {print_comp(comps[0])} {_print_body(comps[1:])})"


def print_type(u: CanonType) -> str:
    body = f"(w {index_str(u.prefix)})" if not u.comps else _print_body(u.comps)
    if u.comps:
        for i in reversed(u.prefix):
            body = f"(e {i} {body})"
    return body
