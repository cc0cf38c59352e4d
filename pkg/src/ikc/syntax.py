"""Degree-indexed terms: formation, substitution, lifting, alpha handling.

Every variable carries an Index (a finite sequence of naturals).  Formation
is enforced at construction time:

    x^L           degree L
    lam x^L. M    requires d(M) prefix-of L;  degree d(M)
    (M N)         requires d(M) prefix-of d(N) and M, N joinable;  degree d(M)

Joinability: a variable name free in both parts must carry the same Index in
both.  Within one well-formed term the free-variable map name -> Index is
therefore functional, and every Index occurring in M (free or binder) extends
d(M).  Those two facts are load-bearing for lowering and for the environment
layer, so constructors check them eagerly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Union

from .errors import DegreeError, InputSyntaxError, JoinabilityError, PreconditionError
from . import sexpr

Index = tuple[int, ...]
EMPTY: Index = ()


def prefix_leq(k: Index, l: Index) -> bool:
    """k is a prefix of l."""
    return l[: len(k)] == k


def index_str(l: Index) -> str:
    return "[" + " ".join(str(i) for i in l) + "]"


class VarKey(NamedTuple):
    name: str
    idx: Index


# ---------------------------------------------------------------- terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    idx: Index
    _fv: dict = field(init=False, repr=False, compare=False)
    _names: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_fv", {self.name: self.idx})
        object.__setattr__(self, "_names", frozenset((self.name,)))

    @property
    def degree(self) -> Index:
        return self.idx


@dataclass(frozen=True, slots=True)
class Abs:
    var: str
    idx: Index
    body: "Term"
    _fv: dict = field(init=False, repr=False, compare=False)
    _names: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not prefix_leq(self.body.degree, self.idx):
            raise DegreeError(
                f"binder {self.var}{index_str(self.idx)} does not extend body degree "
                f"{index_str(self.body.degree)}"
            )
        fv = dict(self.body._fv)
        if fv.get(self.var) == self.idx:
            del fv[self.var]
        object.__setattr__(self, "_fv", fv)
        object.__setattr__(self, "_names", self.body._names | {self.var})

    @property
    def degree(self) -> Index:
        return self.body.degree


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"
    _fv: dict = field(init=False, repr=False, compare=False)
    _names: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not prefix_leq(self.fun.degree, self.arg.degree):
            raise DegreeError(
                f"application degree {index_str(self.fun.degree)} does not prefix "
                f"argument degree {index_str(self.arg.degree)}"
            )
        fv = dict(self.fun._fv)
        for name, idx in self.arg._fv.items():
            if fv.setdefault(name, idx) != idx:
                raise JoinabilityError(
                    f"{name} free at {index_str(fv[name])} and {index_str(idx)}"
                )
        object.__setattr__(self, "_fv", fv)
        object.__setattr__(self, "_names", self.fun._names | self.arg._names)

    @property
    def degree(self) -> Index:
        return self.fun.degree


Term = Union[Var, Abs, App]


def free_vars(m: Term) -> frozenset[VarKey]:
    return frozenset(VarKey(n, l) for n, l in m._fv.items())


def free_map(m: Term) -> dict[str, Index]:
    """The functional name -> Index view of free_vars."""
    return dict(m._fv)


def all_names(m: Term) -> frozenset[str]:
    return m._names


def is_closed(m: Term) -> bool:
    return not m._fv


def joinable(m: Term, n: Term) -> bool:
    small, big = (m._fv, n._fv) if len(m._fv) <= len(n._fv) else (n._fv, m._fv)
    return all(big.get(name, idx) == idx for name, idx in small.items())


def term_size(m: Term) -> int:
    match m:
        case Var():
            return 1
        case Abs(_, _, body):
            return 1 + term_size(body)
        case App(fun, arg):
            return 1 + term_size(fun) + term_size(arg)
    raise AssertionError(m)


def subterms(m: Term) -> Iterator[Term]:
    yield m
    match m:
        case Abs(_, _, body):
            yield from subterms(body)
        case App(fun, arg):
            yield from subterms(fun)
            yield from subterms(arg)


# ---------------------------------------------------------------- parsing


def parse_index(text: str) -> Index:
    node = sexpr.read_one(text)
    if not sexpr.is_index(node):
        raise InputSyntaxError(f"expected an index, got {text!r}")
    return tuple(node[1])


def _term_at(nodes: list, i: int) -> tuple[Term, int]:
    if i >= len(nodes):
        raise InputSyntaxError("expected a term, got end of input")
    head = nodes[i]
    if isinstance(head, str):
        if i + 1 >= len(nodes) or not sexpr.is_index(nodes[i + 1]):
            raise InputSyntaxError(f"variable {head!r} must be followed by an index")
        return Var(head, tuple(nodes[i + 1][1])), i + 2
    if isinstance(head, list):
        return _term_of_list(head), i + 1
    raise InputSyntaxError(f"expected a term, got {head!r}")


def _term_of_list(items: list) -> Term:
    if not items or not isinstance(items[0], str):
        raise InputSyntaxError("expected (lam ...) or (app ...)")
    tag = items[0]
    if tag == "lam":
        if len(items) < 4 or not isinstance(items[1], str) or not sexpr.is_index(items[2]):
            raise InputSyntaxError("lam needs a binder name, an index and a body")
        body, j = _term_at(items, 3)
        if j != len(items):
            raise InputSyntaxError("lam has trailing items after its body")
        return Abs(items[1], tuple(items[2][1]), body)
    if tag == "app":
        fun, j = _term_at(items, 1)
        arg, k = _term_at(items, j)
        if k != len(items):
            raise InputSyntaxError("app has trailing items after its argument")
        return App(fun, arg)
    raise InputSyntaxError(f"unknown term head {tag!r}")


def parse_term(text: str) -> Term:
    nodes = sexpr.tokenize(text)
    reader = sexpr._Reader(nodes, text)
    parsed = []
    while reader.peek() is not None:
        parsed.append(reader.read())
    term, j = _term_at(parsed, 0)
    if j != len(parsed):
        raise InputSyntaxError("trailing input after the term")
    return term


def print_term(m: Term) -> str:
    match m:
        case Var(name, idx):
            return f"{name}{index_str(idx)}"
        case Abs(var, idx, body):
            return f"(lam {var} {index_str(idx)} {print_term(body)})"
        case App(fun, arg):
            return f"(app {print_term(fun)} {print_term(arg)})"
    raise AssertionError(m)


# ---------------------------------------------------------------- renaming


def fresh_name(avoid: frozenset[str] | set[str]) -> str:
    i = 0
    while f"_r{i}" in avoid:
        i += 1
    return f"_r{i}"


def rename_var(m: Term, old: VarKey, new: str) -> Term:
    """Rename free occurrences of old to new.  new must not occur in m."""
    if new in m._names:
        raise PreconditionError(f"{new!r} already occurs in the term")
    return _rename(m, old, new)


def _rename(m: Term, old: VarKey, new: str) -> Term:
    if m._fv.get(old.name) != old.idx:
        return m
    match m:
        case Var(name, idx):
            return Var(new, idx) if (name, idx) == old else m
        case Abs(var, idx, body):
            # old is free in m, so this binder cannot shadow it
            return Abs(var, idx, _rename(body, old, new))
        case App(fun, arg):
            return App(_rename(fun, old, new), _rename(arg, old, new))
    raise AssertionError(m)


# ---------------------------------------------------------------- substitution


def substitute(m: Term, binds: dict[VarKey, Term]) -> Term:
    """Simultaneous capture-avoiding substitution.

    Each binding x^L := N needs d(N) = L, and the family {m} + replacements
    must be pairwise joinable.  Binders are renamed only on a name collision
    with a replacement's free names; the fresh choice never looks at indexes,
    so substitution commutes exactly with lifting and lowering.
    """
    merged: dict[str, Index] = dict(m._fv)
    payloads = []
    for (x, l), n in binds.items():
        if n.degree != l:
            raise DegreeError(
                f"replacement for {x}{index_str(l)} has degree {index_str(n.degree)}"
            )
        # a binding only fires when its exact key is free in m; the key's
        # entry disappears, so only live payloads enter the joinability check
        if merged.get(x) == l:
            del merged[x]
            payloads.append(n)
    for n in payloads:
        for name, idx in n._fv.items():
            if merged.setdefault(name, idx) != idx:
                raise JoinabilityError(
                    f"{name} free at {index_str(merged[name])} and {index_str(idx)}"
                )
    avoid = set(m._names)
    for n in binds.values():
        avoid |= n._names
    return _subst(m, binds, avoid)


def _subst(m: Term, binds: dict[VarKey, Term], avoid: set[str]) -> Term:
    live = {k: n for k, n in binds.items() if m._fv.get(k.name) == k.idx}
    if not live:
        return m
    match m:
        case Var(name, idx):
            return live.get(VarKey(name, idx), m)
        case App(fun, arg):
            return App(_subst(fun, live, avoid), _subst(arg, live, avoid))
        case Abs(var, idx, body):
            clash = any(var in n._fv for n in live.values())
            if clash:
                f = fresh_name(avoid)
                avoid = avoid | {f}
                body = _subst(body, {VarKey(var, idx): Var(f, idx)}, avoid)
                return Abs(f, idx, _subst(body, live, avoid))
            return Abs(var, idx, _subst(body, live, avoid))
    raise AssertionError(m)


# ---------------------------------------------------------------- lift/lower


def lift(m: Term, i: int) -> Term:
    """Prepend i to every Index in m (free and binding)."""
    match m:
        case Var(name, idx):
            return Var(name, (i,) + idx)
        case Abs(var, idx, body):
            return Abs(var, (i,) + idx, lift(body, i))
        case App(fun, arg):
            return App(lift(fun, i), lift(arg, i))
    raise AssertionError(m)


def lift_seq(m: Term, k: Index) -> Term:
    """Lift so that degree(lift_seq(m, k)) = k + degree(m)."""
    for i in reversed(k):
        m = lift(m, i)
    return m


def lower(m: Term, i: int) -> Term:
    """Strip a leading i from every Index; defined when d(m) starts with i."""
    if not m.degree or m.degree[0] != i:
        raise DegreeError(
            f"cannot lower degree {index_str(m.degree)} by {i}"
        )
    return _lower(m, i)


def _lower(m: Term, i: int) -> Term:
    match m:
        case Var(name, idx):
            assert idx and idx[0] == i, (m, i)
            return Var(name, idx[1:])
        case Abs(var, idx, body):
            assert idx and idx[0] == i, (m, i)
            return Abs(var, idx[1:], _lower(body, i))
        case App(fun, arg):
            return App(_lower(fun, i), _lower(arg, i))
    raise AssertionError(m)


def lower_seq(m: Term, k: Index) -> Term:
    for i in k:
        m = lower(m, i)
    return m


# ---------------------------------------------------------------- alpha


def alpha_canon(m: Term) -> Term:
    """Rename binders to positional names, left to right.

    Free variables are untouched; two terms are alpha-equivalent iff their
    canonical forms are equal.
    """
    taken = set(m._fv)
    supply: list[str] = []

    def grab(n: int) -> str:
        while len(supply) <= n:
            cand = f"_a{len(supply)}"
            i = 0
            while cand in taken:
                cand = f"_a{len(supply)}_{i}"
                i += 1
            supply.append(cand)
        return supply[n]

    def go(t: Term, env: dict[VarKey, str], depth: int) -> tuple[Term, int]:
        match t:
            case Var(name, idx):
                return Var(env.get(VarKey(name, idx), name), idx), depth
            case Abs(var, idx, body):
                cname = grab(depth)
                env2 = dict(env)
                env2[VarKey(var, idx)] = cname
                body2, d2 = go(body, env2, depth + 1)
                return Abs(cname, idx, body2), d2
            case App(fun, arg):
                fun2, d1 = go(fun, env, depth)
                arg2, d2 = go(arg, env, d1)
                return App(fun2, arg2), d2
        raise AssertionError(t)

    out, _ = go(m, {}, 0)
    return out


def alpha_eq(m: Term, n: Term) -> bool:
    if m._fv != n._fv:
        return False
    return alpha_canon(m) == alpha_canon(n)
