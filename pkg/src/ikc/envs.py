"""Typing environments (finite maps VarKey -> CanonType) and judgments.

An environment is OK when every binding x^L : U satisfies d(U) = L.  The
checker only ever produces OK environments whose domain is exactly the free
variables of the subject; parsers accept any functional literal and leave
OK-ness to the rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegreeError, DomainError, InputSyntaxError
from .syntax import Index, Term, VarKey, free_vars, index_str, prefix_leq
from .types import CanonType, expand_type, inter, lower_type, omega, print_type, subtype
from . import sexpr
from . import types as _types


@dataclass(frozen=True, slots=True)
class Env:
    items: tuple[tuple[VarKey, CanonType], ...]
    _map: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.items))

    def get(self, key: VarKey) -> CanonType | None:
        return self._map.get(key)

    def domain(self) -> frozenset[VarKey]:
        return frozenset(self._map)

    def __contains__(self, key: VarKey) -> bool:
        return key in self._map

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


def mk_env(pairs) -> Env:
    """Build an Env from (key, type) pairs; duplicate keys must agree."""
    seen: dict[VarKey, CanonType] = {}
    for key, u in pairs:
        if key in seen and seen[key] != u:
            raise InputSyntaxError(f"conflicting bindings for {key.name}{index_str(key.idx)}")
        seen[key] = u
    return Env(tuple(sorted(seen.items())))


def env_empty() -> Env:
    return Env(())


def env_ok(g: Env) -> bool:
    return all(u.degree == key.idx for key, u in g)


def env_omega(m: Term) -> Env:
    return mk_env((key, omega(key.idx)) for key in free_vars(m))


def env_joinable(g1: Env, g2: Env) -> bool:
    names: dict[str, Index] = {}
    for key, _ in g1:
        names[key.name] = key.idx
    for key, _ in g2:
        if names.setdefault(key.name, key.idx) != key.idx:
            return False
    return True


def env_inter(g1: Env, g2: Env) -> Env:
    """Pointwise intersection on shared keys, union elsewhere."""
    out = dict(g1.items)
    for key, u in g2:
        out[key] = inter(out[key], u) if key in out else u
    return mk_env(out.items())


def env_expand(j: int, g: Env) -> Env:
    return mk_env(
        (VarKey(key.name, (j,) + key.idx), expand_type(j, u)) for key, u in g
    )


def env_lower(g: Env, k: Index) -> Env:
    for key, _ in g:
        if not prefix_leq(k, key.idx):
            raise DegreeError(
                f"binding {key.name}{index_str(key.idx)} cannot lower by {index_str(k)}"
            )
    return mk_env(
        (VarKey(key.name, key.idx[len(k):]), lower_type(u, k)) for key, u in g
    )


def env_degree_geq(g: Env, l: Index) -> bool:
    """d(g) extends l: every binding index has l as a prefix."""
    return all(prefix_leq(l, key.idx) for key, _ in g)


def env_sub(g1: Env, g2: Env) -> bool:
    """g1 <= g2 pointwise on an identical domain."""
    if g1.domain() != g2.domain():
        return False
    return all(subtype(u, g2.get(key)) for key, u in g1)


def env_restrict(g: Env, keys) -> Env:
    keys = frozenset(keys)
    missing = keys - g.domain()
    if missing:
        key = min(missing)
        raise DomainError(f"{key.name}{index_str(key.idx)} not bound")
    return mk_env((key, u) for key, u in g if key in keys)


def env_enlarge(g: Env, keys) -> Env:
    """Extend g with omega bindings so its domain covers keys."""
    extra = [(key, omega(key.idx)) for key in frozenset(keys) - g.domain()]
    return mk_env(list(g.items) + extra)


def env_without(g: Env, key: VarKey) -> Env:
    return mk_env((k, u) for k, u in g if k != key)


def env_bind(g: Env, key: VarKey, u: CanonType) -> Env:
    assert key not in g, key
    return mk_env(list(g.items) + [(key, u)])


# ---------------------------------------------------------------- judgments


@dataclass(frozen=True, slots=True)
class Judgment:
    subject: Term
    env: Env
    typ: CanonType


def typing_sub(j1: Judgment, j2: Judgment) -> bool:
    """<G1 |- U1>  <=  <G2 |- U2>: covariant type, contravariant environment."""
    return subtype(j1.typ, j2.typ) and env_sub(j2.env, j1.env)


# ---------------------------------------------------------------- parsing


def _env_of_node(node) -> Env:
    if not isinstance(node, list):
        raise InputSyntaxError("expected an environment ((name index type) ...)")
    pairs = []
    for entry in node:
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or not isinstance(entry[0], str)
            or not sexpr.is_index(entry[1])
        ):
            raise InputSyntaxError("environment entries are (name index type)")
        key = VarKey(entry[0], tuple(entry[1][1]))
        pairs.append((key, _types.canonicalize(_types._raw_of(entry[2]))))
    return mk_env(pairs)


def parse_env(text: str) -> Env:
    return _env_of_node(sexpr.read_one(text))


def print_env(g: Env) -> str:
    inner = " ".join(
        f"({key.name} {index_str(key.idx)} {print_type(u)})" for key, u in g
    )
    return f"({inner})"


def parse_judgment(text: str) -> Judgment:
    from .syntax import _term_at

    node = sexpr.read_one(text)
    if not (isinstance(node, list) and node and node[0] == "judg"):
        raise InputSyntaxError("expected (judg term env type)")
    body = node[1:]
    term, i = _term_at(body, 0)
    if i + 2 != len(body):
        raise InputSyntaxError("judg needs exactly a term, an environment and a type")
    return Judgment(term, _env_of_node(body[i]), _types.canonicalize(_types._raw_of(body[i + 1])))


def print_judgment(j: Judgment) -> str:
    from .syntax import print_term

    return f"(judg {print_term(j.subject)} {print_env(j.env)} {print_type(j.typ)})"
