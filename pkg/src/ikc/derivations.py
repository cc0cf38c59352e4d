r"""Typing derivations: node grammar, checker, macro elaboration, inversion.

A derivation file carries only rule tags and the annotations the rules need;
every conclusion is recomputed by check_derivation, never trusted.  The rules
(ASCII, environments on the left of |-):

    (ax)      x^[] : <x:[]:T |- T>
    (w)       M : <omega-env(M) |- w^d(M)>
    (arrI)    lam x^L.M : <G |- U->T>         from  M : <G, x^L:U |- T>
    (arrIW)   lam x^L.M : <G |- w^L->T>       from  M : <G |- T>,  x^L not in G
    (arrE)    M1 M2 : <G1 /\ G2 |- T>         from  M1 : <G1 |- U->T>,
                                                    M2 : <G2 |- U>
    (interI)  M : <G |- U1 /\ U2>             from both premises, same G
    (exp)     M^{+j} : <e_j G |- e_j U>       from  M : <G |- U>
    (sub)     M : <G' |- U'>                  from  M : <G |- U>,
                                              <G |- U> <= <G' |- U'>

Success guarantees the reported environment is OK, binds exactly the free
variables of the subject, and every binding degree extends the type degree,
which equals the subject degree.

Two macros elaborate into the primitives before checking: (interI' d1 d2)
meets premises with different environments by subruling both to the pointwise
intersection, and (ax' x U) derives x^{d(U)} : <x:U |- U> componentwise
through (ax)/(exp)/(w) and an interI' fold.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union

from .errors import InputSyntaxError, RuleError
from .syntax import (
    Abs,
    App,
    Index,
    Term,
    Var,
    VarKey,
    index_str,
    lift,
    prefix_leq,
    print_term,
    _term_at,
)
from .types import (
    CanonT,
    CanonType as CT,
    CanonType,
    CArrow,
    expand_seq,
    expand_type,
    inter,
    omega,
    print_type,
    singleton,
    subtype,
)
from .envs import (
    Env,
    Judgment,
    env_bind,
    env_expand,
    env_inter,
    env_joinable,
    env_omega,
    env_without,
    mk_env,
    print_env,
    typing_sub,
    _env_of_node,
)
from . import sexpr
from . import types as _types

# ---------------------------------------------------------------- nodes


@dataclass(frozen=True, slots=True)
class Ax:
    name: str
    comp: CanonT


@dataclass(frozen=True, slots=True)
class OmegaRule:
    subject: Term


@dataclass(frozen=True, slots=True)
class ArrI:
    var: str
    idx: Index
    ann: CanonType
    premise: "Derivation"


@dataclass(frozen=True, slots=True)
class ArrIW:
    var: str
    idx: Index
    premise: "Derivation"


@dataclass(frozen=True, slots=True)
class ArrE:
    fun: "Derivation"
    arg: "Derivation"


@dataclass(frozen=True, slots=True)
class InterI:
    left: "Derivation"
    right: "Derivation"


@dataclass(frozen=True, slots=True)
class ExpRule:
    head: int
    premise: "Derivation"


@dataclass(frozen=True, slots=True)
class SubRule:
    premise: "Derivation"
    env: Env
    typ: CanonType


@dataclass(frozen=True, slots=True)
class MacroInterI:
    left: "Derivation"
    right: "Derivation"


@dataclass(frozen=True, slots=True)
class MacroAx:
    name: str
    typ: CanonType


Derivation = Union[
    Ax, OmegaRule, ArrI, ArrIW, ArrE, InterI, ExpRule, SubRule, MacroInterI, MacroAx
]


# ---------------------------------------------------------------- checker


def check_derivation(d: Derivation) -> Judgment:
    match d:
        case Ax(name, comp):
            u = CT((), (comp,))
            key = VarKey(name, ())
            return Judgment(Var(name, ()), mk_env([(key, u)]), u)

        case OmegaRule(subject):
            return Judgment(subject, env_omega(subject), omega(subject.degree))

        case ArrI(var, idx, ann, premise):
            jp = check_derivation(premise)
            key = VarKey(var, idx)
            bound = jp.env.get(key)
            if bound is None:
                raise RuleError(
                    "arrI",
                    f"{var}{index_str(idx)} is not in the premise environment; "
                    "use arrIW when the binder is not free in the body",
                )
            if ann != bound:
                raise RuleError("arrI", "annotation differs from the premise binding")
            t = _single(jp.typ, "arrI")
            return Judgment(
                Abs(var, idx, jp.subject),
                env_without(jp.env, key),
                CT((), (CArrow(bound, t),)),
            )

        case ArrIW(var, idx, premise):
            jp = check_derivation(premise)
            key = VarKey(var, idx)
            if key in jp.env:
                raise RuleError("arrIW", f"{var}{index_str(idx)} occurs in the premise environment")
            t = _single(jp.typ, "arrIW")
            return Judgment(
                Abs(var, idx, jp.subject),
                jp.env,
                CT((), (CArrow(omega(idx), t),)),
            )

        case ArrE(fun, arg):
            jf = check_derivation(fun)
            ja = check_derivation(arg)
            tf = _single(jf.typ, "arrE")
            if not isinstance(tf, CArrow):
                raise RuleError("arrE", f"left type {print_type(jf.typ)} is not an arrow")
            if ja.typ != tf.arg:
                raise RuleError(
                    "arrE",
                    f"argument type {print_type(ja.typ)} differs from the arrow "
                    f"argument {print_type(tf.arg)}",
                )
            if not env_joinable(jf.env, ja.env):
                raise RuleError("arrE", "premise environments disagree on a shared name")
            return Judgment(
                App(jf.subject, ja.subject),
                env_inter(jf.env, ja.env),
                CT((), (tf.res,)),
            )

        case InterI(left, right):
            jl = check_derivation(left)
            jr = check_derivation(right)
            if jl.subject != jr.subject:
                raise RuleError("interI", "premises type different subjects")
            if jl.env != jr.env:
                raise RuleError(
                    "interI",
                    "premises use different environments; interI' meets them",
                )
            return Judgment(jl.subject, jl.env, inter(jl.typ, jr.typ))

        case ExpRule(head, premise):
            jp = check_derivation(premise)
            return Judgment(
                lift(jp.subject, head),
                env_expand(head, jp.env),
                expand_type(head, jp.typ),
            )

        case SubRule(premise, env, typ):
            jp = check_derivation(premise)
            target = Judgment(jp.subject, env, typ)
            if not typing_sub(jp, target):
                raise RuleError("sub", _sub_diagnosis(jp, target))
            return target

        case MacroInterI() | MacroAx():
            return check_derivation(elaborate(d))

    raise AssertionError(d)


def _single(u: CanonType, rule: str) -> CanonT:
    if u.prefix != () or len(u.comps) != 1:
        raise RuleError(rule, f"type {print_type(u)} is not a single component at degree []")
    return u.comps[0]


def _sub_diagnosis(jp: Judgment, target: Judgment) -> str:
    if not subtype(jp.typ, target.typ):
        return f"{print_type(jp.typ)} is not a subtype of {print_type(target.typ)}"
    if jp.env.domain() != target.env.domain():
        return "target environment domain differs from the premise"
    return "target environment is not pointwise stronger than the premise"


# ---------------------------------------------------------------- macros


def sub_to(d: Derivation, env: Env, typ: CanonType) -> Derivation:
    """SubRule unless the derivation already concludes at the target."""
    j = check_derivation(d)
    if j.env == env and j.typ == typ:
        return d
    return SubRule(d, env, typ)


def meet(d1: Derivation, d2: Derivation) -> Derivation:
    """interI' elaborated: meet two premises over differing environments."""
    j1, j2 = check_derivation(d1), check_derivation(d2)
    if j1.subject != j2.subject:
        raise RuleError("interI'", "premises type different subjects")
    ge = env_inter(j1.env, j2.env)
    return InterI(sub_to(d1, ge, j1.typ), sub_to(d2, ge, j2.typ))


def var_intro(name: str, typ: CanonType) -> Derivation:
    """ax' elaborated: x^{d(U)} : <x:U |- U> for any canonical U."""
    k = typ.prefix
    if typ.is_omega():
        return OmegaRule(Var(name, k))
    chains = []
    for comp in typ.comps:
        d: Derivation = Ax(name, comp)
        for j in reversed(k):
            d = ExpRule(j, d)
        chains.append(d)
    return reduce(meet, chains)


def elaborate(d: Derivation) -> Derivation:
    """Expand macro nodes into the primitive rules, recursively."""
    match d:
        case MacroAx(name, typ):
            return var_intro(name, typ)
        case MacroInterI(left, right):
            return meet(elaborate(left), elaborate(right))
        case Ax() | OmegaRule():
            return d
        case ArrI(var, idx, ann, premise):
            return ArrI(var, idx, ann, elaborate(premise))
        case ArrIW(var, idx, premise):
            return ArrIW(var, idx, elaborate(premise))
        case ArrE(fun, arg):
            return ArrE(elaborate(fun), elaborate(arg))
        case InterI(left, right):
            return InterI(elaborate(left), elaborate(right))
        case ExpRule(head, premise):
            return ExpRule(head, elaborate(premise))
        case SubRule(premise, env, typ):
            return SubRule(elaborate(premise), env, typ)
    raise AssertionError(d)


# ---------------------------------------------------------------- inversion


@dataclass(frozen=True)
class OmegaShape:
    idx: Index


@dataclass(frozen=True)
class AbsComponents:
    prefix: Index
    entries: list  # (arg: CanonType, res: CanonT, binds: bool, premise: Judgment)


@dataclass(frozen=True)
class ShapeRefutation:
    reason: str


def invert_abs(j: Judgment) -> OmegaShape | AbsComponents | ShapeRefutation:
    """Generation for abstractions, on judgments.

    For lam x^L.M : <G |- U>, either U is omega, or every component of U is
    an arrow e_K(V -> T) with d(V) equal to the binder residual, and M must
    be typable at the forced premise judgment (with the binding x^L : e_K V
    exactly when x^L is free in M).  A non-arrow component (or a residual
    degree mismatch) refutes every derivation of the judgment.
    """
    m = j.subject
    assert isinstance(m, Abs), m
    if j.typ.is_omega():
        return OmegaShape(j.typ.prefix)
    k = j.typ.prefix
    if not prefix_leq(k, m.idx):
        return ShapeRefutation(
            f"binder index {index_str(m.idx)} does not extend the type degree {index_str(k)}"
        )
    residual = m.idx[len(k):]
    key = VarKey(m.var, m.idx)
    binds = m.body._fv.get(m.var) == m.idx
    entries = []
    for comp in j.typ.comps:
        if not isinstance(comp, CArrow):
            return ShapeRefutation(
                f"component {print_comp_str(comp)} of an abstraction type is not an arrow"
            )
        if comp.arg.degree != residual:
            return ShapeRefutation(
                f"arrow argument degree {index_str(comp.arg.degree)} differs from "
                f"the binder residual {index_str(residual)}"
            )
        res_t = CT(k, (comp.res,))
        if binds:
            premise = Judgment(m.body, env_bind(j.env, key, expand_seq(k, comp.arg)), res_t)
        else:
            premise = Judgment(m.body, j.env, res_t)
        entries.append((comp.arg, comp.res, binds, premise))
    return AbsComponents(k, entries)


def print_comp_str(t: CanonT) -> str:
    from .types import print_comp

    return print_comp(t)


# ---------------------------------------------------------------- parsing


def _deriv_of(node) -> Derivation:
    if not (isinstance(node, list) and node and isinstance(node[0], str)):
        raise InputSyntaxError("expected a derivation form")
    tag = node[0]
    rest = node[1:]
    if tag == "ax":
        if len(rest) != 2 or not isinstance(rest[0], str):
            raise InputSyntaxError("(ax name type)")
        return Ax(rest[0], singleton(_ctype(rest[1])))
    if tag == "ax'":
        if len(rest) != 2 or not isinstance(rest[0], str):
            raise InputSyntaxError("(ax' name type)")
        return MacroAx(rest[0], _ctype(rest[1]))
    if tag == "w":
        term, i = _term_at(rest, 0)
        if i != len(rest):
            raise InputSyntaxError("(w term)")
        return OmegaRule(term)
    if tag == "arrI":
        if len(rest) != 4 or not isinstance(rest[0], str) or not sexpr.is_index(rest[1]):
            raise InputSyntaxError("(arrI name index type derivation)")
        return ArrI(rest[0], tuple(rest[1][1]), _ctype(rest[2]), _deriv_of(rest[3]))
    if tag == "arrIW":
        if len(rest) != 3 or not isinstance(rest[0], str) or not sexpr.is_index(rest[1]):
            raise InputSyntaxError("(arrIW name index derivation)")
        return ArrIW(rest[0], tuple(rest[1][1]), _deriv_of(rest[2]))
    if tag == "arrE":
        if len(rest) != 2:
            raise InputSyntaxError("(arrE derivation derivation)")
        return ArrE(_deriv_of(rest[0]), _deriv_of(rest[1]))
    if tag == "interI":
        if len(rest) != 2:
            raise InputSyntaxError("(interI derivation derivation)")
        return InterI(_deriv_of(rest[0]), _deriv_of(rest[1]))
    if tag == "interI'":
        if len(rest) != 2:
            raise InputSyntaxError("(interI' derivation derivation)")
        return MacroInterI(_deriv_of(rest[0]), _deriv_of(rest[1]))
    if tag == "exp":
        if len(rest) != 2 or not isinstance(rest[0], int):
            raise InputSyntaxError("(exp natural derivation)")
        return ExpRule(rest[0], _deriv_of(rest[1]))
    if tag == "sub":
        if len(rest) != 3:
            raise InputSyntaxError("(sub derivation env type)")
        return SubRule(_deriv_of(rest[0]), _env_of_node(rest[1]), _ctype(rest[2]))
    raise InputSyntaxError(f"unknown derivation head {tag!r}")


def _ctype(node) -> CanonType:
    return _types.canonicalize(_types._raw_of(node))


def parse_derivation(text: str) -> Derivation:
    return _deriv_of(sexpr.read_one(text))


def print_derivation(d: Derivation) -> str:
    match d:
        case Ax(name, comp):
            return f"(ax {name} {print_comp_str(comp)})"
        case MacroAx(name, typ):
            return f"(ax' {name} {print_type(typ)})"
        case OmegaRule(subject):
            return f"(w {print_term(subject)})"
        case ArrI(var, idx, ann, premise):
            return f"(arrI {var} {index_str(idx)} {print_type(ann)} {print_derivation(premise)})"
        case ArrIW(var, idx, premise):
            return f"(arrIW {var} {index_str(idx)} {print_derivation(premise)})"
        case ArrE(fun, arg):
            return f"(arrE {print_derivation(fun)} {print_derivation(arg)})"
        case InterI(left, right):
            return f"(interI {print_derivation(left)} {print_derivation(right)})"
        case MacroInterI(left, right):
            return f"(interI' {print_derivation(left)} {print_derivation(right)})"
        case ExpRule(head, premise):
            return f"(exp {head} {print_derivation(premise)})"
        case SubRule(premise, env, typ):
            return f"(sub {print_derivation(premise)} {print_env(env)} {print_type(typ)})"
    raise AssertionError(d)
