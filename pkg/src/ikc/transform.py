"""Constructive transformations of checked derivations.

Everything here consumes derivations whose macros are already elaborated (the
public entry points elaborate first) and produces derivations that re-check.
The exact-subject discipline matters throughout: these builders thread the
same name-only freshness choices as term substitution, so the subjects they
construct are equal to the reduction engine's output, not merely
alpha-equivalent.

  lower_derivation      strips an index prefix off a whole derivation
  subst_derivation      the substitution lemma, derivation to derivation
  subject_reduce        transports a derivation along beta/eta steps
  subject_expand_beta   rebuilds a derivation against the reduction arrow
"""

from __future__ import annotations

from functools import reduce

from .errors import NotAnExpansionError, NotAReductError, PreconditionError
from .syntax import (
    Abs,
    App,
    Index,
    Term,
    Var,
    VarKey,
    all_names,
    fresh_name,
    free_vars,
    index_str,
    lower,
    lower_seq,
    print_term,
    substitute,
)
from .types import (
    CanonType,
    CanonType as CT,
    CArrow,
    comp_leq,
    expand_type,
    inter,
    lower_type,
    omega,
    subtype,
)
from .envs import (
    Env,
    Judgment,
    env_bind,
    env_enlarge,
    env_inter,
    env_lower,
    env_omega,
    env_restrict,
    env_without,
    mk_env,
)
from .derivations import (
    ArrE,
    ArrI,
    ArrIW,
    Ax,
    Derivation,
    ExpRule,
    InterI,
    MacroAx,
    OmegaRule,
    SubRule,
    check_derivation,
    elaborate,
    sub_to,
    var_intro,
)
from .reduction import Relation, step_positions

Path = tuple[str, ...]


# ---------------------------------------------------------------- renaming


def rename_free_in_deriv(d: Derivation, old: VarKey, new: str) -> Derivation:
    """Rename the free variable old of the subject to new, everywhere.

    Exact-key renaming: binders with the same name but a different index do
    not capture.  The caller guarantees (new, old.idx) is not already free.
    """
    match d:
        case Ax(name, comp):
            if VarKey(name, ()) == old:
                return Ax(new, comp)
            return d
        case MacroAx(name, typ):
            if VarKey(name, typ.prefix) == old:
                return MacroAx(new, typ)
            return d
        case OmegaRule(subject):
            if subject._fv.get(old.name) != old.idx:
                return d
            return OmegaRule(_rename_term(subject, old, new))
        case ArrI(var, idx, ann, premise):
            if VarKey(var, idx) == old:
                return d  # shadowed: old is not free below
            assert not (var == new and idx == old.idx), "rename would be captured"
            return ArrI(var, idx, ann, rename_free_in_deriv(premise, old, new))
        case ArrIW(var, idx, premise):
            if VarKey(var, idx) == old:
                return d
            assert not (var == new and idx == old.idx), "rename would be captured"
            return ArrIW(var, idx, rename_free_in_deriv(premise, old, new))
        case ArrE(fun, arg):
            return ArrE(
                rename_free_in_deriv(fun, old, new), rename_free_in_deriv(arg, old, new)
            )
        case InterI(left, right):
            return InterI(
                rename_free_in_deriv(left, old, new),
                rename_free_in_deriv(right, old, new),
            )
        case ExpRule(head, premise):
            if old.idx and old.idx[0] == head:
                inner = VarKey(old.name, old.idx[1:])
                return ExpRule(head, rename_free_in_deriv(premise, inner, new))
            return d
        case SubRule(premise, env, typ):
            env2 = mk_env(
                ((VarKey(new, k.idx) if k == old else k), u) for k, u in env
            )
            return SubRule(rename_free_in_deriv(premise, old, new), env2, typ)
    raise AssertionError(d)


def _rename_term(m: Term, old: VarKey, new: str) -> Term:
    """rename_var without the global freshness guard (exact-key safe)."""
    if m._fv.get(old.name) != old.idx:
        return m
    match m:
        case Var(name, idx):
            return Var(new, idx) if VarKey(name, idx) == old else m
        case Abs(var, idx, body):
            assert not (var == new and idx == old.idx), "rename would be captured"
            return Abs(var, idx, _rename_term(body, old, new))
        case App(fun, arg):
            return App(_rename_term(fun, old, new), _rename_term(arg, old, new))
    raise AssertionError(m)


# ---------------------------------------------------------------- lowering


def lower_derivation(d: Derivation, k: Index) -> Derivation:
    """Strip the index prefix k from a derivation's conclusion.

    Defined when the conclusion type degree extends k; the subject, the
    environment and the type are lowered together.
    """
    for j in k:
        d = _lower1(d, j)
    return d


def _lower1(d: Derivation, j: int) -> Derivation:
    match d:
        case OmegaRule(subject):
            return OmegaRule(lower(subject, j))
        case InterI(left, right):
            return InterI(_lower1(left, j), _lower1(right, j))
        case ExpRule(head, premise):
            if head != j:
                raise PreconditionError(
                    f"conclusion degree starts with {head}, cannot lower by {j}"
                )
            return premise
        case SubRule(premise, env, typ):
            return SubRule(_lower1(premise, j), env_lower(env, (j,)), lower_type(typ, (j,)))
        case MacroAx(name, typ):
            return MacroAx(name, lower_type(typ, (j,)))
        case Ax() | ArrI() | ArrIW() | ArrE():
            raise PreconditionError("conclusion is at degree [], cannot lower")
    raise AssertionError(d)


# ---------------------------------------------------------------- substitution


def subst_derivation(dm: Derivation, x: VarKey, dn: Derivation) -> Derivation:
    """The substitution lemma, constructively.

    From M : <G, x^L:V |- W> and N : <D |- V> build a derivation of
    M[x^L := N] : <G /\\ D |- W>.  dn's conclusion type must equal the
    binding of x exactly; coerce with a sub node first if it does not.
    """
    dm = elaborate(dm)
    dn = elaborate(dn)
    jm = check_derivation(dm)
    jn = check_derivation(dn)
    v = jm.env.get(x)
    if v is None:
        raise PreconditionError(
            f"{x.name}{index_str(x.idx)} is not in the subject environment"
        )
    if jn.typ != v:
        raise PreconditionError(
            "replacement derivation concludes at a different type than the binding"
        )
    avoid = set(all_names(jm.subject)) | set(all_names(jn.subject))
    return _subst_d(dm, x, dn, jn, avoid)


def _subst_d(
    dm: Derivation, x: VarKey, dn: Derivation, jn: Judgment, avoid: set[str]
) -> Derivation:
    """Core recursion; x is in dm's environment, jn = check(dn), jn.typ is
    exactly the binding of x.  Mirrors the term-level substitution's
    renaming choices via the threaded avoid set."""
    match dm:
        case Ax():
            return dn

        case OmegaRule(subject):
            m2 = substitute(subject, {x: jn.subject})
            target = env_inter(env_without(env_omega(subject), x), jn.env)
            return sub_to(OmegaRule(m2), target, omega(subject.degree))

        case ArrI(var, idx, ann, premise):
            key = VarKey(var, idx)
            assert key != x
            clash = var in jn.subject._fv
            if clash:
                f = fresh_name(avoid)
                avoid = avoid | {f}
                premise = rename_free_in_deriv(premise, key, f)
                var = f
            return ArrI(var, idx, ann, _subst_d(premise, x, dn, jn, avoid))

        case ArrIW(var, idx, premise):
            if var in jn.subject._fv:
                f = fresh_name(avoid)
                avoid = avoid | {f}
                var = f  # binder is not free below; the premise is untouched
            return ArrIW(var, idx, _subst_d(premise, x, dn, jn, avoid))

        case ArrE(fun, arg):
            jf = check_derivation(fun)
            ja = check_derivation(arg)
            in_f = x in jf.env
            in_a = x in ja.env
            assert in_f or in_a
            if in_f and in_a:
                dn_f = sub_to(dn, jn.env, jf.env.get(x))
                dn_a = sub_to(dn, jn.env, ja.env.get(x))
                return ArrE(
                    _subst_d(fun, x, dn_f, check_derivation(dn_f), avoid),
                    _subst_d(arg, x, dn_a, check_derivation(dn_a), avoid),
                )
            if in_f:
                return ArrE(_subst_d(fun, x, dn, jn, avoid), arg)
            return ArrE(fun, _subst_d(arg, x, dn, jn, avoid))

        case InterI(left, right):
            return InterI(
                _subst_d(left, x, dn, jn, avoid), _subst_d(right, x, dn, jn, avoid)
            )

        case ExpRule(head, premise):
            assert x.idx and x.idx[0] == head, (x, head)
            dn2 = lower_derivation(dn, (head,))
            return ExpRule(
                head, _subst_d(premise, VarKey(x.name, x.idx[1:]), dn2,
                               check_derivation(dn2), avoid)
            )

        case SubRule(premise, env, typ):
            jp = check_derivation(premise)
            dn0 = sub_to(dn, jn.env, jp.env.get(x))
            inner = _subst_d(premise, x, dn0, check_derivation(dn0), avoid)
            target = env_inter(env_without(env, x), jn.env)
            return sub_to(inner, target, typ)

    raise AssertionError(dm)


# ---------------------------------------------------------------- inversion


def generation_abs(d: Derivation) -> tuple[Index, dict]:
    """Derivation-level generation for an abstraction subject.

    For d :: lam x^L.M : <G |- U> with U nonempty, returns (K, entries) where
    K is the degree of U and entries maps each component e_K(V -> T) of U to
    (V, T, binds, premise) with

        premise :: M : <G, x^L : e_K V |- e_K {T}>     if binds
        premise :: M : <G |- e_K {T}>                  otherwise
    """
    match d:
        case ArrI(var, idx, ann, premise):
            jp = check_derivation(premise)
            t = jp.typ.comps[0]
            return (), {CArrow(ann, t): (ann, t, True, premise)}
        case ArrIW(var, idx, premise):
            jp = check_derivation(premise)
            t = jp.typ.comps[0]
            w = omega(idx)
            return (), {CArrow(w, t): (w, t, False, premise)}
        case InterI(left, right):
            kl, el = generation_abs(left)
            kr, er = generation_abs(right)
            assert kl == kr
            merged = dict(el)
            for comp, entry in er.items():
                merged.setdefault(comp, entry)
            return kl, merged
        case ExpRule(head, premise):
            k0, entries = generation_abs(premise)
            return (head,) + k0, {
                comp: (v, t, binds, ExpRule(head, p))
                for comp, (v, t, binds, p) in entries.items()
            }
        case SubRule(premise, env, typ):
            jp = check_derivation(premise)
            k = typ.prefix
            k0, entries = generation_abs(premise)
            assert k0 == k
            out = {}
            for comp in typ.comps:
                witness = next(
                    c for c in jp.typ.comps if comp_leq(c, comp)
                )
                v0, t0, binds, p0 = entries[witness]
                v, t = comp.arg, comp.res
                res_t = CT(k, (t,))
                if binds:
                    key = _binder_key(d)
                    p = sub_to(p0, env_bind(env, key, CT(k + v.prefix, v.comps)), res_t)
                else:
                    p = sub_to(p0, env, res_t)
                out[comp] = (v, t, binds, p)
            return k, out
        case OmegaRule():
            j = check_derivation(d)
            return j.typ.prefix, {}
    raise AssertionError(f"not an abstraction derivation root: {type(d).__name__}")


def _binder_key(d: Derivation) -> VarKey:
    """The binder VarKey of the abstraction subject of d."""
    m = check_derivation(d).subject
    assert isinstance(m, Abs), m
    return VarKey(m.var, m.idx)


def generation_app_var(d: Derivation, x: VarKey, t_target) -> Derivation:
    """From d :: P x^L : <G, x^L:Vx |- {T0}> with T0 <= t_target (and x not
    free in P), build P : <G |- {Vx -> t_target}> where Vx is d's binding."""
    match d:
        case ArrE(fun, arg):
            jf = check_derivation(fun)
            ja = check_derivation(arg)
            arrow_comp = jf.typ.comps[0]
            assert comp_leq(arrow_comp.res, t_target)
            vx = ja.env.get(x)
            assert vx is not None and subtype(vx, arrow_comp.arg)
            return sub_to(fun, jf.env, CT((), (CArrow(vx, t_target),)))
        case InterI(left, right):
            for side in (left, right):
                js = check_derivation(side)
                if any(comp_leq(c, t_target) for c in js.typ.comps):
                    return generation_app_var(side, x, t_target)
            raise AssertionError("no intersection side dominates the target")
        case SubRule(premise, env, typ):
            inner = generation_app_var(premise, x, t_target)
            vx_t = env.get(x)
            return sub_to(
                inner, env_without(env, x), CT((), (CArrow(vx_t, t_target),))
            )
    raise AssertionError(f"unexpected rule at an applied-variable subject: {type(d).__name__}")


# ---------------------------------------------------------------- reduction


def subject_reduce(d: Derivation, n: Term, r: Relation, fuel: int = 10000) -> Derivation:
    """Transport a derivation of M along M ->>_r N.

    The result types N at the original type, in the original environment
    restricted to the free variables of N.  The step sequence is found by
    breadth-first search over exact reducts; NotAReductError if N is not
    reachable within fuel steps.
    """
    d = elaborate(d)
    j = check_derivation(d)
    trail = _find_reduction(j.subject, n, r, fuel)
    if trail is None:
        raise NotAReductError(
            f"{print_term(n)} is not a {r.value}-reduct of {print_term(j.subject)}"
        )
    for kind, path, reduct in trail:
        d = _transport(d, kind, path, reduct)
    return d


def _find_reduction(
    m: Term, n: Term, r: Relation, fuel: int
) -> list[tuple[str, Path, Term]] | None:
    """BFS for a step sequence m ->>_r n, returned as (kind, path, reduct)."""
    if m == n:
        return []
    parents: dict[Term, tuple[Term, str, Path]] = {m: None}
    front = [m]
    budget = fuel
    while front and budget > 0:
        nxt = []
        for t in front:
            for kind, path, reduct in step_positions(t, r):
                budget -= 1
                if reduct not in parents:
                    parents[reduct] = (t, kind, path)
                    if reduct == n:
                        out = []
                        cur = n
                        while parents[cur] is not None:
                            prev, kind2, path2 = parents[cur]
                            out.append((kind2, path2, cur))
                            cur = prev
                        out.reverse()
                        return out
                    nxt.append(reduct)
                if budget <= 0:
                    break
            if budget <= 0:
                break
        front = nxt
    return None


def _transport(d: Derivation, kind: str, path: Path, reduct: Term) -> Derivation:
    """One-step subject reduction at a known position."""
    j = check_derivation(d)
    target_env = env_restrict(j.env, free_vars(reduct))

    match d:
        case OmegaRule():
            return OmegaRule(reduct)
        case InterI(left, right):
            return InterI(
                _transport(left, kind, path, reduct),
                _transport(right, kind, path, reduct),
            )
        case SubRule(premise, env, typ):
            inner = _transport(premise, kind, path, reduct)
            return sub_to(inner, target_env, typ)
        case ExpRule(head, premise):
            inner = _transport(premise, kind, path, lower(reduct, head))
            return ExpRule(head, inner)
        case _:
            pass

    if path:
        return _transport_congruence(d, kind, path, reduct, target_env, j)
    if kind == "beta":
        return _transport_beta(d, reduct, target_env)
    return _transport_eta(d, j)


def _transport_congruence(
    d: Derivation, kind: str, path: Path, reduct: Term, target_env: Env, j: Judgment
) -> Derivation:
    match d, path[0]:
        case (ArrI(var, idx, ann, premise), "body"):
            assert isinstance(reduct, Abs)
            inner = _transport(premise, kind, path[1:], reduct.body)
            ji = check_derivation(inner)
            key = VarKey(var, idx)
            if key in ji.env:
                return ArrI(var, idx, ann, inner)
            # the step erased the binder from the body: reweaken
            rebuilt = ArrIW(var, idx, inner)
            return sub_to(rebuilt, target_env, j.typ)
        case (ArrIW(var, idx, premise), "body"):
            assert isinstance(reduct, Abs)
            inner = _transport(premise, kind, path[1:], reduct.body)
            rebuilt = ArrIW(var, idx, inner)
            return sub_to(rebuilt, target_env, j.typ)
        case (ArrE(fun, arg), "fun"):
            assert isinstance(reduct, App)
            inner = _transport(fun, kind, path[1:], reduct.fun)
            return sub_to(ArrE(inner, arg), target_env, j.typ)
        case (ArrE(fun, arg), "arg"):
            assert isinstance(reduct, App)
            inner = _transport(arg, kind, path[1:], reduct.arg)
            return sub_to(ArrE(fun, inner), target_env, j.typ)
    raise AssertionError((d, path))


def _transport_beta(d: Derivation, reduct: Term, target_env: Env) -> Derivation:
    assert isinstance(d, ArrE)
    j = check_derivation(d)
    redex = j.subject
    assert isinstance(redex, App) and isinstance(redex.fun, Abs)
    x = VarKey(redex.fun.var, redex.fun.idx)
    k, entries = generation_abs(d.fun)
    assert k == ()
    jf = check_derivation(d.fun)
    (v, t, binds, prem) = entries[jf.typ.comps[0]]
    if binds:
        out = subst_derivation(prem, x, d.arg)
    else:
        out = sub_to(prem, target_env, CT((), (t,)))
    jo = check_derivation(out)
    assert jo.subject == reduct, (print_term(jo.subject), print_term(reduct))
    return sub_to(out, target_env, jo.typ)


def _transport_eta(d: Derivation, j: Judgment) -> Derivation:
    assert isinstance(d, ArrI), f"eta redex under rule {type(d).__name__}"
    body = j.subject.body
    assert isinstance(body, App) and isinstance(body.arg, Var)
    x = VarKey(body.arg.name, body.arg.idx)
    t = check_derivation(d.premise).typ.comps[0]
    return generation_app_var(d.premise, x, t)


# ---------------------------------------------------------------- expansion


def subject_expand_beta(d: Derivation, m: Term, fuel: int = 10000) -> Derivation:
    """Transport a derivation of N backwards along m ->>_beta N.

    The result types m at the original type; the environment is the original
    one enlarged with omega bindings for the free variables the reduction had
    discarded.  NotAnExpansionError when m does not beta-reduce to the
    subject within fuel steps.
    """
    d = elaborate(d)
    j = check_derivation(d)
    trail = _find_reduction(m, j.subject, Relation.BETA, fuel)
    if trail is None:
        raise NotAnExpansionError(
            f"{print_term(m)} does not beta-reduce to {print_term(j.subject)}"
        )
    sources = [m] + [reduct for _, _, reduct in trail[:-1]]
    for src, (kind, path, _) in zip(reversed(sources), reversed(trail)):
        d = _expand1(d, src, path)
    return d


def _expand1(d: Derivation, src: Term, path: Path) -> Derivation:
    """One-step beta expansion: d types the reduct of src at path."""
    match d:
        case OmegaRule():
            return OmegaRule(src)
        case InterI(left, right):
            return InterI(_expand1(left, src, path), _expand1(right, src, path))
        case SubRule(premise, env, typ):
            inner = _expand1(premise, src, path)
            return sub_to(inner, env_enlarge(env, free_vars(src)), typ)
        case ExpRule(head, premise):
            inner = _expand1(premise, lower(src, head), path)
            return ExpRule(head, inner)
        case _:
            pass

    if not path:
        return _expand_redex(d, src)

    match d, path[0]:
        case (ArrI(var, idx, ann, premise), "body"):
            assert isinstance(src, Abs) and src.var == var and src.idx == idx
            inner = _expand1(premise, src.body, path[1:])
            return ArrI(var, idx, ann, inner)
        case (ArrIW(var, idx, premise), "body"):
            assert isinstance(src, Abs) and src.var == var and src.idx == idx
            inner = _expand1(premise, src.body, path[1:])
            ji = check_derivation(inner)
            key = VarKey(var, idx)
            if key in ji.env:
                # the expansion reintroduced the binder, at omega
                return ArrI(var, idx, omega(idx), inner)
            return ArrIW(var, idx, inner)
        case (ArrE(fun, arg), "fun"):
            assert isinstance(src, App)
            return ArrE(_expand1(fun, src.fun, path[1:]), arg)
        case (ArrE(fun, arg), "arg"):
            assert isinstance(src, App)
            return ArrE(fun, _expand1(arg, src.arg, path[1:]))
    raise AssertionError((d, path))


def _expand_redex(d: Derivation, src: Term) -> Derivation:
    """Rebuild a derivation of the redex src from one of its contractum."""
    j = check_derivation(d)
    assert isinstance(src, App) and isinstance(src.fun, Abs)
    fun = src.fun
    x = VarKey(fun.var, fun.idx)
    p, q = fun.body, src.arg
    u = j.typ
    k = u.prefix
    assert fun.idx[: len(k)] == k, "binder index must extend the type degree"
    residual = fun.idx[len(k):]

    if u.is_omega():
        return sub_to(OmegaRule(src), env_enlarge(j.env, free_vars(src)), u)

    if p._fv.get(x.name) == x.idx:
        v, dp, dq = _split(d, x, p, q)
        dp_low = lower_derivation(dp, k)
        dq_low = lower_derivation(dq, k)
        jp_low = check_derivation(dp_low)
        v_low = lower_type(v, k)
        pieces = []
        for t in u.comps:
            d_t = sub_to(dp_low, jp_low.env, CT((), (t,)))
            d_abs = ArrI(x.name, residual, v_low, d_t)
            pieces.append(ArrE(d_abs, dq_low))
    else:
        dp_low = lower_derivation(d, k)
        jp_low = check_derivation(dp_low)
        dq_low = OmegaRule(lower_seq(q, k))
        pieces = []
        for t in u.comps:
            d_t = sub_to(dp_low, jp_low.env, CT((), (t,)))
            d_abs = ArrIW(x.name, residual, d_t)
            pieces.append(ArrE(d_abs, dq_low))

    out = reduce(InterI, pieces)
    for head in reversed(k):
        out = ExpRule(head, out)
    return out


def _split(
    d: Derivation, x: VarKey, p: Term, q: Term
) -> tuple[CanonType, Derivation, Derivation]:
    """Un-substitute: from d :: P[x:=Q] : <G |- U> with x free in P, produce
    (V, dP :: P : <G1, x:V |- U>, dQ :: Q : <G2 |- V>) with G1 /\\ G2 = G."""
    if p == Var(x.name, x.idx):
        j = check_derivation(d)
        return j.typ, var_intro(x.name, j.typ), d

    match d:
        case OmegaRule():
            return omega(x.idx), OmegaRule(p), OmegaRule(q)

        case InterI(left, right):
            v1, dp1, dq1 = _split(left, x, p, q)
            v2, dp2, dq2 = _split(right, x, p, q)
            v = inter(v1, v2)
            jp1, jp2 = check_derivation(dp1), check_derivation(dp2)
            ep = env_bind(
                env_inter(env_without(jp1.env, x), env_without(jp2.env, x)), x, v
            )
            dp = InterI(sub_to(dp1, ep, jp1.typ), sub_to(dp2, ep, jp2.typ))
            jq1, jq2 = check_derivation(dq1), check_derivation(dq2)
            eq = env_inter(jq1.env, jq2.env)
            dq = InterI(sub_to(dq1, eq, v1), sub_to(dq2, eq, v2))
            return v, dp, dq

        case ExpRule(head, premise):
            assert x.idx and x.idx[0] == head
            x2 = VarKey(x.name, x.idx[1:])
            v0, dp0, dq0 = _split(premise, x2, lower(p, head), lower(q, head))
            return expand_type(head, v0), ExpRule(head, dp0), ExpRule(head, dq0)

        case SubRule(premise, env, typ):
            v, dp0, dq0 = _split(premise, x, p, q)
            p_keys = frozenset(free_vars(p)) - {x}
            q_keys = free_vars(q)
            ep = env_bind(env_restrict(env, p_keys), x, v)
            dp = sub_to(dp0, ep, typ)
            dq = sub_to(dq0, env_restrict(env, q_keys), v)
            return v, dp, dq

        case ArrE(fun, arg):
            assert isinstance(p, App)
            p1, p2 = p.fun, p.arg
            in1 = p1._fv.get(x.name) == x.idx
            in2 = p2._fv.get(x.name) == x.idx
            if in1 and in2:
                v1, dpa, dqa = _split(fun, x, p1, q)
                v2, dpb, dqb = _split(arg, x, p2, q)
                v = inter(v1, v2)
                ja1, ja2 = check_derivation(dpa), check_derivation(dpb)
                e1 = env_bind(env_without(ja1.env, x), x, v)
                e2 = env_bind(env_without(ja2.env, x), x, v)
                dp = ArrE(sub_to(dpa, e1, ja1.typ), sub_to(dpb, e2, ja2.typ))
                jq1, jq2 = check_derivation(dqa), check_derivation(dqb)
                eq = env_inter(jq1.env, jq2.env)
                dq = InterI(sub_to(dqa, eq, v1), sub_to(dqb, eq, v2))
                return v, dp, dq
            if in1:
                v, dpa, dq = _split(fun, x, p1, q)
                return v, ArrE(dpa, arg), dq
            assert in2
            v, dpb, dq = _split(arg, x, p2, q)
            return v, ArrE(fun, dpb), dq

        case ArrI(var, idx, ann, premise):
            assert isinstance(p, Abs) and p.idx == idx
            key = VarKey(var, idx)
            if p.var == var:
                body = p.body
                v, dp0, dq = _split(premise, x, body, q)
                return v, ArrI(var, idx, ann, dp0), dq
            # the substitution renamed p's binder to var; align and undo
            body = _rename_term(p.body, VarKey(p.var, idx), var)
            v, dp0, dq = _split(premise, x, body, q)
            dp0 = rename_free_in_deriv(dp0, key, p.var)
            return v, ArrI(p.var, idx, ann, dp0), dq

        case ArrIW(var, idx, premise):
            assert isinstance(p, Abs) and p.idx == idx
            v, dp0, dq = _split(premise, x, p.body, q)
            return v, ArrIW(p.var, idx, dp0), dq

    raise AssertionError((d, p))
