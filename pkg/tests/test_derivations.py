import pytest

from ikc.derivations import (
    AbsComponents,
    ArrE,
    ArrI,
    ArrIW,
    Ax,
    ExpRule,
    InterI,
    MacroAx,
    MacroInterI,
    OmegaRule,
    OmegaShape,
    ShapeRefutation,
    SubRule,
    check_derivation,
    elaborate,
    invert_abs,
    meet,
    parse_derivation,
    print_derivation,
    sub_to,
    var_intro,
)
from ikc.envs import parse_env, parse_judgment, print_judgment
from ikc.errors import RuleError
from ikc.syntax import parse_term
from ikc.types import CAtom, parse_type


def pt(s):
    return parse_type(s)


def check(d):
    return print_judgment(check_derivation(d))


# ---------------------------------------------------------------- rules


def test_ax():
    assert check(Ax("x", CAtom("a"))) == "(judg x[] ((x [] a)) a)"


def test_omega_rule_env_is_omega_over_fv():
    d = OmegaRule(parse_term("(app x[] y[1])"))
    assert check(d) == "(judg (app x[] y[1]) ((x [] (w [])) (y [1] (w [1]))) (w []))"


def test_arr_i():
    d = ArrI("y", (), pt("a"), var_intro("y", pt("a")))
    assert check(d) == "(judg (lam y [] y[]) () (-> a a))"


def test_arr_i_requires_binding_present():
    with pytest.raises(RuleError):
        check_derivation(ArrI("z", (), pt("a"), var_intro("y", pt("a"))))


def test_arr_i_annotation_must_match():
    with pytest.raises(RuleError):
        check_derivation(ArrI("y", (), pt("b"), var_intro("y", pt("a"))))


def test_arr_iw_binder_must_be_absent():
    d = ArrIW("x", (), var_intro("y", pt("a")))
    assert check(d) == "(judg (lam x [] y[]) ((y [] a)) (-> (w []) a))"
    with pytest.raises(RuleError):
        check_derivation(ArrIW("y", (), var_intro("y", pt("a"))))


def test_arr_e_exact_argument_match():
    f = var_intro("f", pt("(-> a b)"))
    with pytest.raises(RuleError):
        check_derivation(ArrE(f, var_intro("y", pt("(^ a c)"))))
    d = ArrE(f, var_intro("y", pt("a")))
    assert check(d) == "(judg (app f[] y[]) ((f [] (-> a b)) (y [] a)) b)"


def test_arr_e_fun_must_be_single_arrow():
    with pytest.raises(RuleError):
        check_derivation(ArrE(var_intro("f", pt("a")), var_intro("y", pt("a"))))


def test_inter_i_needs_identical_env():
    left = ArrI("y", (), pt("a"), var_intro("y", pt("a")))
    right = ArrI("y", (), pt("b"), var_intro("y", pt("b")))
    assert check(InterI(left, right)) == "(judg (lam y [] y[]) () (^ (-> a a) (-> b b)))"
    with pytest.raises(RuleError):
        check_derivation(InterI(left, var_intro("x", pt("a"))))


def test_exp_rule_lifts_subject_env_type():
    d = ExpRule(2, Ax("x", CAtom("a")))
    assert check(d) == "(judg x[2] ((x [2] (e 2 a))) (e 2 a))"


def test_sub_rule():
    d = SubRule(var_intro("x", pt("(^ a b)")), parse_env("((x [] (^ a b)))"), pt("a"))
    assert check(d) == "(judg x[] ((x [] (^ a b))) a)"
    with pytest.raises(RuleError):
        check_derivation(
            SubRule(var_intro("x", pt("a")), parse_env("((x [] a))"), pt("b"))
        )


def test_sub_rule_cannot_weaken_env():
    with pytest.raises(RuleError):
        check_derivation(
            SubRule(var_intro("x", pt("(^ a b)")), parse_env("((x [] a))"), pt("a"))
        )


# ---------------------------------------------------------------- macros


def test_macro_ax_elaborates():
    d = MacroAx("x", pt("(e 1 (^ a b))"))
    j = check_derivation(d)
    assert print_judgment(j) == "(judg x[1] ((x [1] (e 1 (^ a b)))) (e 1 (^ a b)))"
    assert check_derivation(elaborate(d)) == j


def test_macro_inter_i_meets_envs():
    d = MacroInterI(Ax("x", CAtom("a")), MacroAx("x", pt("(-> b b)")))
    assert check(d) == "(judg x[] ((x [] (^ a (-> b b)))) (^ a (-> b b)))"


def test_meet_rejects_different_subjects():
    with pytest.raises(RuleError):
        meet(Ax("x", CAtom("a")), Ax("y", CAtom("a")))


def test_sub_to_noop_at_target():
    d = var_intro("x", pt("a"))
    assert sub_to(d, parse_env("((x [] a))"), pt("a")) is d


# ---------------------------------------------------------------- files


def test_parse_print_round_trip(corpus_files):
    for p in corpus_files:
        text = p.read_text()
        assert print_derivation(parse_derivation(text)) + "\n" == text


def test_checked_corpus_judgments_are_stable(corpus):
    for name, d, j in corpus:
        assert check_derivation(d) == j


# ---------------------------------------------------------------- inversion


def test_invert_abs_on_arrow():
    j = parse_judgment("(judg (lam y [] y[]) () (-> a a))")
    shape = invert_abs(j)
    assert isinstance(shape, AbsComponents)
    assert shape.prefix == ()
    [(arg, res, binds, premise)] = shape.entries
    assert arg == pt("a") and res == CAtom("a") and binds


def test_invert_abs_omega():
    j = parse_judgment("(judg (lam y [] y[]) () (w []))")
    assert isinstance(invert_abs(j), OmegaShape)


def test_invert_abs_refutes_atom_component():
    j = parse_judgment("(judg (lam y [] y[]) () a)")
    assert isinstance(invert_abs(j), ShapeRefutation)
