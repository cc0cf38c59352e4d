import pytest

from ikc.derivations import parse_derivation
from ikc.gen import enumerate_closed
from ikc.reduction import Relation
from ikc.semantics import (
    EXAMPLE_TYPES,
    completeness_sample,
    leftmost_beta_nf,
    lift_correspondence,
    oracle_membership,
    saturation_check,
    soundness_check,
    verdict_line,
)
from ikc.syntax import lift, parse_term, print_term

pt = parse_term

OMEGA = "(app (lam x [] (app x[] x[])) (lam x [] (app x[] x[])))"


# ---------------------------------------------------------------- anchors

MEMBER_ANCHORS = [
    ("id0", "(lam y [] y[])"),
    ("id0", "(app (lam x [] x[]) (lam y [] y[]))"),
    ("id1", "(lam y [1] y[1])"),
    ("d", "(lam y [] (app y[] y[]))"),
    ("nat0", "(lam f [] f[])"),
    ("nat0", "(lam f [] (lam y [] (app f[] y[])))"),
    ("nat0", "(lam f [] (lam y [] (app f[] (app f[] y[]))))"),
    ("nat1", "(lam f [1] (lam y [1] (app f[1] y[1])))"),
    ("natp0", "(lam f [] f[])"),
    ("natp0", "(lam f [] (lam y [1] (app f[] y[1])))"),
]

NON_MEMBER_ANCHORS = [
    ("id0", "(lam y [] (lam x [] (app y[] x[])))"),
    ("d", "(lam y [] y[])"),
    ("nat0", "(lam f [] (lam y [] y[]))"),
    ("natp0", "(lam f [] (lam y [1] (app f[] (app f[] y[1]))))"),
    ("id0", OMEGA),
]


@pytest.mark.parametrize("tag,term", MEMBER_ANCHORS)
def test_member_anchor(tag, term):
    v = oracle_membership(tag, pt(term))
    assert v.member and not v.undecided


@pytest.mark.parametrize("tag,term", NON_MEMBER_ANCHORS)
def test_non_member_anchor(tag, term):
    v = oracle_membership(tag, pt(term))
    assert not v.member and not v.undecided


def test_free_variable_gate():
    v = oracle_membership("id0", pt("y[]"))
    assert not v.member and not v.undecided
    assert "free" in v.reason


def test_degree_gate():
    v = oracle_membership("id1", pt("(lam y [] y[])"))
    assert not v.member and not v.undecided
    assert "degree" in v.reason


# ---------------------------------------------------------------- reduction loop


def test_leftmost_nf_cycle_detection():
    nf, cycled = leftmost_beta_nf(pt(OMEGA), 500)
    assert nf is None and cycled


def test_cycling_term_is_definite_non_member():
    v = oracle_membership("id0", pt(OMEGA))
    assert not v.member and not v.undecided
    assert "no beta normal form" in v.reason


def test_tiny_fuel_is_undecided():
    grower = pt(
        "(app (lam x [] (app (app x[] x[]) x[]))"
        " (lam x [] (app (app x[] x[]) x[])))"
    )
    v = oracle_membership("id0", grower, fuel=3)
    assert v.undecided and not v.member


def test_no_undecided_on_small_closed_terms():
    pool = enumerate_closed(7)
    for tag in EXAMPLE_TYPES:
        for m in pool:
            v = oracle_membership(tag, m)
            assert not v.undecided, (tag, print_term(m))


# ---------------------------------------------------------------- reports


def test_soundness_on_identity_derivation():
    d = parse_derivation("(arrI y [] a (ax' y a))")
    assert soundness_check(d, "id0")


def test_soundness_rejects_open_environment():
    d = parse_derivation("(ax' y a)")
    with pytest.raises(ValueError):
        soundness_check(d, "id0")


def test_completeness_small_id0_and_d():
    for tag in ("id0", "d"):
        rep = completeness_sample(tag, 7)
        assert rep.members > 0
        assert rep.refuted == 0
        assert rep.unknown == 0
        assert rep.found == rep.members


def test_saturation_members_closed_under_expansion():
    members = [
        m
        for m in enumerate_closed(5)
        if oracle_membership("id0", m).member
    ]
    ambient = enumerate_closed(7)
    rep = saturation_check(members, ambient, Relation.BETA, 3)
    hard = [
        (m, w)
        for m, w in rep.violations
        if not oracle_membership("id0", m).member
    ]
    assert hard == []


def test_lift_correspondence_pairs():
    sample = enumerate_closed(6, degree=())
    assert lift_correspondence("id1", "id0", sample) == []
    assert lift_correspondence("nat1", "nat0", sample) == []


def test_lift_matches_manual_lift():
    m = pt("(lam y [] y[])")
    v0 = oracle_membership("id0", m)
    v1 = oracle_membership("id1", lift(m, 1))
    assert v0.member and v1.member


# ---------------------------------------------------------------- report text


def test_verdict_line_member():
    m = pt("(app (lam x [] x[]) (lam y [] y[]))")
    line = verdict_line(m, oracle_membership("id0", m))
    assert line == (
        "(app (lam x [] x[]) (lam y [] y[]))"
        "\tmember\tnormal form (lam y [] y[])"
    )


def test_verdict_line_non_member():
    m = pt(OMEGA)
    line = verdict_line(m, oracle_membership("id0", m))
    assert "\tnon-member\t" in line
