import random

import pytest

from gradedfmod.extension import (
    CandidateSplitting,
    ExtensionL,
    WalkthroughMismatch,
    Stage,
    Walkthrough,
    candidate_g,
    default_precision,
    enumerate_candidates,
    obstruction,
    obstruction_numerator,
    splitting_search,
    square_defect,
    standard_test_element,
    surviving_term,
    theta_split,
    walkthrough,
)
from gradedfmod.errors import PrecisionError
from gradedfmod.field import get_field
from gradedfmod.frobenius import theta_e
from gradedfmod.hom import HomRxE, theta_hom
from gradedfmod.modules import EElt, RxElt, SumElt, e_from_fraction, e_is_zero_cech
from gradedfmod.poly import Poly, parse_poly
from gradedfmod.sampling import random_me

F2, F3, F5 = get_field(2), get_field(3), get_field(5)


def inv(F, a, b, c=1):
    return EElt.inverse_monomial(F, a, b, c)


def cand(F, alpha, text):
    return CandidateSplitting(alpha, parse_poly(text, F))


def test_candidate_validation():
    with pytest.raises(ValueError):
        cand(F2, 2, "x*y")  # no y^2 term
    with pytest.raises(ValueError):
        cand(F2, 2, "y^2 + x")
    with pytest.raises(ValueError):
        CandidateSplitting(-1, Poly.zero(F2))
    assert cand(F3, 1, "y + x").fraction == RxElt(parse_poly("y + x", F3), 1)


@pytest.mark.parametrize("F", [F2, F3, F5])
def test_candidate_counts(F):
    q = F.q
    for alpha_max in range(4):
        cands = list(enumerate_candidates(F, alpha_max))
        assert len(cands) == 1 + sum((q - 1) * q**a for a in range(alpha_max + 1))
        assert cands[0].t.is_zero()
        assert len({(c.alpha, c.t) for c in cands}) == len(cands)


def test_candidate_g():
    F = F3
    alpha = 1
    c = cand(F, alpha, "y + 2*x")
    test = standard_test_element(F, alpha, 40)
    B = alpha * 3 + 2
    got = candidate_g(c, test)
    assert got.first == test.first
    assert got.second == test.second + e_from_fraction(c.t, alpha + 1, B)
    ident = CandidateSplitting(0, Poly.zero(F))
    assert candidate_g(ident, test) == test
    # g restricts to the identity on E and induces the identity on M
    e_only = SumElt(HomRxE.zero(F, -5), inv(F, 2, 3))
    assert candidate_g(c, e_only) == e_only


def test_obstruction_examples():
    for t in (0, 1):
        c = CandidateSplitting(0, Poly.constant(F2, t))
        assert obstruction(c) == inv(F2, 2, 1)
    for t in range(3):
        c = CandidateSplitting(0, Poly.constant(F3, t))
        assert obstruction(c) == inv(F3, 2, 1, 2)


def test_defect_example_p2():
    ext = ExtensionL(F2)
    c = CandidateSplitting(0, Poly.constant(F2, 1))
    d = square_defect(ext, c, standard_test_element(F2, 0, 40))
    assert d.first.is_zero()
    assert d.second == inv(F2, 2, 1)


def test_the_minus_one_over_x2y_term_can_cancel():
    # For p = 2, alpha = 2, t = y^2 + x*y the t-term contributes +1/(x^2 y^5)
    c = cand(F2, 2, "y^2 + x*y")
    obs = obstruction(c)
    assert obs.coefficient(2, 5) == 0
    assert obs == inv(F2, 5, 2)
    (a, b), coeff = surviving_term(c)
    assert obs.coefficient(a, b) == coeff


@pytest.mark.parametrize("F", [F2, F3, F5, get_field(2, 2)])
def test_obstruction_closed_forms_agree(F):
    for c in enumerate_candidates(F, 2):
        obs = obstruction(c)
        h, A, B = obstruction_numerator(c)
        assert obs == -e_from_fraction(h, A, B)
        assert not e_is_zero_cech(h, A, B)
        (a, b), coeff = surviving_term(c)
        assert coeff != 0 and obs.coefficient(a, b) == coeff
        assert not obs.is_zero()


@pytest.mark.parametrize("F", [F2, F3])
def test_defect_equals_obstruction(F):
    ext = ExtensionL(F)
    for c in enumerate_candidates(F, 2):
        test = standard_test_element(F, c.alpha, default_precision(F.p, 2))
        d = square_defect(ext, c, test)
        assert d.first.is_zero()
        assert d.second == obstruction(c)


def test_defect_ignores_padding():
    ext = ExtensionL(F3)
    c = cand(F3, 1, "y + x")
    seen = {str(square_defect(ext, c, standard_test_element(F3, 1, prec)).second) for prec in (12, 40, 90)}
    assert len(seen) == 1
    with pytest.raises(PrecisionError):
        square_defect(ext, c, standard_test_element(F3, 1, 5))


def test_split_extension_control():
    rng = random.Random(0)
    for F in (F2, F3):
        ext = ExtensionL(F, RxElt.zero(F))
        ident = CandidateSplitting(0, Poly.zero(F))
        for _ in range(20):
            v = random_me(rng, F, rng.randint(-10, 2), 30)
            assert square_defect(ext, ident, v).is_zero()
            assert ext.theta(v) == theta_split(v)


def test_theta_l_split_is_componentwise():
    rng = random.Random(1)
    ext = ExtensionL(F3, RxElt.zero(F3))
    for _ in range(20):
        v = random_me(rng, F3, rng.randint(-10, -2), 30)
        t = ext.theta(v)
        assert t.component(0) == theta_hom(v.first)
        assert t.component(1) == theta_e(v.second)


def test_theta_l_injective_on_sample():
    rng = random.Random(2)
    ext = ExtensionL(F2)
    sample = []
    for _ in range(50):
        v = random_me(rng, F2, -6, 30)
        if not any(v == w for w in sample):
            sample.append(v)
    images = [ext.theta(v) for v in sample]
    for i in range(len(images)):
        for j in range(i):
            assert not images[i] == images[j]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_search_certifies(p):
    rep = splitting_search(p, alpha_max=2)
    assert rep.certified and rep.consistent
    assert not rep.splitting_witnesses
    assert all(r.consistent for r in rep.candidates)


def test_search_finds_split_witness_for_trivial_twist():
    rep = splitting_search(2, alpha_max=1, u=RxElt.zero(F2))
    assert not rep.certified
    labels = [(r.alpha, r.t) for r in rep.splitting_witnesses]
    assert (0, "0") in labels


def test_search_is_deterministic_and_parallel_safe():
    a = splitting_search(3, alpha_max=1)
    b = splitting_search(3, alpha_max=1, workers=2)
    assert [r.as_dict() for r in a.candidates] == [r.as_dict() for r in b.candidates]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_walkthrough_matches(p, alpha):
    walk = walkthrough(p, alpha)
    assert walk.ok, [s for s in walk.stages if not s.match]
    walk.check()


def test_walkthrough_other_t():
    assert walkthrough(2, 2, parse_poly("y^2 + x*y", F2)).ok
    assert walkthrough(3, 1, parse_poly("2*y + x", F3)).ok
    assert walkthrough(2, 1, e=2).ok


def test_walkthrough_reports_failing_stage():
    w = Walkthrough(2, 0, "1", [Stage("a", "1", "1", True), Stage("b", "0", "1", False)])
    with pytest.raises(WalkthroughMismatch) as info:
        w.check()
    assert info.value.stage == "b"


def test_walkthrough_cross_term():
    F = F2
    walk = walkthrough(2, 1)
    stage = next(s for s in walk.stages if s.name == "psi_2(1 (x) 1)")
    B = 4
    expected = -inv(F, 2, B - 1) + inv(F, 1, B) + e_from_fraction(Poly.y(F), 2, B)
    assert stage.computed == str(expected)
