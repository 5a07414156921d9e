import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadfield.forms import SplittingType
from quadfield.intbase import gcd, is_prime, kronecker
from quadfield.theorem_lab import (
    Case,
    FamilyParams,
    QuadInt,
    Verdict,
    case_analysis,
    check_gcd_branch,
    compose_eq22,
    gen_bl_family,
    gen_paper_family,
    gen_yokoi,
    integrality_claim,
    make_alpha,
    make_beta,
    principal_ideal_test,
    verify_theorem,
)

F = FamilyParams


@pytest.mark.parametrize("x, y, d, norm", [(7, 1, 69, -5), (1, 1, 13, -3), (3, 1, 5, 1)])
def test_make_alpha(x, y, d, norm):
    assert make_alpha(x, y, d).norm == norm


def test_make_alpha_parity():
    with pytest.raises(ValueError):
        make_alpha(2, 1, 69)
    with pytest.raises(ValueError):
        make_alpha(1, 1, 6)
    assert make_alpha(4, 2, 6).norm == (16 - 24) // 4


@pytest.mark.parametrize("params, s, norm", [
    (F(3, 1, 5), 13, 25), (F(1, 1, 3), 7, 9), (F(5, 1, 3), 11, 9),
])
def test_make_beta(params, s, norm):
    beta = make_beta(params)
    assert (beta.s, beta.t, beta.d, beta.norm) == (s, params.m, params.d, norm)


def test_make_beta_rejects():
    with pytest.raises(ValueError):
        make_beta(F(3, 1, 3))  # d = 45
    with pytest.raises(ValueError):
        make_beta(F(3, 1, 9))


def test_compose_examples():
    out = compose_eq22(F(1, 1, 3), 1, 1)
    assert (out.X, out.Y, out.integral, out.norm_preserved) == (-1, -1, True, True)
    out = compose_eq22(F(3, 1, 5), 7, 1)
    assert (out.X_num, out.Y_num, out.integral, out.X) == (22, -6, False, None)
    assert out.components()[1] == pytest.approx(-0.6)
    out = compose_eq22(F(3, 1, 5), 7, 1, use_conjugate=True)
    assert (out.X, out.Y, out.integral) == (16, 2, True)
    assert 16**2 - 69 * 4 == -20


def test_compose_rejects_non_solution():
    with pytest.raises(ValueError):
        compose_eq22(F(3, 1, 5), 7, 2)


def test_integrality_examples():
    assert integrality_claim(F(1, 1, 3), 1, 1)["beta_integral"]
    assert integrality_claim(F(3, 1, 5), 7, 1) == {"beta_integral": False, "conj_integral": True}
    assert integrality_claim(F(3, 1, 5), 16, 2)["beta_integral"]
    out = compose_eq22(F(3, 1, 5), 16, 2)
    assert (out.X, out.Y) == (7, -1)


def test_case_examples():
    assert case_analysis(F(1, 1, 3), 1, 1) is Case.BOUNDARY_A1Y1
    assert case_analysis(F(3, 1, 5), 7, 1) is Case.PREMISE_FAILS
    # hypothetical: x = 17 puts (5, 1, 3) in the first case; 1 >= 17 fails
    assert case_analysis(F(5, 1, 3), 17, 1, strict=False) is Case.CASE1_CONTRADICTION
    with pytest.raises(ValueError):
        case_analysis(F(5, 1, 3), 17, 1)


def test_case2_contradiction_hypothetical():
    # Y_num = m x - c y must be <= -2p y and divisible by 2p
    p = F(3, 1, 5)  # c = 13
    assert case_analysis(p, -7, 1, strict=False) is Case.CASE2_CONTRADICTION


def test_gcd_branch_examples():
    r = check_gcd_branch(F(3, 5, 5))
    assert r == {"applicable": True, "p_divides_d": True, "genus_rank": 2}
    assert F(3, 5, 5).d == 285
    assert not check_gcd_branch(F(3, 1, 5))["applicable"]
    assert not F(3, 3, 3).hypothesis_ok


def test_principal_ideal_examples():
    r = principal_ideal_test(69, 5)
    assert r.kind == "principal-witness" and r.witness.pair() == (7, 1)
    assert principal_ideal_test(85, 3).kind == "non-principal-hence-h-gt-1"
    assert principal_ideal_test(69, 3).kind == "not-split"


def test_verify_examples():
    r = verify_theorem(F(5, 1, 3))
    assert r.verdict is Verdict.CLAIM_HOLDS and r.summary.h == 2 and not r.representation.found
    r = verify_theorem(F(3, 1, 5))
    assert r.verdict is Verdict.CLAIM_VIOLATED
    assert r.representation.minus.pair() == (7, 1) and r.summary.h == 1
    r = verify_theorem(F(3, 1, 3))
    assert r.verdict is Verdict.HYPOTHESIS_NOT_MET and "squarefree" in r.reason
    assert verify_theorem(F(1, 1, 3)).verdict is Verdict.HYPOTHESIS_NOT_MET
    assert verify_theorem(F(3, 1, 2)).verdict is Verdict.HYPOTHESIS_NOT_MET


def test_gen_paper_family_examples():
    fam = gen_paper_family(3, 1, 5)
    assert fam == [F(3, 1, 5)]
    assert gen_paper_family(2, 1, 5) == []
    assert gen_paper_family(1, 1, 2) == []
    for fp in gen_paper_family(9, 9, 23):
        assert fp.a % 2 and fp.m % 2 and fp.hypothesis_ok


def test_even_parameters_give_multiple_of_four():
    for a in range(2, 20, 2):
        for m in range(1, 10):
            for p in (3, 5, 7):
                assert F(a, m, p).d % 4 == 0
    for m in range(2, 20, 2):
        assert F(3, m, 5).d % 4 == 0


def test_gen_bl_family():
    fam = gen_bl_family(1300)
    assert (1, 1, 5) in fam and (3, 1, 21) in fam and (7, 5, 1253) in fam
    assert gen_bl_family(4) == []
    assert all(a % 2 and m % 2 and d == a * a * m * m + 4 * a for a, m, d in fam)


def test_gen_yokoi():
    assert [d for _, d in gen_yokoi(7)] == [5, 13, 29, 53]
    assert gen_yokoi(0) == []
    assert all(m % 2 for m, _ in gen_yokoi(100))


# -- properties over the family --------------------------------------------

SWEEP = gen_paper_family(11, 9, 31)


def test_family_congruences_and_splitting():
    for fp in SWEEP:
        assert fp.d % 4 == 1
        assert (fp.d - fp.a**2 * fp.m**2) % (4 * fp.p) == 0
        if gcd(fp.a * fp.m, fp.p) == 1:
            assert kronecker(fp.d, fp.p) == 1


def test_reports_over_sweep():
    for fp in SWEEP:
        r = verify_theorem(fp)
        rep, h = r.representation, r.summary.h
        if r.verdict is Verdict.CLAIM_VIOLATED:
            assert rep.found or h == 1
            assert not (not rep.found and h > 1)
        else:
            assert r.verdict is Verdict.CLAIM_HOLDS and not rep.found and h > 1
        if r.splitting is SplittingType.SPLIT and not rep.found:
            assert h > 1
        beta = make_beta(fp)
        for w in rep.witnesses():
            alpha = make_alpha(w.x, w.y, fp.d)
            assert (alpha * beta).norm == alpha.norm * beta.norm
            assert alpha.norm in (fp.p, -fp.p)
            for conj in (False, True):
                out = compose_eq22(fp, w.x, w.y, use_conjugate=conj)
                if out.integral:
                    assert out.X**2 - fp.d * out.Y**2 == w.N
            # beta composite integral <=> 2p | (m x - (a m^2 + 2p) y)
            Y_num = fp.m * w.x - fp.c * w.y
            assert integrality_claim(fp, w.x, w.y)["beta_integral"] == (Y_num % (2 * fp.p) == 0)
            if fp.m % fp.p:
                xm = w.x - fp.a * fp.m * w.y
                assert (Y_num % fp.p == 0) == (xm % fp.p == 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6), st.sampled_from([q for q in range(3, 500) if is_prime(q)]))
def test_quadint_norm_multiplicative(s, t, p):
    d = 4 * p + 1 if (4 * p + 1) % 4 == 1 else p
    x = QuadInt(2 * s + 1, 2 * t + 1, d)
    y = QuadInt(2 * t, 2 * s, d)
    assert (x * y).norm == x.norm * y.norm
    assert (x * x.conjugate()).s == 2 * x.norm


def test_beta_norm_random_params():
    rng = random.Random(8)
    primes = [q for q in range(3, 2000) if is_prime(q)]
    count = 0
    while count < 300:
        fp = F(rng.randrange(3, 400, 2), rng.randrange(1, 400, 2), rng.choice(primes))
        if fp.hypothesis_ok:
            assert make_beta(fp).norm == fp.p**2
            count += 1
