import random
from math import isqrt

import pytest

from quadfield.cf_pell import (
    PellWitness,
    QuadSurd,
    cf_expand,
    class_bound,
    class_representatives,
    convergents,
    fundamental_unit,
    is_representable,
    solve_norm_form,
    zd_units,
)
from quadfield.intbase import BudgetExceeded, is_squarefree

SQUAREFREE_300 = [d for d in range(2, 301) if is_squarefree(d)]


def brute_least_y(d, N, ymax):
    for y in range(ymax + 1):
        v = d * y * y + N
        if v >= 0 and isqrt(v) ** 2 == v:
            return y
    return None


@pytest.mark.parametrize("surd, a0, period", [
    (QuadSurd(0, 1, 2), 1, (2,)),
    (QuadSurd(1, 2, 5), 1, (1,)),
    (QuadSurd(0, 1, 69), 8, (3, 3, 1, 4, 1, 3, 3, 16)),
])
def test_cf_examples(surd, a0, period):
    cf = cf_expand(surd)
    assert cf.a0 == a0
    assert cf.period == period
    assert cf.preperiod == ()


def test_cf_rejects_square():
    with pytest.raises(ValueError):
        QuadSurd(0, 1, 49)


def test_surd_normalizes():
    s = QuadSurd(1, 3, 5)  # 3 does not divide 5 - 1
    assert (s.P, s.Q, s.D) == (3, 9, 45)
    assert cf_expand(s).a0 == 1  # (1 + 2.236)/3


def test_cf_with_preperiod():
    cf = cf_expand(QuadSurd(100, 7, 2))
    assert (cf.a0, cf.preperiod, cf.period) == (14, (2, 19), (1, 8, 1, 18))
    assert cf.trace[cf.period_start] == cf.trace[cf.period_start + len(cf.period)]


def test_cf_matches_high_precision_expansion():
    import mpmath

    for s in _surds()[::5]:
        cf = cf_expand(s)
        with mpmath.workdps(120):
            x = (s.P + mpmath.sqrt(s.D)) / s.Q
            expected = []
            for _ in range(20):
                a = int(mpmath.floor(x))
                expected.append(a)
                x = 1 / (x - a)
        it = cf.partial_quotients()
        assert [next(it) for _ in range(20)] == expected


def _surds():
    rng = random.Random(3)
    out = [QuadSurd(0, 1, d) for d in range(2, 200) if isqrt(d) ** 2 != d]
    for _ in range(200):
        D = rng.randint(2, 5000)
        if isqrt(D) ** 2 == D:
            continue
        out.append(QuadSurd(rng.randint(-50, 50), rng.choice([-1, 1]) * rng.randint(1, 40), D))
    return out


def test_cf_state_invariant_and_period_closure():
    for s in _surds():
        cf = cf_expand(s)
        for P, Q in cf.trace:
            assert (s.D - P * P) % Q == 0
        assert cf.trace[cf.period_start] == cf.trace[cf.period_start + len(cf.period)]
        assert all(a >= 1 for a in cf.preperiod + cf.period)


def test_convergent_examples():
    root2 = cf_expand(QuadSurd.sqrt(2))
    golden = cf_expand(QuadSurd(1, 2, 5))
    assert convergents(root2, 0) == [(1, 1)]
    assert convergents(root2, 2) == [(1, 1), (3, 2), (7, 5)]
    assert convergents(golden, 2) == [(1, 1), (2, 1), (3, 2)]


def test_convergent_determinant_identity():
    for s in _surds():
        conv = convergents(cf_expand(s), 25)
        for i in range(1, len(conv)):
            (h, k), (h0, k0) = conv[i], conv[i - 1]
            assert h * k0 - h0 * k == (-1) ** (i - 1)


@pytest.mark.parametrize("d, delta, t, u, norm", [
    (5, 5, 1, 1, -1), (69, 69, 25, 3, 1), (2, 8, 2, 1, -1), (3, 12, 4, 1, 1), (94, 376, 4286590, 221064, 1),
])
def test_fundamental_unit_examples(d, delta, t, u, norm):
    fu = fundamental_unit(d)
    assert (fu.delta, fu.t, fu.u, fu.norm) == (delta, t, u, norm)


def test_fundamental_unit_rejects_nonsquarefree():
    with pytest.raises(ValueError):
        fundamental_unit(45)


def test_unit_brackets_exact():
    for d in SQUAREFREE_300:
        fu = fundamental_unit(d)
        # e_lo <= (t + u sqrt D)/2 <=> 2 e_lo - t <= u sqrt D, compared by squaring
        lo = 2 * fu.e_lo - fu.t
        assert lo <= 0 or lo * lo <= fu.delta * fu.u * fu.u
        hi = 2 * fu.e_hi - fu.t
        assert hi >= 0 and hi * hi >= fu.delta * fu.u * fu.u
        assert 1 <= fu.e_lo <= fu.e_hi


def test_fundamental_unit_brute_force_small():
    for d in SQUAREFREE_300:
        fu = fundamental_unit(d)
        if fu.u > 10**4:
            continue
        D = fu.delta
        u = next(u for u in range(1, 10**4 + 1)
                 if any(v >= 0 and isqrt(v) ** 2 == v for v in (D * u * u - 4, D * u * u + 4)))
        assert u == fu.u


def test_zd_units():
    assert zd_units(5) == ((9, 4), (2, 1))
    assert zd_units(69) == ((7775, 936), None)
    for d in SQUAREFREE_300:
        (x, y), minus = zd_units(d)
        assert x * x - d * y * y == 1 and y > 0
        if minus:
            assert minus[0] ** 2 - d * minus[1] ** 2 == -1


@pytest.mark.parametrize("d, N, expected", [
    (69, -20, (7, 1)), (85, 12, None), (85, -12, None), (5, 4, (2, 0)), (13, -12, (1, 1)),
    (2, -1, (1, 1)), (7, 9, (3, 0)), (211, 1, (1, 0)), (277, -1, (8920484118, 535979945)),
])
def test_solve_norm_form_examples(d, N, expected):
    w = solve_norm_form(d, N)
    assert (w.pair() if w else None) == expected


@pytest.mark.parametrize("d, p, plus, minus", [
    (69, 5, None, (7, 1)), (85, 3, None, None), (13, 3, (5, 1), (1, 1)),
])
def test_is_representable_examples(d, p, plus, minus):
    rep = is_representable(d, p)
    assert (rep.plus.pair() if rep.plus else None) == plus
    assert (rep.minus.pair() if rep.minus else None) == minus


def test_solver_errors():
    with pytest.raises(ValueError):
        solve_norm_form(45, 4)
    with pytest.raises(ValueError):
        solve_norm_form(5, 0)
    with pytest.raises(BudgetExceeded):
        solve_norm_form(5, 10**7)
    with pytest.raises(ValueError):
        is_representable(5, 9)


def test_methods_agree_with_brute_force():
    """Scan route, class route and a naive loop give the same least y."""
    rng = random.Random(5)
    checked = 0
    for d in SQUAREFREE_300:
        for N in rng.sample(range(-200, 201), 30):
            if N == 0:
                continue
            L = class_bound(d, N)
            by_class = solve_norm_form(d, N, method="classes")
            if L <= 5000:
                assert solve_norm_form(d, N, method="scan") == by_class
                y = brute_least_y(d, N, 10 * L + 10)
                assert (by_class.y if by_class else None) == y
                checked += 1
    assert checked > 3000


def test_class_representatives_solve_equation():
    for d in SQUAREFREE_300[:80]:
        for N in range(-60, 61):
            if N:
                for x, y in class_representatives(d, N):
                    assert x * x - d * y * y == N


def test_parity_corollary():
    for d in [d for d in SQUAREFREE_300 if d % 4 == 1]:
        for N in range(-200, 201, 4):
            if N == 0:
                continue
            w = solve_norm_form(d, N)
            if w is not None:
                assert (w.x - w.y) % 2 == 0


def test_witness_validates():
    with pytest.raises(ArithmeticError):
        PellWitness(69, -20, 7, 2)


def test_large_unit_class_route():
    # d = 241 has a large unit; the class route still finds least-y solutions
    w = solve_norm_form(241, -15)
    if w is not None:
        assert w.x * w.x - 241 * w.y * w.y == -15
    w = solve_norm_form(241, 15)
    assert w is not None and w.y == 1 and w.x == 16
