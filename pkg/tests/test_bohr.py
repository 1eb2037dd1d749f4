import math

import numpy as np
import pytest

from bohrlab.bohr import (
    RadiusBracket,
    bohr_1d_bracket,
    k_bracket,
    k_m_bracket,
    k_table,
    reduce_to_disk,
    wiener_check,
)
from bohrlab.bounds import ExponentPair
from bohrlab.multiindex import enumerate_lambda
from bohrlab.optimize import OptConfig, bohr_sum, series_sup
from bohrlab.polynomial import HomPoly, TruncatedSeries, moebius_series, random_series
from bohrlab.witness import SearchConfig, brute_chi

OPT = OptConfig(restarts=10, iters=100, seed=21)
CFG = SearchConfig(seed=21, opt=OPT)
KW = dict(sign_budget=400, samples=1000)


def test_radius_bracket_validation():
    with pytest.raises(ValueError):
        RadiusBracket(0.5, 0.4, 1, "", "")


def test_k_m_bracket_linear():
    br = k_m_bracket(1, 3, ExponentPair(2.0, 2.0), CFG, **KW)
    assert br.lower <= 1.0 <= br.upper + 1e-9
    br2 = k_m_bracket(1, 4, ExponentPair(2.0, math.inf), CFG, **KW)
    assert br2.lower <= 0.5 <= br2.upper + 1e-9


def test_k_m_bracket_monotone_map():
    e = ExponentPair(math.inf, math.inf)
    br = k_m_bracket(2, 2, e, CFG, **KW)
    bc = brute_chi(2, 2, e, seed=CFG.seed, cfg=CFG)
    assert br.lower <= bc.raw ** (-0.5) * 1.05
    assert bc.deflated ** (-0.5) <= br.upper * (1 + 1e-9)


def test_round_trip_identity():
    for x in (1.0, 2.5, 17.0):
        for m in (1, 2, 5):
            y = x ** (-1.0 / m)
            assert y ** (-m) == pytest.approx(x, rel=1e-12)


def test_k_bracket_disk():
    br = k_bracket(1, ExponentPair(math.inf, math.inf), 3, CFG, **KW)
    assert br.lower <= 1 / 3 <= br.upper + 1e-12


def test_k_bracket_q1_lower_dimension_free():
    e = ExponentPair(2.0, 1.0)
    lows = [
        k_bracket(n, e, 3, CFG, sign_budget=0, samples=1000, use_brute=False).lower
        for n in (2, 4, 8, 16, 32, 64)
    ]
    assert min(lows) >= 0.1  # bounded below, independent of n
    assert max(lows[1:]) == pytest.approx(min(lows[1:]), rel=1e-9)


def test_k_bracket_upper_below_third():
    for (p, q) in [(math.inf, math.inf), (2.0, 2.0), (2.0, math.inf)]:
        for n in (1, 2, 4):
            br = k_bracket(n, ExponentPair(p, q), 2, CFG, **KW)
            assert br.upper <= 1 / 3 + 1e-9


def test_k_below_k_m():
    e = ExponentPair(2.0, 2.0)
    for n in (2, 4):
        kb = k_bracket(n, e, 3, CFG, **KW)
        for m in (1, 2, 3):
            km = k_m_bracket(m, n, e, CFG, **KW)
            assert kb.upper <= km.upper + 1e-9


def test_k_table_shape():
    rows = k_table([2, 4], ExponentPair(2.0, 2.0), 2, CFG, **KW)
    assert [r["n"] for r in rows] == [2, 4]
    for r in rows:
        assert r["lower"] <= r["upper"]
        assert r["region"] == "II"


def test_bohr_1d_bracket():
    br = bohr_1d_bracket(1e-3, OPT)
    assert br.lower <= 1 / 3 <= br.upper
    assert br.upper - br.lower <= 2e-3


def test_bohr_1d_validation():
    with pytest.raises(ValueError):
        bohr_1d_bracket(0.0, OPT)


def test_moebius_equality_radius():
    # closed form a + (1-a^2) r/(1-ar) hits 1 exactly at r = 1/(1+2a)
    for a in (0.3, 0.6, 0.9):
        r = 1.0 / (1.0 + 2 * a)
        v = bohr_sum(moebius_series(a, 80), r, 2.0, OPT).value
        assert v <= 1.0 + 1e-12
        assert v >= 1.0 - (a * r) ** 80 / (1 - a * r) - 1e-12


def test_random_series_pass_below_third():
    from bohrlab.bohr import _random_series_failures

    assert _random_series_failures(0.30, 2000, 12, seed=1) == 0


def test_reduce_to_disk():
    F = TruncatedSeries(2, 0.5, [HomPoly(2, 1, {(1, 0): 1.0, (0, 1): 2.0})])
    z = np.array([0.1, 0.2])
    g = reduce_to_disk(F, z)
    assert g.n == 1
    for w in (0.3, 0.7 + 0.1j):
        assert g.eval([w]) == pytest.approx(F.eval(w * z))


def test_wiener_moebius_equality_m1():
    # a truncated disk automorphism overshoots sup 1 by at most (1+a)a^M
    for a in (0.4, 0.7):
        rep = wiener_check(moebius_series(a, 40), 2.0, 1.0, OPT, norm_tol=1e-5)
        assert rep.rows[0].norm_est == pytest.approx(1 - a * a, abs=1e-9)
        assert rep.all_pass


def test_wiener_constant_series():
    F = TruncatedSeries(1, 0.8, [])
    rep = wiener_check(F, 2.0, 1.0, OPT)
    assert rep.all_pass and rep.rows == ()


def test_wiener_unnormalized_rejected():
    F = TruncatedSeries(1, 0.0, [HomPoly(1, 1, {(1,): 3.0})])
    with pytest.raises(ValueError):
        wiener_check(F, 2.0, 1.0, OPT)


def test_wiener_random_sample():
    for i in range(25):
        F = random_series(3, 4, seed=900 + i, budget=10**4, p=2.0)
        assert wiener_check(F, 2.0, 1.0, OPT).all_pass


def test_wiener_reduction_consistency():
    # the one-variable reduction of a normalized series is itself normalized
    rng = np.random.default_rng(6)
    F = random_series(3, 3, seed=17, budget=10**4, p=2.0)
    for _ in range(5):
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        z = z / np.linalg.norm(z)
        g = reduce_to_disk(F, z)
        assert series_sup(g, 2.0, OPT).value <= 1.0 + 1e-9
