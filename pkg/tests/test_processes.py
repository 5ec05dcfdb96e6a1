import math

import numpy as np
import pytest

from ergostat.extended import NEG_INF, POS_INF
from ergostat.processes import (
    AR1,
    IID,
    MA,
    Distribution,
    Identical,
    Mixture,
    ProcessStream,
    Scale,
    Shift,
    SpecError,
    limit_law,
    make_stream,
    marginal_endpoints,
    spec_from_json,
    spec_to_json,
)

U01 = Distribution.uniform(0.0, 1.0)
N01 = Distribution.normal(0.0, 1.0)


# --- distributions ------------------------------------------------------------


def test_distribution_endpoints():
    assert Distribution.uniform(2, 5).left_endpoint == 2
    assert Distribution.uniform(2, 5).right_endpoint == 5
    assert Distribution.exponential(1.0).left_endpoint == 0.0
    assert Distribution.exponential(1.0).right_endpoint == POS_INF
    assert N01.left_endpoint == NEG_INF and N01.right_endpoint == POS_INF
    par = Distribution.pareto(1.5, 2.0)
    assert par.left_endpoint == 1.5 and par.right_endpoint == POS_INF
    tp = Distribution.two_point(0.3, 4.0, -1.0)
    assert tp.left_endpoint == -1.0 and tp.right_endpoint == 4.0


def test_distribution_samples_respect_support():
    rng = np.random.default_rng(0)
    assert np.all((Distribution.uniform(2, 5).sample(rng, 1000) >= 2))
    x = Distribution.pareto(1.5, 2.0).sample(rng, 1000)
    assert np.all(x >= 1.5)
    tp = Distribution.two_point(0.25, 0.0, 1.0).sample(rng, 4000)
    assert set(np.unique(tp)) == {0.0, 1.0}
    assert abs(tp.mean() - 0.25) < 0.03  # binomial sd ~ 0.007


def test_distribution_cdf_matches_samples():
    rng = np.random.default_rng(1)
    for dist in (U01, N01, Distribution.exponential(2.0), Distribution.pareto(1.0, 1.5)):
        x = dist.sample(rng, 50_000)
        for q in (0.25, 0.5, 0.75):
            level = float(np.quantile(x, q))
            assert abs(dist.cdf(level) - q) < 0.02


def test_distribution_validation():
    with pytest.raises(SpecError):
        Distribution.uniform(1, 1)
    with pytest.raises(SpecError):
        Distribution.exponential(0)
    with pytest.raises(SpecError):
        Distribution.normal(0, 0)
    with pytest.raises(SpecError):
        Distribution.two_point(1.5, 0, 1)


# --- spec validation ------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(SpecError):
        AR1(1.0, N01)
    with pytest.raises(SpecError):
        Mixture((0.5, 0.6), (IID(U01), IID(U01)))
    with pytest.raises(SpecError):
        Mixture((0.5, 0.5), (IID(U01), Identical(U01)))  # non-ergodic component
    with pytest.raises(SpecError):
        Scale(IID(U01), Distribution.uniform(-1, 1))  # negative support
    with pytest.raises(SpecError):
        Shift(Identical(U01), N01)  # non-ergodic base


# --- determinism and chunk invariance ----------------------------------------------


def test_iid_determinism():
    a = make_stream(IID(U01), 42).take(100)
    b = make_stream(IID(U01), 42).take(100)
    assert np.array_equal(a, b)


@pytest.mark.parametrize(
    "spec",
    [
        IID(U01),
        AR1(0.6, N01),
        AR1(-0.4, U01, burn_in=256),
        MA((0.5, 0.5), N01),
        MA((1.0, -0.3, 0.2), U01),
        Identical(U01),
        Mixture((0.5, 0.5), (IID(U01), IID(Distribution.uniform(2, 3)))),
        Shift(IID(U01), N01),
        Scale(IID(Distribution.uniform(1, 2)), Distribution.uniform(0, 1)),
    ],
)
def test_chunk_invariance(spec):
    s1 = make_stream(spec, 7)
    s2 = make_stream(spec, 7)
    a = np.concatenate([s1.take(13), s1.take(1), s1.take(86)])
    b = s2.take(100)
    assert np.array_equal(a, b)


def test_hidden_variables_never_change():
    spec = Mixture((0.5, 0.5), (IID(U01), IID(Distribution.uniform(2, 3))))
    s = make_stream(spec, 3)
    before = dict(s.hidden)
    s.take(1000)
    assert s.hidden == before
    sh = make_stream(Shift(IID(U01), N01), 3)
    u = sh.hidden["shift"]
    sh.take(1000)
    assert sh.hidden["shift"] == u


def test_identical_repeats_one_draw():
    s = make_stream(Identical(U01), 5)
    vals = s.take(10)
    assert np.all(vals == vals[0])
    assert vals[0] == s.hidden["value"]


def test_shift_adds_constant_offset():
    s = make_stream(Shift(IID(U01), N01), 9)
    vals = s.take(500)
    u = s.hidden["shift"]
    assert np.all((vals - u >= 0) & (vals - u <= 1))


def test_scale_factor_nonnegative_always():
    spec = Scale(IID(U01), Distribution.two_point(0.5, 0.0, 2.0))
    for seed in range(50):
        assert make_stream(spec, seed).hidden["scale"] >= 0.0


def test_negative_seed_rejected():
    with pytest.raises(SpecError):
        make_stream(IID(U01), -1)


# --- stationary moments (Monte Carlo oracles) ----------------------------------------


def test_ar1_stationary_variance():
    # stationary variance sigma^2 / (1 - phi^2) = 1 / (1 - 0.81)
    s = make_stream(AR1(0.9, N01), 123)
    x = s.take(10**6)
    target = 1.0 / (1.0 - 0.81)
    assert abs(x.var() - target) / target < 0.05


def test_ma_lag1_autocorrelation():
    # a0*a1 / (a0^2 + a1^2) = 0.25 / 0.5 = 0.5
    s = make_stream(MA((0.5, 0.5), N01), 321)
    x = s.take(10**6)
    x = x - x.mean()
    rho = float(x[:-1] @ x[1:] / (x @ x))
    assert abs(rho - 0.5) < 0.02


def test_ar1_exact_recursion():
    # lfilter path must equal the scalar recursion x_t = phi x_{t-1} + eps_t
    phi = 0.7
    s = make_stream(AR1(phi, N01), 11)
    x0 = s._ar_state
    out = s.take(50)
    rng_check = np.random.Generator(np.random.PCG64(np.random.SeedSequence(11).spawn(2)[1]))
    x0_check = rng_check.normal(0.0, 1.0 / math.sqrt(1 - phi * phi))
    eps = rng_check.normal(0.0, 1.0, 50)
    manual = []
    prev = x0_check
    for e in eps:
        prev = phi * prev + e
        manual.append(prev)
    assert x0 == x0_check
    assert np.allclose(out, manual, rtol=0, atol=1e-12)


def test_marginal_stationarity_window_agreement():
    n = 10**5
    for spec in (AR1(0.8, N01), MA((0.4, 0.3, 0.3), N01)):
        x = make_stream(spec, 77).take(2 * n)
        w1, w2 = x[:n], x[n:]
        assert abs(w1.mean() - w2.mean()) < 0.1
        assert abs(w1.var() - w2.var()) / max(w1.var(), w2.var()) < 0.1


# --- marginal endpoints ------------------------------------------------------------------


def _linear_endpoint_oracle(coeffs, lo, hi):
    # direct series evaluation, sign by sign
    left = sum(c * (lo if c > 0 else hi) for c in coeffs if c != 0.0)
    right = sum(c * (hi if c > 0 else lo) for c in coeffs if c != 0.0)
    return left, right


def test_ar1_endpoints_bounded_innovations():
    # geometric-coefficient series, validated against explicit truncation
    for phi in (0.5, -0.5, 0.9, -0.8):
        coeffs = [phi**k for k in range(400)]
        oracle = _linear_endpoint_oracle(coeffs, 0.0, 1.0)
        left, right = marginal_endpoints(AR1(phi, U01))
        assert math.isclose(left, oracle[0], abs_tol=1e-9)
        assert math.isclose(right, oracle[1], abs_tol=1e-9)


def test_ar1_endpoints_unbounded_innovations():
    assert marginal_endpoints(AR1(0.5, N01)) == (NEG_INF, POS_INF)
    # one-sided innovations: positive phi keeps the left endpoint finite
    assert marginal_endpoints(AR1(0.5, Distribution.exponential(1.0))) == (0.0, POS_INF)
    # negative phi lets negative terms reach arbitrarily far down
    assert marginal_endpoints(AR1(-0.5, Distribution.exponential(1.0))) == (NEG_INF, POS_INF)


def test_ma_endpoints():
    assert marginal_endpoints(MA((0.5, 0.5), U01)) == (0.0, 1.0)
    assert marginal_endpoints(MA((1.0, -1.0), U01)) == (-1.0, 1.0)
    assert marginal_endpoints(MA((0.0, 2.0), Distribution.exponential(1.0))) == (0.0, POS_INF)


def test_ar1_sample_respects_endpoints():
    left, right = marginal_endpoints(AR1(-0.5, U01))
    x = make_stream(AR1(-0.5, U01, burn_in=4096), 13).take(10**5)
    assert x.min() >= left and x.max() <= right
    # approaching a series endpoint needs many small innovations at once,
    # so only ask for the outer 15% of the span over 1e5 draws
    assert x.min() < left + 0.15 * (right - left)
    assert x.max() > right - 0.15 * (right - left)


# --- theoretical limits -------------------------------------------------------------------


def test_limits_iid_exponential():
    s = make_stream(IID(Distribution.exponential(1.0)), 1)
    assert s.theoretical_limit(0) == 0.0
    assert s.theoretical_limit(1) == POS_INF


def test_limit_mixture_regime():
    spec = Mixture((0.5, 0.5), (IID(U01), IID(Distribution.uniform(2, 3))))
    seen = set()
    for seed in range(30):
        s = make_stream(spec, seed)
        lim = s.theoretical_limit(0)
        assert lim == (0.0 if s.hidden["regime"] == 0 else 2.0)
        seen.add(s.hidden["regime"])
    assert seen == {0, 1}


def test_limit_scale_realized_arithmetic():
    spec = Scale(IID(Distribution.uniform(1, 2)), Distribution.uniform(0, 1))
    s = make_stream(spec, 4)
    v = s.hidden["scale"]
    assert s.theoretical_limit(1) == v * 2.0
    assert s.theoretical_limit(0) == v * 1.0


def test_limit_shift_realized_arithmetic():
    s = make_stream(Shift(IID(U01), N01), 8)
    u = s.hidden["shift"]
    assert s.theoretical_limit(0) == u
    assert s.theoretical_limit(1) == 1.0 + u


def test_limit_scale_of_infinite_endpoint():
    # 0 * inf = 0: a zero scale factor collapses an infinite endpoint
    spec = Scale(IID(Distribution.exponential(1.0)), Distribution.two_point(0.5, 0.0, 1.0))
    for seed in range(40):
        s = make_stream(spec, seed)
        v = s.hidden["scale"]
        assert s.theoretical_limit(1) == (0.0 if v == 0.0 else POS_INF)


def test_pareto_infinite_right_finite_left():
    s = make_stream(IID(Distribution.pareto(1.0, 2.0)), 2)
    assert s.theoretical_limit(0) == 1.0
    assert s.theoretical_limit(1) == POS_INF


# --- limit laws -----------------------------------------------------------------------------


def test_limit_law_ergodic_point():
    law = limit_law(IID(U01), 0)
    assert law.kind == "point" and law.atoms == ((0.0, 1.0),)
    assert law.is_degenerate()


def test_limit_law_mixture_atoms():
    spec = Mixture((0.5, 0.5), (IID(U01), IID(Distribution.uniform(2, 3))))
    law = limit_law(spec, 0)
    assert law.kind == "atoms"
    assert law.atoms == ((0.0, 0.5), (2.0, 0.5))
    assert law.cdf(1.0) == 0.5
    assert law.cdf(2.5) == 1.0


def test_limit_law_shift_is_shifted_cdf():
    from scipy.stats import norm

    law = limit_law(Shift(IID(U01), N01), 0)
    assert law.kind == "continuous"
    for x in (-1.0, 0.0, 0.7):
        assert math.isclose(float(law.cdf(x)), norm.cdf(x), abs_tol=1e-12)
    law1 = limit_law(Shift(IID(U01), N01), 1)  # endpoint 1 + N(0,1)
    for x in (-1.0, 0.0, 0.7):
        assert math.isclose(float(law1.cdf(x)), norm.cdf(x - 1.0), abs_tol=1e-12)


def test_limit_law_identical_is_marginal():
    law = limit_law(Identical(U01), 0)
    assert math.isclose(float(law.cdf(0.3)), 0.3, abs_tol=1e-12)


def test_limit_law_scale():
    law = limit_law(Scale(IID(Distribution.uniform(2, 3)), U01), 0)
    # limit = 2 V with V ~ U(0,1): cdf(x) = x/2 on [0, 2]
    assert math.isclose(float(law.cdf(1.0)), 0.5, abs_tol=1e-12)


# --- JSON round trips -----------------------------------------------------------------------


def test_spec_json_round_trip():
    specs = [
        IID(U01),
        AR1(0.9, N01, burn_in=512),
        MA((0.5, 0.5), N01),
        Identical(Distribution.pareto(1.0, 2.0)),
        Mixture((0.5, 0.5), (IID(U01), IID(Distribution.uniform(2, 3)))),
        Shift(IID(U01), N01),
        Scale(IID(U01), Distribution.exponential(1.0)),
    ]
    for spec in specs:
        assert spec_from_json(spec_to_json(spec)) == spec


def test_spec_json_rejects_unknown():
    with pytest.raises(SpecError):
        spec_from_json({"kind": "martian"})
    with pytest.raises(SpecError):
        spec_from_json({"kind": "iid"})
