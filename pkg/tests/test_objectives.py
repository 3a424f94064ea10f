import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from nlroute import (
    DeadlineSpec,
    deadline_guarantee,
    deadline_lipschitz_bound,
    eval_deadline,
    eval_ratio,
    make_generic_objective,
    ratio_objective,
    std_normal_cdf,
)
from nlroute.objectives import MAXIMIZE, MINIMIZE, linear_objective, parse_objective

mpmath.mp.dps = 40


def test_ratio_values():
    assert eval_ratio((10, 5)) == 2.0
    assert eval_ratio((7, 7)) == 1.0
    assert ratio_objective()((10.0, 5.0)) == 2.0


@pytest.mark.parametrize("L", [1, 2, 5, 9])
def test_ratio_on_gadget_path(L):
    lam, n = 1.0, 10
    # first edge leaves s with cost lam*n + 1, remaining L-1 edges cost 1; time is L
    cost = lam * n + 1 + (L - 1)
    assert eval_ratio((cost, L)) == pytest.approx((lam * n + L) / L)


@settings(max_examples=100)
@given(a=st.floats(0.01, 1e3), b=st.floats(0.01, 1e3), c=st.floats(0.01, 1e3))
def test_ratio_scale_invariant(a, b, c):
    assert eval_ratio((c * a, c * b)) == pytest.approx(eval_ratio((a, b)), rel=1e-12)


def test_std_normal_cdf_values():
    assert std_normal_cdf(0.0) == 0.5
    for x in (-3.0, -2.0, -1.5, 1.7, -8.0, 6.0):
        assert std_normal_cdf(x) == pytest.approx(float(mpmath.ncdf(x)), abs=1e-12)
    assert std_normal_cdf(-3.0) == pytest.approx(0.001349898031630, abs=1e-15)


@settings(max_examples=200)
@given(x=st.floats(-10, 10))
def test_std_normal_cdf_symmetry(x):
    assert std_normal_cdf(x) + std_normal_cdf(-x) == pytest.approx(1.0, abs=1e-14)


def test_eval_deadline_values():
    spec = DeadlineSpec(10.0, 1.0)
    assert eval_deadline((10.0, 4.0), spec) == 0.5
    assert eval_deadline((10.0 + 3 * 2.0, 4.0), spec) == pytest.approx(0.0013, abs=5e-5)
    assert eval_deadline((10.0 + 2 * 2.0, 4.0), spec) == pytest.approx(0.023, abs=5e-4)


@settings(max_examples=200)
@given(m=st.floats(1, 100), dm=st.floats(0.01, 10), v=st.floats(0.1, 100), dv=st.floats(0.01, 10))
def test_eval_deadline_monotonicity(m, dm, v, dv):
    spec = DeadlineSpec(20.0, 0.1)
    base = eval_deadline((m, v), spec)
    assert eval_deadline((m + dm, v), spec) <= base
    if m > spec.D:
        assert eval_deadline((m, v + dv), spec) >= base


def test_eval_deadline_strict_when_representable():
    spec = DeadlineSpec(20.0, 0.1)
    assert eval_deadline((25.0, 4.0), spec) < eval_deadline((24.0, 4.0), spec)
    assert eval_deadline((25.0, 5.0), spec) > eval_deadline((25.0, 4.0), spec)


def test_lipschitz_constants():
    assert deadline_lipschitz_bound(DeadlineSpec(1e-12, 1.0)) == pytest.approx(9.852, abs=1e-9)
    spec = DeadlineSpec(4.0, 4.0)
    assert 2 * deadline_lipschitz_bound(spec) == pytest.approx(6.568 * (3 + 2.0))
    spec2 = DeadlineSpec(4.0, 4.0, regime_threshold=2)
    assert 2 * deadline_lipschitz_bound(spec2) == pytest.approx(4.745 * (2 + 2.0))


def test_mills_ratio_bound_on_grid():
    x = np.linspace(-3.0, 0.0, 100_001)[:-1]
    ratio = np.exp(-0.5 * x * x) / math.sqrt(2 * math.pi) / special.ndtr(x)
    assert ratio.max() <= 3.284
    assert ratio.max() == pytest.approx(float(mpmath.npdf(-3) / mpmath.ncdf(-3)), rel=1e-10)


def test_loglog_lipschitz_on_region():
    rng = np.random.default_rng(2024)
    D, S = 10.0, 2.0
    beta = deadline_lipschitz_bound(DeadlineSpec(D, S))

    def sample(k):
        y = S * np.exp(rng.uniform(0, 3, k))
        x = D + rng.uniform(1e-9, 1, k) * 3 * np.sqrt(y)
        return x, y

    x1, y1 = sample(10_000)
    x2, y2 = sample(10_000)
    f = lambda x, y: special.log_ndtr((D - x) / np.sqrt(y))
    lhs = np.abs(f(x1, y1) - f(x2, y2))
    rhs = beta * (np.abs(np.log(x1 / x2)) + np.abs(np.log(y1 / y2)))
    assert (lhs <= rhs + 1e-12).all()


def test_guarantee_zero_epsilon_limit():
    spec = DeadlineSpec(5.0, 1.0)
    assert deadline_guarantee(1e-15, 12, spec, 0.01) == pytest.approx(1.0, abs=1e-9)


def test_guarantee_caps():
    spec = DeadlineSpec(5.0, 1.0)
    assert deadline_guarantee(10.0, 12, spec, 0.005) == 384.62
    assert deadline_guarantee(10.0, 12, spec, 0.1) == 21.93
    assert deadline_guarantee(10.0, 12, spec, 0.001) is None
    assert deadline_guarantee(10.0, 12, spec, 0.7) is None


def test_guarantee_reports_tighter_bound():
    spec = DeadlineSpec(5.0, 1.0)
    eps = 1e-4
    a3 = (1 + eps) ** (6.568 * 8 * 12)
    a2 = (1 + eps) ** (4.745 * 7 * 12)
    assert deadline_guarantee(eps, 12, spec, 0.1) == pytest.approx(min(a2, a3), rel=1e-12)
    assert deadline_guarantee(eps, 12, spec, 0.01) == pytest.approx(a3, rel=1e-12)


def test_generic_identity_and_constant():
    ident = make_generic_objective(1, MINIMIZE, lambda c: c[0], beta=1.0)
    assert ident((3.5,)) == 3.5
    const = make_generic_objective(2, MAXIMIZE, lambda c: 1.0)
    assert const((1.0, 2.0)) == 1.0


def test_generic_vectorised_batch():
    obj = make_generic_objective(2, MINIMIZE, lambda c: c[:, 0] / c[:, 1], vectorized=True)
    np.testing.assert_array_equal(obj.evaluate_many([[1.0, 2.0], [3.0, 1.0]]), [0.5, 3.0])


def test_linear_objective_beta():
    obj = linear_objective(1, 3)
    assert obj.lipschitz_beta == 1.0
    assert obj((1.0, 2.0, 3.0)) == 2.0
    with pytest.raises(ValueError):
        linear_objective(3, 3)


def test_parse_objective_names(grid5):
    assert parse_objective("ratio")[0].sense == MINIMIZE
    assert parse_objective("linear:k=2", grid5)[0]((1.0, 7.0)) == 7.0
    obj, setup = parse_objective("deadline:D=1.0,regime=2", grid5, 0, 24)
    assert obj.sense == MAXIMIZE and setup.all_late and setup.spec.regime_threshold == 2
    obj, setup = parse_objective("deadline:D=1000", grid5, 0, 24)
    assert not setup.all_late and obj.lipschitz_beta is None
    with pytest.raises(ValueError):
        parse_objective("cubic")
