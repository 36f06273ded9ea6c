import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq

from proxwell import (
    BranchLabel,
    dirichlet_above_v,
    factored_full,
    kq_pair,
    reduced_2p,
    reduced_3p,
    u_dirichlet_1p,
    u_neumann_1p,
)
from proxwell.dispersion import bracket_roots, closed_form_roots, raw_full, raw_one_period, raw_reduced


def crossing_root(f, quoted, half=0.01):
    """Root of f inside quoted +- half, or None when f keeps its sign there."""
    a, b = quoted - half, quoted + half
    if np.sign(f(a)) == np.sign(f(b)):
        return None
    return brentq(f, a, b, xtol=1e-14)


# (function, V, quoted value); quoted values carry 2-3 significant figures
QUOTED_ROOTS = [
    (u_dirichlet_1p, 5.0, 4.38),
    (u_neumann_1p, 5.0, 1.12),
    (u_neumann_1p, 2.0, 0.70),
    (reduced_2p, 5.0, 2.48),
    (reduced_2p, 2.0, 1.51),
    (reduced_3p, 5.0, 2.22),
    (reduced_3p, 2.0, 1.18),
]


@pytest.mark.parametrize("f, V, quoted", QUOTED_ROOTS)
def test_quoted_values_are_roots(f, V, quoted):
    root = crossing_root(lambda E: f(E, V), quoted)
    assert root is not None and abs(root - quoted) < 0.01


@pytest.mark.parametrize(
    "f, V, quoted, tol",
    [(u_dirichlet_1p, 5.0, 4.38, 2e-2), (u_neumann_1p, 2.0, 0.70, 2e-2),
     (reduced_2p, 5.0, 2.48, 5e-2), (reduced_2p, 2.0, 1.51, 5e-2), (reduced_3p, 2.0, 1.18, 0.2)],
)
def test_residual_small_at_quoted(f, V, quoted, tol):
    assert abs(f(quoted, V)) < tol


def test_dirichlet_root_refined_near_quoted():
    (root,) = bracket_roots(lambda E: u_dirichlet_1p(E, 5.0), 1e-9, 5 - 1e-9)
    assert abs(root - 4.38) < 0.005


def test_dirichlet_residual_vanishes_linearly_at_barrier_top():
    # q -> 0: residual / q -> sin k + k cos k, nonzero at V = 5
    k = math.sqrt(5.0)
    for q in (1e-3, 1e-5):
        r = u_dirichlet_1p(5.0 - q**2, 5.0)
        assert r / q == pytest.approx(math.sin(k) + k * math.cos(k), rel=1e-5)
    assert abs(math.sin(k) + k * math.cos(k)) > 0.5


def test_neumann_at_zero_energy():
    assert u_neumann_1p(0.0, 2.0) == pytest.approx(math.sqrt(2) * math.sinh(math.sqrt(2)))
    assert u_neumann_1p(0.0, 2.0) > 0


def test_neumann_lowest_root_goes_to_zero_with_V():
    lows = [closed_form_roots(1, "neumann", V)[0] for V in (1e-1, 1e-2, 1e-3)]
    assert lows == sorted(lows, reverse=True)
    assert lows[-1] < 1e-3


def test_reduced_2p_at_k_equals_q():
    V = 3.0
    k = math.sqrt(V / 2)
    assert reduced_2p(V / 2, V) == pytest.approx(V * math.cos(k) * math.cosh(k), rel=1e-14)


def test_above_barrier_reduces_to_square_well():
    # V = 0: sqrt(E) sin(2 sqrt(E)) = 0, first root pi^2 / 4
    (root, *_) = bracket_roots(lambda E: dirichlet_above_v(E, 0.0), 0.5, 12.0)
    assert root == pytest.approx(math.pi**2 / 4, abs=1e-12)


def test_above_barrier_continuity_near_zero_V():
    # first-order perturbation: the half-width step of height V shifts E by V / 2
    V = 1e-3
    assert abs(dirichlet_above_v(2.47, V)) < 1e-2
    root = brentq(lambda E: dirichlet_above_v(E, V), 2.4, 2.5, xtol=1e-14)
    assert root == pytest.approx(math.pi**2 / 4 + V / 2, abs=1e-5)


def _tan_minus_x_root():
    # q -> 0 limit of q tan k + k tanh q = 0 is tan k = -k
    return brentq(lambda x: math.sin(x) + x * math.cos(x), math.pi / 2 + 1e-9, math.pi, xtol=1e-15)


def test_threshold_where_ground_state_meets_barrier_top():
    v_star = _tan_minus_x_root() ** 2
    assert v_star == pytest.approx(4.12, abs=0.02)

    def lowest_minus_V(V):
        if V > v_star:
            return min(closed_form_roots(1, "dirichlet", V)) - V
        return bracket_roots(lambda E: dirichlet_above_v(E, V), V + 1e-9, 12.0)[0] - V

    below, above = lowest_minus_V(v_star - 0.01), lowest_minus_V(v_star + 0.01)
    assert below > 0 > above
    # bisection on V for the crossing of the lowest root with E = V
    lo, hi = 3.0, 5.0
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        has_bound = bool(closed_form_roots(1, "dirichlet", mid, n=4001))
        lo, hi = (lo, mid) if has_bound else (mid, hi)
    assert 0.5 * (lo + hi) == pytest.approx(4.12, abs=0.02)


@pytest.mark.parametrize(
    "one_period, V, quoted, bc",
    [(u_dirichlet_1p, 5.0, 4.38, "dirichlet"), (u_neumann_1p, 2.0, 0.70, "neumann")],
)
def test_full_vanishes_through_one_period_factor(one_period, V, quoted, bc):
    root = crossing_root(lambda E: one_period(E, V), quoted)
    assert abs(factored_full(root, V, 2, bc)) < 1e-12


def test_full_vanishes_through_reduced_factor():
    root = crossing_root(lambda E: reduced_2p(E, 5.0), 2.48)
    assert abs(factored_full(root, 5.0, 2, "dirichlet")) < 1e-12


def test_factored_full_rejects_other_period_counts():
    with pytest.raises(ValueError):
        factored_full(1.0, 5.0, 4, "dirichlet")


@pytest.mark.parametrize("f", [u_dirichlet_1p, reduced_2p, reduced_3p])
@pytest.mark.parametrize("E", [0.0, 5.0, 6.0, -1.0])
def test_domain_checks(f, E):
    with pytest.raises(ValueError):
        f(E, 5.0)


def test_neumann_domain():
    with pytest.raises(ValueError):
        u_neumann_1p(5.0, 5.0)
    with pytest.raises(ValueError):
        u_neumann_1p(-0.1, 5.0)
    with pytest.raises(ValueError):
        dirichlet_above_v(4.0, 5.0)


def test_branch_labels():
    assert {b.value for b in BranchLabel} == {
        "dirichlet_1p", "neumann_1p", "reduced_2p", "reduced_3p", "dirichlet_above_v"
    }


@given(st.floats(1e-3, 100), st.floats(1e-3, 1 - 1e-9))
def test_kq_identity(V, frac):
    k, q = kq_pair(frac * V, V)
    assert k >= 0 and q >= 0
    assert abs(k**2 + q**2 - V) <= 1e-12 * max(1.0, V)


RAW_VS_PRODUCT = [
    (lambda E, V: raw_one_period(E, V, "dirichlet"), u_dirichlet_1p, 1),
    (lambda E, V: raw_one_period(E, V, "neumann"), u_neumann_1p, 1),
    (lambda E, V: raw_reduced(E, V, 2), reduced_2p, 1),
    (lambda E, V: raw_reduced(E, V, 3), reduced_3p, 2),
]


@pytest.mark.parametrize("raw, product, power", RAW_VS_PRODUCT)
@given(V=st.floats(0.1, 60), frac=st.floats(1e-6, 1 - 1e-6))
def test_product_form_keeps_sign(raw, product, power, V, frac):
    E = frac * V
    k, q = math.sqrt(E), math.sqrt(V - E)
    weight = math.cos(k) * math.cosh(q)
    if abs(weight) <= 1e-6:
        return
    assert product(E, V) == pytest.approx(raw(E, V) * weight**power, rel=1e-7, abs=1e-9)


@pytest.mark.parametrize("V", [4.5, 5.0, 10.0, 20.0])
@pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
def test_one_period_roots_solve_multi_period_equations(V, bc):
    roots = closed_form_roots(1, bc, V)
    assert roots
    for E in roots:
        for periods in (2, 3):
            assert abs(raw_full(E, V, periods, bc)) < 1e-10
