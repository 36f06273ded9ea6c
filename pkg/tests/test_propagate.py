import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from proxwell import (
    EnergyWindow,
    Layer,
    PotentialStack,
    find_eigenvalues,
    layer_propagator,
    make_periodic_bilayer,
    mismatch,
    mismatch_sign_profile,
    u_dirichlet_1p,
    u_neumann_1p,
)
from proxwell.propagate import edge_states, mismatch_values

potentials = st.floats(0, 50)
widths = st.floats(0.1, 4)
energies = st.floats(0, 60)


def det_error(p):
    """|det - 1| relative to the size of the two products it is formed from."""
    return abs(p.determinant - 1.0) / max(1.0, abs(p.m11 * p.m22) + abs(p.m12 * p.m21))


def test_quarter_period_rotation():
    p = layer_propagator(Layer(0.0, 1.0), math.pi**2 / 4)
    np.testing.assert_allclose(p.matrix, [[0, 2 / math.pi], [-math.pi / 2, 0]], atol=1e-15)


def test_linear_case_at_barrier_top():
    assert layer_propagator(Layer(5.0, 1.0), 5.0).matrix.tolist() == [[1, 1], [0, 1]]


def test_hyperbolic_entries():
    p = layer_propagator(Layer(5.0, 1.0), 1.0)
    expected = [[math.cosh(2), math.sinh(2) / 2], [2 * math.sinh(2), math.cosh(2)]]
    np.testing.assert_allclose(p.matrix, expected, rtol=1e-15)
    assert abs(p.determinant - 1) < 1e-12


def test_propagator_rejects_nonfinite_energy():
    with pytest.raises(ValueError):
        layer_propagator(Layer(0.0, 1.0), float("nan"))


def test_mismatch_at_infinite_well_ground_state():
    r = mismatch(make_periodic_bilayer(1, 0.0, "dirichlet"), math.pi**2 / 4)
    assert abs(r.value) < 1e-12


@pytest.mark.parametrize("bc, quoted", [("dirichlet", 4.38), ("neumann", 1.12)])
def test_quoted_energy_sits_on_a_sign_change(bc, quoted):
    # the quoted values carry 3 significant figures, so the root is within +-0.01
    s = make_periodic_bilayer(1, 5.0, bc)
    lo, hi = mismatch(s, quoted - 0.01), mismatch(s, quoted + 0.01)
    assert lo.sign * hi.sign == -1


def test_vectorized_and_scalar_mismatch_agree():
    s = make_periodic_bilayer(3, 10.0, "neumann")
    E = np.linspace(0.01, 12, 257)
    values, logs = mismatch_values(s, E)
    for e, v, g in zip(E, values, logs):
        r = mismatch(s, e)
        assert r.value == pytest.approx(v, rel=1e-12, abs=1e-14)
        assert r.scale_log == pytest.approx(g, rel=1e-12, abs=1e-12)


def test_rescaled_mismatch_matches_raw_product():
    s = make_periodic_bilayer(2, 6.0, "dirichlet")
    for E in (0.3, 2.0, 4.9, 7.5):
        state = np.array([0.0, 1.0])
        for layer in s.layers:
            state = layer_propagator(layer, E).matrix @ state
        r = mismatch(s, E)
        assert r.value * math.exp(r.scale_log) == pytest.approx(state[0], rel=1e-12)


def test_no_overflow_for_tall_barriers():
    # unscaled cosh(sqrt(5e5) * 3) overflows; the rescaled value stays finite
    s = make_periodic_bilayer(3, 5e5, "dirichlet")
    r = mismatch(s, 9.0)
    assert math.isfinite(r.value) and math.isfinite(r.scale_log)
    assert r.scale_log > 2000


@pytest.mark.parametrize(
    "bc, grid, oracle",
    [("dirichlet", [4.0, 4.5], u_dirichlet_1p), ("neumann", [1.0, 1.2], u_neumann_1p)],
)
def test_sign_profile_brackets_root(bc, grid, oracle):
    # the closed form independently confirms a root inside the pair
    assert np.sign(oracle(grid[0], 5.0)) != np.sign(oracle(grid[1], 5.0))
    signs = mismatch_sign_profile(make_periodic_bilayer(1, 5.0, bc), grid)
    assert sorted(signs) == [-1, 1]


def test_sign_profile_empty_and_zero_mark():
    s = make_periodic_bilayer(1, 0.0, "dirichlet")
    assert mismatch_sign_profile(s, []) == []
    with pytest.raises(ValueError):
        mismatch_sign_profile(s, [2.0, 1.0])


def test_edge_states_from_both_ends_are_parallel_at_eigenvalue():
    s = make_periodic_bilayer(2, 5.0, "dirichlet")
    E = find_eigenvalues(s)[0].energy
    left, _ = edge_states(s, E)
    right, _ = edge_states(s, E, from_right=True)
    cross = left[:, 0] * right[:, 1] - left[:, 1] * right[:, 0]
    assert np.all(np.abs(cross) < 1e-8)


@given(potentials, widths, energies)
def test_unimodular(V, w, E):
    assert det_error(layer_propagator(Layer(V, w), E)) <= 1e-12


@given(st.floats(0, 50), widths, st.floats(0, 60))
def test_unimodular_absolute_when_entries_are_order_one(V, w, E):
    p = layer_propagator(Layer(V, w), E)
    assume(abs(p.m11 * p.m22) + abs(p.m12 * p.m21) <= 10)
    assert abs(p.determinant - 1) <= 1e-12


@given(st.floats(0, 50), widths, st.sampled_from([1e-8, -1e-8]))
def test_continuous_through_linear_case(V, w, du):
    lin = layer_propagator(Layer(V, w), V).matrix
    near = layer_propagator(Layer(V, w), V + du).matrix
    assert np.max(np.abs(near - lin)) < 1e-6


@given(st.floats(0, 20), st.floats(0.1, 2), st.floats(0, 25))
def test_half_layers_compose(V, w, E):
    full = layer_propagator(Layer(V, w), E).matrix
    half = layer_propagator(Layer(V, w / 2), E).matrix
    np.testing.assert_allclose(half @ half, full, rtol=1e-10, atol=1e-10)


@given(st.floats(0, 20), st.floats(0.1, 2), st.floats(0.01, 25), st.sampled_from(["dirichlet", "neumann"]))
def test_rescaled_propagation_composes(V, w, E, bc):
    one = PotentialStack((Layer(V, w),), bc, bc)
    two = PotentialStack((Layer(V, w / 2), Layer(V, w / 2)), bc, bc)
    (a, la), (b, lb) = edge_states(one, E), edge_states(two, E)
    np.testing.assert_allclose(a[-1] * math.exp(la[-1]), b[-1] * math.exp(lb[-1]), rtol=1e-10, atol=1e-10)


stacks = st.builds(
    lambda layers, bc: PotentialStack(tuple(Layer(v, w) for v, w in layers), bc, bc),
    st.lists(st.tuples(st.floats(0, 8), st.floats(0.5, 2)), min_size=1, max_size=4),
    st.sampled_from(["dirichlet", "neumann"]),
)


@settings(max_examples=30, deadline=None)
@given(stacks, st.floats(0.7, 1.4))
def test_scaling_law(stack, s):
    hi = 10.0
    base = [e.energy for e in find_eigenvalues(stack, EnergyWindow(0.0, hi))]
    assume(all(1e-6 < e < hi - 1e-6 for e in base))
    scaled = [e.energy for e in find_eigenvalues(stack.scaled(s), EnergyWindow(0.0, hi / s**2))]
    assert len(scaled) == len(base)
    for e, es in zip(base, scaled):
        assert abs(es - e / s**2) < 1e-8
