"""Grid geometry, operator assembly, and the built-in test problem."""

import numpy as np
import pytest

import invop
from invop import grid as grid_mod


def test_grid_validation():
    with pytest.raises(ValueError):
        invop.Grid2D(1, 5)
    with pytest.raises(ValueError):
        invop.Grid2D(5, 1)
    with pytest.raises(ValueError):
        invop.Grid2D(5, 5, length=0.0)
    with pytest.raises(ValueError):
        invop.Grid2D(5, 5, length=float("nan"))


def test_spacing_and_size():
    g = invop.Grid2D(5, 5)
    assert g.hx == 0.25 and g.hy == 0.25
    assert g.n == 25
    g2 = invop.Grid2D(3, 5, length=2.0)
    assert g2.hx == 1.0 and g2.hy == 0.5


def test_index_bijection_and_flat_layout():
    g = invop.Grid2D(3, 5)
    seen = set()
    for i in range(1, g.ny + 1):
        for j in range(1, g.nx + 1):
            seen.add(g.index(i, j))
    assert seen == set(range(15))
    # The three interior points of the 3x5 grid sit at these flat slots.
    assert g.index(2, 2) == 4
    assert g.index(3, 2) == 7
    assert g.index(4, 2) == 10
    with pytest.raises(ValueError):
        g.index(0, 1)
    with pytest.raises(ValueError):
        g.index(1, 4)


def test_coords_corners():
    g = invop.Grid2D(5, 3, length=1.0)
    assert g.coords(0) == (0.0, 0.0)
    assert g.coords(g.n - 1) == (1.0, 1.0)
    x, y = g.coords(g.index(2, 3))
    assert x == 2 * g.hx and y == g.hy
    with pytest.raises(ValueError):
        g.coords(g.n)


def test_boundary_count():
    for nx, ny in ((2, 2), (3, 5), (5, 5), (7, 4)):
        g = invop.Grid2D(nx, ny)
        mask = g.boundary_mask()
        assert mask.sum() == g.n - (nx - 2) * (ny - 2)
        assert (mask | g.interior_mask()).all()


def test_build_uniform_3x5_structure():
    g = invop.Grid2D(3, 5)
    op = invop.build_uniform(g)
    assert op.entries.shape == (15, 15)
    interior = np.nonzero(~op.is_boundary)[0]
    assert list(interior) == [4, 7, 10]
    for p in range(15):
        if op.is_boundary[p]:
            expect = np.zeros(15)
            expect[p] = 1.0
            assert (op.entries[p] == expect).all()
    for p in interior:
        row = op.entries[p]
        assert row[p] == 1.0
        for q in (p - 3, p + 3, p - 1, p + 1):
            assert row[q] == -0.25
        assert np.count_nonzero(row) == 5
        assert row.sum() == 0.0


def test_build_uniform_all_boundary_is_identity():
    op = invop.build_uniform(invop.Grid2D(2, 2))
    assert (op.entries == np.eye(4)).all()
    assert op.is_boundary.all()


def test_build_uniform_3x3_hand_stencil():
    op = invop.build_uniform(invop.Grid2D(3, 3))
    # Single interior point p=4; neighbors 1, 3, 5, 7.
    hand = np.zeros(9)
    hand[4] = 1.0
    hand[[1, 3, 5, 7]] = -0.25
    assert (op.entries[4] == hand).all()


def test_capacity_limit():
    with pytest.raises(invop.CapacityError):
        invop.build_uniform(invop.Grid2D(91, 91))
    with pytest.raises(invop.CapacityError):
        invop.build_variable(
            invop.Grid2D(91, 91), invop.CoefficientField(np.ones(91 * 91))
        )


def test_build_variable_unit_beta_matches_uniform():
    g = invop.Grid2D(4, 5)
    a = invop.build_uniform(g)
    b = invop.build_variable(g, invop.CoefficientField(np.ones(g.n)))
    assert (a.entries == b.entries).all()


def test_build_variable_zero_beta_gives_identity():
    g = invop.Grid2D(4, 4)
    op = invop.build_variable(g, invop.CoefficientField(np.zeros(g.n)))
    assert (op.entries == np.eye(g.n)).all()


def test_build_variable_reads_neighbor_beta():
    g = invop.Grid2D(3, 5)
    rng = np.random.default_rng(7)
    beta = rng.uniform(0.5, 2.0, g.n)
    op = invop.build_variable(g, invop.CoefficientField(beta))
    p = g.index(2, 2)
    q = g.index(2, 3)
    assert op.entries[p, q] == -0.25 * beta[q]


def test_build_variable_size_mismatch():
    with pytest.raises(ValueError):
        invop.build_variable(invop.Grid2D(3, 3), invop.CoefficientField(np.ones(4)))


def test_coefficient_field_rejects_nonfinite():
    with pytest.raises(ValueError):
        invop.CoefficientField(np.array([1.0, float("inf")]))


def test_assemble_rhs_homogeneous():
    g = invop.Grid2D(4, 4)
    rhs = invop.assemble_rhs(g, invop.SourceField(f=lambda x, y: 0.0))
    assert (rhs == 0.0).all()


def test_assemble_rhs_slot_layout():
    g = invop.Grid2D(3, 5)
    f = np.arange(15, dtype=float)
    gvals = 100.0 + np.arange(15, dtype=float)
    rhs = invop.assemble_rhs(g, invop.SourceField(f=f, g=gvals))
    scale = g.hx * g.hy / 4.0
    for p in range(15):
        if p in (4, 7, 10):
            assert rhs[p] == -f[p] * scale
        else:
            assert rhs[p] == gvals[p]


def test_assemble_rhs_known_point_value():
    # At (0.5, 0.5) on the 5x5 grid, the source is -0.0625 and the
    # interior entry is -f * h^2 / 4 = 9.765625e-4, exact in binary.
    g = invop.Grid2D(5, 5)
    rhs = invop.assemble_rhs(g, invop.SourceField(f=invop.test_source))
    p = g.index(3, 3)
    assert invop.test_source(0.5, 0.5) == -0.0625
    assert rhs[p] == 9.765625e-4


def test_assemble_rhs_size_mismatch():
    g = invop.Grid2D(3, 3)
    with pytest.raises(ValueError):
        invop.assemble_rhs(g, invop.SourceField(f=np.ones(5)))


def test_analytic_solution_values():
    for y in (0.0, 0.3, 1.0):
        assert invop.analytic_solution(0.0, y) == 0.0
    assert invop.analytic_solution(1.0, 0.5) == 0.0
    assert invop.analytic_solution(0.5, 0.5) == 0.0078125


def test_test_source_values():
    assert invop.test_source(1.0, 1.0) == 0.0
    assert invop.test_source(0.0, 0.5) == 0.0
    assert invop.test_source(0.5, 0.5) == -0.0625


def test_analytic_solution_vanishes_on_edges():
    g = invop.Grid2D(9, 9)
    u = g.sample(invop.analytic_solution)
    assert np.abs(u[g.boundary_mask()]).max() == 0.0


def test_stencil_consistency_second_order():
    # The interior rows carry an h^2/4 scaling, so their residual against
    # analytic samples is (h^2/4) * O(h^2) = O(h^4): halving h divides it
    # by about 16. The solution error itself stays O(h^2).
    def residual(n):
        g = invop.Grid2D(n, n)
        op = invop.build_uniform(g)
        u = g.sample(invop.analytic_solution)
        rhs = invop.assemble_rhs(g, invop.SourceField(f=invop.test_source))
        r = op.entries @ u - rhs
        return np.abs(r[g.interior_mask()]).max()

    ratio = residual(11) / residual(21)
    assert 12.0 < ratio < 20.0


def test_operator_matrix_validation():
    with pytest.raises(ValueError):
        invop.OperatorMatrix(n=3, entries=np.eye(4), is_boundary=np.ones(3, bool))
    with pytest.raises(ValueError):
        invop.OperatorMatrix(n=3, entries=np.eye(3), is_boundary=np.ones(4, bool))


def test_matrices_are_frozen():
    op = invop.build_uniform(invop.Grid2D(3, 3))
    with pytest.raises(ValueError):
        op.entries[0, 0] = 2.0
    assert grid_mod.MAX_DENSE_N == 8192
