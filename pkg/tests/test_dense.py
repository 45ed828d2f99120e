"""Inversion and the counted conventional dense apply."""

import numpy as np
import pytest

import invop


def test_invert_identity_exact():
    m = invop.DenseMatrix(n=4, entries=np.eye(4))
    inv = invop.invert(m)
    assert (inv.entries == np.eye(4)).all()


def test_invert_diagonal_exact():
    m = invop.DenseMatrix(n=2, entries=np.diag([2.0, 4.0]))
    inv = invop.invert(m)
    assert (inv.entries == np.diag([0.5, 0.25])).all()


def test_invert_grid_operator_residual(cells):
    grid, op, ainv, _ = cells(5)
    assert invop.residual_check(op, ainv) <= 1e-12
    g35 = invop.Grid2D(3, 5)
    op35 = invop.build_uniform(g35)
    assert invop.residual_check(op35, invop.invert(op35)) <= 1e-12


def test_invert_singular_raises():
    with pytest.raises(invop.SingularMatrixError):
        invop.invert(invop.DenseMatrix(n=3, entries=np.zeros((3, 3))))
    with pytest.raises(invop.SingularMatrixError):
        invop.invert(invop.DenseMatrix(n=2, entries=np.ones((2, 2))))


def test_invert_involution(cells):
    grid, op, ainv, _ = cells(5)
    back = invop.invert(ainv)
    tol = 1e-6 * np.abs(op.entries).max()
    assert np.abs(back.entries - op.entries).max() <= tol


def test_inverse_keeps_boundary_identity_rows(cells):
    grid, op, ainv, _ = cells(5)
    eye = np.eye(grid.n)
    for p in np.nonzero(op.is_boundary)[0]:
        assert np.abs(ainv.entries[p] - eye[p]).max() <= 1e-10


def test_residual_check_trivial_cases():
    ident = invop.DenseMatrix(n=3, entries=np.eye(3))
    assert invop.residual_check(ident, ident) == 0.0
    zeros = invop.DenseMatrix(n=3, entries=np.zeros((3, 3)))
    assert invop.residual_check(ident, zeros) == 1.0
    with pytest.raises(ValueError):
        invop.residual_check(ident, invop.DenseMatrix(n=2, entries=np.eye(2)))


def test_apply_dense_identity_counts():
    m = invop.DenseMatrix(n=4, entries=np.eye(4))
    x = np.array([3.5, -1.0, 0.0, 2.0])
    y, counters = invop.apply_dense(m, x)
    assert (y == x).all()
    assert counters.as_tuple() == (16, 12)


def test_apply_dense_row_sums():
    m = invop.DenseMatrix(n=3, entries=np.ones((3, 3)))
    y, counters = invop.apply_dense(m, [1.0, 2.0, 3.0])
    assert (y == 6.0).all()
    assert counters.as_tuple() == (9, 6)


def test_apply_dense_matches_ordered_brute_force():
    rng = np.random.default_rng(11)
    mat = rng.standard_normal((4, 4))
    x = rng.standard_normal(4)
    y, counters = invop.apply_dense(invop.DenseMatrix(n=4, entries=mat), x)
    # Independent accumulation in the same ascending-j order.
    for r in range(4):
        acc = mat[r, 0] * x[0]
        for j in range(1, 4):
            acc += mat[r, j] * x[j]
        assert y[r] == acc
    assert counters.as_tuple() == (16, 12)


def test_apply_dense_length_mismatch():
    m = invop.DenseMatrix(n=3, entries=np.eye(3))
    with pytest.raises(ValueError):
        invop.apply_dense(m, np.ones(4))


def test_dense_matrix_validation():
    with pytest.raises(ValueError):
        invop.DenseMatrix(n=2, entries=np.array([[1.0, float("nan")], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        invop.DenseMatrix(n=3, entries=np.eye(2))
