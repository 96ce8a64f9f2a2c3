import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dukan.linalg import (
    IntMatrix,
    NoSolution,
    Subgroup,
    content,
    det,
    hnf,
    hnf_with_transform,
    homology,
    identity,
    invariant_factors,
    is_unimodular,
    kernel_basis,
    quotient_presentation,
    rank,
    snf,
    solve,
    zero,
)


def M(rows):
    return IntMatrix(rows)


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_construction_and_shapes():
    A = M([[1, 2, 3], [4, 5, 6]])
    assert A.shape == (2, 3)
    assert A.T.shape == (3, 2)
    assert A.T.T == A
    assert IntMatrix.zeros(0, 3).shape == (0, 3)
    assert (IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 3)) == IntMatrix.zeros(2, 3)
    with pytest.raises(ValueError):
        IntMatrix([])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        A @ A


def test_stacking_and_blocks():
    A = M([[1, 2], [3, 4]])
    B = M([[5], [6]])
    H = IntMatrix.hstack([A, B])
    assert H == M([[1, 2, 5], [3, 4, 6]])
    assert H.col_block(2, 3) == B
    assert IntMatrix.vstack([A, A.row_block(0, 1)]).shape == (3, 2)
    assert IntMatrix.block_diag([A, B]).shape == (4, 3)
    assert IntMatrix.hstack([], nrows=3) == IntMatrix.zeros(3, 0)


def test_power_and_arithmetic():
    A = M([[1, 1], [0, 1]])
    assert A**0 == identity(2)
    assert A**5 == M([[1, 5], [0, 1]])
    assert A - A == zero(2, 2)
    assert 3 * A == A + A + A
    assert -A == M([[-1, -1], [0, -1]])
    assert M([[2**80]]) @ M([[2**80]]) == M([[2**160]])


def test_hnf_identity_and_zero():
    assert hnf(identity(2)) == identity(2)
    assert hnf(zero(2, 3)) == zero(2, 3)


def test_hnf_spans_same_lattice():
    A = M([[2, 4], [6, 8]])
    H = hnf(A)
    # (4,8) - 2(2,6) = (0,-4); then 6 reduces modulo the pivot 4
    assert H == M([[2, 0], [2, 4]])
    cols_a = [list(c) for c in A.columns()]
    cols_h = [list(c) for c in H.columns() if any(c)]
    assert all(oracles.in_integer_span(cols_h, c) for c in cols_a)
    assert all(oracles.in_integer_span(cols_a, c) for c in cols_h)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_hnf_normal_form_conditions(rows):
    A = M(rows)
    H, U, pivots = hnf_with_transform(A)
    assert A @ U == H
    assert is_unimodular(U)
    assert pivots == sorted(set(pivots))
    for j, p in enumerate(pivots):
        col = H.col(j)
        assert col[p] > 0
        assert all(x == 0 for x in col[:p])
        for k in range(j):
            assert 0 <= H[p, k] < col[p]
    assert all(not any(H.col(j)) for j in range(len(pivots), A.cols))


def test_snf_examples():
    assert invariant_factors(identity(2)) == (1, 1)
    assert invariant_factors(zero(2, 2)) == ()
    A = M([[2, 4], [6, 8]])
    s = snf(A)
    assert s.invariant_factors == (2, 4)
    assert s.U @ A @ s.V == M([[2, 0], [0, 4]])
    assert abs(det(A)) == 8 == 2 * 4


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_matches_determinantal_divisors(rows):
    A = M(rows)
    s = snf(A)
    assert s.U @ A @ s.V == s.S
    assert is_unimodular(s.U) and is_unimodular(s.V)
    f = s.invariant_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))
    assert list(f) == oracles.invariant_factors(rows)
    assert s.rank == rank(A) == oracles.rational_rank(rows)


def test_kernel_examples():
    K = kernel_basis(M([[1, 1]]))
    assert K.rank == 1
    g = K.basis.col(0)
    assert 1 * g[0] + 1 * g[1] == 0 and content(g) == 1
    assert set(oracles.box_kernel([[1, 1]], 2)) == {(k * g[0], k * g[1]) for k in (-2, -1, 1, 2)}
    assert kernel_basis(identity(3)).rank == 0
    full = kernel_basis(zero(1, 2))
    assert full.rank == 2 and full == Subgroup.span(identity(2))


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_kernel_is_saturated(rows):
    A = M(rows)
    K = kernel_basis(A).basis
    assert (A @ K).is_zero()
    assert K.cols == A.cols - oracles.rational_rank(rows)
    if K.cols:
        assert oracles.minors_gcd(K.tolist(), K.cols) == 1


def test_solve_examples():
    assert solve(identity(2), [3, 5]) == IntMatrix.column([3, 5])
    with pytest.raises(NoSolution):
        solve(M([[2]]), [3])
    A = M([[1, 1]])
    x = solve(A, [7])
    assert A @ x == IntMatrix.column([7])
    with pytest.raises(NoSolution):
        solve(M([[1], [1]]), [1, 2])


def test_unimodular_and_det():
    assert is_unimodular(identity(4))
    assert not is_unimodular(M([[2]]))
    assert is_unimodular(M([[1, 1], [0, -1]]))
    assert not is_unimodular(M([[1, 2, 3]]))
    assert det(IntMatrix.zeros(0, 0)) == 1
    for rows in ([[0, 1], [1, 0]], [[2, -1, 3], [0, 4, 1], [5, 2, -2]], [[0, 0, 1], [0, 1, 0], [1, 0, 0]]):
        assert det(M(rows)) == oracles.leibniz_det(rows)


def test_quotient_presentation_examples():
    assert quotient_presentation(1, Subgroup.span(M([[2]]))) == [2]
    assert quotient_presentation(2, Subgroup.span(identity(2))) == []
    assert quotient_presentation(2, Subgroup.span(M([[1], [1]]))) == [0]
    assert quotient_presentation(3, Subgroup.span(M([[2, 0], [0, 6], [0, 0]]))) == [2, 6, 0]


def test_homology_examples():
    assert homology(IntMatrix.zeros(0, 1), M([[2]])) == [2]
    assert homology(IntMatrix.zeros(0, 1), M([[0]])) == [0]
    assert homology(M([[1]]), IntMatrix.zeros(1, 0)) == []
    with pytest.raises(ValueError):
        homology(M([[1]]), M([[1]]))
    with pytest.raises(ValueError):
        homology(M([[1, 0]]), M([[1]]))


def test_subgroup_membership():
    sub = Subgroup.span(M([[2, 0], [0, 3]]))
    assert sub.contains([4, -3])
    assert not sub.contains([1, 0])
    assert sub.contains_all(M([[2], [3]]))
    assert Subgroup.span(M([[2, 4], [0, 0]])) == Subgroup.span(M([[2], [0]]))
