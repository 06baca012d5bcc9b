from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from ramcft.snf import inverse_unimodular, invariant_factors, smith_normal_form


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]


matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_examples():
    assert invariant_factors([[2, 0], [0, 3]]) == ([6], 0)
    assert invariant_factors([[2, 4], [6, 8]]) == ([2, 4], 0)
    assert invariant_factors([[1, 1, 1]]) == ([], 2)
    assert invariant_factors([[0, 0]]) == ([], 2)


@given(matrices)
def test_transforms_diagonalize(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(d >= 0 for d in diag)
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[:len(nz)] == nz
    for T in (U, V):
        n = len(T)
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        assert matmul(T, inverse_unimodular(T)) == ident


@given(matrices)
def test_matches_sympy(M):
    ours, free = invariant_factors(M)
    theirs = [abs(int(d)) for d in sympy_invariants(Matrix(M), domain=ZZ)]
    n = len(M[0])
    rank = sum(1 for d in theirs if d)
    assert ours == [d for d in theirs if d > 1]
    assert free == n - rank
