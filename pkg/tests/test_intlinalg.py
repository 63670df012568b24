import random

import pytest

from schubert.intlinalg import (
    LinAlgError,
    cokernel_invariants,
    determinant,
    from_json,
    identity,
    in_rowspan,
    left_nullspace,
    matmul,
    rank,
    smith_normal_form,
    solve_left,
    to_json,
    unit_count,
    vecmat,
)


def rand_matrix(rng, m, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def check_snf(M):
    snf = smith_normal_form(M)
    m, n = len(M), len(M[0]) if M else 0
    assert matmul(matmul(snf.P, M), snf.Q) == snf.D
    assert abs(determinant(snf.P)) == 1
    assert abs(determinant(snf.Q)) == 1
    diag = snf.diagonal
    assert all(d > 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    for i in range(m):
        for j in range(n):
            if i != j:
                assert snf.D[i][j] == 0
    return snf


def test_snf_identity():
    snf = check_snf(identity(4))
    assert snf.diagonal == [1, 1, 1, 1]
    assert snf.unit_count == 4


def test_snf_diag_2_3():
    # diag(2,3) has invariant factors 1, 6
    snf = check_snf([[2, 0], [0, 3]])
    assert snf.diagonal == [1, 6]


def test_snf_zero_matrix():
    snf = check_snf([[0, 0], [0, 0], [0, 0]])
    assert snf.diagonal == []
    assert snf.rank == 0


def test_snf_example_matrix():
    # The 4x7 relation-products matrix in degree-(2,10,18) variables.
    M = [
        [1, 0, 20, 0, -18, 2, 0],
        [0, 0, 2, 0, -18, 6, -1],
        [0, 1, -2, 0, 0, 0, 0],
        [0, 0, 0, 1, -2, 0, 0],
    ]
    snf = check_snf(M)
    assert snf.rank == 4
    assert snf.unit_count == 4
    assert len(left_nullspace(M)) == 0  # full row rank: no left kernel
    # right quotient Z^7/rowspan has rank 3 and no torsion
    assert cokernel_invariants(M) == [0, 0, 0]


def test_rank_and_unit_count_examples():
    assert rank(identity(3)) == 3 and unit_count(identity(3)) == 3
    M = [[1, 0, 0], [0, 2, 0], [0, 0, 0]]
    assert rank(M) == 2 and unit_count(M) == 1


def test_snf_random_properties():
    rng = random.Random(42)
    for _ in range(60):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = rand_matrix(rng, m, n)
        check_snf(M)


def test_snf_invariants_stable_under_unimodular():
    rng = random.Random(1)

    def rand_unimodular(k):
        U = identity(k)
        for _ in range(3 * k):
            i, j = rng.randrange(k), rng.randrange(k)
            if i != j:
                c = rng.randint(-3, 3)
                for t in range(k):
                    U[i][t] += c * U[j][t]
        return U

    for _ in range(20):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = rand_matrix(rng, m, n)
        base = smith_normal_form(M).diagonal
        M2 = matmul(matmul(rand_unimodular(m), M), rand_unimodular(n))
        assert smith_normal_form(M2).diagonal == base


def test_left_nullspace_saturated():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = rand_matrix(rng, m, n, -5, 5)
        N = left_nullspace(M)
        for row in N:
            assert all(x == 0 for x in vecmat(row, M))
        assert len(N) + rank(M) == m
        # saturation: the lattice spanned by the rows is a direct summand of
        # Z^m, i.e. the basis matrix has unit invariant factors only
        if N:
            assert smith_normal_form(N).diagonal == [1] * len(N)


def test_left_nullspace_contains_known_kernel():
    # column vector (2, -1): kernel of the 2x1 map spanned by (1, 2)
    N = left_nullspace([[2], [-1]])
    assert len(N) == 1
    v = N[0]
    assert v in ([1, 2], [-1, -2])


def test_solve_left():
    rng = random.Random(3)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = rand_matrix(rng, m, n, -4, 4)
        x = [rng.randint(-5, 5) for _ in range(m)]
        target = vecmat(x, M)
        sol = solve_left(M, target)
        assert sol is not None
        assert vecmat(sol, M) == target
    assert solve_left([[2, 0], [0, 2]], [1, 0]) is None
    assert in_rowspan([[2, 0], [0, 2]], [2, -4])
    with pytest.raises(LinAlgError):
        solve_left([[1, 2]], [1, 2, 3])


def test_cokernel_invariants():
    assert cokernel_invariants([[2, 0], [0, 3]]) == [6]
    assert cokernel_invariants([[1, 0], [0, 1]]) == []
    assert cokernel_invariants([[2, 0]]) == [2, 0]
    assert cokernel_invariants([[0, 0]]) == [0, 0]


def test_json_roundtrip_bigints():
    M = [[10 ** 40, -1], [0, 3]]
    assert from_json(to_json(M)) == M
    assert to_json(M)[0][0] == str(10 ** 40)
