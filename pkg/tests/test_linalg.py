import random

from secantgeo.linalg import (Matrix, Subspace, intersect, inverse, kernel, random_vector,
                              rank, rref, solve_left, span_sum, stack_rows)
from secantgeo.scalars import ONE, ZERO, Scalar


def rand_matrix(rng, rows, cols, bound=5):
    return Matrix(rows, cols, [[Scalar(rng.randint(-bound, bound)) for _ in range(cols)]
                               for _ in range(rows)])


def test_rank_basic():
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix.zero(3, 5)) == 0
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2


def test_rank_row_operations_invariant():
    rng = random.Random(11)
    for _ in range(30):
        m = rand_matrix(rng, 4, 6)
        r = rank(m)
        # adding a multiple of one row to another preserves rank
        rows = [list(row) for row in m.data]
        c = Scalar(rng.randint(-3, 3))
        rows[1] = [x + c * y for x, y in zip(rows[1], rows[0])]
        assert rank(Matrix(4, 6, rows)) == r
        assert rank(m.transpose()) == r


def test_rref_canonical():
    m = Matrix.from_rows([[0, 2, 4], [1, 1, 1]])
    pivots, red = rref(m)
    assert pivots == [0, 1]
    assert red[0][0] == ONE and red[0][1] == ZERO
    assert red[1][0] == ZERO and red[1][1] == ONE
    # rref of the basis rows reproduces themselves
    pivots2, red2 = rref(Matrix(2, 3, red))
    assert red2 == red


def test_subspace_equality_and_membership():
    u = Subspace.from_vectors(3, [[1, 0, 1], [0, 1, 1]])
    w = Subspace.from_vectors(3, [[1, 1, 2], [1, -1, 0]])
    assert u == w
    assert u.dim == 2
    assert u.contains([2, 3, 5])
    assert not u.contains([0, 0, 1])
    assert u.contains_subspace(Subspace.from_vectors(3, [[1, 1, 2]]))


def test_subspace_dimension_formula():
    rng = random.Random(12)
    for _ in range(25):
        amb = rng.randint(2, 7)
        u = Subspace.from_vectors(amb, [random_vector(amb, 3, rng) for _ in range(rng.randint(0, amb))])
        w = Subspace.from_vectors(amb, [random_vector(amb, 3, rng) for _ in range(rng.randint(0, amb))])
        s = span_sum([u, w])
        i = intersect([u, w])
        assert s.dim + i.dim == u.dim + w.dim
        assert s.contains_subspace(u) and s.contains_subspace(w)
        assert u.contains_subspace(i) and w.contains_subspace(i)


def test_reduce_is_canonical_coset():
    u = Subspace.from_vectors(4, [[1, 0, 2, 0], [0, 1, -1, 0]])
    v = [3, 5, 1, 7]
    red = u.reduce(v)
    # reduced vector differs from v by an element of u and kills pivots
    diff = [a - b for a, b in zip(v, red)]
    assert u.contains(diff)
    assert red[0] == ZERO and red[1] == ZERO
    # reduction is idempotent
    assert u.reduce(red) == red


def test_perp_and_kernel():
    rng = random.Random(13)
    for _ in range(20):
        amb = rng.randint(2, 6)
        u = Subspace.from_vectors(amb, [random_vector(amb, 4, rng) for _ in range(rng.randint(1, amb))])
        p = u.perp()
        assert u.dim + p.dim == amb
        assert p.perp() == u
        # every perp vector pairs to zero with every basis vector
        for b in u.basis:
            for q in p.basis:
                acc = ZERO
                for x, y in zip(b, q):
                    acc = acc + x * y
                assert acc == ZERO
    m = Matrix.from_rows([[1, 2, 0], [0, 0, 1]])
    k = kernel(m)
    assert k.dim == 1
    assert not any(m.mul_vec(list(k.basis[0])))


def test_solve_left_and_inverse():
    rng = random.Random(14)
    for _ in range(20):
        n = rng.randint(1, 5)
        while True:
            a = rand_matrix(rng, n, n)
            if rank(a) == n:
                break
        x = rand_matrix(rng, rng.randint(1, 4), n)
        b = x.matmul(a)
        assert solve_left(a, b) == x
        ai = inverse(a)
        assert a.matmul(ai) == Matrix.identity(n)
        assert ai.matmul(a) == Matrix.identity(n)


def test_stack_rows_and_complement():
    a = Matrix.from_rows([[1, 2]])
    b = Matrix.from_rows([[3, 4], [5, 6]])
    st = stack_rows([a, b])
    assert st.rows == 3 and st.cols == 2
    assert st.row(2) == (Scalar(5), Scalar(6))
    u = Subspace.from_vectors(4, [[1, 0, 3, 0], [0, 1, 4, 0]])
    comp = u.complement_indices()
    assert comp == [2, 3]
    full = span_sum([u, Subspace.from_vectors(4, [[0, 0, 1, 0], [0, 0, 0, 1]])])
    assert full.dim == 4


def test_gaussian_entries_rank():
    # complex entries exercise the same elimination path
    m = Matrix.from_rows([[Scalar(0, 1), Scalar(1)], [Scalar(-1), Scalar(0, 1)]])
    # second row = i * first row
    assert rank(m) == 1
    m2 = Matrix.from_rows([[Scalar(0, 1), Scalar(1)], [Scalar(1), Scalar(0, 1)]])
    assert rank(m2) == 2
