import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussians, invertible_matrices, matrices, random_invertible
from sbrep._modp import modular_span_dim
from sbrep.arith import ONE, ZERO, GaussianRational, LaurentPoly, T, as_gaussian
from sbrep.catalog import tuba_wenzl_dim2
from sbrep.errors import (
    NonUnitDeterminant,
    PositionOutOfRange,
    RingMismatch,
    RingNotField,
    SingularMatrix,
    SizeMismatch,
)
from sbrep.linalg import (
    AllVectorsEigen,
    Matrix,
    Subspace,
    block_embed,
    eigen_2x2,
    fixes_line,
    is_parallel,
    mat_inverse,
    mat_mul,
    nullspace,
    rank,
    span_closure,
)
from sbrep.presentations import sigma

G = GaussianRational
SWAP = Matrix([[0, 1], [1, 0]])


def laurent(rows):
    return Matrix([[LaurentPoly.constant(x) if not isinstance(x, LaurentPoly) else x
                    for x in r] for r in rows])


class TestProducts:
    def test_identity(self):
        M = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, "i"]])
        assert mat_mul(Matrix.identity(3), M) == M

    def test_standard_block_squared(self):
        B = Matrix([[0, T], [1, 0]])
        assert B @ B == laurent([[T, 0], [0, T]])

    def test_tuba_wenzl_braid_sides(self):
        rep = tuba_wenzl_dim2(1, -1)
        s1, s2 = rep.images[sigma(1)], rep.images[sigma(2)]
        expected = Matrix([[0, -1], [-1, 0]])
        assert s1 @ s2 @ s1 == expected
        assert s2 @ s1 @ s2 == expected

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            Matrix.identity(2) @ Matrix.identity(3)

    def test_ring_mismatch(self):
        from sbrep.arith import sqrt_quad
        q = Matrix([[sqrt_quad(2), 0], [0, 1]])
        with pytest.raises(RingMismatch):
            q @ Matrix([[T, 0], [0, 1]])


class TestInverse:
    def test_burau_block(self):
        B = Matrix([[1 - T, T], [1, 0]])
        inv = mat_inverse(B)
        assert inv == laurent([[0, 1], [T ** -1, (T - 1) * T ** -1]])
        assert B @ inv == Matrix.identity(2, "laurent")

    def test_diagonal(self):
        w, z = G(2, 1), G(-3)
        assert mat_inverse(Matrix.diag([w, z])) == Matrix.diag([1 / w, 1 / z])

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            mat_inverse(Matrix([[1, 1], [1, 1]]))

    def test_non_unit_laurent_det(self):
        with pytest.raises(NonUnitDeterminant):
            mat_inverse(Matrix([[1 + T, 0], [0, 1]]))


class TestRank:
    def test_examples(self):
        assert rank([(1, 0), (0, 1)])[0] == 2
        assert rank([(1, 1), (2, 2)])[0] == 1
        powers = [SWAP ** k for k in range(4)]
        assert rank([M.flatten() for M in powers])[0] == 2

    def test_canonical_basis(self):
        _, basis = rank([(2, 4), (0, 0)])
        assert basis == [(ONE, G(2))]

    def test_laurent_rejected(self):
        with pytest.raises(RingNotField):
            rank([(T, LaurentPoly.constant(1))])

    def test_nullspace(self):
        ker = nullspace([(1, 1, 0), (0, 0, 1)], 3)
        assert len(ker) == 1 and is_parallel(ker[0], (1, -1, 0))


class TestSpanClosure:
    def test_scalars(self):
        assert span_closure([Matrix.identity(2)]) == 1

    def test_commutative(self):
        assert span_closure([Matrix.identity(2).scale(G(2)), SWAP]) == 2

    def test_tuba_wenzl(self):
        assert span_closure(tuba_wenzl_dim2(1, -1).matrices()) == 4

    def test_laurent_rejected(self):
        with pytest.raises(RingNotField):
            span_closure([Matrix([[T, 0], [0, 1]])])


class TestBlockEmbed:
    def test_swap(self):
        assert block_embed(SWAP, 1, 3) == Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])

    def test_burau_sigma2_n4(self):
        expected = laurent([[1, 0, 0, 0], [0, 1 - T, T, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        assert block_embed(Matrix([[1 - T, T], [1, 0]]), 2, 4) == expected

    def test_f_block(self):
        F = Matrix([[1, 1, 0], [0, -T, 0], [0, T, 1]])
        assert block_embed(F, 1, 3) == F

    @pytest.mark.parametrize("pos", [0, 3])
    def test_out_of_range(self, pos):
        with pytest.raises(PositionOutOfRange):
            block_embed(SWAP, pos, 3)


class TestEigen:
    def test_diagonal(self):
        pairs = eigen_2x2(Matrix.diag([2, 3]))
        vecs = [v for _, v in pairs]
        assert any(is_parallel(v, (1, 0)) for v in vecs)
        assert any(is_parallel(v, (0, 1)) for v in vecs)

    def test_swap(self):
        pairs = {str(lam): v for lam, v in eigen_2x2(SWAP)}
        assert is_parallel(pairs["1"], (1, 1))
        assert is_parallel(pairs["-1"], (1, -1))

    def test_scalar(self):
        assert eigen_2x2(Matrix.identity(2).scale(G(0, 3))) is AllVectorsEigen


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@given(st.integers(1, 4).flatmap(lambda m: invertible_matrices(m, gaussians)))
def test_inverse_property(A):
    assert A @ mat_inverse(A) == Matrix.identity(A.size)


gen_sets = st.integers(2, 3).flatmap(
    lambda m: st.lists(matrices(m, st.integers(-2, 2)), min_size=1, max_size=3))


@given(gen_sets, st.randoms(use_true_random=False))
def test_span_order_independent(gens, r):
    shuffled = list(gens)
    r.shuffle(shuffled)
    assert span_closure(gens) == span_closure(shuffled)


@given(gen_sets, st.integers(0, 10_000))
def test_span_conjugation_invariant(gens, seed):
    P = random_invertible(random.Random(seed), gens[0].size)
    assert span_closure(gens) == span_closure([g.conjugate_by(P) for g in gens])


@given(gen_sets, st.data())
def test_span_monotone(gens, data):
    extra = data.draw(matrices(gens[0].size, st.integers(-2, 2)))
    assert span_closure(gens) <= span_closure(gens + [extra]) <= gens[0].size ** 2


@given(gen_sets)
def test_modular_dimension_never_exceeds_exact(gens):
    assert modular_span_dim(gens) <= span_closure(gens)


@given(st.integers(2, 3).flatmap(lambda k: matrices(k, st.integers(-3, 3))),
       st.integers(1, 3), st.integers(0, 2))
def test_block_embed_is_local(block, pos, extra):
    k = block.size
    m = k + pos - 1 + extra
    E = block_embed(block, pos, m)
    window = range(pos - 1, pos - 1 + k)
    for i in range(m):
        for j in range(m):
            if i in window and j in window:
                assert E[i, j] == block[i - pos + 1, j - pos + 1]
            else:
                assert E[i, j] == (ONE if i == j else ZERO)


@given(matrices(2, st.integers(-4, 4)))
def test_eigenpairs(M):
    pairs = eigen_2x2(M)
    if pairs is AllVectorsEigen:
        assert M.is_scalar()
        return
    tr, det = M.trace(), M.det()
    for lam, v in pairs:
        assert (lam * lam - lam * tr + det).is_zero()
        assert fixes_line(M, v)


@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=1, max_size=3),
       st.integers(0, 10_000))
def test_subspace_canonical(vectors, seed):
    P = random_invertible(random.Random(seed), len(vectors), gaussian=False)
    mixed = [tuple(sum((P[i, j] * as_gaussian(vectors[j][c]) for j in range(len(vectors))), ZERO)
                   for c in range(3)) for i in range(len(vectors))]
    assert Subspace(3, vectors) == Subspace(3, mixed)


@given(matrices(3))
def test_matrix_json_roundtrip(M):
    assert Matrix.from_json(json.loads(json.dumps(M.to_json()))) == M


def test_laurent_json_roundtrip():
    M = Matrix([[1 - T, T], [1, 0]])
    obj = M.to_json()
    assert obj["ring"] == "laurent" and obj["size"] == 2
    assert Matrix.from_json(obj) == M
