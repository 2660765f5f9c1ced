import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isolat import (
    PointSet,
    canonical_form,
    components,
    iterated_sumset,
    minkowski_sum,
    push,
    push_word,
    translate,
    validate_generators,
)
from isolat.errors import (
    DimensionMismatchError,
    DuplicateVectorError,
    EmptySetError,
    IndexOutOfRangeError,
    NotGeneratingError,
    ZeroVectorError,
)
from isolat.lattice import int_det, word_counts
from oracles import connected, hnf_generates


def P(*pts, dim=2):
    return PointSet(dim, pts)


def square(w, dim=2):
    import itertools
    return PointSet(dim, itertools.product(range(w), repeat=dim))


points2 = st.frozensets(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=25)


class TestValidate:
    def test_standard_basis(self):
        U = validate_generators(2, [(1, 0), (0, 1)])
        assert U.k == 2 and U.dim == 2

    def test_index_two_sublattice(self):
        with pytest.raises(NotGeneratingError):
            validate_generators(2, [(2, 0), (0, 1)])

    def test_unimodular_pair(self):
        assert validate_generators(2, [(2, 1), (1, 1)]).generators == ((2, 1), (1, 1))

    def test_errors(self):
        with pytest.raises(ZeroVectorError):
            validate_generators(2, [(0, 0), (1, 0)])
        with pytest.raises(DuplicateVectorError):
            validate_generators(2, [(1, 0), (1, 0), (0, 1)])
        with pytest.raises(DimensionMismatchError):
            validate_generators(2, [(1, 0, 0)])
        with pytest.raises(NotGeneratingError):
            validate_generators(2, [])
        with pytest.raises(NotGeneratingError):
            validate_generators(2, [(1, 1), (2, 2), (-1, -1)])

    def test_error_codes(self):
        with pytest.raises(NotGeneratingError) as info:
            validate_generators(2, [(2, 0), (0, 2)])
        assert info.value.code == "NotGenerating"

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5))
    def test_agrees_with_hermite_oracle(self, vecs):
        vecs = list(dict.fromkeys(v for v in vecs if any(v)))
        if not vecs:
            return
        try:
            validate_generators(2, vecs)
            ok = True
        except NotGeneratingError:
            ok = False
        assert ok == hnf_generates(2, vecs)

    def test_agrees_with_smith_normal_form(self):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form
        rng = random.Random(3)
        for _ in range(60):
            vecs = list(dict.fromkeys(
                tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(rng.randint(3, 5))
            ))
            vecs = [v for v in vecs if any(v)]
            if len(vecs) < 3:
                continue
            snf = smith_normal_form(sympy.Matrix(vecs).T, domain=sympy.ZZ)
            diag = [abs(snf[i, i]) for i in range(3)]
            try:
                validate_generators(3, vecs)
                ok = True
            except NotGeneratingError:
                ok = False
            assert ok == (diag == [1, 1, 1])


def test_int_det_matches_numpy():
    np = pytest.importorskip("numpy")
    rng = random.Random(0)
    for _ in range(50):
        m = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        assert int_det(m) == round(np.linalg.det(np.array(m, dtype=float)))


class TestMinkowski:
    def test_unit_square(self):
        assert minkowski_sum(P((0, 0), (1, 0)), P((0, 0), (0, 1))) == P((0, 0), (1, 0), (0, 1), (1, 1))

    def test_identity(self):
        A = P((3, 1), (-2, 5))
        assert minkowski_sum(A, PointSet.origin(2)) == A

    def test_four_segments(self):
        acc = PointSet.origin(2)
        for u in [(1, 0), (-1, 0), (0, 1), (0, -1)]:
            acc = minkowski_sum(acc, P((0, 0), u))
        assert acc == translate(square(3), (-1, -1))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            minkowski_sum(P((0, 0)), PointSet(3, [(0, 0, 0)]))

    @settings(max_examples=100, deadline=None)
    @given(points2, points2)
    def test_brute_force(self, a, b):
        expect = {(x[0] + y[0], x[1] + y[1]) for x in a for y in b}
        got = minkowski_sum(PointSet(2, a), PointSet(2, b))
        assert got.points == expect
        assert len(got) <= len(a) * len(b)

    def test_large_sum_path_matches_python(self):
        rng = random.Random(1)
        A = PointSet(2, {(rng.randint(-300, 300), rng.randint(-300, 300)) for _ in range(400)})
        B = PointSet(2, {(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(120)})
        got = minkowski_sum(A, B)
        assert got.points == {(x[0] + y[0], x[1] + y[1]) for x in A for y in B}


class TestIterated:
    def test_zero(self):
        assert iterated_sumset(P((4, 4), (1, 2)), 0) == PointSet.origin(2)

    def test_segment(self):
        assert iterated_sumset(P((0, 0), (1, 0)), 2) == P((0, 0), (1, 0), (2, 0))

    def test_square_doubling(self):
        S = iterated_sumset(translate(square(3), (-1, -1)), 2)
        assert len(S) == 25 and S == translate(square(5), (-2, -2))


class TestPush:
    def test_singleton(self, l1):
        assert push(P((0, 0)), 0, l1) == P((0, 0), (1, 0))

    def test_segment(self, l1):
        assert push(P((0, 0), (1, 0)), 0, l1) == P((0, 0), (1, 0), (2, 0))

    def test_square_diagonal(self, linf):
        i = linf.generators.index((1, 1))
        out = push(square(3), i, linf)
        # {0,1,2}^2 together with {1,2,3}^2
        assert len(out) == 14

    def test_bad_index(self, l1):
        with pytest.raises(IndexOutOfRangeError):
            push(P((0, 0)), 4, l1)

    def test_word_zero(self, l1):
        S = P((1, 1), (5, 0))
        assert push_word(S, (0, 0, 0, 0), l1) == S

    def test_word_ones_is_cross_square(self, l1):
        assert push_word(P((0, 0)), (1, 1, 1, 1), l1) == translate(square(3), (-1, -1))

    def test_word_counts(self):
        assert word_counts([2, 0, 2, 1], 3) == (1, 1, 2)

    @settings(max_examples=60, deadline=None)
    @given(points2, st.lists(st.integers(0, 3), max_size=6), st.randoms(use_true_random=False))
    def test_order_independence(self, pts, word, rnd):
        from isolat import l1_generators
        U = l1_generators(2)
        S = PointSet(2, pts)
        a = S
        for i in word:
            a = push(a, i, U)
        shuffled = list(word)
        rnd.shuffle(shuffled)
        b = S
        for i in shuffled:
            b = push(b, i, U)
        assert a == b == push_word(S, word_counts(word, 4), U)


class TestTranslateCanonical:
    def test_translate(self):
        S = P((1, 2), (3, 4))
        assert translate(S, (0, 0)) == S
        assert translate(P((0, 0)), (3, -1)) == P((3, -1))

    def test_canonical(self):
        assert canonical_form(P((5, 5))) == P((0, 0))
        assert canonical_form(P((1, 2), (2, 2))) == P((0, 0), (1, 0))
        with pytest.raises(EmptySetError):
            canonical_form(PointSet(2, []))

    @settings(max_examples=100, deadline=None)
    @given(points2, st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
    def test_canonical_translation_invariant(self, pts, v):
        S = PointSet(2, pts)
        assert canonical_form(translate(S, v)) == canonical_form(S)


class TestComponents:
    def test_connected(self, l1):
        assert components(square(3), l1) == [square(3)]

    def test_far_points(self, l1):
        assert components(P((0, 0), (10, 10)), l1) == [P((0, 0)), P((10, 10))]

    @settings(max_examples=100, deadline=None)
    @given(points2)
    def test_partition_into_connected_pieces(self, pts):
        from isolat import l1_generators
        U = l1_generators(2)
        comps = components(PointSet(2, pts), U)
        offsets = U.neighbor_offsets()
        assert set().union(*(c.points for c in comps)) == set(pts)
        assert sum(len(c) for c in comps) == len(pts)
        assert all(connected(c.points, offsets) for c in comps)


def test_json_roundtrip():
    S = P((2, -1), (0, 3))
    assert PointSet.from_json(S.to_json(), 2) == S
