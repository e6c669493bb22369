from math import factorial

import numpy as np
import pytest

import _oracle
from permcount.enumeration import level_set_array
from permcount.perm import Permutation, PermutationError, composition_convention, delete_point
from permcount.products import (
    ALL,
    BRUTE,
    REDUCED,
    STRICT,
    GQuery,
    conditions_123,
    count_G,
    count_G_detail,
    count_N_direct,
    delete_last,
    diag_coefficient,
    diag_direct,
    long_cycle_fixing_last,
    verify_covering,
    verify_diag,
    verify_lemma2,
)

# brute force with the pure-Python reference (S_4 x S_4)
G3 = {(v, i, j): _oracle.G(3, i, j, v == STRICT) for v in (STRICT, ALL) for i in range(4) for j in range(4)}


class TestConditions:
    def test_examples(self):
        P = lambda t: Permutation.parse(t, 4)  # noqa: E731
        assert conditions_123(P("(1 4)"), P("(1 2 3 4)"))
        assert not conditions_123(P("()"), P("()"))
        assert not conditions_123(P("(1 2 3)"), P("(1 3 2)"))

    def test_degree_mismatch(self):
        with pytest.raises(PermutationError):
            conditions_123(Permutation.identity(3), Permutation.identity(4))

    def test_matches_kernel_count(self):
        for i in range(4):
            for j in range(4):
                X = [Permutation.from_array(r) for r in level_set_array(4, i)]
                Y = [Permutation.from_array(r) for r in level_set_array(4, j)]
                direct = sum(conditions_123(x, y) for x in X for y in Y)
                assert direct == count_N_direct(3, i, j) == _oracle.N_direct(3, i, j)


class TestCountG:
    def test_g3_values(self):
        assert G3[(ALL, 1, 3)] == 6 and G3[(STRICT, 1, 3)] == 6
        assert G3[(ALL, 2, 2)] == 20 and G3[(STRICT, 2, 2)] == 18

    @pytest.mark.parametrize("variant", [STRICT, ALL])
    def test_brute_matches_reference_g3(self, variant):
        for i in range(4):
            for j in range(4):
                assert count_G(GQuery(3, i, j, variant, BRUTE)) == G3[(variant, i, j)]

    def test_reduced_per_representative(self):
        d = count_G_detail(GQuery(3, 2, 2, STRICT, REDUCED))
        assert (d["per_representative"], d["orbit"], d["value"]) == (9, 2, 18)
        assert d["method"] == REDUCED

    def test_reduced_falls_back_off_stratum(self):
        d = count_G_detail(GQuery(4, 2, 2, STRICT, REDUCED))
        assert d["method"] == BRUTE
        assert d["value"] == count_G(GQuery(4, 2, 2, STRICT, BRUTE))

    @pytest.mark.parametrize("g", [3, 4])
    @pytest.mark.parametrize("variant", [STRICT, ALL])
    def test_methods_agree(self, g, variant):
        n = 2 * g - 2
        for i in range(n):
            j = n - i
            if 0 <= j <= n - 1:
                assert count_G(GQuery(g, i, j, variant, BRUTE)) == count_G(GQuery(g, i, j, variant, REDUCED))

    def test_g4_against_reference(self):
        assert _oracle.G(4, 3, 3, True) == count_G(GQuery(4, 3, 3)) == 2400
        assert _oracle.G(4, 2, 4, True) == count_G(GQuery(4, 2, 4)) == 1200

    @pytest.mark.parametrize("g,method", [(3, BRUTE), (4, BRUTE), (4, REDUCED), (5, REDUCED)])
    def test_symmetry(self, g, method):
        n = 2 * g - 2
        for variant in (STRICT, ALL):
            for i in range(n):
                for j in range(i, n):
                    if method == REDUCED and i + j != n:
                        continue
                    assert count_G(GQuery(g, i, j, variant, method)) == count_G(GQuery(g, j, i, variant, method))

    def test_strict_at_most_all(self):
        for g in (3, 4):
            n = 2 * g - 2
            for i in range(n):
                for j in range(n):
                    assert count_G(GQuery(g, i, j, STRICT)) <= count_G(GQuery(g, i, j, ALL))
        # no 4-cycle of S_4 fixes the point 4
        assert G3[(STRICT, 1, 3)] == G3[(ALL, 1, 3)]

    def test_all_minus_strict_is_lower_degree_count(self):
        # pairs where both factors fix n are defect-2 factorizations of (1 .. 2g-3) inside S_{2g-3}
        for g in (3, 4):
            m = 2 * g - 3
            rep = long_cycle_fixing_last(2 * g - 2)[:m]
            for i, j in ((g - 1, g - 1), (g - 2, g)):
                X = level_set_array(m, i) if i < m else np.zeros((0, m), dtype=np.uint8)
                inner = sum(1 for x in map(tuple, X)
                            if _oracle.length(_oracle.mul(_oracle.inv(x), tuple(rep))) == j)
                diff = count_G(GQuery(g, i, j, ALL)) - count_G(GQuery(g, i, j, STRICT))
                assert diff == factorial(m - 1) * inner

    def test_forced_cycle_type_and_condition_redundancy(self):
        for g in (3, 4):
            n = 2 * g - 2
            for i, j in ((g - 1, g - 1), (g - 2, g)):
                X, Y = level_set_array(n, i), level_set_array(n, j)
                prod = X[:, Y]
                for a, b in zip(*np.nonzero(prod[:, :, n - 1] == n - 1)):
                    x, y = tuple(X[a]), tuple(Y[b])
                    p = _oracle.mul(x, y)
                    if _oracle.length(p) != i + j - 2:
                        continue
                    assert _oracle.ncycles(p) == 2
                    # with the product of type (2g-3, 1) fixing n, a common fixed point
                    # can only be n, and y(n) = n forces x(n) = n
                    common = any(x[t] == t and y[t] == t for t in range(n))
                    assert common == (y[n - 1] == n - 1)

    def test_workers_and_validation(self):
        q = GQuery(4, 3, 3, STRICT, BRUTE)
        assert count_G(q, workers=1) == count_G(q, workers=3)
        with pytest.raises(PermutationError):
            GQuery(2, 1, 1)
        with pytest.raises(PermutationError):
            GQuery(3, 4, 0)
        with pytest.raises(PermutationError):
            GQuery(3, 1, 1, variant="some")


class TestTopStratumInequality:
    def test_g3(self):
        rep = verify_lemma2(3)
        assert rep.verified
        assert rep.counts == {"G(2,2)": 18, "G(1,3)": 6, "G_all(2,2)": 20, "G_all(1,3)": 6}

    def test_g4_brute(self):
        rep = verify_lemma2(4, method=BRUTE)
        assert rep.verified
        assert rep.counts["G(3,3)"] == 2400 and rep.counts["G(2,4)"] == 1200
        assert rep.counts["G_all(3,3)"] == 3360 and rep.counts["G_all(2,4)"] == 1560


class TestCovering:
    def test_g3(self):
        rep = verify_covering(3)
        assert rep.verified
        assert rep.counts["G(2,2)"] == 18 and rep.counts["F_0(1,1,id)"] == 6
        assert rep.counts["G(1,3)"] == 6 and rep.counts["F_0(0,2,id)"] == 2

    def test_g4(self):
        rep = verify_covering(4)
        assert rep.verified, rep.counterexamples

    def test_batch_deletion_matches_delete_point(self):
        X = level_set_array(5, 3)
        X = X[X[:, 4] != 4]
        for row, out in zip(X, delete_last(X)):
            assert Permutation.from_array(out) == delete_point(Permutation.from_array(row))


class TestDiag:
    def test_g3(self):
        dc = diag_coefficient(3)
        assert (dc.balanced, dc.skewed, dc.value) == (72, 24, 48)
        assert diag_direct(3) == dc

    def test_g4_stabilizer_count(self):
        assert diag_direct(4) == diag_coefficient(4)
        assert diag_coefficient(4).value == 7200

    def test_report(self):
        rep = verify_diag(3)
        assert rep.verified and rep.counts["Delta"] == rep.counts["Delta_direct"] == 48


class TestConvention:
    def test_left_first_gives_same_counts(self):
        with composition_convention("left"):
            left = {(v, i, j): count_G(GQuery(3, i, j, v, BRUTE))
                    for v in (STRICT, ALL) for i in range(4) for j in range(4)}
            left_reduced = count_G(GQuery(4, 3, 3, STRICT, REDUCED))
            left_direct = diag_direct(3)
        assert left == G3
        assert left_reduced == 2400
        assert left_direct.value == 48
