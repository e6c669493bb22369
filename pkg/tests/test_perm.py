from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from permcount.perm import (
    CycleType,
    Permutation,
    PermutationError,
    compose,
    composition_convention,
    conjugate,
    cycle_decomposition,
    cycle_type,
    delete_point,
    fixed_points,
    inverse,
    reflection_length,
)


def P(text, n):
    return Permutation.parse(text, n)


def all_perms(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


perm_strategy = st.integers(1, 9).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(Permutation))


class TestCompose:
    def test_convention(self):
        assert compose(P("(1 2)", 4), P("(2 3)", 4)) == P("(1 2 3)", 4)

    def test_identity_and_inverse(self):
        for s in all_perms(4):
            assert compose(s, Permutation.identity(4)) == s
            assert compose(s, inverse(s)).is_identity()

    def test_degree_mismatch(self):
        with pytest.raises(PermutationError):
            compose(Permutation.identity(3), Permutation.identity(4))

    def test_left_first_hook_flips_order(self):
        a, b = P("(1 2)", 4), P("(2 3)", 4)
        with composition_convention("left"):
            assert compose(a, b) == P("(1 3 2)", 4)
        assert compose(a, b) == P("(1 2 3)", 4)

    @given(perm_strategy)
    def test_call_matches_composition(self, s):
        t = Permutation(list(reversed(range(1, s.degree + 1))))
        st_ = compose(s, t)
        assert all(st_(x) == s(t(x)) for x in range(1, s.degree + 1))


class TestLength:
    @pytest.mark.parametrize("text,n,expected", [
        ("()", 5, 0),
        ("(1 2 3 4)", 4, 3),
        ("(1 2)(3 4)", 4, 2),
    ])
    def test_examples(self, text, n, expected):
        assert reflection_length(P(text, n)) == expected

    def test_transposition_changes_length_by_one(self):
        for n in range(2, 7):
            ts = [Permutation.transposition(n, a, b) for a in range(1, n) for b in range(a + 1, n + 1)]
            for s in all_perms(n):
                label = {x: c for c, cyc in enumerate(s.cycles()) for x in cyc}
                for t in ts:
                    a, b = sorted(t.cycles(include_fixed=False)[0])
                    delta = reflection_length(compose(s, t)) - reflection_length(s)
                    assert delta == (1 if label[a] != label[b] else -1)

    def test_subadditive(self):
        perms = all_perms(5)
        lengths = {s: reflection_length(s) for s in perms}
        for a in perms:
            for b in perms:
                assert lengths[compose(a, b)] <= lengths[a] + lengths[b]


class TestCycles:
    def test_decomposition(self):
        s = Permutation([2, 1, 4, 3])
        assert cycle_decomposition(s) == [(1, 2), (3, 4)]
        assert cycle_type(s) == CycleType((2, 2))

    def test_types(self):
        assert cycle_type(Permutation.identity(3)).parts == (1, 1, 1)
        assert cycle_type(P("(1 2 3)", 4)).parts == (3, 1)

    def test_cycle_type_counts(self):
        ct = CycleType((1, 3, 2))
        assert ct.parts == (3, 2, 1)
        assert (ct.degree, ct.cycle_count, ct.reflection_length) == (6, 3, 3)

    def test_conjugation_preserves_type(self):
        perms = all_perms(5)
        for s in perms[::7]:
            for g in perms:
                assert cycle_type(conjugate(s, g)) == cycle_type(s)

    def test_conjugate_example(self):
        assert conjugate(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 3)", 3)

    def test_fixed_points_and_inverse(self):
        assert fixed_points(P("(1 2 3)", 4)) == {4}
        assert inverse(P("(1 2 3)", 3)) == P("(1 3 2)", 3)


class TestDeletePoint:
    @pytest.mark.parametrize("src,n,dst", [
        ("(1 4 2)", 4, "(1 2)"),
        ("(1 2 3 4)", 4, "(1 2 3)"),
        ("(1 2)(3 4)", 4, "(1 2)"),
    ])
    def test_examples(self, src, n, dst):
        assert delete_point(P(src, n)) == P(dst, n - 1)

    def test_fixed_point_rejected(self):
        with pytest.raises(PermutationError, match="deletion undefined on fixed point"):
            delete_point(P("(1 2)", 3))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_drops_length_by_one(self, n):
        for s in all_perms(n):
            if s(n) != n:
                assert reflection_length(delete_point(s)) == reflection_length(s) - 1


class TestParsing:
    @given(perm_strategy)
    def test_roundtrip(self, s):
        assert Permutation.parse(s.cycle_string(), s.degree) == s
        assert Permutation.parse(s.one_line()) == s

    def test_formats(self):
        s = Permutation.parse("(1 4 2)(3)")
        assert s.degree == 4
        assert s.one_line() == "[4,1,3,2]"
        assert str(s) == "(1 4 2)"
        assert Permutation.parse("[4,1,3,2]") == s
        assert Permutation.parse("()", 3).is_identity()

    @pytest.mark.parametrize("bad", ["(1 2", "[1,1,2]", "(1 2)(2 3)", "abc", "()"])
    def test_rejects(self, bad):
        with pytest.raises(PermutationError):
            Permutation.parse(bad)

    def test_degree_limits(self):
        with pytest.raises(PermutationError):
            Permutation(list(range(1, 18)))
        with pytest.raises(PermutationError):
            Permutation.parse("(1 5)", 3)

    def test_immutable_and_hashable(self):
        a = Permutation([2, 1, 3])
        assert a == Permutation.parse("(1 2)", 3)
        assert len({a, Permutation.parse("(1 2)", 3)}) == 1
        with pytest.raises(AttributeError):
            a.foo = 1
