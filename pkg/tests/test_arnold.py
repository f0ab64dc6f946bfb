import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fernlab.arnold import (
    ArnoldMonomial,
    CohomologyElement,
    act,
    basis,
    embed,
    iter_basis,
    poincare_coefficient,
    presentation_corank,
    restrict,
    straighten,
)
from fernlab.wreath import Perm


def E(m, *factors, coef=1):
    return CohomologyElement(m, len(factors), {tuple(factors): coef})


class TestBasis:
    def test_degree_zero(self):
        for m in range(0, 6):
            assert [b.factors for b in basis(m, 0)] == [()]

    def test_sizes(self):
        assert len(basis(4, 1)) == 6
        assert len(basis(4, 2)) == 11
        assert basis(3, 3) == []

    def test_lexicographic(self):
        fs = [b.factors for b in basis(5, 2)]
        assert fs == sorted(fs)
        assert all(b.degree == 2 for b in basis(5, 2))

    def test_poincare_polynomial(self):
        # (1+t)(1+2t)(1+3t) = 1 + 6t + 11t^2 + 6t^3
        assert [poincare_coefficient(4, k) for k in range(5)] == [1, 6, 11, 6, 0]

    @pytest.mark.parametrize("m", range(1, 9))
    def test_enumeration_matches_poincare(self, m):
        for k in range(m + 1):
            assert sum(1 for _ in iter_basis(m, k)) == poincare_coefficient(m, k)

    @pytest.mark.parametrize("m", range(1, 6))
    def test_presentation_corank(self, m):
        for k in range(m + 1):
            assert presentation_corank(m, k) == len(basis(m, k))

    def test_monomial_validation(self):
        with pytest.raises(ValueError):
            ArnoldMonomial(3, ((1, 3), (2, 3)))
        assert str(ArnoldMonomial(4, ((1, 2), (3, 4)))) == "w12w34"


class TestStraighten:
    def test_admissible_is_fixed(self):
        assert straighten([(1, 2), (3, 4)], 4) == E(4, (1, 2), (3, 4))

    def test_square(self):
        assert straighten([(1, 2), (1, 2)], 3).is_zero()
        assert straighten([(1, 2), (2, 1)], 3).is_zero()

    def test_rewrite(self):
        expected = E(3, (1, 2), (2, 3)) - E(3, (1, 2), (1, 3))
        assert straighten([(1, 3), (2, 3)], 3) == expected

    def test_anticommutative(self):
        assert straighten([(3, 4), (1, 2)], 4) == -E(4, (1, 2), (3, 4))

    def test_three_term_relation(self):
        for i, j, k in permutations(range(1, 6), 3):
            total = straighten([(i, j), (j, k)], 5) + straighten([(j, k), (k, i)], 5) + straighten([(k, i), (i, j)], 5)
            assert total.is_zero(), (i, j, k)

    def test_idempotent_on_basis(self):
        for b in basis(5, 3):
            assert straighten(b.factors, 5) == CohomologyElement.monomial(b)

    def test_triangle_vanishes(self):
        assert straighten([(1, 2), (2, 3), (1, 3)], 3).is_zero()

    def test_confluence_fuzz(self):
        rng = random.Random(20261016)
        for _ in range(400):
            m = rng.randint(3, 5)
            k = rng.randint(2, min(4, m - 1))
            fs = [tuple(rng.sample(range(1, m + 1), 2)) for _ in range(k)]
            assert straighten(fs, m, rng=rng) == straighten(fs, m)


perm5 = st.permutations(list(range(1, 6))).map(Perm)


def element(m, k, rng):
    full = basis(m, k)
    terms = {b.factors: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for b in rng.sample(full, min(3, len(full)))}
    return CohomologyElement(m, k, terms)


class TestAction:
    def test_identity(self):
        x = element(5, 2, random.Random(1))
        assert act(Perm.identity(5), x) == x

    def test_symmetric_generator(self):
        assert act(Perm.transposition(2, 1, 2), E(2, (1, 2))) == E(2, (1, 2))

    def test_relabel(self):
        assert act(Perm.transposition(4, 2, 3), E(4, (1, 2), (3, 4))) == E(4, (1, 3), (2, 4))

    @settings(max_examples=60, deadline=None)
    @given(perm5, perm5, st.integers(0, 3), st.integers(0, 10**6))
    def test_group_action(self, s, t, k, seed):
        x = element(5, k, random.Random(seed)) if k else CohomologyElement.one(5)
        assert act(s * t, x) == act(s, act(t, x))
        assert act(s, x).degree == x.degree

    @settings(max_examples=40, deadline=None)
    @given(st.permutations(list(range(1, 4))), st.integers(1, 2), st.integers(0, 10**6))
    def test_commutes_with_embed(self, small, k, seed):
        x = element(3, k, random.Random(seed))
        s_small = Perm(small)
        s_big = Perm(list(small) + [4, 5])
        assert act(s_big, embed(x, 5)) == embed(act(s_small, x), 5)

    @settings(max_examples=40, deadline=None)
    @given(st.permutations(list(range(1, 4))), st.integers(1, 3), st.integers(0, 10**6))
    def test_restrict_commutes_when_tail_fixed(self, small, k, seed):
        x = element(5, k, random.Random(seed))
        s_big = Perm(list(small) + [4, 5])
        assert restrict(act(s_big, x), 3) == act(Perm(small), restrict(x, 3))


class TestRestrictEmbed:
    def test_examples(self):
        assert restrict(E(2, (1, 2)), 2) == E(2, (1, 2))
        assert restrict(E(3, (1, 3)), 2).is_zero()
        assert restrict(E(4, (1, 2), (3, 4)), 3).is_zero()

    def test_embed(self):
        assert embed(E(2, (1, 2)), 4) == E(4, (1, 2))
        assert embed(CohomologyElement.one(3), 6) == CohomologyElement.one(6)

    @pytest.mark.parametrize("m,k", [(3, 1), (4, 2), (4, 3), (5, 2)])
    def test_restrict_after_embed(self, m, k):
        x = element(m, k, random.Random(m * 10 + k))
        assert restrict(embed(x, m + 2), m) == x
