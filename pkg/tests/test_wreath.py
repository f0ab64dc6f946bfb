from fractions import Fraction
from itertools import combinations

import pytest

from fernlab.arnold import CohomologyElement, act, basis
from fernlab.errors import BudgetExceeded
from fernlab.wreath import (
    Perm,
    WreathGroup,
    averaging_projector,
    compute_invariant_basis,
    coset_reps,
    elements,
    in_split_subgroup,
    invariant_basis,
    invariant_space,
    orbit_count_pairs,
)
from fernlab.linalg import sparse_rref


def character_dim(n, xi, k):
    """Average trace of the action on ``H^k``: an independent count of invariants."""
    m = n * xi
    mons = basis(m, k)
    group = list(elements(n, xi))
    total = 0
    for g in group:
        for b in mons:
            total += act(g, CohomologyElement.monomial(b)).terms.get(b.factors, 0)
    assert total % len(group) == 0
    return total // len(group)


class TestPerm:
    def test_compose(self):
        s = Perm([2, 3, 1])
        t = Perm.transposition(3, 1, 2)
        assert (s * t)(1) == s(t(1)) == 3
        assert s * s.inverse() == Perm.identity(3)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Perm([1, 1, 2])


class TestGroup:
    @pytest.mark.parametrize("n,xi", [(1, 1), (2, 2), (3, 2), (2, 3), (4, 1), (1, 4)])
    def test_order_and_blocks(self, n, xi):
        g = WreathGroup(n, xi)
        els = list(g.elements())
        assert len(els) == len(set(els)) == g.order
        assert all(g.contains(x) for x in els)

    def test_non_member(self):
        assert not WreathGroup(2, 2).contains(Perm([1, 3, 2, 4]))
        assert WreathGroup(2, 2).contains(Perm([3, 4, 2, 1]))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(elements(4, 3, budget=1000))
        with pytest.raises(BudgetExceeded):
            invariant_space(6, 3, 1, budget=10)


class TestCosets:
    @pytest.mark.parametrize("n,m,xi", [(3, 1, 2), (4, 2, 1), (3, 2, 2), (4, 0, 2), (4, 4, 1)])
    def test_distinct_and_complete(self, n, m, xi):
        reps = coset_reps(n, m, xi)
        assert len(reps) == len(list(combinations(range(n), m)))
        for a, b in combinations(reps, 2):
            assert not in_split_subgroup(a.inverse() * b, n, m, xi)
        assert all(WreathGroup(n, xi).contains(r) for r in reps)

    def test_cover_group(self):
        n, m, xi = 3, 1, 2
        reps = coset_reps(n, m, xi)
        for g in elements(n, xi):
            hits = [r for r in reps if in_split_subgroup(r.inverse() * g, n, m, xi)]
            assert len(hits) == 1


class TestInvariants:
    def test_degree_zero(self):
        for n, xi in [(1, 1), (2, 2), (3, 1), (0, 2)]:
            assert invariant_space(n, xi, 0).dim == 1

    def test_examples(self):
        assert invariant_space(2, 2, 1).dim == 2
        assert invariant_space(1, 2, 1).dim == 1
        assert invariant_space(0, 3, 2).dim == 0

    def test_pair_orbits(self):
        assert orbit_count_pairs(1, 1) == 0
        assert orbit_count_pairs(1, 3) == 1
        assert orbit_count_pairs(3, 1) == 1
        assert orbit_count_pairs(3, 2) == 2
        for n, xi in [(1, 2), (2, 1), (2, 2), (3, 3), (4, 2)]:
            assert invariant_space(n, xi, 1).dim == orbit_count_pairs(n, xi)

    @pytest.mark.parametrize("n,xi,k", [(2, 2, 1), (2, 2, 2), (3, 1, 2), (2, 3, 2), (3, 2, 2), (4, 1, 3)])
    def test_character_formula(self, n, xi, k):
        assert invariant_space(n, xi, k).dim == character_dim(n, xi, k)

    @pytest.mark.parametrize("n,xi,k", [(2, 2, 1), (2, 2, 2), (3, 2, 2), (2, 3, 3)])
    def test_fixed_by_group(self, n, xi, k):
        for v in invariant_basis(n, xi, k):
            for g in elements(n, xi):
                assert act(g, v) == v
            assert averaging_projector(v, n, xi) == v

    @pytest.mark.parametrize("n,xi,k", [(2, 2, 2), (3, 1, 2), (2, 3, 2)])
    def test_full_projector_agrees(self, n, xi, k):
        # project every basis monomial and compare spans
        images = []
        for b in basis(n * xi, k):
            y = averaging_projector(CohomologyElement.monomial(b), n, xi)
            if not y.is_zero():
                images.append(dict(y.terms))
        order = {b.factors: i for i, b in enumerate(basis(n * xi, k))}
        rows, _ = sparse_rref([{order[f]: c for f, c in r.items()} for r in images])
        fast = compute_invariant_basis(n, xi, k)
        assert [{order[f]: c for f, c in v.terms.items()} for v in fast.vectors] == rows

    def test_canonical_form(self):
        ib = invariant_space(3, 2, 2)
        for i, v in enumerate(ib.vectors):
            for j, p in enumerate(ib.pivots):
                assert v.terms.get(p, 0) == (1 if i == j else 0)

    def test_coordinates(self):
        ib = invariant_space(2, 2, 1)
        y = ib.vectors[0].scale(Fraction(3)) - ib.vectors[1]
        assert ib.coordinates(y) == [3, -1]
        outside = CohomologyElement.monomial(basis(4, 1)[0])
        assert ib.coordinates(outside) is None
