"""Block-preserving permutation groups and invariant cohomology.

The group ``S_xi wr S_n`` acts on ``n * xi`` points split into blocks
``B_i = {(i-1)xi + 1, ..., i xi}``.  Because it acts freely on the ordered
configuration space of the plane, the rational cohomology of the
quotient (the space of ``n`` unordered ``xi``-subsets) is the invariant
subspace of the Arnold algebra, which we compute as the image of the
averaging projector.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Iterator, Sequence

from .arnold import CohomologyElement, Factors, _straighten_any, act, basis_factors
from .errors import BudgetExceeded
from .linalg import sparse_rref

DEFAULT_BUDGET = 10**6


class Perm:
    """A permutation of ``{1, ..., m}`` in one-line notation."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, m: int) -> "Perm":
        return cls(range(1, m + 1))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> "Perm":
        img = list(range(1, m + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(img)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition ``(self * other)(i) == self(other(i))``."""
        if len(self) != len(other):
            raise ValueError("permutations of different sizes")
        return Perm(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Perm(inv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


@dataclass(frozen=True)
class WreathGroup:
    n: int
    xi: int

    @property
    def degree(self) -> int:
        return self.n * self.xi

    @property
    def order(self) -> int:
        return factorial(self.n) * factorial(self.xi) ** self.n

    def block(self, i: int) -> range:
        return range((i - 1) * self.xi + 1, i * self.xi + 1)

    def block_of(self, point: int) -> int:
        return (point - 1) // self.xi + 1

    def block_map(self, g: Perm) -> tuple[int, ...] | None:
        """The induced permutation of blocks, or ``None`` if ``g`` breaks a block."""
        out = []
        for i in range(1, self.n + 1):
            targets = {self.block_of(g(x)) for x in self.block(i)}
            if len(targets) != 1:
                return None
            out.append(targets.pop())
        return tuple(out) if sorted(out) == list(range(1, self.n + 1)) else None

    def contains(self, g: Perm) -> bool:
        return len(g) == self.degree and self.block_map(g) is not None

    def elements(self, budget: int = DEFAULT_BUDGET) -> Iterator[Perm]:
        return elements(self.n, self.xi, budget)


def check_budget(n: int, xi: int, budget: int) -> None:
    order = factorial(n) * factorial(xi) ** n
    if order > budget:
        raise BudgetExceeded(f"wreath group S_{xi} wr S_{n} has order {order} > budget {budget}")


def elements(n: int, xi: int, budget: int = DEFAULT_BUDGET) -> Iterator[Perm]:
    """Every element of ``S_xi wr S_n`` exactly once, in a fixed order."""
    check_budget(n, xi, budget)
    return _element_images(n, xi)


def _element_images(n: int, xi: int) -> Iterator[Perm]:
    inner = list(permutations(range(xi)))
    for outer in permutations(range(n)):
        for taus in product(inner, repeat=n):
            img = [0] * (n * xi)
            for i in range(n):
                base = outer[i] * xi
                for r in range(xi):
                    img[i * xi + r] = base + taus[i][r] + 1
            yield Perm(img)


def coset_reps(n: int, m: int, xi: int) -> list[Perm]:
    """Representatives of ``G / (S_xi wr S_m x S_xi wr S_{n-m})``.

    One representative per ``m``-subset ``T`` of blocks: the first ``m``
    blocks go order-preservingly onto ``T``, the others onto the
    complement, points inside a block keep their order.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    reps = []
    for chosen in combinations(range(n), m):
        rest = [b for b in range(n) if b not in chosen]
        target = list(chosen) + rest
        img = [target[i] * xi + r + 1 for i in range(n) for r in range(xi)]
        reps.append(Perm(img))
    assert len(reps) == comb(n, m)
    return reps


def in_split_subgroup(g: Perm, n: int, m: int, xi: int) -> bool:
    """Membership in the block-split subgroup: ``g`` is block-preserving and
    keeps the first ``m`` blocks together."""
    if not WreathGroup(n, xi).contains(g):
        return False
    return all(g(x) <= m * xi for x in range(1, m * xi + 1))


def orbit_count_pairs(n: int, xi: int) -> int:
    """Orbits of unordered pairs of points: within a block, across blocks."""
    return int(xi >= 2) + int(n >= 2)


# ---------------------------------------------------------------------------
# Invariants


def averaging_projector(x: CohomologyElement, n: int, xi: int, budget: int = DEFAULT_BUDGET) -> CohomologyElement:
    """``(1/|G|) sum_g g.x`` over the whole group."""
    if x.m != n * xi:
        raise ValueError("element lives on the wrong number of points")
    total = CohomologyElement.zero(x.m, x.degree)
    count = 0
    for g in elements(n, xi, budget):
        total = total + act(g, x)
        count += 1
    return total.scale(Fraction(1, count))


def _sorted_signed(fs: list[tuple[int, int]]) -> tuple[Factors, int]:
    keys = [(b, a) for a, b in fs]
    inv = 0
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                inv += 1
    return tuple((a, b) for b, a in sorted(keys)), -1 if inv & 1 else 1


def _average_of_monomial(mono: Factors, group: list[tuple[int, ...]]) -> tuple[dict[Factors, Fraction], set[Factors]]:
    """Average of one basis monomial and the edge sets met along the way."""
    formal: dict[Factors, int] = {}
    for img in group:
        fs = []
        for a, b in mono:
            x, y = img[a - 1], img[b - 1]
            fs.append((x, y) if x < y else (y, x))
        key, s = _sorted_signed(fs)
        formal[key] = formal.get(key, 0) + s
    acc: dict[Factors, int] = {}
    for key, c in formal.items():
        if not c:
            continue
        for f, v in _straighten_any(key):
            acc[f] = acc.get(f, 0) + c * v
    size = len(group)
    return {f: Fraction(v, size) for f, v in acc.items() if v}, set(formal)


@dataclass(frozen=True)
class InvariantBasis:
    """A canonical basis of the invariant subspace in degree ``k``.

    ``vectors[i]`` has coefficient one at monomial ``pivots[i]`` and zero
    at every other pivot (reduced row echelon form, pivots in
    lexicographic order).
    """

    n: int
    xi: int
    k: int
    vectors: tuple[CohomologyElement, ...]

    @property
    def m(self) -> int:
        return self.n * self.xi

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> tuple[Factors, ...]:
        return tuple(next(iter(v.terms)) for v in self.vectors)

    def coordinates(self, y: CohomologyElement) -> list[Fraction] | None:
        """Coordinates of ``y`` in this basis, or ``None`` if ``y`` is outside the span."""
        if (y.m, y.degree) != (self.m, self.k):
            raise ValueError("element lives in a different group")
        coords = [y.terms.get(p, Fraction(0)) for p in self.pivots]
        recon = CohomologyElement.zero(self.m, self.k)
        for c, v in zip(coords, self.vectors):
            if c:
                recon = recon + v.scale(c)
        return coords if recon == y else None


_inv_lock = threading.Lock()
_inv_cache: dict[tuple[int, int, int], InvariantBasis] = {}


def compute_invariant_basis(n: int, xi: int, k: int, budget: int = DEFAULT_BUDGET) -> InvariantBasis:
    """Image of the averaging projector on ``H^k``, without any caching.

    The projector is applied to one basis monomial per group orbit of
    edge sets: every other basis monomial maps to the same average up to
    sign, so the span is unchanged.
    """
    m = n * xi
    if n == 0:
        vecs = (CohomologyElement.one(0),) if k == 0 else ()
        return InvariantBasis(n, xi, k, vecs)
    check_budget(n, xi, budget)
    group = [g.images for g in _element_images(n, xi)]
    mono_list = basis_factors(m, k)
    index = {f: i for i, f in enumerate(mono_list)}
    covered: set[Factors] = set()
    averages: list[dict[int, Fraction]] = []
    for mono in mono_list:
        if mono in covered:
            continue
        avg, seen = _average_of_monomial(mono, group)
        covered |= seen
        if avg:
            averages.append({index[f]: c for f, c in avg.items()})
    rows, _ = sparse_rref(averages)
    vecs = tuple(
        CohomologyElement._trusted(m, k, {mono_list[i]: c for i, c in row.items()}) for row in rows
    )
    return InvariantBasis(n, xi, k, vecs)


def invariant_space(n: int, xi: int, k: int, budget: int = DEFAULT_BUDGET) -> InvariantBasis:
    """Memoised :func:`compute_invariant_basis`."""
    # budget first, so a warm cache never changes the outcome
    if n > 0:
        check_budget(n, xi, budget)
    key = (n, xi, k)
    with _inv_lock:
        hit = _inv_cache.get(key)
    if hit is not None:
        return hit
    result = compute_invariant_basis(n, xi, k, budget)
    with _inv_lock:
        return _inv_cache.setdefault(key, result)


def invariant_basis(n: int, xi: int, k: int, budget: int = DEFAULT_BUDGET) -> list[CohomologyElement]:
    """Canonical basis of the ``S_xi wr S_n``-invariants in ``H^k`` of ``n*xi`` points."""
    return list(invariant_space(n, xi, k, budget).vectors)
