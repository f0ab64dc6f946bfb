"""Rational cohomology of the ordered configuration space of the plane.

The algebra is generated by degree-one classes ``w(i,j) = w(j,i)``
subject to the three-term relation.  A monomial is stored as a tuple of
pairs ``(a, b)`` with ``a < b``; it is *admissible* when the second
coordinates strictly increase, and admissible monomials form a basis.
Products of generators are reduced to that basis by :func:`straighten`,
which sorts factors by second index (each adjacent swap costs a sign)
and rewrites a repeated second index with

    w(a,c) w(b,c)  ->  w(a,b) w(b,c) - w(a,b) w(a,c)      (a < b < c).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

Pair = tuple[int, int]
Factors = tuple[Pair, ...]


@dataclass(frozen=True, order=True)
class ArnoldMonomial:
    m: int
    factors: Factors

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(tuple(f) for f in self.factors))
        if not is_admissible_monomial(self.factors, self.m):
            raise ValueError(f"{self.factors} is not an admissible monomial on {self.m} points")

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "".join(f"w{a}{b}" if max(a, b) < 10 else f"w({a},{b})" for a, b in self.factors)


def is_admissible_monomial(factors: Sequence[Pair], m: int) -> bool:
    prev = 0
    for a, b in factors:
        if not (1 <= a < b <= m) or b <= prev:
            return False
        prev = b
    return True


def poincare_coefficient(m: int, k: int) -> int:
    """Coefficient of ``t^k`` in ``(1 + t)(1 + 2t)...(1 + (m-1)t)``."""
    coeffs = [1]
    for i in range(1, m):
        nxt = coeffs + [0]
        for j, c in enumerate(coeffs):
            nxt[j + 1] += i * c
        coeffs = nxt
    return coeffs[k] if 0 <= k < len(coeffs) else 0


def iter_basis(m: int, k: int) -> Iterator[Factors]:
    """Admissible monomials of degree ``k`` in no particular order, without storing them."""
    if k < 0:
        return
    for bs in combinations(range(2, m + 1), k):
        for as_ in product(*(range(1, b) for b in bs)):
            yield tuple(zip(as_, bs))


_basis_lock = threading.Lock()
_basis_cache: dict[tuple[int, int], tuple[Factors, ...]] = {}


def basis_factors(m: int, k: int) -> tuple[Factors, ...]:
    key = (m, k)
    with _basis_lock:
        hit = _basis_cache.get(key)
    if hit is None:
        hit = tuple(sorted(iter_basis(m, k)))
        with _basis_lock:
            hit = _basis_cache.setdefault(key, hit)
    return hit


def basis(m: int, k: int) -> list[ArnoldMonomial]:
    """Admissible monomials of degree ``k`` on ``m`` points, lexicographically ordered."""
    return [ArnoldMonomial(m, f) for f in basis_factors(m, k)]


# ---------------------------------------------------------------------------
# Straightening


def _sort_with_sign(fs: Sequence[Pair]) -> tuple[Factors, int]:
    """Sort factors by ``(b, a)``; the sign counts the adjacent swaps."""
    keys = [(b, a) for a, b in fs]
    inv = sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])
    return tuple((a, b) for b, a in sorted(keys)), -1 if inv % 2 else 1


def _normalise(pairs: Iterable[Sequence[int]]) -> Factors | None:
    out = []
    for i, j in pairs:
        if i == j:
            raise ValueError(f"generator w({i},{j}) is undefined")
        out.append((i, j) if i < j else (j, i))
    if len(set(out)) < len(out):
        return None
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _straighten_sorted(fs: Factors) -> tuple[tuple[Factors, int], ...]:
    """Straighten factors already sorted by ``(b, a)`` and pairwise distinct."""
    for t in range(len(fs) - 1):
        (a1, c1), (a2, c2) = fs[t], fs[t + 1]
        if c1 == c2:
            left, right = fs[:t], fs[t + 2:]
            acc: dict[Factors, int] = {}
            for repl, coef in ((((a1, a2), (a2, c1)), 1), (((a1, a2), (a1, c1)), -1)):
                for mono, c in _straighten_any(left + repl + right):
                    acc[mono] = acc.get(mono, 0) + coef * c
            return tuple(sorted((k, v) for k, v in acc.items() if v))
    return ((fs, 1),)


def _straighten_any(fs: Factors) -> tuple[tuple[Factors, int], ...]:
    if len(set(fs)) < len(fs):
        return ()
    srt, sign = _sort_with_sign(fs)
    if sign == 1:
        return _straighten_sorted(srt)
    return tuple((k, -v) for k, v in _straighten_sorted(srt))


def _straighten_random(fs: Factors, rng) -> dict[Factors, int]:
    """Uncached straightening that rewrites a randomly chosen repeated pair."""
    if len(set(fs)) < len(fs):
        return {}
    srt, sign = _sort_with_sign(fs)
    clashes = [(t, u) for t in range(len(srt)) for u in range(t + 1, len(srt)) if srt[t][1] == srt[u][1]]
    if not clashes:
        return {srt: sign}
    t, u = rng.choice(clashes)
    # bring factor u next to factor t
    moved = srt[:t + 1] + (srt[u],) + srt[t + 1:u] + srt[u + 1:]
    sign *= -1 if (u - t - 1) % 2 else 1
    (a1, c), (a2, _) = moved[t], moved[t + 1]
    left, right = moved[:t], moved[t + 2:]
    acc: dict[Factors, int] = {}
    for repl, coef in ((((a1, a2), (a2, c)), sign), (((a1, a2), (a1, c)), -sign)):
        for mono, v in _straighten_random(left + repl + right, rng).items():
            acc[mono] = acc.get(mono, 0) + coef * v
    return {k: v for k, v in acc.items() if v}


# ---------------------------------------------------------------------------
# Elements


class CohomologyElement:
    """A rational combination of admissible monomials of a single degree."""

    __slots__ = ("m", "degree", "terms")

    def __init__(self, m: int, degree: int, terms: Mapping[Factors, Fraction] | None = None):
        self.m = m
        self.degree = degree
        clean: dict[Factors, Fraction] = {}
        for f, c in (terms or {}).items():
            f = tuple(tuple(x) for x in f)
            if len(f) != degree:
                raise ValueError("mixed degrees in a cohomology element")
            if not is_admissible_monomial(f, m):
                raise ValueError(f"{f} is not admissible on {m} points")
            c = Fraction(c)
            if c:
                clean[f] = clean.get(f, Fraction(0)) + c
        self.terms = {f: c for f, c in sorted(clean.items()) if c}

    @classmethod
    def _trusted(cls, m: int, degree: int, terms: dict[Factors, Fraction]) -> "CohomologyElement":
        obj = cls.__new__(cls)
        obj.m, obj.degree = m, degree
        obj.terms = {f: c for f, c in sorted(terms.items()) if c}
        return obj

    @classmethod
    def one(cls, m: int) -> "CohomologyElement":
        return cls._trusted(m, 0, {(): Fraction(1)})

    @classmethod
    def zero(cls, m: int, degree: int) -> "CohomologyElement":
        return cls._trusted(m, degree, {})

    @classmethod
    def monomial(cls, mono: ArnoldMonomial, coef=1) -> "CohomologyElement":
        return cls(mono.m, mono.degree, {mono.factors: coef})

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[tuple[ArnoldMonomial, Fraction]]:
        return [(ArnoldMonomial(self.m, f), c) for f, c in self.terms.items()]

    def _check(self, other: "CohomologyElement") -> None:
        if (self.m, self.degree) != (other.m, other.degree):
            raise ValueError("elements live in different groups")

    def __add__(self, other: "CohomologyElement") -> "CohomologyElement":
        self._check(other)
        acc = dict(self.terms)
        for f, c in other.terms.items():
            acc[f] = acc.get(f, Fraction(0)) + c
        return CohomologyElement._trusted(self.m, self.degree, acc)

    def __neg__(self) -> "CohomologyElement":
        return self.scale(-1)

    def __sub__(self, other: "CohomologyElement") -> "CohomologyElement":
        return self + (-other)

    def scale(self, k) -> "CohomologyElement":
        k = Fraction(k)
        return CohomologyElement._trusted(self.m, self.degree, {f: k * c for f, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohomologyElement):
            return NotImplemented
        return (self.m, self.degree, self.terms) == (other.m, other.degree, other.terms)

    def __hash__(self):
        return hash((self.m, self.degree, tuple(self.terms.items())))

    def __repr__(self) -> str:
        return f"CohomologyElement(m={self.m}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f, c in self.terms.items():
            mono = str(ArnoldMonomial(self.m, f))
            parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"({c}){mono}")
        return " + ".join(parts).replace("+ -", "- ")


def straighten(factors: Sequence[Sequence[int]], m: int, rng=None) -> CohomologyElement:
    """The product of the generators ``w(i,j)`` written in the admissible basis.

    With ``rng`` (a :class:`random.Random`) the rewrite rule is applied to
    randomly chosen clashes instead of the canonical leftmost one; the
    result must not change.
    """
    fs = _normalise(factors)
    k = len(factors)
    if fs is None:
        return CohomologyElement.zero(m, k)
    if any(b > m for _, b in fs):
        raise ValueError(f"index exceeds m={m}")
    if rng is not None:
        terms = _straighten_random(fs, rng)
    else:
        terms = dict(_straighten_any(fs))
    return CohomologyElement._trusted(m, k, {f: Fraction(c) for f, c in terms.items()})


def act(sigma, x: CohomologyElement) -> CohomologyElement:
    """Relabel ``w(i,j) -> w(sigma(i), sigma(j))`` and straighten."""
    if len(sigma) != x.m:
        raise ValueError(f"permutation of {len(sigma)} letters acting on {x.m} points")
    img = sigma.images
    acc: dict[Factors, Fraction] = {}
    for f, c in x.terms.items():
        fs = tuple((img[a - 1], img[b - 1]) if img[a - 1] < img[b - 1] else (img[b - 1], img[a - 1])
                   for a, b in f)
        for mono, v in _straighten_any(fs):
            acc[mono] = acc.get(mono, Fraction(0)) + c * v
    return CohomologyElement._trusted(x.m, x.degree, acc)


def restrict(x: CohomologyElement, m_small: int) -> CohomologyElement:
    """Pull back along adding points ``m_small+1 ..`` far away: generators touching them vanish."""
    if m_small > x.m:
        raise ValueError("m_small exceeds the number of points")
    # admissible monomials stay admissible, so no rewriting is needed
    return CohomologyElement._trusted(
        m_small, x.degree, {f: c for f, c in x.terms.items() if all(b <= m_small for _, b in f)}
    )


def embed(x: CohomologyElement, m_big: int) -> CohomologyElement:
    """Pull back along forgetting the points ``m+1 .. m_big``."""
    if m_big < x.m:
        raise ValueError("m_big is smaller than the number of points")
    return CohomologyElement._trusted(m_big, x.degree, dict(x.terms))


# ---------------------------------------------------------------------------
# Independent dimension oracle


def presentation_corank(m: int, k: int) -> int:
    """Dimension of degree ``k`` of the exterior algebra on the pairs modulo
    the ideal generated by the three-term relations, computed as a
    corank with the Smith-form rank.  Shares no code with straightening.
    """
    from .linalg import SparseIntMatrix, rational_rank

    pairs = list(combinations(range(1, m + 1), 2))
    if k > len(pairs) or k < 0:
        return 0
    pidx = {p: i for i, p in enumerate(pairs)}
    cols = {s: i for i, s in enumerate(combinations(range(len(pairs)), k))}
    if k < 2:
        return len(cols)

    def wedge(idx: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
        if len(set(idx)) < len(idx):
            return None
        inv = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
        return tuple(sorted(idx)), -1 if inv % 2 else 1

    def g(i: int, j: int) -> int:
        return pidx[(min(i, j), max(i, j))]

    rows: list[dict[int, int]] = []
    for i, j, l in combinations(range(1, m + 1), 3):
        rel = [(g(i, j), g(j, l)), (g(j, l), g(l, i)), (g(l, i), g(i, j))]
        for rest in combinations(range(len(pairs)), k - 2):
            row: dict[int, int] = {}
            for x, y in rel:
                w = wedge((x, y) + rest)
                if w is not None:
                    key, s = w
                    c = cols[key]
                    row[c] = row.get(c, 0) + s
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)
    mat = SparseIntMatrix(len(rows), len(cols), {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})
    return len(cols) - rational_rank(mat)
