"""The orbit complex of the fern complex as a semi-simplicial set of words.

A ``p``-cell is an ordering of the multiset in which each letter
``0..p`` occurs ``xi`` times and the first occurrences appear in
increasing order.  Face ``f_i`` deletes the letter ``i`` and closes the
gap; the cone operator ``D`` shifts every letter up by one and prepends
``xi`` zeros.  The complex is built augmented, so the empty word is the
unique ``(-1)``-cell and ``d_0`` is the augmentation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

from .errors import DimensionOverflow, IndexOutOfRange
from .linalg import (
    ChainComplex,
    HomologySummary,
    SparseIntMatrix,
    homology,
    homotopy_report,
    verify_complex,
)


@dataclass(frozen=True, order=True)
class BlockWord:
    """An ordering of the multiset with each of ``0..p`` repeated ``xi`` times.

    Cells of the orbit complex are the admissible ones; face maps and the
    cone operator are defined on every ordering.
    """

    xi: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.xi < 1:
            raise ValueError("xi must be positive")
        if not is_multiset_ordering(self.letters, self.xi):
            raise ValueError(f"{self.letters} does not use each letter exactly xi={self.xi} times")

    @property
    def p(self) -> int:
        return len(self.letters) // self.xi - 1

    @property
    def admissible(self) -> bool:
        return is_admissible(self.letters, self.xi)

    @classmethod
    def empty(cls, xi: int) -> "BlockWord":
        return cls(xi, ())

    @classmethod
    def vertex(cls, xi: int) -> "BlockWord":
        return cls(xi, (0,) * xi)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.letters)) + ")"


def is_multiset_ordering(letters: Sequence[int], xi: int) -> bool:
    """Each of ``0..p`` occurs exactly ``xi`` times, in any order."""
    if xi < 1 or len(letters) % xi:
        return False
    top = len(letters) // xi
    counts = [0] * top
    for x in letters:
        if not isinstance(x, int) or not 0 <= x < top:
            return False
        counts[x] += 1
    return all(c == xi for c in counts)


def is_admissible(letters: Sequence[int], xi: int) -> bool:
    """Each of ``0..p`` occurs exactly ``xi`` times, first occurrences increasing."""
    if xi < 1 or len(letters) % xi:
        return False
    top = len(letters) // xi
    counts = [0] * top
    next_new = 0
    for x in letters:
        if not isinstance(x, int) or x < 0 or x >= top:
            return False
        if counts[x] == 0:
            if x != next_new:
                return False
            next_new += 1
        counts[x] += 1
        if counts[x] > xi:
            return False
    return True


def cell_count(xi: int, p: int) -> int:
    """Number of ``p``-cells: ``(xi(p+1))! / (xi!^(p+1) (p+1)!)``."""
    if p < -1:
        return 0
    k = p + 1
    return factorial(xi * k) // (factorial(xi) ** k * factorial(k))


@lru_cache(maxsize=None)
def _words(xi: int, p: int) -> tuple[tuple[int, ...], ...]:
    if p < -1:
        return ()
    length = xi * (p + 1)
    out: list[tuple[int, ...]] = []
    counts = [0] * (p + 1)
    buf: list[int] = []

    def rec(started: int) -> None:
        if len(buf) == length:
            out.append(tuple(buf))
            return
        for x in range(min(started + 1, p + 1)):
            if counts[x] == xi:
                continue
            counts[x] += 1
            buf.append(x)
            rec(max(started, x + 1))
            buf.pop()
            counts[x] -= 1

    rec(0)
    return tuple(out)


def enumerate_words(xi: int, p: int) -> list[BlockWord]:
    """All admissible ``p``-words in lexicographic order."""
    if p < -1:
        raise ValueError("p must be at least -1")
    return [BlockWord(xi, w) for w in _words(xi, p)]


def _face(letters: tuple[int, ...], i: int) -> tuple[int, ...]:
    return tuple(x - 1 if x > i else x for x in letters if x != i)


def face(w: BlockWord, i: int) -> BlockWord:
    """``f_i``: forget the letter ``i`` and decrement every larger letter."""
    if w.p < 0 or not 0 <= i <= w.p:
        raise IndexOutOfRange(f"face index {i} out of range for a {w.p}-cell")
    return BlockWord(w.xi, _face(w.letters, i))


def _cone(letters: tuple[int, ...], xi: int) -> tuple[int, ...]:
    return (0,) * xi + tuple(x + 1 for x in letters)


def nullhomotopy_D(w: BlockWord, n: int | None = None) -> BlockWord:
    """Shift every letter up by one and put ``xi`` zeros in front.

    With ``n`` given the result must remain a cell of the complex for
    ``n`` colours, i.e. ``w.p <= n - 2``.
    """
    if n is not None and w.p > n - 2:
        raise DimensionOverflow(f"D of a {w.p}-cell leaves the complex for n={n}")
    return BlockWord(w.xi, _cone(w.letters, w.xi))


def _index(xi: int, p: int) -> dict[tuple[int, ...], int]:
    return {w: i for i, w in enumerate(_words(xi, p))}


def boundary_matrix(n: int, xi: int, p: int) -> SparseIntMatrix:
    """Matrix of ``d_p = sum_i (-1)^i f_i`` in the lexicographic bases.

    ``p = 0`` gives the augmentation row.
    """
    if not 0 <= p <= n - 1:
        raise IndexOutOfRange(f"no boundary d_{p} in the complex for n={n}")
    rows = _index(xi, p - 1)
    entries: dict[tuple[int, int], int] = {}
    for col, w in enumerate(_words(xi, p)):
        for i in range(p + 1):
            key = (rows[_face(w, i)], col)
            entries[key] = entries.get(key, 0) + (-1) ** i
    return SparseIntMatrix(len(rows), cell_count(xi, p), entries)


def nullhomotopy_matrix(xi: int, p: int) -> SparseIntMatrix:
    """Matrix of ``D`` from degree ``p`` to degree ``p + 1``."""
    rows = _index(xi, p + 1)
    src = _words(xi, p)
    return SparseIntMatrix(len(rows), len(src), {(rows[_cone(w, xi)], c): 1 for c, w in enumerate(src)})


def simplicial_identities_hold(xi: int, p: int) -> bool:
    """``f_i f_j == f_{j-1} f_i`` for all ``i < j`` on every ``p``-cell."""
    for w in _words(xi, p):
        for j in range(p + 1):
            fj = _face(w, j)
            for i in range(j):
                if _face(fj, i) != _face(_face(w, i), j - 1):
                    return False
    return True


def matrix_checksum(m: SparseIntMatrix) -> str:
    h = hashlib.sha256(f"{m.rows}x{m.cols}".encode())
    for (r, c), v in m.items():
        h.update(f";{r},{c},{v}".encode())
    return h.hexdigest()


@dataclass(frozen=True)
class HomotopyReport:
    n: int
    xi: int
    full_range: dict[int, bool]
    stated_range: dict[int, bool]

    @property
    def holds(self) -> bool:
        """The identity on the whole range ``-1 <= p <= n - 2``."""
        return all(self.full_range.values())


@dataclass(frozen=True, eq=False)
class OrbitComplex:
    """Augmented orbit complex for ``n`` colours and blocks of size ``xi``."""

    n: int
    xi: int
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.xi < 1:
            raise ValueError("n and xi must be positive")

    @property
    def degrees(self) -> range:
        return range(-1, self.n)

    def cells(self, p: int) -> list[BlockWord]:
        return enumerate_words(self.xi, p)

    def cell_counts(self) -> dict[int, int]:
        return {p: cell_count(self.xi, p) for p in self.degrees}

    @cached_property
    def chain_complex(self) -> ChainComplex:
        dims = self.cell_counts()
        bnd = {p: boundary_matrix(self.n, self.xi, p) for p in range(0, self.n)}
        return ChainComplex(dims, bnd, augmented=True)

    @cached_property
    def homotopy(self) -> dict[int, SparseIntMatrix]:
        """The matrices of ``D`` in degrees ``-1 .. n-2``; zero above."""
        return {p: nullhomotopy_matrix(self.xi, p) for p in range(-1, self.n - 1)}

    def is_complex(self) -> bool:
        return verify_complex(self.chain_complex)

    def homology(self) -> list[HomologySummary]:
        return [homology(self.chain_complex, p) for p in range(0, self.n)]


def orbit_homology(n: int, xi: int) -> list[HomologySummary]:
    """Reduced integral homology in degrees ``0 .. n-1``."""
    return OrbitComplex(n, xi).homology()


def verify_homotopy_identity(n: int, xi: int, complex_: OrbitComplex | None = None) -> HomotopyReport:
    """Check ``dD + Dd = id`` degree by degree.

    ``full_range`` covers ``-1 <= p <= n - 2``, where ``D`` lands inside
    the complex.  ``stated_range`` covers ``0 <= p <= n - xi`` with ``D``
    taken to be zero wherever it would leave the complex; for ``xi = 1``
    this includes the top degree, which the full range does not.
    """
    oc = complex_ or OrbitComplex(n, xi)
    c = oc.chain_complex
    full = homotopy_report(c, oc.homotopy, -1, n - 2)
    stated = homotopy_report(c, oc.homotopy, 0, min(n - xi, n - 1))
    return HomotopyReport(n, xi, full, stated)


def vanishing_range(summaries: Iterable[HomologySummary]) -> int:
    """Largest ``i`` with reduced ``H_0 .. H_i`` all zero (``-1`` if ``H_0 != 0``)."""
    top = -1
    for s in sorted(summaries, key=lambda s: s.degree):
        if s.degree != top + 1 or not s.is_zero:
            break
        top = s.degree
    return top
