"""Exact sparse linear algebra over the integers and the rationals.

Everything here is arbitrary precision.  Integer matrices are stored
sparsely (only nonzero entries), rational matrices densely as tuples of
:class:`fractions.Fraction`.  The main entry points are
:func:`smith_normal_form`, :func:`elementary_divisors`,
:func:`rational_rank` and :func:`homology`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, InvalidComplex

Rational = Fraction


class SparseIntMatrix:
    """An immutable ``rows x cols`` integer matrix holding only nonzero entries."""

    __slots__ = ("rows", "cols", "_entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        clean: dict[tuple[int, int], int] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            v = int(v)
            if v:
                clean[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self._entries = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "SparseIntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise DimensionMismatch("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_rows(cls, rows: int, cols: int, row_dicts: Mapping[int, Mapping[int, int]]) -> "SparseIntMatrix":
        return cls(rows, cols, {(r, c): v for r, d in row_dicts.items() for c, v in d.items()})

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return dict(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(key)
        return self._entries.get((r, c), 0)

    def items(self):
        """Nonzero entries in row-major order."""
        return sorted(self._entries.items())

    def row_dicts(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = {}
        for (r, c), v in self._entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def col_dicts(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = {}
        for (r, c), v in self._entries.items():
            out.setdefault(c, {})[r] = v
        return out

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def is_diagonal(self) -> bool:
        return all(r == c for r, c in self._entries)

    def diagonal(self) -> list[int]:
        return [self._entries.get((i, i), 0) for i in range(min(self.rows, self.cols))]

    # arithmetic
    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    @property
    def T(self) -> "SparseIntMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (r, k), v in self._entries.items():
            for c, w in right.get(k, {}).items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, acc)

    def __add__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return SparseIntMatrix(self.rows, self.cols, acc)

    def __neg__(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {key: k * v for key, v in self._entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}, {self.cols}, nnz={self.nnz})"

    def determinant(self) -> int:
        """Exact determinant by fraction-free elimination (square matrices only)."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return _bareiss(self.to_dense(), want_det=True)[1]


# ---------------------------------------------------------------------------
# Elimination engine


class _Eliminator:
    """Row/column reduction of a sparse integer matrix toward Smith form.

    ``U`` is kept as a dict of rows and ``V`` as a dict of columns so that
    row operations touch only ``U`` and column operations only ``V``.
    """

    def __init__(self, m: SparseIntMatrix, track: bool):
        self.nrows, self.ncols = m.shape
        self.rows: dict[int, dict[int, int]] = {r: {} for r in range(self.nrows)}
        self.cols: dict[int, set[int]] = {c: set() for c in range(self.ncols)}
        for (r, c), v in m._entries.items():
            self.rows[r][c] = v
            self.cols[c].add(r)
        self.track = track
        if track:
            self.U = {r: {r: 1} for r in range(self.nrows)}
            self.V = {c: {c: 1} for c in range(self.ncols)}
        self.pivots: list[tuple[int, int, int]] = []

    @staticmethod
    def _axpy(dst: dict[int, int], src: dict[int, int], q: int) -> None:
        for k, v in src.items():
            nv = dst.get(k, 0) - q * v
            if nv:
                dst[k] = nv
            else:
                dst.pop(k, None)

    def row_sub(self, dst: int, src: int, q: int) -> None:
        """row[dst] -= q * row[src]."""
        rd = self.rows[dst]
        for c, v in self.rows[src].items():
            nv = rd.get(c, 0) - q * v
            if nv:
                if c not in rd:
                    self.cols[c].add(dst)
                rd[c] = nv
            elif c in rd:
                del rd[c]
                self.cols[c].discard(dst)
        if self.track:
            self._axpy(self.U[dst], self.U[src], q)

    def col_sub(self, dst: int, src: int, q: int) -> None:
        """col[dst] -= q * col[src]."""
        for r in list(self.cols[src]):
            row = self.rows[r]
            nv = row.get(dst, 0) - q * row[src]
            if nv:
                if dst not in row:
                    self.cols[dst].add(r)
                row[dst] = nv
            elif dst in row:
                del row[dst]
                self.cols[dst].discard(r)
        if self.track:
            self._axpy(self.V[dst], self.V[src], q)

    def _best_in_col(self, c: int) -> int:
        return min(self.cols[c], key=lambda r: (abs(self.rows[r][c]), len(self.rows[r]), r))

    def _best_in_row(self, r: int) -> int:
        return min(self.rows[r], key=lambda c: (abs(self.rows[r][c]), len(self.cols[c]), c))

    def _remove(self, r: int, c: int) -> None:
        v = self.rows[r][c]
        for cc in self.rows[r]:
            self.cols[cc].discard(r)
        del self.rows[r]
        del self.cols[c]
        self.pivots.append((r, c, v))

    def reduce(self) -> None:
        for c0 in range(self.ncols):
            while c0 in self.cols and self.cols[c0]:
                r = self._best_in_col(c0)
                self._isolate(r, c0)

    def _isolate(self, r: int, c: int) -> None:
        while True:
            v = self.rows[r][c]
            # clear column c using row r
            dirty = False
            for rr in sorted(self.cols[c] - {r}):
                q = self.rows[rr][c] // v
                self.row_sub(rr, r, q)
                if c in self.rows[rr]:
                    dirty = True
            if dirty:
                r = self._best_in_col(c)
                continue
            if abs(v) == 1:
                # row r now meets only column c; column ops touch row r alone
                for cc in sorted(self.rows[r]):
                    if cc != c:
                        q = self.rows[r][cc] * v
                        if self.track:
                            self._axpy(self.V[cc], self.V[c], q)
                self._remove(r, c)
                return
            dirty = False
            for cc in sorted(set(self.rows[r]) - {c}):
                q = self.rows[r][cc] // v
                self.col_sub(cc, c, q)
                if cc in self.rows[r]:
                    dirty = True
            if dirty:
                c = self._best_in_row(r)
                continue
            self._remove(r, c)
            return


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def elementary_divisors(m: SparseIntMatrix) -> list[int]:
    """Nonzero Smith invariants ``d_1 | d_2 | ...`` of ``m`` (no transforms)."""
    el = _Eliminator(m, track=False)
    el.reduce()
    return _divisor_chain([abs(v) for _, _, v in el.pivots])


def _divisor_chain(values: list[int]) -> list[int]:
    d = sorted(values)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_normal_form(m: SparseIntMatrix) -> tuple[SparseIntMatrix, SparseIntMatrix, SparseIntMatrix]:
    """Return ``(U, D, V)`` with ``D = U @ m @ V`` in Smith normal form.

    ``U`` and ``V`` are unimodular and the nonzero diagonal of ``D`` is a
    positive divisibility chain.  Pivots are chosen with minimal absolute
    value to limit coefficient growth.
    """
    rows, cols = m.shape
    el = _Eliminator(m, track=True)
    el.reduce()
    piv = el.pivots
    prow = [r for r, _, _ in piv]
    pcol = [c for _, c, _ in piv]
    used_r, used_c = set(prow), set(pcol)
    row_order = prow + [r for r in range(rows) if r not in used_r]
    col_order = pcol + [c for c in range(cols) if c not in used_c]

    U = [dict(el.U[r]) for r in row_order]
    V = [dict(el.V[c]) for c in col_order]
    diag = [v for _, _, v in piv]
    for i, v in enumerate(diag):
        if v < 0:
            U[i] = {k: -x for k, x in U[i].items()}
            diag[i] = -v

    def lin(a: dict[int, int], x: int, b: dict[int, int], y: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for k, v in a.items():
            out[k] = out.get(k, 0) + x * v
        for k, v in b.items():
            out[k] = out.get(k, 0) + y * v
        return {k: v for k, v in out.items() if v}

    r = len(diag)
    for i in range(r):
        for j in range(i + 1, r):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _bezout(a, b)
            U[i], U[j] = lin(U[i], s, U[j], t), lin(U[i], -b // g, U[j], a // g)
            V[i], V[j] = lin(V[i], 1, V[j], 1), lin(V[i], -t * b // g, V[j], s * a // g)
            diag[i], diag[j] = g, a * b // g

    Um = SparseIntMatrix(rows, rows, {(i, k): v for i, d in enumerate(U) for k, v in d.items()})
    Vm = SparseIntMatrix(cols, cols, {(k, j): v for j, d in enumerate(V) for k, v in d.items()})
    Dm = SparseIntMatrix(rows, cols, {(i, i): v for i, v in enumerate(diag)})
    return Um, Dm, Vm


def rational_rank(m: SparseIntMatrix) -> int:
    """Rank over Q, counted as the number of nonzero Smith invariants."""
    el = _Eliminator(m, track=False)
    el.reduce()
    return len(el.pivots)


def _bareiss(a: list[list[int]], want_det: bool = False) -> tuple[int, int]:
    """Fraction-free Gaussian elimination on a dense copy; returns (rank, det)."""
    a = [list(row) for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    prev = 1
    sign = 1
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        p = next((r for r in range(rank, nr) if a[r][c]), None)
        if p is None:
            continue
        if p != rank:
            a[p], a[rank] = a[rank], a[p]
            sign = -sign
        piv = a[rank][c]
        for r in range(rank + 1, nr):
            for cc in range(c + 1, nc):
                a[r][cc] = (a[r][cc] * piv - a[r][c] * a[rank][cc]) // prev
            a[r][c] = 0
        prev = piv
        rank += 1
    det = 0
    if want_det and nr == nc:
        det = sign * a[nr - 1][nr - 1] if rank == nr and nr else (1 if nr == 0 else 0)
    return rank, det


def bareiss_rank(m: SparseIntMatrix) -> int:
    """Rank by dense fraction-free elimination; an oracle independent of the Smith path."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss(m.to_dense())[0]


# ---------------------------------------------------------------------------
# Chain complexes


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.betti < 0:
            raise ValueError("negative Betti number")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """A bounded chain complex of free abelian groups.

    ``dims[p]`` is the rank of ``C_p`` for ``bottom <= p <= top_degree``
    and ``boundaries[p]`` is the matrix of ``d_p : C_p -> C_{p-1}``
    (shape ``dims[p-1] x dims[p]``) for ``bottom < p <= top_degree``.
    An augmented complex has ``bottom == -1`` and ``boundaries[0]`` is
    the augmentation row.
    """

    dims: Mapping[int, int]
    boundaries: Mapping[int, SparseIntMatrix]
    augmented: bool = False
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        dims = dict(self.dims)
        if dims:
            lo, hi = min(dims), max(dims)
            if sorted(dims) != list(range(lo, hi + 1)):
                raise ValueError("chain degrees must be contiguous")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundaries", dict(self.boundaries))
        for p, d in self.boundaries.items():
            if p not in dims or p - 1 not in dims:
                raise DimensionMismatch(f"boundary d_{p} has no source or target group")
            if d.shape != (dims[p - 1], dims[p]):
                raise DimensionMismatch(
                    f"d_{p} has shape {d.shape}, expected {(dims[p - 1], dims[p])}"
                )

    @classmethod
    def from_boundaries(cls, boundaries: Sequence[SparseIntMatrix], augmented: bool = False) -> "ChainComplex":
        """Build from a list where entry ``i`` is ``d_{bottom+1+i}``."""
        bottom = -1 if augmented else 0
        dims: dict[int, int] = {}
        bmap: dict[int, SparseIntMatrix] = {}
        for i, d in enumerate(boundaries):
            p = bottom + 1 + i
            for deg, n in ((p - 1, d.rows), (p, d.cols)):
                if dims.setdefault(deg, n) != n:
                    raise DimensionMismatch(f"inconsistent rank of C_{deg}")
            bmap[p] = d
        return cls(dims, bmap, augmented)

    @property
    def bottom(self) -> int:
        return min(self.dims) if self.dims else 0

    @property
    def top_degree(self) -> int:
        return max(self.dims) if self.dims else -1

    def rank(self, p: int) -> int:
        return self.dims.get(p, 0)

    def d(self, p: int) -> SparseIntMatrix:
        """``d_p``, the zero map where no boundary is stored."""
        if p in self.boundaries:
            return self.boundaries[p]
        return SparseIntMatrix.zero(self.rank(p - 1), self.rank(p))

    def _divisors(self, p: int) -> list[int]:
        key = ("div", p)
        if key not in self._cache:
            self._cache[key] = elementary_divisors(self.d(p)) if p in self.boundaries else []
        return self._cache[key]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in self.dims.items())


def verify_complex(c: ChainComplex) -> bool:
    """True iff every composite ``d_{p-1} d_p`` vanishes."""
    key = ("dd",)
    if key not in c._cache:
        ok = True
        for p in sorted(c.boundaries):
            if p - 1 in c.boundaries and not (c.boundaries[p - 1] @ c.boundaries[p]).is_zero():
                ok = False
                break
        c._cache[key] = ok
    return c._cache[key]


def homology(c: ChainComplex, p: int) -> HomologySummary:
    """Integral homology of ``c`` in degree ``p`` (reduced if ``c`` is augmented)."""
    if not verify_complex(c):
        raise InvalidComplex("d o d != 0")
    rank_out = len(c._divisors(p))
    incoming = c._divisors(p + 1)
    betti = c.rank(p) - rank_out - len(incoming)
    return HomologySummary(p, betti, tuple(t for t in incoming if t > 1))


def homology_all(c: ChainComplex) -> list[HomologySummary]:
    return [homology(c, p) for p in sorted(c.dims)]


def verify_chain_homotopy(c: ChainComplex, h: Mapping[int, SparseIntMatrix], lo: int, hi: int) -> bool:
    """Check ``d_{p+1} h_p + h_{p-1} d_p == id`` on ``C_p`` for ``lo <= p <= hi``.

    ``h[p]`` maps degree ``p`` to degree ``p + 1``; missing entries are zero.
    """
    for p, m in h.items():
        if m.shape != (c.rank(p + 1), c.rank(p)):
            raise DimensionMismatch(f"h_{p} has shape {m.shape}, expected {(c.rank(p + 1), c.rank(p))}")
    return all(_homotopy_holds(c, h, p) for p in range(lo, hi + 1))


def _homotopy_holds(c: ChainComplex, h: Mapping[int, SparseIntMatrix], p: int) -> bool:
    n = c.rank(p)
    total = SparseIntMatrix.zero(n, n)
    if p in h:
        total = total + c.d(p + 1) @ h[p]
    if p - 1 in h:
        total = total + h[p - 1] @ c.d(p)
    return total == SparseIntMatrix.identity(n)


def homotopy_report(c: ChainComplex, h: Mapping[int, SparseIntMatrix], lo: int, hi: int) -> dict[int, bool]:
    """Per-degree version of :func:`verify_chain_homotopy`."""
    verify_chain_homotopy(c, h, lo, lo - 1)  # shape checks only
    return {p: _homotopy_holds(c, h, p) for p in range(lo, hi + 1)}


# ---------------------------------------------------------------------------
# Dense rational matrices


class RationalMatrix:
    """Small dense matrix over Q, used for maps between homology groups."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], rows: int | None = None, cols: int | None = None):
        tup = tuple(tuple(Fraction(x) for x in row) for row in data)
        self.rows = len(tup) if rows is None else rows
        if cols is None:
            cols = len(tup[0]) if tup else 0
        self.cols = cols
        if len(tup) != self.rows or any(len(row) != cols for row in tup):
            raise DimensionMismatch("ragged rational matrix")
        self.data = tup

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        r, c = key
        return self.data[r][c]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)],
                              self.cols, self.rows)

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        cols_o = list(zip(*other.data)) if other.rows else [()] * other.cols
        return RationalMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols_o] for row in self.data],
            self.rows, other.cols,
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                              self.rows, self.cols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-1)

    def scale(self, k) -> "RationalMatrix":
        k = Fraction(k)
        return RationalMatrix([[k * a for a in row] for row in self.data], self.rows, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.to_strings()})"

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.data]

    def rank(self) -> int:
        return len(rref([list(row) for row in self.data])[1])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def scalar_multiple_of_identity(self) -> Fraction | None:
        """The scalar ``c`` if this matrix equals ``c * I``, else ``None``."""
        if not self.is_square():
            return None
        if self.rows == 0:
            return Fraction(0)
        c = self.data[0][0]
        return c if self == RationalMatrix.identity(self.rows).scale(c) else None


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns).

    Pivots are taken left to right, so the result is canonical.
    """
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def sparse_rref(vectors: list[dict[int, Fraction]]) -> tuple[list[dict[int, Fraction]], list[int]]:
    """RREF of sparse rational row vectors (dicts index -> value).

    Same canonical output as :func:`rref`: rows sorted by pivot, pivot
    entries equal to one, pivot columns cleared in every other row.
    """
    basis: dict[int, dict[int, Fraction]] = {}
    for vec in vectors:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        for piv in sorted(basis):
            if piv in v:
                f = v[piv]
                for k, x in basis[piv].items():
                    nv = v.get(k, 0) - f * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        if not v:
            continue
        piv = min(v)
        inv = 1 / v[piv]
        v = {k: x * inv for k, x in v.items()}
        for other in basis.values():
            if piv in other:
                f = other[piv]
                for k, x in v.items():
                    nv = other.get(k, 0) - f * x
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        basis[piv] = v
    order = sorted(basis)
    return [basis[p] for p in order], order
