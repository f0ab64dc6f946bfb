"""Stabilization and transfer maps on rational homology of ``Conf_n^xi(R^2)``.

Homology is the linear dual of the invariant cohomology, so every map is
the transpose of an explicit cohomology matrix:

* ``stab_n : H_k(n) -> H_k(n+1)`` is dual to restricting invariants of
  ``(n+1) xi`` points to the first ``n xi`` points (generators that touch
  the inserted block vanish);
* ``t_{n,m} : H_k(n) -> H_k(m)`` is dual to ``x -> sum_g g.embed(x)``,
  the sum running over one representative per ``m``-subset of blocks.

``t_n`` means ``t_{n, n-1}``.  The one-point space ``Conf_0^xi`` is
allowed so that the relations below are total.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Iterable

from .arnold import act, embed, restrict
from .errors import ModelInconsistency
from .linalg import RationalMatrix
from .wreath import DEFAULT_BUDGET, InvariantBasis, check_budget, coset_reps, invariant_space

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyMap:
    kind: str
    source: tuple[int, int, int]
    target: tuple[int, int, int]
    matrix: RationalMatrix

    def __post_init__(self):
        if self.kind not in ("stab", "transfer", "forgetful", "composite", "identity", "zero"):
            raise ValueError(f"unknown map kind {self.kind!r}")

    def __matmul__(self, other: "HomologyMap") -> "HomologyMap":
        """``self`` after ``other``."""
        if other.target != self.source:
            raise ValueError(f"cannot compose {self.source} <- {other.target}")
        return HomologyMap("composite", other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "HomologyMap") -> "HomologyMap":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("maps between different groups")
        return HomologyMap("composite", self.source, self.target, self.matrix + other.matrix)

    def scale(self, c) -> "HomologyMap":
        return HomologyMap("composite", self.source, self.target, self.matrix.scale(c))

    def rank(self) -> int:
        return self.matrix.rank()

    def is_invertible(self) -> bool:
        return self.matrix.is_invertible()


@dataclass
class CheckRecord:
    relation: str
    params: dict[str, Any]
    passed: bool
    witness: dict[str, Any] | None = None
    diagnostic: bool = False

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "relation": self.relation,
            "params": self.params,
            "verdict": "pass" if self.passed else "fail",
        }
        if self.diagnostic:
            out["diagnostic"] = True
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class StabilityReport:
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def extend(self, other: "StabilityReport") -> None:
        self.records.extend(other.records)

    @property
    def checks(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.diagnostic]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.checks if not r.passed]


def _witness(**mats: RationalMatrix) -> dict[str, Any]:
    return {name: m.to_strings() for name, m in mats.items()}


class StabilityModel:
    """Invariant bases and homology maps for one block size ``xi``.

    ``store`` is an optional persistent cache with ``get(n, xi, k)`` and
    ``put(basis)``; computed bases are also memoised in-process.
    """

    def __init__(self, xi: int, budget: int = DEFAULT_BUDGET, store=None):
        if xi < 1:
            raise ValueError("xi must be positive")
        self.xi = xi
        self.budget = budget
        self.store = store
        self._bases: dict[tuple[int, int], InvariantBasis] = {}
        self._maps: dict[tuple, HomologyMap] = {}
        self.cache_hits: list[tuple[int, int, int]] = []

    # bases
    def invariants(self, n: int, k: int) -> InvariantBasis:
        key = (n, k)
        if key in self._bases:
            return self._bases[key]
        if n > 0:
            check_budget(n, self.xi, self.budget)
        basis = None
        if self.store is not None:
            basis = self.store.get(n, self.xi, k)
            if basis is not None:
                self.cache_hits.append((n, self.xi, k))
        if basis is None:
            basis = invariant_space(n, self.xi, k, self.budget)
            if self.store is not None:
                self.store.put(basis)
        self._bases[key] = basis
        return basis

    def prefetch(self, keys: Iterable[tuple[int, int]], threads: int = 1) -> None:
        """Compute several bases, optionally on a thread pool; results are identical either way."""
        keys = sorted(set(keys))
        if threads <= 1:
            for n, k in keys:
                self.invariants(n, k)
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            computed = list(pool.map(lambda nk: invariant_space(nk[0], self.xi, nk[1], self.budget), keys))
        for (n, k), _ in zip(keys, computed):
            self.invariants(n, k)

    def betti(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("n and k must be nonnegative")
        return self.invariants(n, k).dim

    # maps
    def identity(self, n: int, k: int) -> HomologyMap:
        return HomologyMap("identity", (n, self.xi, k), (n, self.xi, k),
                           RationalMatrix.identity(self.betti(n, k)))

    def stab_matrix(self, n: int, k: int) -> HomologyMap:
        key = ("stab", n, k)
        if key in self._maps:
            return self._maps[key]
        big = self.invariants(n + 1, k)
        small = self.invariants(n, k)
        m_small = n * self.xi
        cols = []
        for v in big.vectors:
            coords = small.coordinates(restrict(v, m_small))
            if coords is None:
                raise ModelInconsistency(f"restriction of an invariant of n={n + 1} left the invariants of n={n}")
            cols.append(coords)
        # cohomology matrix has these as columns; homology is its transpose
        mat = RationalMatrix(cols, big.dim, small.dim)
        result = HomologyMap("stab", (n, self.xi, k), (n + 1, self.xi, k), mat)
        self._maps[key] = result
        return result

    def transfer_matrix(self, n: int, m: int, k: int) -> HomologyMap:
        if not 0 <= m <= n:
            raise ValueError("transfer needs 0 <= m <= n")
        if m == n:
            return self.identity(n, k)
        key = ("transfer", n, m, k)
        if key in self._maps:
            return self._maps[key]
        big = self.invariants(n, k)
        small = self.invariants(m, k)
        reps = coset_reps(n, m, self.xi)
        m_big = n * self.xi
        rows = []
        for x in small.vectors:
            y = embed(x, m_big)
            total = act(reps[0], y)
            for g in reps[1:]:
                total = total + act(g, y)
            coords = big.coordinates(total)
            if coords is None:
                raise ModelInconsistency(f"transfer of an invariant of m={m} is not invariant for n={n}")
            rows.append(coords)
        mat = RationalMatrix(rows, small.dim, big.dim)
        result = HomologyMap("transfer", (n, self.xi, k), (m, self.xi, k), mat)
        self._maps[key] = result
        return result

    def t(self, n: int, k: int) -> HomologyMap:
        return self.transfer_matrix(n, n - 1, k)

    def transfer_chain(self, j: int, m: int, k: int) -> HomologyMap:
        """``t_{m+1} o ... o t_j``."""
        result = self.t(j, k)
        for i in range(j - 1, m, -1):
            result = self.t(i, k) @ result
        return result


# ---------------------------------------------------------------------------
# Module-level conveniences

_models: dict[tuple[int, int], StabilityModel] = {}


def _model(xi: int, budget: int) -> StabilityModel:
    return _models.setdefault((xi, budget), StabilityModel(xi, budget))


def betti(n: int, xi: int, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """``dim H_k(Conf_n^xi(R^2); Q)``."""
    return _model(xi, budget).betti(n, k)


def stab_matrix(n: int, xi: int, k: int, budget: int = DEFAULT_BUDGET) -> HomologyMap:
    return _model(xi, budget).stab_matrix(n, k)


def transfer_matrix(n: int, m: int, xi: int, k: int, budget: int = DEFAULT_BUDGET) -> HomologyMap:
    return _model(xi, budget).transfer_matrix(n, m, k)


def _equal(rel: str, params: dict, lhs: RationalMatrix, rhs: RationalMatrix) -> CheckRecord:
    ok = lhs == rhs
    return CheckRecord(rel, params, ok, None if ok else _witness(lhs=lhs, rhs=rhs))


def verify_dold(xi: int, n_max: int, k_max: int, model: StabilityModel | None = None) -> StabilityReport:
    """The transfer/stabilization relations as exact matrix identities.

    * ``t_j s_{j-1} = s_{j-2} t_{j-1} + id`` for ``1 <= j <= n_max``;
    * ``t_{j,m} s_{j-1} = s_{m-1} t_{j-1,m-1} + t_{j-1,m}`` for ``0 <= m < j``,
      with ``t_{j-1,j-1} = id`` and the first summand absent when ``m = 0``;
    * ``t_{m+1} ... t_j = (j-m)! t_{j,m}`` for ``0 <= m < j``.
    """
    model = model or _model(xi, DEFAULT_BUDGET)
    report = StabilityReport()
    for k in range(k_max + 1):
        for j in range(1, n_max + 1):
            s_prev = model.stab_matrix(j - 1, k)
            lhs = model.t(j, k) @ s_prev
            rhs = model.identity(j - 1, k)
            if j >= 2:
                rhs = model.stab_matrix(j - 2, k) @ model.t(j - 1, k) + rhs
            report.add(_equal("t_j s_{j-1} = s_{j-2} t_{j-1} + id", {"xi": xi, "j": j, "degree": k},
                              lhs.matrix, rhs.matrix))
            for m in range(j):
                lhs = model.transfer_matrix(j, m, k) @ s_prev
                rhs = model.transfer_matrix(j - 1, m, k)
                if m >= 1:
                    rhs = model.stab_matrix(m - 1, k) @ model.transfer_matrix(j - 1, m - 1, k) + rhs
                report.add(_equal("t_{j,m} s_{j-1} = s_{m-1} t_{j-1,m-1} + t_{j-1,m}",
                                  {"xi": xi, "j": j, "m": m, "degree": k}, lhs.matrix, rhs.matrix))
            for m in range(j):
                lhs = model.transfer_chain(j, m, k)
                rhs = model.transfer_matrix(j, m, k).scale(factorial(j - m))
                report.add(_equal("t_{m+1} ... t_j = (j-m)! t_{j,m}",
                                  {"xi": xi, "j": j, "m": m, "degree": k}, lhs.matrix, rhs.matrix))
    return report


def verify_split_injectivity(xi: int, n_values: Iterable[int], k_max: int,
                             model: StabilityModel | None = None) -> StabilityReport:
    """``rank(stab_n) == betti(n)`` on every ``H_k``."""
    model = model or _model(xi, DEFAULT_BUDGET)
    report = StabilityReport()
    for k in range(k_max + 1):
        for n in n_values:
            s = model.stab_matrix(n, k)
            b = model.betti(n, k)
            r = s.rank()
            report.add(CheckRecord("stab split injective", {"xi": xi, "n": n, "degree": k, "betti": b, "rank": r},
                                   r == b, None if r == b else _witness(stab=s.matrix)))
    return report


def verify_stability(xi: int, window: tuple[int, int], k_max: int,
                     model: StabilityModel | None = None) -> StabilityReport:
    """Rational shadow of integral stability: ``stab_n`` invertible on ``H_k`` for ``2k <= n``."""
    model = model or _model(xi, DEFAULT_BUDGET)
    lo, hi = window
    report = StabilityReport()
    for k in range(k_max + 1):
        for n in range(lo, hi + 1):
            if 2 * k > n:
                continue
            b0, b1 = model.betti(n, k), model.betti(n + 1, k)
            s = model.stab_matrix(n, k)
            ok = b0 == b1 and s.is_invertible()
            report.add(CheckRecord("stab iso for 2k <= n",
                                   {"xi": xi, "n": n, "degree": k, "betti_n": b0, "betti_n+1": b1},
                                   ok, None if ok else _witness(stab=s.matrix)))
    return report


def verify_transfer_iso(xi: int, window: tuple[int, int], k_max: int,
                        model: StabilityModel | None = None) -> StabilityReport:
    """``t_n`` invertible on ``H_k`` for ``2k <= n - 1``."""
    model = model or _model(xi, DEFAULT_BUDGET)
    lo, hi = window
    report = StabilityReport()
    for k in range(k_max + 1):
        for n in range(max(lo, 1), hi + 1):
            if 2 * k > n - 1:
                continue
            t = model.t(n, k)
            ok = t.is_invertible()
            report.add(CheckRecord("t_n iso for 2k <= n-1", {"xi": xi, "n": n, "degree": k},
                                   ok, None if ok else _witness(t=t.matrix)))
    return report


def transfer_after_stab(xi: int, j_values: Iterable[int], k_max: int,
                        model: StabilityModel | None = None) -> StabilityReport:
    """Diagnostic: is ``t_{j+1} s_j`` a scalar on ``H_k``?

    Only the stable range ``2k <= j`` is flagged as a check candidate; the
    records never affect a verdict.
    """
    model = model or _model(xi, DEFAULT_BUDGET)
    report = StabilityReport()
    for k in range(k_max + 1):
        for j in j_values:
            comp = model.t(j + 1, k) @ model.stab_matrix(j, k)
            empty = comp.matrix.rows == 0
            c = None if empty else comp.matrix.scalar_multiple_of_identity()
            report.add(CheckRecord(
                "t_{j+1} s_j scalar",
                {"xi": xi, "j": j, "degree": k, "stable": 2 * k <= j,
                 "scalar": None if c is None else str(c),
                 "invertible": comp.is_invertible()},
                empty or (c is not None and c != 0),
                _witness(composite=comp.matrix),
                diagnostic=True,
            ))
    return report
