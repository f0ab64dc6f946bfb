"""``fernlab`` command line tool.

Subcommands ``orbit``, ``betti``, ``verify`` and ``cache``.  Exit status is
0 when every check passes, 1 on a failed check, a budget overrun or an
I/O error, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from .cache import BasisCache
from .errors import BudgetExceeded, FernlabError
from .orbit import (
    OrbitComplex,
    matrix_checksum,
    simplicial_identities_hold,
    vanishing_range,
    verify_homotopy_identity,
)
from .report import ReportDocument
from .stability import (
    StabilityModel,
    StabilityReport,
    transfer_after_stab,
    verify_dold,
    verify_split_injectivity,
    verify_stability,
    verify_transfer_iso,
)
from .wreath import DEFAULT_BUDGET, orbit_count_pairs


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like a..b, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad window {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--xi", type=_positive, default=None, help="block size")
    common.add_argument("--n", type=_nonneg, default=None, help="number of blocks")
    common.add_argument("--window", type=_window, default=None, metavar="A..B", help="range of n")
    common.add_argument("--kmax", type=_nonneg, default=None, help="top homological degree")
    common.add_argument("--nmax", type=_nonneg, default=None, help="largest j for the Dold relations")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir", default=None, help="directory of the basis cache")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the basis cache")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="largest group to enumerate")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--reproducible", action="store_true",
                        help="zero the timing field and omit cache-hit notes so output is byte-stable")

    parser = argparse.ArgumentParser(prog="fernlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("orbit", parents=[common], help="orbit complex: homology and the cone homotopy")
    sub.add_parser("betti", parents=[common], help="rational Betti numbers of Conf_n^xi(R^2)")
    v = sub.add_parser("verify", parents=[common], help="stabilization/transfer relations")
    v.add_argument("suite", choices=("dold", "stability", "transfer", "all"))
    c = sub.add_parser("cache", parents=[common], help="inspect or clear the basis cache")
    c.add_argument("action", choices=("list", "clear", "stats"))
    return parser


def _check(relation: str, ok: bool, **params) -> dict:
    rec = {"kind": "check", "relation": relation, "verdict": "pass" if ok else "fail"}
    if params:
        rec["params"] = params
    return rec


def cmd_orbit(n: int, xi: int, args=None) -> ReportDocument:
    doc = ReportDocument("orbit", {"n": n, "xi": xi})
    oc = OrbitComplex(n, xi)
    for p, count in oc.cell_counts().items():
        doc.records.append({"kind": "cells", "degree": p, "count": count})
    for p in range(0, n):
        d = oc.chain_complex.d(p)
        doc.records.append({"kind": "boundary", "degree": p, "shape": list(d.shape),
                            "nnz": d.nnz, "sha256": matrix_checksum(d)})
    doc.records.append(_check("d o d = 0", oc.is_complex()))
    doc.records.append(_check("f_i f_j = f_{j-1} f_i", all(simplicial_identities_hold(xi, p) for p in range(n))))
    summaries = oc.homology()
    for h in summaries:
        doc.records.append({"kind": "homology", "degree": h.degree, "betti": h.betti, "torsion": list(h.torsion)})
    low = [h for h in summaries if h.degree <= n - 2]
    doc.records.append(_check("reduced H_i = 0 for 0 <= i <= n-2", all(h.is_zero for h in low)))
    rep = verify_homotopy_identity(n, xi, oc)
    for p, ok in rep.full_range.items():
        doc.records.append(_check("dD + Dd = id", ok, degree=p))
    for p, ok in rep.stated_range.items():
        rec = _check("dD + Dd = id on 0 <= p <= n - xi", ok, degree=p)
        rec["diagnostic"] = True
        doc.records.append(rec)
    doc.records.append({"kind": "summary", "vanishing_through": vanishing_range(summaries),
                        "homotopy_range": [-1, n - 2]})
    return doc


def _n_range(args, default: tuple[int, int]) -> tuple[int, int]:
    if args.window is not None:
        return args.window
    if args.n is not None:
        return (args.n, args.n)
    return default


def _model(args) -> StabilityModel:
    store = None if args.no_cache else BasisCache(args.cache_dir)
    return StabilityModel(args.xi, budget=args.budget, store=store)


def cmd_betti(args) -> ReportDocument:
    lo, hi = _n_range(args, (1, 4))
    kmax = 1 if args.kmax is None else args.kmax
    doc = ReportDocument("betti", {"xi": args.xi, "window": [lo, hi], "kmax": kmax})
    model = _model(args)
    model.prefetch(((n, k) for n in range(lo, hi + 1) for k in range(kmax + 1)), args.threads)
    for n in range(lo, hi + 1):
        for k in range(kmax + 1):
            rec = {"kind": "betti", "n": n, "xi": args.xi, "k": k, "betti": model.betti(n, k)}
            if not args.reproducible:
                rec["cache_hit"] = (n, args.xi, k) in model.cache_hits
            doc.records.append(rec)
    for n in range(lo, hi + 1):
        doc.records.append(_check("b_0 = 1", model.betti(n, 0) == 1, n=n))
        if kmax >= 1 and n >= 1:
            doc.records.append(_check("b_1 = pair-orbit count", model.betti(n, 1) == orbit_count_pairs(n, args.xi), n=n))
    return doc


def _add(doc: ReportDocument, rep: StabilityReport) -> None:
    for r in rep.records:
        rec = {"kind": "check"}
        rec.update(r.as_dict())
        doc.records.append(rec)


def cmd_verify(args) -> ReportDocument:
    kmax = 1 if args.kmax is None else args.kmax
    lo, hi = _n_range(args, (1, 4))
    nmax = args.nmax if args.nmax is not None else hi
    params: dict = {"suite": args.suite, "xi": args.xi, "kmax": kmax}
    if args.suite in ("dold", "all"):
        params["nmax"] = nmax
    if args.suite in ("stability", "transfer", "all"):
        params["window"] = [lo, hi]
    doc = ReportDocument("verify", params)
    model = _model(args)
    keys = set()
    if args.suite in ("dold", "all"):
        keys |= {(n, k) for n in range(0, nmax + 1) for k in range(kmax + 1)}
    if args.suite in ("stability", "transfer", "all"):
        keys |= {(n, k) for n in range(max(lo - 1, 0), hi + 2) for k in range(kmax + 1)}
    model.prefetch(keys, args.threads)
    if args.suite in ("dold", "all"):
        _add(doc, verify_dold(args.xi, nmax, kmax, model))
    if args.suite in ("stability", "all"):
        _add(doc, verify_stability(args.xi, (lo, hi), kmax, model))
        _add(doc, verify_split_injectivity(args.xi, range(lo, hi + 1), kmax, model))
    if args.suite in ("transfer", "all"):
        _add(doc, verify_transfer_iso(args.xi, (lo, hi), kmax, model))
    if args.suite == "all":
        _add(doc, transfer_after_stab(args.xi, range(max(lo, 0), hi), kmax, model))
    return doc


def cmd_cache(args) -> ReportDocument:
    store = BasisCache(args.cache_dir)
    doc = ReportDocument("cache", {"action": args.action, "cache_dir": str(store.directory)})
    if args.action == "clear":
        doc.records.append({"kind": "cleared", "removed": store.clear()})
    elif args.action == "list":
        for e in store.entries():
            rec = dict(e)
            rec["content"] = rec.pop("kind")
            doc.records.append({"kind": "entry", **rec})
    else:
        entries = store.entries()
        doc.records.append({
            "kind": "stats",
            "entries": len(entries),
            "invariant_basis_entries": sum(1 for e in entries if e.get("kind") == "invariant_basis"),
            "bytes": sum(e.get("bytes", 0) for e in entries),
        })
    return doc


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("orbit", "betti", "verify") and args.xi is None:
        parser.error(f"{args.command} needs --xi")
    if args.command == "orbit" and (args.n is None or args.n < 1):
        parser.error("orbit needs --n >= 1")
    if args.n is not None and args.window is not None:
        parser.error("give either --n or --window, not both")

    start = time.perf_counter()
    try:
        if args.command == "orbit":
            doc = cmd_orbit(args.n, args.xi, args)
        elif args.command == "betti":
            doc = cmd_betti(args)
        elif args.command == "verify":
            doc = cmd_verify(args)
        else:
            doc = cmd_cache(args)
    except BudgetExceeded as exc:
        doc = ReportDocument(args.command, {"xi": args.xi})
        doc.records.append({"kind": "error", "error": "BudgetExceeded", "message": str(exc)})
    except OSError as exc:
        doc = ReportDocument(args.command, {})
        doc.records.append({"kind": "error", "error": type(exc).__name__, "message": str(exc)})
    except FernlabError as exc:
        doc = ReportDocument(args.command, {})
        doc.records.append({"kind": "error", "error": type(exc).__name__, "message": str(exc)})
    doc.elapsed_ms = 0 if args.reproducible else int((time.perf_counter() - start) * 1000)
    sys.stdout.write(doc.render(args.format))
    return 0 if doc.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
