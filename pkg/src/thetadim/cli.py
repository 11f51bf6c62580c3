"""Command line front end.

One query lives in one JSON document with explicit field names:

    {"genus": 1, "rank": 2, "degree": 0, "level": 2,
     "points": [{"label": "p", "flag": [1, 1], "weights": [0, 1]}],
     "split": {"g1": 1, "g2": 1, "I1": ["p"], "c1": 1, "c2": 1}}

"points" and "split" are optional.  Exit codes: 0 success, 1 a verification
found a nonzero residual, 2 invalid input, 3 internal arithmetic failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import random
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations

from . import __version__
from .cyclotomic import NotRationalError
from .schur import identity_52_check, identity_53_check, identity_54_check
from .verlinde import (EvaluationError, VerlindeQuery, closed_formula_exact,
                       closed_formula_float, dimension, hecke_image,
                       legal_hecke_multiplicities, v_vectors, verify)
from .weights import (MarkedPoint, ParabolicData, SplitContext,
                      enumerate_Pk, enumerate_Qk, enumerate_Wk,
                      enumerate_Wk_prime, split_context)

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

ENV_CACHE = "THETADIM_CACHE"
ENV_THREADS = "THETADIM_THREADS"


class DocumentError(ValueError):
    """Input document failed validation; one message per offending field."""

    def __init__(self, messages):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


# -- document format -------------------------------------------------------


def _expect(doc, key, kind, path, errors, required=True, default=None):
    if key not in doc:
        if required:
            errors.append(f"{path}{key}: missing")
        return default
    val = doc[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        errors.append(f"{path}{key}: must be an integer")
        return default
    if kind is str and not isinstance(val, str):
        errors.append(f"{path}{key}: must be a string")
        return default
    if kind is list and not isinstance(val, list):
        errors.append(f"{path}{key}: must be a list")
        return default
    if kind is dict and not isinstance(val, dict):
        errors.append(f"{path}{key}: must be an object")
        return default
    return val


def _int_list(val, path, errors):
    if not isinstance(val, list) or any(
            not isinstance(x, int) or isinstance(x, bool) for x in val):
        errors.append(f"{path}: must be a list of integers")
        return None
    return val


def document_to_query(doc) -> tuple[VerlindeQuery, SplitContext | None]:
    """Validate a parsed document and build the query (and split context)."""
    errors: list[str] = []
    if not isinstance(doc, dict):
        raise DocumentError(["document: must be a JSON object"])
    allowed = {"genus", "rank", "degree", "level", "points", "split"}
    for key in doc:
        if key not in allowed:
            errors.append(f"{key}: unknown field")
    genus = _expect(doc, "genus", int, "", errors)
    rank = _expect(doc, "rank", int, "", errors)
    degree = _expect(doc, "degree", int, "", errors)
    level = _expect(doc, "level", int, "", errors)
    raw_points = _expect(doc, "points", list, "", errors, required=False, default=[])
    points = []
    for i, entry in enumerate(raw_points or []):
        path = f"points[{i}]."
        if not isinstance(entry, dict):
            errors.append(f"points[{i}]: must be an object")
            continue
        for key in entry:
            if key not in {"label", "flag", "weights"}:
                errors.append(f"{path}{key}: unknown field")
        label = _expect(entry, "label", str, path, errors)
        flag = _expect(entry, "flag", list, path, errors)
        weights = _expect(entry, "weights", list, path, errors)
        if flag is not None:
            flag = _int_list(flag, f"{path}flag", errors)
        if weights is not None:
            weights = _int_list(weights, f"{path}weights", errors)
        if label and flag and weights is not None:
            points.append((label, flag, weights))
    if errors:
        raise DocumentError(errors)
    try:
        omega = ParabolicData(rank, level,
                              tuple(MarkedPoint(l, tuple(f), tuple(w))
                                    for l, f, w in points))
        q = VerlindeQuery(genus, rank, degree, omega)
    except ValueError as exc:
        raise DocumentError([str(exc)]) from exc
    ctx = None
    if "split" in doc:
        s = doc["split"]
        serrors: list[str] = []
        if not isinstance(s, dict):
            raise DocumentError(["split: must be an object"])
        for key in s:
            if key not in {"g1", "g2", "I1", "c1", "c2"}:
                serrors.append(f"split.{key}: unknown field")
        g1 = _expect(s, "g1", int, "split.", serrors)
        g2 = _expect(s, "g2", int, "split.", serrors)
        I1 = _expect(s, "I1", list, "split.", serrors, required=False, default=[])
        c1 = _expect(s, "c1", int, "split.", serrors)
        c2 = _expect(s, "c2", int, "split.", serrors)
        if I1 is not None and any(not isinstance(x, str) for x in I1):
            serrors.append("split.I1: must be a list of point labels")
        if serrors:
            raise DocumentError(serrors)
        if g1 + g2 != genus:
            raise DocumentError(["split.g1 + split.g2 must equal the genus"])
        try:
            ctx = split_context(omega, genus, degree, tuple(I1), g1, c1, c2)
        except ValueError as exc:
            raise DocumentError([f"split: {exc}"]) from exc
    return q, ctx


def query_to_document(q: VerlindeQuery, ctx: SplitContext | None = None) -> dict:
    doc = {
        "genus": q.genus,
        "rank": q.rank,
        "degree": q.degree,
        "level": q.level,
        "points": [{"label": p.label, "flag": list(p.flag),
                    "weights": list(p.weights)} for p in q.omega.points],
    }
    if ctx is not None:
        doc["split"] = {"g1": ctx.g1, "g2": ctx.g2, "I1": list(ctx.I1),
                        "c1": ctx.c1, "c2": ctx.c2}
    return doc


def load_document(path: str) -> tuple[VerlindeQuery, SplitContext | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError([f"cannot read {path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise DocumentError([f"{path}: invalid JSON ({exc})"]) from exc
    return document_to_query(doc)


# -- result cache ----------------------------------------------------------


def _cache_path(cache_dir: str, q: VerlindeQuery, backend: str) -> str:
    digest = hashlib.sha256(
        f"{backend}\n{q.canonical_key()}".encode()).hexdigest()
    return os.path.join(cache_dir, digest[:2], digest + ".json")


def cache_get(cache_dir: str, q: VerlindeQuery, backend: str):
    path = _cache_path(cache_dir, q, backend)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("version") != __version__:
        return None
    if data.get("query_key") != q.canonical_key():
        return None
    return data


def cache_put(cache_dir: str, q: VerlindeQuery, backend: str, payload: dict):
    path = _cache_path(cache_dir, q, backend)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    record = dict(payload)
    record["version"] = __version__
    record["query_key"] = q.canonical_key()
    record["backend"] = backend
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(record, fh, sort_keys=True)
        os.replace(tmp, path)  # atomic publish
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# -- shared helpers --------------------------------------------------------


def _thread_count() -> int:
    raw = os.environ.get(ENV_THREADS, "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(1, n)


def _run_ordered(tasks):
    """Run callables, optionally across worker threads; results keep the
    input order so output stays deterministic."""
    n = _thread_count()
    if n == 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(lambda t: t(), tasks))


def _parse_range(text: str, name: str) -> range:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            a = b = int(parts[0])
        elif len(parts) == 2:
            a, b = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise DocumentError([f"{name}: expected N or A:B, got {text!r}"])
    if b < a:
        raise DocumentError([f"{name}: empty range {text!r}"])
    return range(a, b + 1)


def _random_point(rng: random.Random, r: int, k: int, label: str) -> MarkedPoint:
    blocks = rng.randint(1, min(r, k))
    cuts = sorted(rng.sample(range(1, r), blocks - 1)) if blocks > 1 else []
    flag, prev = [], 0
    for c in cuts + [r]:
        flag.append(c - prev)
        prev = c
    ws = sorted(rng.sample(range(k), blocks))
    return MarkedPoint(label, tuple(flag), tuple(ws))


def _emit(args, payload: dict, human_lines):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


# -- subcommands -----------------------------------------------------------


def cmd_dim(args) -> int:
    q, _ = load_document(args.document)
    backend = args.backend
    cache_dir = args.cache_dir or os.environ.get(ENV_CACHE)
    use_cache = bool(cache_dir) and not args.no_cache
    origin = "computed"
    if use_cache:
        hit = cache_get(cache_dir, q, backend)
        if hit is not None:
            payload = {"value": hit["value"], "backend": backend,
                       "ell_integral": hit["ell_integral"],
                       "exceptional_case": hit["exceptional_case"],
                       "float_residual": hit.get("float_residual"),
                       "cache": "hit"}
            _emit(args, payload, _dim_lines(payload))
            return EXIT_OK
    res = closed_formula_exact(q) if backend == "exact" else closed_formula_float(q)
    payload = {"value": res.value, "backend": backend,
               "ell_integral": res.ell_integral,
               "exceptional_case": res.exceptional_case,
               "float_residual": res.float_residual,
               "cache": "miss" if use_cache else origin}
    if use_cache:
        cache_put(cache_dir, q, backend, {
            "value": res.value, "ell_integral": res.ell_integral,
            "exceptional_case": res.exceptional_case,
            "float_residual": res.float_residual})
    _emit(args, payload, _dim_lines(payload))
    return EXIT_OK


def _dim_lines(payload):
    lines = [f"value: {payload['value']}",
             f"backend: {payload['backend']}",
             f"ell integral: {'yes' if payload['ell_integral'] else 'no'}",
             f"exceptional case: {'yes' if payload['exceptional_case'] else 'no'}"]
    if payload.get("float_residual") is not None:
        lines.append(f"float residual: {payload['float_residual']:.3e}")
    if payload.get("cache") in ("hit", "miss"):
        lines.append(f"cache: {payload['cache']}")
    return lines


def _identity_checks(args):
    checks = []
    for r in range(1, args.rank_max + 1):
        for k in range(1, args.level_max + 1):
            vs = list(v_vectors(r, k))
            for v in vs:
                checks.append((f"pairing-open r={r} k={k} v={v}",
                               lambda v=v, r=r, k=k:
                               identity_52_check(v, r, k).is_zero()))
                checks.append((f"pairing-closed r={r} k={k} v={v}",
                               lambda v=v, r=r, k=k:
                               identity_53_check(v, r, k).is_zero()))
            if k <= args.pair_level_max and r >= 2:
                for v, vp in combinations(vs, 2):
                    checks.append((f"cross-pairing r={r} k={k} v={v} v'={vp}",
                                   lambda v=v, vp=vp, r=r, k=k:
                                   identity_54_check(v, vp, r, k).is_zero()))
    return checks


def _grid_queries(args, need_points=False):
    rng = random.Random(args.seed)
    out = []
    for r in range(1, args.rank_max + 1):
        for k in range(1, args.level_max + 1):
            for g in range(args.genus_min, args.genus_max + 1):
                for d in range(0, r):
                    configs = [()]
                    if k >= 1:
                        configs += [
                            (_random_point(rng, r, k, "p0"),)
                            for _ in range(args.samples)]
                    for pts in configs:
                        if need_points and not pts:
                            continue
                        omega = ParabolicData(r, k, pts)
                        out.append(VerlindeQuery(g, r, d, omega))
    return out


def _verify_failure(name, report, ctx=None):
    doc = query_to_document(report.query, ctx)
    return {"check": name, "mode": report.mode, "lhs": report.lhs,
            "rhs": report.rhs, "residual": report.residual,
            "document": doc, **report.detail}


def cmd_verify(args) -> int:
    suites = (["identities", "genus", "split", "wprime", "hecke", "backend"]
              if args.suite == "all" else [args.suite])
    counts = {}
    by_suite = {}
    for suite in suites:
        fails = []
        if suite == "identities":
            checks = _identity_checks(args)
            results = _run_ordered([fn for _, fn in checks])
            counts[suite] = len(checks)
            for (name, _), ok in zip(checks, results):
                if not ok:
                    fails.append({"check": name, "mode": "identity",
                                  "document": None})
        elif suite == "genus":
            queries = [q for q in _grid_queries(args) if q.genus >= 1]
            reports = _run_ordered([
                lambda q=q: verify(q, "genus") for q in queries])
            counts[suite] = len(queries)
            fails.extend(_verify_failure("genus", rep)
                         for rep in reports if not rep.ok)
        elif suite in ("split", "wprime"):
            cases = _split_cases(args)
            reports = _run_ordered([
                lambda q=q, ctx=ctx, m=suite: verify(q, m, ctx=ctx)
                for q, ctx in cases])
            counts[suite] = len(cases)
            for rep, (_, ctx) in zip(reports, cases):
                if not rep.ok:
                    fails.append(_verify_failure(suite, rep, ctx))
        elif suite == "hecke":
            cases = []
            for q in _grid_queries(args, need_points=True):
                for p in q.omega.points:
                    for m in legal_hecke_multiplicities(q, p.label):
                        cases.append((q, p.label, m))
            reports = _run_ordered([
                lambda q=q, z=z, m=m: verify(q, "hecke", point=z, multiplicity=m)
                for q, z, m in cases])
            counts[suite] = len(cases)
            fails.extend(_verify_failure("hecke", rep)
                         for rep in reports if not rep.ok)
        elif suite == "backend":
            queries = _grid_queries(args)
            reports = _run_ordered([
                lambda q=q: verify(q, "backend", tol=args.tol) for q in queries])
            counts[suite] = len(queries)
            fails.extend(_verify_failure("backend", rep)
                         for rep in reports if not rep.ok)
        else:
            raise DocumentError([f"unknown suite {suite!r}"])
        by_suite[suite] = fails
    failures = [f for fails in by_suite.values() for f in fails]
    if args.json:
        print(json.dumps({"suites": counts, "failures": failures,
                          "ok": not failures}, sort_keys=True))
    else:
        for suite, n in counts.items():
            status = "ok" if not by_suite[suite] else "FAILED"
            print(f"suite {suite}: {n} checks {status}")
        for f in failures:
            print(f"FAIL {f['check']}: lhs={f.get('lhs')} rhs={f.get('rhs')}")
            if f.get("document") is not None:
                print("counterexample document: "
                      + json.dumps(f["document"], sort_keys=True))
    return EXIT_OK if not failures else EXIT_RESIDUAL


def _split_cases(args):
    cases = []
    for k in range(1, args.level_max + 1):
        for d in (0, 1):
            for g1, g2 in ((1, 1), (1, 2)):
                if g1 + g2 > args.genus_max:
                    continue
                for c1, c2 in ((1, 1), (1, 2)):
                    for pts, I1 in (((), ()),
                                    ((MarkedPoint("p", (1, 1), (0, 1)),
                                      MarkedPoint("q", (1, 1), (0, 1))), ("p",))):
                        if pts and k < 2:
                            continue
                        omega = ParabolicData(2, k, pts)
                        try:
                            ctx = split_context(omega, g1 + g2, d, I1, g1, c1, c2)
                        except ValueError:
                            continue
                        cases.append((VerlindeQuery(g1 + g2, 2, d, omega), ctx))
    return cases


def cmd_enumerate(args) -> int:
    r, k = args.rank, args.level
    if args.set == "pk":
        elems = list(enumerate_Pk(r, k))
    elif args.set == "wk":
        elems = list(enumerate_Wk(r, k))
    elif args.set == "wkprime":
        elems = list(enumerate_Wk_prime(r, k, args.offset))
    elif args.set == "qk":
        n1 = Fraction(args.n1)
        ctx = SplitContext(args.g1, 1, (), (), 1, 1, 0, n1, Fraction(0),
                           r, k, n1 + r * args.g1)
        elems = list(enumerate_Qk(r, k, ctx))
    elif args.set == "vvec":
        elems = list(v_vectors(r, k))
    else:
        raise DocumentError([f"unknown set {args.set!r}"])
    if args.json:
        print(json.dumps({"elements": [list(e) for e in elems],
                          "count": len(elems)}))
    else:
        for e in elems:
            print(" ".join(str(x) for x in e))
        print(f"count: {len(elems)}")
    return EXIT_OK


def cmd_table(args) -> int:
    genera = _parse_range(args.genus, "--genus")
    ranks = _parse_range(args.rank, "--rank")
    levels = _parse_range(args.level, "--level")
    degrees = _parse_range(args.degree, "--degree")
    cells = [(g, r, k, d) for g in genera for r in ranks if r >= 1
             for k in levels if k >= 1 for d in degrees]
    est = sum(math.comb(r + k - 1, r - 1) for _, r, k, _ in cells)
    if est > args.limit and not args.force:
        print(f"estimated term count {est} exceeds the limit {args.limit}; "
              f"pass --force to run anyway", file=sys.stderr)
        return EXIT_INPUT
    if est > 1000:
        print(f"estimated term count: {est}", file=sys.stderr)

    def one(cell):
        g, r, k, d = cell
        q = VerlindeQuery(g, r, d, ParabolicData(r, k))
        res = closed_formula_exact(q) if args.backend == "exact" \
            else closed_formula_float(q)
        return (g, r, k, d, 0, res.value, res.ell_integral)

    rows = _run_ordered([lambda c=c: one(c) for c in cells])
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["g", "r", "k", "d", "points", "value", "ell_integral"])
    for row in rows:
        writer.writerow([row[0], row[1], row[2], row[3], row[4], row[5],
                         "yes" if row[6] else "no"])
    return EXIT_OK


def cmd_hecke(args) -> int:
    q, ctx = load_document(args.document)
    try:
        p = q.omega.point(args.point)
    except KeyError as exc:
        raise DocumentError([str(exc)]) from exc
    m = args.multiplicity if args.multiplicity is not None else p.flag[0]
    try:
        q2 = hecke_image(q, args.point, m)
    except ValueError as exc:
        raise DocumentError([f"hecke: {exc}"]) from exc
    doc = query_to_document(q2)
    if args.json:
        print(json.dumps({"document": doc, "degree_shift": -m}, sort_keys=True))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
        print(f"degree shift: {-m}", file=sys.stderr)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetadim",
        description="Exact dimensions of spaces of generalized theta functions")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="evaluate one query document")
    p.add_argument("document")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("verify", help="run a verification suite over a grid")
    p.add_argument("suite", choices=("identities", "genus", "split", "wprime",
                                     "hecke", "backend", "all"))
    p.add_argument("--rank-max", type=int, default=3)
    p.add_argument("--level-max", type=int, default=3)
    p.add_argument("--pair-level-max", type=int, default=3)
    p.add_argument("--genus-min", type=int, default=1)
    p.add_argument("--genus-max", type=int, default=2)
    p.add_argument("--samples", type=int, default=2)
    p.add_argument("--seed", type=int, default=20260822)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("enumerate", help="list a weight or vector set")
    p.add_argument("set", choices=("pk", "wk", "wkprime", "qk", "vvec"))
    p.add_argument("--rank", "-r", type=int, required=True)
    p.add_argument("--level", "-k", type=int, required=True)
    p.add_argument("--offset", type=int, default=0,
                   help="congruence offset for wkprime")
    p.add_argument("--n1", default="0",
                   help="degree prefactor n1 for qk, as a fraction")
    p.add_argument("--g1", type=int, default=1, help="first genus for qk")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("table", help="tabulate dimensions over ranges, CSV")
    p.add_argument("--genus", required=True, help="range A:B or single value")
    p.add_argument("--rank", required=True)
    p.add_argument("--level", required=True)
    p.add_argument("--degree", default="0")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--limit", type=int, default=20000,
                   help="refuse runs whose estimated term count exceeds this")
    p.add_argument("--force", action="store_true")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("hecke", help="transform a document by a Hecke move")
    p.add_argument("document")
    p.add_argument("--point", required=True)
    p.add_argument("--multiplicity", "-m", type=int, default=None,
                   help="entries to wrap; defaults to the whole bottom block")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_hecke)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DocumentError as exc:
        for msg in exc.messages:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except (EvaluationError, NotRationalError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
