"""Command-line front end: ``sl2inv <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 a claim was refuted or a check
failed, 3 a rank could not be certified.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import catalog, genfind, poincare, tamisage
from .forms import ModuleSpec

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    spec: str | None = None
    trunc: int | None = None
    degree_cap: int = 12
    seed: int = 0
    format: str = "text"
    cache_dir: str | None = None
    heavy: bool = False

    def module(self) -> ModuleSpec:
        if not self.spec:
            raise UsageError("--spec is required")
        try:
            return ModuleSpec.parse(self.spec)
        except ValueError as exc:
            raise UsageError(f"bad --spec {self.spec!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# output

def emit(rows: list, columns: list, fmt: str, out, title: str | None = None, footer=()):
    """Write ``rows`` (dicts) as an aligned text table, CSV or JSON."""
    if fmt == "json":
        payload = {"rows": rows}
        if title:
            payload["title"] = title
        if footer:
            payload["summary"] = dict(footer)
        out.write(json.dumps(payload, indent=1, default=str) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in columns})
        out.write(buf.getvalue())
        return
    if title:
        out.write(title + "\n")
    cells = [[_cell(r.get(k)) for k in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")
    for k, v in footer:
        out.write(f"{k}: {_cell(v)}\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if isinstance(v, dict):
        return " ".join(f"{k}:{x}" for k, x in v.items())
    return str(v)


def _expected_series(spec: ModuleSpec):
    ref = catalog.reference_values()
    key = spec.sorted().key()
    if key == "12":
        return ref["v12_series"]
    for row in ref["series_table"]:
        if row["spec"] == key:
            return row["prefix"]
    for row in ref["bounds_single"]:
        if row["spec"] == key:
            top = max(int(k) for k in row["prefix"])
            return [row["prefix"].get(str(d)) for d in range(top + 1)]
    return None


# ---------------------------------------------------------------------------
# commands

def cmd_series(cfg: RunConfig, out) -> int:
    spec = cfg.module()
    D = cfg.trunc if cfg.trunc is not None else poincare.default_trunc(spec)
    P = poincare.series(spec, D, cache_dir=cfg.cache_dir)
    expected = _expected_series(spec)
    rows = []
    for d, a in enumerate(P.prefix()):
        exp = expected[d] if expected and d < len(expected) else None
        rows.append({"degree": d, "a_d": a, "expected": exp,
                     "match": None if exp is None else exp == a, "provenance": "computed"})
    bad = any(r["match"] is False for r in rows)
    emit(rows, ["degree", "a_d", "expected", "match", "provenance"], cfg.format, out,
         title=f"Poincare series of {spec} through t^{D}", footer=[("P(t)", str(P))])
    return EXIT_REFUTED if bad else EXIT_OK


def _needs_params(spec: ModuleSpec):
    if spec.param_count <= 0:
        raise UsageError(f"{spec} has no positive parameter count")


def cmd_tamisage(cfg: RunConfig, out) -> int:
    spec = cfg.module()
    _needs_params(spec)
    D = cfg.trunc if cfg.trunc is not None else poincare.default_trunc(spec)
    P = poincare.series(spec, D, cache_dir=cfg.cache_dir)
    res = tamisage.refined_bounds(P)
    sieve = tamisage.classic_tamisage(P)
    rows = [{"degree": i, "a_i": P[i], "sieve": sieve.get(i, 0), "m_i": res.m[i],
             "M_i": res.M[i], "provenance": "computed"} for i in range(2, D + 1)]
    emit(rows, ["degree", "a_i", "sieve", "m_i", "M_i", "provenance"], cfg.format, out,
         title=f"Tamisage of {spec} (D = {D})",
         footer=[("r >=", res.r_lower), ("hd >=", tamisage.hd_lower(spec, res.r_lower))])
    return EXIT_OK


def cmd_bounds(cfg: RunConfig, out) -> int:
    spec = cfg.module()
    _needs_params(spec)
    D = cfg.trunc if cfg.trunc is not None else poincare.default_trunc(spec)
    res = tamisage.refined_bounds(poincare.series(spec, D, cache_dir=cfg.cache_dir))
    r_lo = res.r_lower
    hd_lo = tamisage.hd_lower(spec, r_lo)
    rows = [{"quantity": "r", "bound": r_lo, "provenance": "computed"},
            {"quantity": "hd", "bound": hd_lo, "provenance": "computed"}]
    status = EXIT_OK
    for row in catalog.reference_values()["bounds_single"]:
        if row["spec"] == spec.sorted().key():
            rows.append({"quantity": "r", "bound": row["r"], "provenance": "expected"})
            rows.append({"quantity": "hd", "bound": row["hd"], "provenance": "expected"})
            if r_lo < row["r"]:
                status = EXIT_REFUTED
    emit(rows, ["quantity", "bound", "provenance"], cfg.format, out,
         title=f"Lower bounds for {spec} (D = {D})", footer=[("r >=", r_lo), ("hd >=", hd_lo)])
    return status


def _parse_degrees(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --degrees {text!r}") from exc


def cmd_verify_hsop(cfg: RunConfig, out, degrees: str | None = None) -> int:
    spec = cfg.module()
    key = spec.key()
    cat = catalog.hsop_catalog()
    rows, verdict = [], None
    if degrees is None:
        if key not in cat:
            raise UsageError(f"no catalogued hsop for {key}; pass --degrees")
        degs = sorted(cat[key].degrees)
    else:
        degs = sorted(_parse_degrees(degrees))
        if len(degs) != spec.krull_dim:
            raise UsageError(f"{spec} needs {spec.krull_dim} degrees, got {len(degs)}")
        D = max(cfg.trunc or 0, sum(degs))
        num = genfind.refute_by_numerator(spec, degs, D)
        rows.append({"check": "numerator", "result": "refuted" if num.refuted else "nonnegative",
                     "detail": num.reason, "provenance": "computed"})
        if num.refuted:
            verdict = num.reason
        for i in range(spec.p):
            loc = genfind.refute_by_locus(spec, degs, i, cfg.seed)
            if loc.refuted:
                rows.append({"check": f"locus {spec.names[i]}=0", "result": "refuted",
                             "detail": loc.reason, "provenance": "computed"})
                verdict = verdict or loc.reason
        ref = catalog.reference_values()["refutations"].get(key)
        if ref and "point" in ref and sorted(ref["degrees"]) == degs:
            pt = genfind.refute_by_point(key, degs, ref["point"], cfg.seed)
            rows.append({"check": "counterexample point", "result": "refuted" if pt.refuted else "passed",
                         "detail": pt.reason, "provenance": "computed"})
            if pt.refuted:
                verdict = verdict or pt.reason
    if verdict is None and key in cat and sorted(cat[key].degrees) == degs:
        rep = genfind.verify_hsop_candidate(genfind.catalog_hsop(key), cfg.seed)
        rows.append({"check": "jacobian rank", "result": rep.jacobian_rank,
                     "detail": f"m = {rep.m}", "provenance": "computed"})
        rows.append({"check": "degree census", "result": rep.census_ok,
                     "detail": " ".join(map(str, rep.degrees)), "provenance": "computed"})
        rows.append({"check": "nullcone samples", "result": rep.nullcone_samples - len(rep.nullcone_failures),
                     "detail": f"of {rep.nullcone_samples} vanish", "provenance": "computed"})
        status = rep.status
    elif verdict is None:
        status = "not refuted"
    else:
        status = "refuted"
    emit(rows, ["check", "result", "detail", "provenance"], cfg.format, out,
         title=f"hsop degrees {','.join(map(str, degs))} for {spec}", footer=[("status", status)])
    return EXIT_REFUTED if status in ("refuted", "failed") else EXIT_OK


def _effective_cap(cfg: RunConfig, bound: int | None) -> int:
    if bound is None:
        return cfg.degree_cap
    return bound if cfg.heavy else min(cfg.degree_cap, bound)


def cmd_verify_generators(cfg: RunConfig, out) -> int:
    spec = cfg.module()
    try:
        gspec, recs, prov = genfind.records_for(spec.key())
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    bound = catalog.reference_values()["generator_bounds"].get(spec.key())
    cap = _effective_cap(cfg, bound)
    bad_inv = genfind.check_invariance(gspec, recs, cfg.seed)
    rep = genfind.verify_generators(gspec, recs, cap, cfg.seed)
    rows = [{"degree": r.degree, "a_d": r.a, "products": r.products, "g_d": r.new_needed,
             "listed": r.listed, "full_span": r.full_span, "certified": r.certified,
             "ok": r.ok, "provenance": "computed"} for r in rep.rows]
    ok = rep.ok and not bad_inv
    emit(rows, ["degree", "a_d", "products", "g_d", "listed", "full_span", "certified", "ok", "provenance"],
         cfg.format, out, title=f"Generators of {gspec} ({prov}, r = {len(recs)}) through degree {cap}",
         footer=[("invariance failures", len(bad_inv)), ("status", "verified" if ok else "failed")])
    return EXIT_OK if ok else EXIT_REFUTED


def theorem2_row(key: str, cfg: RunConfig) -> dict:
    row = catalog.theorem2_row(key)
    spec, recs, prov = genfind.records_for(key)
    census: dict = {}
    for r in recs:
        census[r.degree] = census.get(r.degree, 0) + 1
    degs = row["hsop"]
    D = max(cfg.trunc or 0, sum(degs))
    num = poincare.hsop_numerator(poincare.series(spec, D, cache_dir=cfg.cache_dir), degs)
    bound = max(list(degs) + num.support()) if num.nonnegative and num.complete else None
    cap = _effective_cap(cfg, bound)
    rep = genfind.verify_generators(spec, recs, cap, cfg.seed)
    expected_d = {int(k): v for k, v in row["d"].items()}
    r = len(recs)
    hd = r - spec.param_count
    out = {"spec": key, "hd": hd, "m": spec.param_count, "hsop": degs, "r": r}
    for d in range(2, 12):
        out[f"d{d}"] = census.get(d) or None
    out.update({"numerator_ok": num.nonnegative, "span_cap": cap, "span_ok": rep.ok,
                "matches_expected": (r == row["r"] and hd == row["hd"] and census == expected_d
                                     and spec.param_count == row["m"]),
                "provenance": f"computed ({prov})"})
    return out


def cmd_theorem2(cfg: RunConfig, out, row: str | None = None) -> int:
    keys = [r["spec"] for r in catalog.reference_values()["theorem2"]]
    if row is not None:
        key = ModuleSpec.parse(row).key()
        if key not in keys:
            raise UsageError(f"{row} is not a tabulated row")
        keys = [key]
    rows = [theorem2_row(k, cfg) for k in keys]
    cols = ["spec", "hd", "m", "hsop", "r"] + [f"d{d}" for d in range(2, 12)] + \
        ["numerator_ok", "span_cap", "span_ok", "matches_expected", "provenance"]
    emit(rows, cols, cfg.format, out, title="Rings with 4 <= hd <= 15")
    good = all(r["numerator_ok"] and r["span_ok"] and r["matches_expected"] for r in rows)
    return EXIT_OK if good else EXIT_REFUTED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="form degrees, e.g. 12 or 1,2,4")
    common.add_argument("--trunc", type=int, help="series truncation degree")
    common.add_argument("--degree-cap", type=int, default=12, help="max degree for span checks (default 12)")
    common.add_argument("--seed", type=int, default=0, help="seed for random evaluation points")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--cache-dir", help="series cache directory (falls back to $SL2INV_CACHE_DIR)")
    common.add_argument("--heavy", action="store_true", help="run span checks up to the full degree bound")
    p = _Parser(prog="sl2inv", description="Invariant rings of SL2 acting on binary forms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("series", parents=[common], help="Poincare series coefficients")
    sub.add_parser("tamisage", parents=[common], help="sieve rows m_i, M_i")
    sub.add_parser("bounds", parents=[common], help="lower bounds for r and hd")
    h = sub.add_parser("verify-hsop", parents=[common], help="check or refute hsop degrees")
    h.add_argument("--degrees", help="comma-separated hsop degrees")
    sub.add_parser("verify-generators", parents=[common], help="check a generator list degree by degree")
    t = sub.add_parser("theorem2", parents=[common], help="reproduce the rows with 4 <= hd <= 15")
    t.add_argument("--row", help="a single row, e.g. 2,2,4")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.spec, args.trunc, args.degree_cap, args.seed, args.format,
                    args.cache_dir, args.heavy)
    try:
        if args.command == "series":
            return cmd_series(cfg, out)
        if args.command == "tamisage":
            return cmd_tamisage(cfg, out)
        if args.command == "bounds":
            return cmd_bounds(cfg, out)
        if args.command == "verify-hsop":
            return cmd_verify_hsop(cfg, out, args.degrees)
        if args.command == "verify-generators":
            return cmd_verify_generators(cfg, out)
        return cmd_theorem2(cfg, out, args.row)
    except UsageError as exc:
        sys.stderr.write(f"sl2inv: {exc}\n")
        return EXIT_USAGE
    except genfind.Inconclusive as exc:
        sys.stderr.write(f"sl2inv: inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
