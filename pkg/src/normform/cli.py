"""Command-line front door: JSON config in, deterministic JSON/CSV reports out.

Exit codes: 0 success, 2 validation error, 3 budget exceeded.  Reports
written to --out are byte-deterministic for fixed (config, seed, threads);
volatile data (wall time) goes to stdout/stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
import time
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, NormformError, ValidationError
from .fields import FieldSpec, make_context
from .experiments import (
    ExperimentConfig,
    theorem_check,
    typei_discrepancy,
    typeii_density_check,
)
from .integrals import PolytopeSpec, polytope_integral

log = logging.getLogger("normform")

SUBCOMMANDS = ("norms", "sseries", "lattice", "census", "typei", "theorem",
               "integral", "buchstab")


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _write_report(outdir: Path, name: str, payload: dict,
                  csv_header=None, csv_rows=None) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / f"{name}.json").write_text(_canonical_json(payload))
    if csv_header is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        for row in csv_rows:
            w.writerow([repr(x) if isinstance(x, float) else x for x in row])
        (outdir / f"{name}.csv").write_text(buf.getvalue())


def _load_config(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ValidationError(f"config file not found: {path}")
    try:
        cfg = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object")
    return cfg


def _field_from(cfg: dict) -> FieldSpec:
    if "field" not in cfg:
        raise ValidationError("config needs a 'field' object {f: [...], k: int}")
    return FieldSpec.from_json_dict(cfg["field"])


def _reject_unknown(cfg: dict, allowed: set[str]) -> None:
    unknown = set(cfg) - allowed
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")


def _experiment_config(cfg: dict, args) -> ExperimentConfig:
    d = dict(cfg)
    if args.seed is not None:
        d["seed"] = args.seed
    if args.threads is not None:
        d["threads"] = args.threads
    if args.pcut is not None:
        d["p_cut"] = args.pcut
    if args.budget is not None:
        d["point_budget"] = args.budget
    return ExperimentConfig.from_json_dict(d)


# --- subcommand runners -----------------------------------------------------


def _run_theorem(cfg: dict, args, outdir: Path) -> dict:
    ecfg = _experiment_config(cfg, args)
    rep = theorem_check(ecfg)
    payload = {
        "kind": rep.kind,
        "observed": rep.observed,
        "predicted": rep.predicted,
        "pred_err": rep.pred_err,
        "ratio": rep.ratio,
        "sseries": rep.details["sseries"],
        "config": rep.config,
        "details": {k: v for k, v in rep.details.items() if k != "sseries"},
        "version": __version__,
    }
    header = ["slab", "x1_lo", "x1_hi", "points", "primes_pos", "primes_neg"]
    rows = [[s[h] for h in header] for s in rep.slabs]
    _write_report(outdir, "theorem", payload, header, rows)
    return {**payload, "runtime_s": rep.runtime_s}


def _run_sseries(cfg: dict, args, outdir: Path) -> dict:
    from .series import per_prime_factor_table, singular_series, singular_series_tilde

    _reject_unknown(cfg, {"field", "p_cut"})
    ctx = _field_from(cfg)
    p_cut = int(args.pcut or cfg.get("p_cut", 10_000))
    t0 = time.time()
    S = singular_series(ctx, p_cut)
    St = singular_series_tilde(ctx, p_cut)
    rows = per_prime_factor_table(ctx, p_cut)
    payload = {
        "field": ctx.to_json_dict(),
        "singular_series": S.to_json_dict(),
        "singular_series_tilde": St.to_json_dict(),
        "value": S.value,
        "cutoff": p_cut,
        "tail_bound": S.tail_bound,
        "version": __version__,
    }
    header = ["p", "degree_pattern", "nu_p", "nu", "factor", "running_product"]
    _write_report(outdir, "sseries", payload, header,
                  [[r[h] for h in header] for r in rows])
    return {**payload, "runtime_s": time.time() - t0}


def _run_lattice(cfg: dict, args, outdir: Path) -> dict:
    from .lattices import (det_squared_formula, lambda_v, lattice_det_sq,
                           reduced_basis, wedge)

    _reject_unknown(cfg, {"field", "v"})
    ctx = _field_from(cfg)
    if "v" not in cfg:
        raise ValidationError("lattice config needs 'v': [int, ...]")
    v = [int(t) for t in cfg["v"]]
    w = wedge(v, ctx)
    lat = lambda_v(v, ctx)
    rb = reduced_basis(lat)
    det_sq = lattice_det_sq(lat)
    payload = {
        "field": ctx.to_json_dict(),
        "v": v,
        "wedge_entries": list(w.entries),
        "wedge_content": w.content,
        "det_sq_formula": str(det_squared_formula(w)),
        "det_sq_gram": det_sq,
        "agree": str(det_squared_formula(w)) == str(det_sq),
        "basis": [list(b) for b in rb.basis],
        "minima_sq": list(rb.minima_sq),
        "near_orthogonality": rb.near_orthogonality,
        "version": __version__,
    }
    _write_report(outdir, "lattice", payload,
                  ["basis_row"] + [f"c{i}" for i in range(ctx.n)],
                  [[i] + list(b) for i, b in enumerate(rb.basis)])
    return payload


def _lattice_selftest(args) -> int:
    """Formula-vs-oracle suite over random vectors, exact equality."""
    from .fields import make_context
    from .lattices import (det_squared_formula, lambda_pair, lambda_v,
                           lattice_det_sq, wedge, wedge_pair)

    rng = random.Random(args.seed or 0)
    fields = [([-2, 0, 0, 0], 1), ([-1, -1, 0, 0, 0], 1),
              ([-3, 0, 0, 0, 0, 0], 2), ([-2, 0, 0, 0, 0, 0, 0], 2)]
    checked = 0
    for fc, k in fields:
        ctx = make_context(fc, k)
        for _ in range(40):
            v = [rng.randint(-9, 9) for _ in range(ctx.n)]
            if all(t == 0 for t in v):
                v[0] = 1
            if det_squared_formula(wedge(v, ctx)) != lattice_det_sq(lambda_v(v, ctx)):
                print(f"FAIL single {fc} k={k} v={v}", file=sys.stderr)
                return 1
            w = [rng.randint(-9, 9) for _ in range(ctx.n)]
            if all(t == 0 for t in w):
                w[0] = 1
            wp = wedge_pair(v, w, ctx)
            if wp.is_zero():
                continue
            if det_squared_formula(wp) != lattice_det_sq(lambda_pair(v, w, ctx)):
                print(f"FAIL pair {fc} k={k}", file=sys.stderr)
                return 1
            checked += 1
    print(f"lattice selftest: {checked} pair cases + singles OK")
    return 0


def _run_census(cfg: dict, args, outdir: Path) -> dict:
    from .census import fp_wedge_census_report, skew_census

    _reject_unknown(cfg, {"field", "census", "primes", "B", "samples",
                          "kappas", "seed"})
    ctx = _field_from(cfg)
    kind = cfg.get("census", "fp_wedge")
    if kind == "fp_wedge":
        primes = [int(p) for p in cfg.get("primes", [3, 5, 7])]
        rep = fp_wedge_census_report(ctx, primes,
                                     budget=args.budget or 10**8)
    elif kind == "skew":
        rep = skew_census(ctx, int(cfg.get("B", 20)),
                          int(cfg.get("samples", 500)),
                          [float(k) for k in cfg.get("kappas",
                                                     [0.0, 2**-10, 2**-6, 1.0])],
                          seed=args.seed or int(cfg.get("seed", 0)))
    else:
        raise ValidationError(f"unknown census kind {kind!r}")
    payload = {**rep.to_json_dict(), "version": __version__}
    header, rows = rep.csv_rows()
    _write_report(outdir, "census", payload, header, rows)
    return payload


def _run_typei(cfg: dict, args, outdir: Path) -> dict:
    d_lo = int(cfg.pop("d_lo", 16))
    d_hi = int(cfg.pop("d_hi", 128))
    ecfg = _experiment_config(cfg, args)
    rep = typei_discrepancy(ecfg, d_lo, d_hi)
    payload = {
        "kind": rep.kind,
        "blocks": rep.details["blocks"],
        "fitted_constant": rep.details["fitted_constant"],
        "max_block_over_fitted": rep.details["max_block_over_fitted"],
        "bad_primes_excluded": rep.details["bad_primes_excluded"],
        "config": rep.config,
        "version": __version__,
    }
    header = ["D", "terms", "aggregate", "reference", "ratio", "per_term_bound_ok"]
    _write_report(outdir, "typei", payload, header,
                  [[b[h] for h in header] for b in rep.details["blocks"]])
    return {**payload, "runtime_s": rep.runtime_s}


def _run_integral(cfg: dict, args, outdir: Path) -> dict:
    _reject_unknown(cfg, {"intervals", "target_sum", "typeii", "field"})
    if "intervals" not in cfg:
        raise ValidationError("integral config needs 'intervals': [[lo, hi], ...]")
    spec = PolytopeSpec.make([tuple(iv) for iv in cfg["intervals"]])
    target = float(cfg.get("target_sum", sum(iv[0] for iv in cfg["intervals"])))
    value = polytope_integral(spec, target)
    payload = {
        "intervals": [list(iv) for iv in cfg["intervals"]],
        "target_sum": target,
        "value": value,
        "version": __version__,
    }
    t2cfg = cfg.get("typeii")
    if t2cfg:
        ctx = _field_from(cfg) if "field" in cfg else None
        rep = typeii_density_check(spec, int(t2cfg["X"]), float(t2cfg["eta"]),
                                   ctx=ctx, seed=args.seed or 0)
        payload["typeii"] = {
            "observed": rep.observed,
            "predicted": rep.predicted,
            "ratio": rep.ratio,
            "details": rep.details,
        }
    _write_report(outdir, "integral", payload)
    return payload


def _run_buchstab(cfg: dict, args, outdir: Path) -> dict:
    from .buchstab import buchstab_report
    from .fields import norm_form

    _reject_unknown(cfg, {"values", "range", "field", "box", "z1", "z2"})
    if "z1" not in cfg or "z2" not in cfg:
        raise ValidationError("buchstab config needs z1 and z2")
    if "values" in cfg:
        values = [int(v) for v in cfg["values"]]
    elif "range" in cfg:
        lo, hi = cfg["range"]
        values = list(range(int(lo), int(hi) + 1))
    elif "field" in cfg and "box" in cfg:
        ctx = _field_from(cfg)
        import itertools

        ranges = [range(int(lo), int(hi) + 1) for lo, hi in cfg["box"]]
        values = [norm_form(x, ctx) for x in itertools.product(*ranges)]
        values = [v for v in values if v != 0]
    else:
        raise ValidationError("buchstab config needs values, range, or field+box")
    rep = buchstab_report(values, float(cfg["z1"]), float(cfg["z2"]))
    payload = {**rep.to_json_dict(), "version": __version__}
    _write_report(outdir, "buchstab", payload)
    return payload


def _run_norms(cfg: dict, args, outdir: Path) -> dict:
    from .fields import norm_form
    import itertools

    _reject_unknown(cfg, {"field", "box", "X", "max_rows"})
    ctx = _field_from(cfg)
    if "box" in cfg:
        box = [(int(lo), int(hi)) for lo, hi in cfg["box"]]
    else:
        X = int(cfg.get("X", 10))
        box = [(1, X)] * ctx.m
    if len(box) != ctx.m:
        raise ValidationError(f"box must have {ctx.m} coordinates")
    npts = 1
    for lo, hi in box:
        npts *= hi - lo + 1
    if npts > (args.budget or 10**6):
        raise BudgetExceeded(f"{npts} points exceed budget")
    max_rows = int(cfg.get("max_rows", 1000))
    rows = []
    neg = 0
    tiny = 0
    total = 0
    for x in itertools.product(*[range(lo, hi + 1) for lo, hi in box]):
        v = norm_form(x, ctx)
        total += 1
        if v < 0:
            neg += 1
        if abs(v) < 2:
            tiny += 1
        if len(rows) < max_rows:
            rows.append(list(x) + [v])
    payload = {
        "field": ctx.to_json_dict(),
        "box": [list(b) for b in box],
        "points": total,
        "negative_norms": neg,
        "tiny_norms": tiny,
        "version": __version__,
    }
    header = [f"x{i+1}" for i in range(ctx.m)] + ["norm"]
    _write_report(outdir, "norms", payload, header, rows)
    return payload


_RUNNERS = {
    "theorem": _run_theorem,
    "sseries": _run_sseries,
    "lattice": _run_lattice,
    "census": _run_census,
    "typei": _run_typei,
    "integral": _run_integral,
    "buchstab": _run_buchstab,
    "norms": _run_norms,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="normform",
        description="incomplete norm form experiments and verifications")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", type=str, default=None)
        sp.add_argument("--out", type=str, default="out")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--pcut", type=int, default=None)
        sp.add_argument("--budget", type=int, default=None)
        sp.add_argument("--selftest", action="store_true")
    return ap


def main(argv=None) -> int:
    level = os.environ.get("NORMFORM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        stream=sys.stderr)
    args = build_parser().parse_args(argv)
    t0 = time.time()
    try:
        if args.command == "lattice" and args.selftest:
            return _lattice_selftest(args)
        if args.selftest:
            raise ValidationError("--selftest is only wired for 'lattice'")
        if args.config is None:
            raise ValidationError("--config PATH is required")
        cfg = _load_config(args.config)
        outdir = Path(args.out)
        result = _RUNNERS[args.command](cfg, args, outdir)
        result = dict(result)
        result.setdefault("runtime_s", time.time() - t0)
        print(_canonical_json(result), end="")
        return 0
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ValueError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except NormformError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
