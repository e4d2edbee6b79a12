"""Command-line front end: verification suites and catalog emission.

Each subcommand runs library checks and writes one JSON report (schema
"sod-kit/1", UTF-8, newline-terminated).  Reports depend only on the
resolved configuration, so identical invocations give identical bytes;
wall time is printed to stderr, never into the report.  Exit status is 0
when every check passes, 1 when any check fails or misses stabilization,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import (
    flag_sod,
    grassmann_sod,
    severi_brauer_multiplicities,
    severi_brauer_sod,
)
from .cech import exceptionality_report
from .charts import atlas
from .diagonal import (
    same_chart_ideal_check,
    sample_koszul_checks,
    wedge_box_filtration,
)
from .errors import BadIndexSet, InvalidDims, SodkitError
from .partitions import count_ssyt, enumerate_box
from .rings import QQ, RingSpec, ring_from_label
from .schur_weyl import cauchy_filtration, check_duality, schur_module, weyl_module


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Resolved settings for one subcommand run.

    ``d`` is the starting truncation bound for cohomology and ``max_d`` the
    escalation ceiling (and the sweep cap for the filtration commands);
    both optional.  ``fields`` must be nonempty.
    """

    k: int | None = None
    n: int | None = None
    ranks: tuple[int, ...] | None = None
    fields: tuple[RingSpec, ...] = (QQ,)
    d: int | None = None
    max_d: int | None = None
    seed: int = 0
    jobs: int = 1
    out: str | None = None


# -- configuration plumbing --------------------------------------------------

_CONFIG_KEYS = ("k", "n", "ranks", "fields", "d", "max_d", "seed", "jobs", "out")


def _read_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        key, eq, val = s.partition("=")
        if not eq:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        out[key.strip().lower().replace("-", "_")] = val.strip()
    return out


def _parse_int(val: str, key: str) -> int:
    try:
        return int(val)
    except ValueError as exc:
        raise UsageError(f"{key} must be an integer, got {val!r}") from exc


def _parse_ranks(val: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in val.split(",") if part.strip())
    except ValueError as exc:
        raise UsageError(f"ranks must be comma-separated integers, got {val!r}") from exc


def _parse_fields(val: str) -> tuple[RingSpec, ...]:
    out = []
    for part in val.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(ring_from_label(part))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return tuple(out)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file, command line, and environment.

    Precedence, lowest first: built-in defaults, config file entries,
    command-line flags, then SODKIT_JOBS for the job count.
    """
    cfg = RunConfig()
    if args.config:
        raw = _read_config_file(args.config)
        unknown = set(raw) - set(_CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "k" in raw:
            cfg.k = _parse_int(raw["k"], "k")
        if "n" in raw:
            cfg.n = _parse_int(raw["n"], "n")
        if "ranks" in raw:
            cfg.ranks = _parse_ranks(raw["ranks"])
        if "fields" in raw:
            cfg.fields = _parse_fields(raw["fields"])
        if "d" in raw:
            cfg.d = _parse_int(raw["d"], "d")
        if "max_d" in raw:
            cfg.max_d = _parse_int(raw["max_d"], "max_d")
        if "seed" in raw:
            cfg.seed = _parse_int(raw["seed"], "seed")
        if "jobs" in raw:
            cfg.jobs = _parse_int(raw["jobs"], "jobs")
        if "out" in raw:
            cfg.out = raw["out"]
    if args.k is not None:
        cfg.k = args.k
    if args.n is not None:
        cfg.n = args.n
    if args.ranks is not None:
        cfg.ranks = _parse_ranks(args.ranks)
    if args.fields is not None:
        cfg.fields = _parse_fields(args.fields)
    if args.d is not None:
        cfg.d = args.d
    if args.max_d is not None:
        cfg.max_d = args.max_d
    if args.seed is not None:
        cfg.seed = args.seed
    if args.jobs is not None:
        cfg.jobs = args.jobs
    env_jobs = os.environ.get("SODKIT_JOBS")
    if env_jobs:
        cfg.jobs = _parse_int(env_jobs, "SODKIT_JOBS")
    if args.out is not None:
        cfg.out = args.out

    if not cfg.fields:
        raise UsageError("fields must be nonempty")
    if cfg.d is not None and cfg.d < 0:
        raise UsageError("d must be >= 0")
    if cfg.max_d is not None and cfg.max_d < 0:
        raise UsageError("max-d must be >= 0")
    if cfg.d is not None and cfg.max_d is not None and cfg.max_d < cfg.d:
        raise UsageError("max-d must be >= d")
    if cfg.jobs < 1:
        raise UsageError("jobs must be >= 1")
    return cfg


def _need_grassmann(cfg: RunConfig) -> tuple[int, int]:
    if cfg.k is None or cfg.n is None:
        raise UsageError("this command needs --k and --n")
    if not 0 < cfg.k < cfg.n:
        raise UsageError(f"need 0 < k < n, got k={cfg.k}, n={cfg.n}")
    return cfg.k, cfg.n


# -- report assembly ---------------------------------------------------------


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= 2**63 else x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, RingSpec):
        return x.label
    if isinstance(x, dict):
        return {str(key): _jsonable(val) for key, val in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "k": cfg.k,
        "n": cfg.n,
        "ranks": cfg.ranks,
        "fields": [F.label for F in cfg.fields],
        "d": cfg.d,
        "max_d": cfg.max_d,
        "seed": cfg.seed,
        "jobs": cfg.jobs,
        "out": cfg.out,
    }


def build_report(command: str, cfg: RunConfig, records: list[dict]) -> dict:
    status = "pass" if all(r["status"] == "pass" for r in records) else "fail"
    return {
        "schema": "sod-kit/1",
        "tool": {"name": "sodkit", "version": __version__},
        "command": command,
        "config": _config_echo(cfg),
        "records": records,
        "status": status,
    }


def render_report(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


# -- subcommands -------------------------------------------------------------


def cmd_verify_schur(cfg: RunConfig, args) -> list[dict]:
    k, n = _need_grassmann(cfg)
    box = enumerate_box(k, n)
    rank_cases = []
    ranks_ok = True
    by_alpha: dict = {}
    for F in cfg.fields:
        for a in box:
            s = schur_module(a, n, F).rank
            w = weyl_module(a, n, F).rank
            expected = count_ssyt(a, n)
            if s != expected or w != expected:
                ranks_ok = False
            rank_cases.append(
                {
                    "alpha": a,
                    "field": F.label,
                    "schur_rank": s,
                    "weyl_rank": w,
                    "expected": expected,
                }
            )
            by_alpha.setdefault(a, []).append((s, w))
    records = [
        {
            "name": "schur-weyl-ranks",
            "status": "pass" if ranks_ok else "fail",
            "data": {"ambient": n, "cases": rank_cases},
        }
    ]
    dual_cases = []
    dual_ok = True
    for a in box:
        rep = check_duality(a, n)
        if not rep.unimodular:
            dual_ok = False
        dual_cases.append(
            {
                "alpha": a,
                "rank": rep.rank,
                "invariant_factors": rep.invariant_factors,
                "unimodular": rep.unimodular,
            }
        )
    records.append(
        {
            "name": "integral-duality",
            "status": "pass" if dual_ok else "fail",
            "data": {"ambient": n, "cases": dual_cases},
        }
    )
    char_ok = all(len(set(vals)) == 1 for vals in by_alpha.values())
    records.append(
        {
            "name": "characteristic-freeness",
            "status": "pass" if char_ok else "fail",
            "data": {"fields": [F.label for F in cfg.fields]},
        }
    )
    return records


def cmd_verify_cauchy(cfg: RunConfig, args) -> list[dict]:
    if cfg.k is None or cfg.n is None:
        raise UsageError("this command needs --k and --n (the two factor ranks)")
    if cfg.k < 1 or cfg.n < 1:
        raise UsageError("factor ranks must be >= 1")
    cap = cfg.max_d if cfg.max_d is not None else 4
    top = min(cfg.k * cfg.n, cap)
    records = []
    for F in cfg.fields:
        steps = []
        ok = True
        for m in range(top + 1):
            rep = cauchy_filtration(m, cfg.k, cfg.n, F)
            if not rep.passed:
                ok = False
            steps.append(
                {
                    "m": m,
                    "passed": rep.passed,
                    "top_rank": rep.top_rank,
                    "expected_top": rep.expected_top,
                    "graded": [
                        {
                            "alpha": s.alpha,
                            "graded_rank": s.graded_rank,
                            "expected": s.expected,
                        }
                        for s in rep.steps
                    ],
                }
            )
        records.append(
            {
                "name": f"cauchy-filtration-{F.label}",
                "status": "pass" if ok else "fail",
                "data": {"n_V": cfg.k, "n_W": cfg.n, "sweep": steps},
            }
        )
    return records


def cmd_verify_cohomology(cfg: RunConfig, args) -> list[dict]:
    k, n = _need_grassmann(cfg)
    rep = exceptionality_report(
        k, n, cfg.fields, D=cfg.d, jobs=cfg.jobs, ceiling=cfg.max_d
    )
    records = []
    for label, table in rep.tables.items():
        if table.semiorthogonal_ok and table.endomorphism_ok and table.all_stabilized:
            status = "pass"
        elif table.violations:
            status = "fail"
        else:
            status = "not-stabilized"
        entries = [
            {
                "alpha": e.alpha,
                "beta": e.beta,
                "dims": e.dims,
                "stabilized": e.stabilized,
                "bound": e.bound,
            }
            for (_, _), e in sorted(table.entries.items())
        ]
        records.append(
            {
                "name": f"rhom-table-{label}",
                "status": status,
                "data": {
                    "method": table.method,
                    "semiorthogonal_ok": table.semiorthogonal_ok,
                    "endomorphism_ok": table.endomorphism_ok,
                    "all_stabilized": table.all_stabilized,
                    "violations": table.violations,
                    "entries": entries,
                },
            }
        )
    return records


def cmd_verify_diagonal(cfg: RunConfig, args) -> list[dict]:
    k, n = _need_grassmann(cfg)
    at = atlas(k, n)
    chart_cases = []
    charts_ok = True
    for ch in at.charts:
        ok = same_chart_ideal_check(ch.index_set, k, n)
        if not ok:
            charts_ok = False
        chart_cases.append({"index_set": ch.index_set, "ok": ok})
    records = [
        {
            "name": "same-chart-ideal",
            "status": "pass" if charts_ok else "fail",
            "data": {"charts": chart_cases},
        }
    ]
    for F in cfg.fields:
        rep = sample_koszul_checks(k, n, F, seed=cfg.seed)
        records.append(
            {
                "name": f"koszul-sampling-{F.label}",
                "status": "pass" if rep.passed else "fail",
                "data": {
                    "seed": rep.seed,
                    "off_pairs": rep.off_pairs,
                    "diag_points": rep.diag_points,
                    "mixed_diag": rep.mixed_diag,
                    "failures": [str(f) for f in rep.failures],
                },
            }
        )
    L = k * (n - k)
    for F in cfg.fields:
        sweep = []
        ok = True
        for i in range(L + 1):
            rep = wedge_box_filtration(i, k, n, F)
            if not rep.passed:
                ok = False
            sweep.append(
                {"i": i, "passed": rep.passed, "top_rank": rep.top_rank}
            )
        records.append(
            {
                "name": f"wedge-filtration-{F.label}",
                "status": "pass" if ok else "fail",
                "data": {"sweep": sweep},
            }
        )
    return records


def _catalog_entries(entries) -> list[dict]:
    return [
        {
            "position": e.position,
            "label": e.label,
            "kernel": e.kernel,
            "twist": e.twist,
            "component_category": e.component_category,
        }
        for e in entries
    ]


def cmd_catalog(cfg: RunConfig, args) -> list[dict]:
    want_grass = args.grassmannian
    want_flag = args.flag
    want_sb = args.severi_brauer
    if not (want_grass or want_flag or want_sb):
        want_grass = want_sb = cfg.k is not None and cfg.n is not None
        want_flag = cfg.ranks is not None
    records = []
    if want_grass:
        k, n = _need_grassmann(cfg)
        entries = grassmann_sod(k, n)
        records.append(
            {
                "name": "grassmann-sod",
                "status": "pass",
                "data": {"count": len(entries), "entries": _catalog_entries(entries)},
            }
        )
    if want_flag:
        if cfg.ranks is None:
            raise UsageError("flag catalog needs --ranks")
        entries = flag_sod(cfg.ranks)
        records.append(
            {
                "name": "flag-sod",
                "status": "pass",
                "data": {
                    "ranks": cfg.ranks,
                    "count": len(entries),
                    "entries": _catalog_entries(entries),
                },
            }
        )
    if want_sb:
        k, n = _need_grassmann(cfg)
        entries = severi_brauer_sod(k, n)
        records.append(
            {
                "name": "severi-brauer-sod",
                "status": "pass",
                "data": {
                    "count": len(entries),
                    "multiplicities": severi_brauer_multiplicities(k, n),
                    "entries": _catalog_entries(entries),
                },
            }
        )
    if not records:
        raise UsageError("catalog needs --k/--n or --ranks (or an explicit selector)")
    return records


_HANDLERS = {
    "verify-schur": cmd_verify_schur,
    "verify-cauchy": cmd_verify_cauchy,
    "verify-cohomology": cmd_verify_cohomology,
    "verify-diagonal": cmd_verify_diagonal,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sodkit",
        description="Exact verification suites for semiorthogonal decomposition data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "verify-schur": "Schur/Weyl ranks, integral duality, characteristic-freeness",
        "verify-cauchy": "exterior-power filtration sweeps (factor ranks --k, --n)",
        "verify-cohomology": "Hom-bundle cohomology tables with stabilization",
        "verify-diagonal": "same-chart ideal, Koszul point sampling, wedge filtration",
        "catalog": "emit decomposition catalogs (Grassmann, flag, twisted forms)",
    }
    for name in _HANDLERS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--ranks", type=str, default=None, help="comma-separated, e.g. 1,2,4")
        p.add_argument("--fields", type=str, default=None, help="comma-separated, e.g. q,f2,f3")
        p.add_argument("--d", type=int, default=None, help="starting truncation bound")
        p.add_argument("--max-d", dest="max_d", type=int, default=None, help="escalation ceiling / sweep cap")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--out", type=str, default=None, help="report path (default stdout)")
        p.add_argument("--config", type=str, default=None, help="key = value file; flags override")
        if name == "catalog":
            p.add_argument("--grassmannian", action="store_true")
            p.add_argument("--flag", action="store_true")
            p.add_argument("--severi-brauer", dest="severi_brauer", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        cfg = resolve_config(args)
        records = _HANDLERS[args.command](cfg, args)
    except UsageError as exc:
        print(f"sodkit: error: {exc}", file=sys.stderr)
        return 2
    except (InvalidDims, BadIndexSet) as exc:
        print(f"sodkit: error: {exc}", file=sys.stderr)
        return 2
    except SodkitError as exc:
        print(f"sodkit: check failed: {exc}", file=sys.stderr)
        return 1
    report = build_report(args.command, cfg, records)
    text = render_report(report)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"sodkit: error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    print(f"wall time {time.time() - t0:.2f}s", file=sys.stderr)
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    raise SystemExit(main())
