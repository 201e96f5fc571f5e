"""Command-line harness: generate instances, run pipelines, sweep N, self-check.

Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 oracle failure.

CSV columns (one row per scenario x N x seed x algorithm, in that order)::

    row_type, config_hash, scenario, algorithm, seed, M, N, K, status,
    sum_rate_bps, solver_time_s, iterations, assigned, violations,
    potential_initial, potential_final, total_time_s, unserved, error

``row_type`` is ``data`` or ``summary``; summary rows (sweep only) leave
``seed`` empty and hold per-(N, algorithm) means of the numeric columns.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import warnings
from pathlib import Path

import numpy as np

from .coloring import format_coloring_instance
from .config import SCENARIOS, ConfigError, ExperimentConfig, config_hash, load_config
from .hypergraph import format_hypergraph
from .matching import format_uniform
from .oracles import run_oracle_suite
from .pipelines import (
    caching_allocate,
    caching_cost,
    cran_bipartite_baseline,
    cran_iterative_matching,
    d2d_allocate,
    dualconn_allocate,
)
from .scenarios import (
    build_caching_instance,
    build_cran_instance,
    build_d2d_instance,
    build_dualconn_instance,
    generate_caching_scenario,
    generate_cran_geometry,
    generate_d2d_geometry,
    generate_dualconn_geometry,
)

__all__ = ["main", "COLUMNS", "run_rows", "sweep_rows", "generate_files"]

COLUMNS = [
    "row_type",
    "config_hash",
    "scenario",
    "algorithm",
    "seed",
    "M",
    "N",
    "K",
    "status",
    "sum_rate_bps",
    "solver_time_s",
    "iterations",
    "assigned",
    "violations",
    "potential_initial",
    "potential_final",
    "total_time_s",
    "unserved",
    "error",
]
NUMERIC = ["sum_rate_bps", "solver_time_s", "iterations", "assigned", "violations",
           "potential_initial", "potential_final", "total_time_s", "unserved"]

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_ORACLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- instances ------------------------------------------------------------------


def _instance(cfg: ExperimentConfig, n: int, seed: int):
    params = cfg.radio_params()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        if cfg.scenario == "cran":
            return build_cran_instance(generate_cran_geometry(cfg.m, n, seed, cfg.side), params, cfg.k)[0]
        if cfg.scenario == "dualconn":
            geom = generate_dualconn_geometry(cfg.m, n, seed, cfg.side, params)
            return build_dualconn_instance(geom, params, cfg.k)
        if cfg.scenario == "d2d":
            return build_d2d_instance(generate_d2d_geometry(cfg.m, seed, cfg.side, params=params), params)
        geom, cat = generate_caching_scenario(cfg.m, n, cfg.k, cfg.contents, seed, cfg.side, cfg.cache_size)
        return build_caching_instance(geom, params, cat)


def _instance_text(cfg: ExperimentConfig, inst) -> str:
    if cfg.scenario == "cran":
        from .matching import make_uniform

        G = make_uniform((inst.M, inst.N, inst.K), inst.edge_index, inst.standalone_rate(*inst.edge_index[:, :2].T)
                         if inst.edge_index.size else np.zeros(0))
        return format_uniform(G)
    if cfg.scenario == "dualconn":
        return format_coloring_instance(inst.coloring)
    if cfg.scenario == "d2d":
        return format_hypergraph(inst.hypergraph)
    return format_uniform(inst.hypergraph)


def generate_files(cfg: ExperimentConfig, out_dir) -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc.strerror}") from exc
    written = []
    ns = (cfg.n[0],) if cfg.scenario == "d2d" else cfg.n
    for n in ns:
        for seed in cfg.seeds:
            inst = _instance(cfg, n, seed)
            name = f"{cfg.scenario}_M{cfg.m}" + ("" if cfg.scenario == "d2d" else f"_N{n}") + f"_K{cfg.k}_seed{seed}.txt"
            path = out / name
            try:
                path.write_text(_instance_text(cfg, inst), encoding="utf-8")
            except OSError as exc:
                raise OSError(f"cannot write {path}: {exc.strerror}") from exc
            written.append(path)
    return written


# -- runs -----------------------------------------------------------------------


def _row(cfg, h, algorithm, seed, n, **vals) -> dict:
    row = dict.fromkeys(COLUMNS, "")
    row.update(row_type="data", config_hash=h, scenario=cfg.scenario, algorithm=algorithm,
               seed=seed, M=cfg.m, N="" if cfg.scenario == "d2d" else n, K=cfg.k, status="ok")
    row.update(vals)
    return row


def _solve(cfg: ExperimentConfig, n: int, seed: int, h: str) -> list[dict]:
    """Rows for one (N, seed); failures become error rows."""
    algos = {
        "cran": ["hypergraph", "bipartite"],
        "dualconn": ["greedy_coloring"],
        "d2d": [f"game_{cfg.d2d_mode}"],
        "caching": [cfg.caching_policy],
    }[cfg.scenario]
    try:
        inst = _instance(cfg, n, seed)
    except Exception as exc:  # noqa: BLE001 - reported in the row
        return [_row(cfg, h, a, seed, n, status="error", error=f"{type(exc).__name__}: {exc}") for a in algos]
    rows = []
    for algo in algos:
        try:
            if cfg.scenario == "cran":
                if algo == "hypergraph":
                    alloc, rep = cran_iterative_matching(inst, k_max=cfg.k_max, rrh_exclusive=cfg.rrh_exclusive)
                else:
                    alloc, rep = cran_bipartite_baseline(inst)
                vals = dict(sum_rate_bps=rep.total_bps, solver_time_s=rep.solver_time_s,
                            iterations=alloc.iterations, assigned=len(alloc.assigned))
            elif cfg.scenario == "dualconn":
                colors, viol, rep = dualconn_allocate(inst)
                vals = dict(sum_rate_bps=rep.total_bps, solver_time_s=rep.solver_time_s,
                            violations=viol.count + len(viol.hard_pair_violations), assigned=colors.size)
            elif cfg.scenario == "d2d":
                prof, trace, rep = d2d_allocate(inst, cfg.k, cfg.d2d_mode, seed, beta=cfg.beta,
                                                max_rounds=cfg.max_rounds, rule=cfg.rule)
                vals = dict(sum_rate_bps=rep.total_bps, solver_time_s=rep.solver_time_s,
                            iterations=len(trace) - 1, assigned=prof.channels.size,
                            potential_initial=trace.potentials[0], potential_final=prof.potential)
            else:
                alloc, rep = caching_allocate(inst, cfg.caching_policy, seed, k_max=cfg.k_max)
                total, unserved, _ = caching_cost(alloc, inst)
                vals = dict(sum_rate_bps=rep.total_bps, solver_time_s=rep.solver_time_s, iterations=alloc.iterations,
                            assigned=len(alloc.assigned), total_time_s=total, unserved=unserved)
            rows.append(_row(cfg, h, algo, seed, n, **vals))
        except Exception as exc:  # noqa: BLE001 - reported in the row
            rows.append(_row(cfg, h, algo, seed, n, status="error", error=f"{type(exc).__name__}: {exc}"))
    return rows


def run_rows(cfg: ExperimentConfig) -> list[dict]:
    h = config_hash(cfg)
    ns = (cfg.n[0],) if cfg.scenario == "d2d" else cfg.n
    return [row for n in ns for seed in cfg.seeds for row in _solve(cfg, n, seed, h)]


def _summaries(rows: list[dict]) -> list[dict]:
    out = []
    keys = []
    for r in rows:
        k = (r["N"], r["algorithm"])
        if k not in keys:
            keys.append(k)
    for n, algo in keys:
        group = [r for r in rows if r["N"] == n and r["algorithm"] == algo and r["status"] == "ok"]
        s = dict(rows[0])
        s.update(row_type="summary", algorithm=algo, seed="", N=n, error="",
                 status="ok" if group else "error")
        for c in NUMERIC:
            vals = [r[c] for r in group if r[c] != ""]
            s[c] = float(np.mean(vals)) if vals else ""
        out.append(s)
    return out


def sweep_rows(cfg: ExperimentConfig) -> list[dict]:
    if list(cfg.n) != sorted(cfg.n):
        raise ConfigError(f"sweep needs an ascending N list, got {list(cfg.n)}")
    rows = run_rows(cfg)
    return rows + _summaries(rows)


def _write_csv(rows: list[dict], out) -> None:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    if out is None:
        sys.stdout.write(buf.getvalue())
    else:
        try:
            Path(out).write_text(buf.getvalue(), encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {out}: {exc.strerror}") from exc


# -- argument handling ----------------------------------------------------------


def _int_list(text: str) -> list[int]:
    """``"1,2,5"`` or a half-open range ``"0:50"``."""
    try:
        if ":" in text:
            a, b = text.split(":")
            return list(range(int(a), int(b)))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 1,2,3 or 0:50, got {text!r}") from None


def _radio_override(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"radio value for {key!r} must be a number") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperalloc", description="Hypergraph resource allocation experiments.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("--config", help="JSON experiment config")
        sp.add_argument("--scenario", choices=SCENARIOS)
        sp.add_argument("--m", type=int, help="users (D2D: links)")
        sp.add_argument("--n", type=_int_list, help="RRHs/SAPs, e.g. 10 or 10,15,20")
        sp.add_argument("--k", type=int, help="channels")
        sp.add_argument("--seeds", type=_int_list, help="e.g. 0,1,2 or 0:50")
        sp.add_argument("--out", help="output file (run/sweep) or directory (generate)")
        sp.add_argument("--radio", type=_radio_override, action="append", default=[],
                        metavar="KEY=VALUE", help="RadioParams override, repeatable")
        sp.add_argument("--mode", dest="d2d_mode", choices=["best_response", "stochastic"])
        sp.add_argument("--beta", type=float)
        sp.add_argument("--max-rounds", dest="max_rounds", type=int)
        sp.add_argument("--policy", dest="caching_policy", choices=["centralized", "distributed"])
        sp.add_argument("--k-max", dest="k_max", type=int, help="largest claw in the local search")
        sp.add_argument("--rrh-exclusive", action=argparse.BooleanOptionalAction, default=None,
                        help="CRAN: forbid one RRH serving two users in the same iteration")

    for name, text in [("generate", "write instance files"), ("run", "run the pipelines, one CSV row per seed"),
                       ("sweep", "run over an N list and append per-N means")]:
        common(sub.add_parser(name, help=text))
    oc = sub.add_parser("oracle-check", help="compare solvers against brute-force oracles")
    oc.add_argument("--scale", type=float, default=1.0, help="multiply instance counts")
    oc.add_argument("--seed", type=int, default=0)
    oc.add_argument("--inject-fault", action="store_true", help="negative control: corrupt the solver weights")
    return p


def _config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    radio = dict(cfg.radio)
    radio.update(dict(args.radio))
    return cfg.override(
        scenario=args.scenario, m=args.m, n=args.n, k=args.k, seeds=args.seeds, out=args.out,
        d2d_mode=args.d2d_mode, beta=args.beta, max_rounds=args.max_rounds,
        caching_policy=args.caching_policy, k_max=args.k_max, rrh_exclusive=args.rrh_exclusive, radio=radio,
    )


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if args.command == "oracle-check":
        results = run_oracle_suite(scale=args.scale, seed=args.seed, corrupt=args.inject_fault,
                                   minimums={k: 0 for k in ("exact_matching", "local_search_bounds", "hungarian",
                                                            "potential_identity", "incidence_roundtrip")}
                                   if args.scale < 1 else None)
        for r in results:
            print(r.line())
        return EXIT_OK if all(r.ok for r in results) else EXIT_ORACLE
    try:
        cfg = _config(args)
    except ConfigError as exc:
        print(f"hyperalloc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "generate":
            for path in generate_files(cfg, cfg.out or "instances"):
                print(path)
            return EXIT_OK
        rows = sweep_rows(cfg) if args.command == "sweep" else run_rows(cfg)
        _write_csv(rows, cfg.out)
    except ConfigError as exc:
        print(f"hyperalloc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hyperalloc: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
