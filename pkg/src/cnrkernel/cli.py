"""Command-line front end.

Exit status: 0 success (CopWin / Yes), 1 RobberWin / No, 2 usage error,
3 budget exceeded, 4 malformed input.  ``--json`` adds one JSON record per
run on stdout.  ``CNR_STATE_CAP`` sets the default solver state cap.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .bench import DisagreementError, format_report, load_corpus, run_bench
from .bounds import bound_by_decomposition, ceil_div, closed_form_bounds, variant_bound_table
from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    InfeasibleConstructionError,
    InvalidCertificateError,
    InvalidSpecError,
    MalformedInputError,
    MalformedStateError,
)
from .game import GreedyRobber, OptimalRobber, RandomRobber, cop_number, extract_strategy, simulate, solve
from .generators import (
    HpqrParams,
    RbdsInstance,
    augment_rbds,
    gen_hpqr,
    gen_oriented_reduction,
    gen_rbds_reduction,
    twin_augment,
)
from .io import read_cover, read_edgelist, write_edgelist
from .kernels import kernelize
from .params import CVD, DTS, VC, cluster_vertex_deletion, deletion_to_stars, nd_partition, resolve_cover
from .variants import VariantSpec

OK, NO, USAGE, BUDGET, MALFORMED = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    graph: Path | None = None
    spec: Path | None = None
    variant: str = "classic"
    k: int | None = None
    k_max: int | None = None
    param: str = "vc"
    cover: Path | None = None
    seed: int = 0
    state_cap: int | None = None
    out: Path | None = None
    trace: Path | None = None
    as_json: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.state_cap is not None and self.state_cap <= 0:
            raise InvalidSpecError("--state-cap must be positive")
        if self.k is not None and self.k < 1:
            raise InvalidSpecError("--k must be >= 1")


def _spec(cfg: RunConfig, k: int) -> VariantSpec:
    if cfg.spec is not None:
        return VariantSpec.from_file(cfg.spec, k=k)
    return VariantSpec.by_name(cfg.variant, k, cfg.extra.get("speed", 2))


def _emit(cfg: RunConfig, record: dict):
    if cfg.as_json:
        print(json.dumps(record, sort_keys=True))


def cmd_solve(cfg: RunConfig) -> int:
    g = read_edgelist(cfg.graph)
    spec = _spec(cfg, cfg.k or 1)
    t0 = time.perf_counter()
    region = solve(g, spec, cfg.state_cap)
    dt = time.perf_counter() - t0
    print(region.verdict)
    if region.copwin:
        print(f"placement {' '.join(map(str, region.placement))} rounds<={region.placement_rank}")
    _emit(cfg, {"command": "solve", "verdict": region.verdict, "n": g.n, "k": spec.k,
                "states": region.n_states, "seconds": round(dt, 6)})
    return OK if region.copwin else NO


def cmd_copnumber(cfg: RunConfig) -> int:
    g = read_edgelist(cfg.graph)
    template = _spec(cfg, 1)
    t0 = time.perf_counter()
    c = cop_number(g, template, k_max=cfg.k_max, state_cap=cfg.state_cap)
    print(c)
    _emit(cfg, {"command": "copnumber", "cop_number": c, "n": g.n,
                "seconds": round(time.perf_counter() - t0, 6)})
    return OK


def cmd_kernelize(cfg: RunConfig) -> int:
    g = read_edgelist(cfg.graph)
    cover = read_cover(cfg.cover) if cfg.cover else None
    spec = _spec(cfg, cfg.k or 1) if cfg.param in ("general", "vc") else None
    kw = {"use_thresholds": not cfg.extra.get("no_thresholds", False)}
    res = kernelize(cfg.param, g, cfg.k or 1, cover, spec, **kw)
    lines = res.trace_lines()
    if cfg.out:
        write_edgelist(res.reduced, cfg.out)
    if cfg.trace:
        Path(cfg.trace).write_text("".join(f"{line}\n" for line in lines))
    verdict = res.verdict or "reduced"
    print(f"{verdict} n={g.n} kernel={res.reduced.n} t={res.t}")
    for line in lines:
        print(line)
    _emit(cfg, {"command": "kernelize", "verdict": res.verdict, "n": g.n, "kernel_n": res.reduced.n,
                "param": res.param_kind, "t": res.t, "rules": len(lines)})
    return NO if res.verdict == "No" else OK


def cmd_bound(cfg: RunConfig) -> int:
    g = read_edgelist(cfg.graph)
    cover = read_cover(cfg.cover) if cfg.cover else None
    record = {"command": "bound", "param": cfg.param}
    if cfg.param == VC:
        cert = resolve_cover(g.underlying(), cover, VC)
        caps = closed_form_bounds(cert.t)
        table, plans = variant_bound_table(g, cert)
        for key in table:
            print(f"{key} ≤ {caps[key]}")
        if "classic" in plans:
            print(f"constructive classic plan: {plans['classic'].bound} cops")
            for line in plans["classic"].lines()[1:]:
                print(line)
        record.update(t=cert.t, caps={k: caps[k] for k in table}, constructive=table)
    elif cfg.param in (CVD, DTS):
        finder = cluster_vertex_deletion if cfg.param == CVD else deletion_to_stars
        cert = resolve_cover(g, cover, cfg.param) if cover else finder(g)
        rep = bound_by_decomposition(g, cert.U, kind=cfg.param)
        print(f"classic ≤ {ceil_div(cert.t, 2) + 1}")
        print(f"constructive plan: {rep.bound} cops")
        record.update(t=cert.t, bound=rep.bound)
    elif cfg.param == "nd":
        w = nd_partition(g).w
        print(f"classic ≤ {w}")
        record.update(w=w)
    else:
        raise InvalidSpecError(f"no bound for parameter {cfg.param!r}")
    _emit(cfg, record)
    return OK


def cmd_generate(cfg: RunConfig) -> int:
    kind = cfg.extra["kind"]
    x = cfg.extra
    if kind == "hpqr":
        params = HpqrParams(x["p"], x["q"], x["r"], parts=x.get("parts", 2))
        g = gen_hpqr(params, cfg.seed)
        info = {"meets_threshold": params.meets_threshold, "threshold": params.threshold}
    elif kind in ("rbds-reduction", "oriented-reduction"):
        inst = RbdsInstance.random(x["terminals"], x["dominators"], x["density"], x["budget"], cfg.seed)
        aug = augment_rbds(inst)
        build = gen_rbds_reduction if kind == "rbds-reduction" else gen_oriented_reduction
        con = build(aug, x.get("ell"), x.get("q"), cfg.seed)
        g = con.graph
        info = {"below_threshold": con.below_threshold, "ell": con.ell, "q": con.params.q}
    elif kind == "twins":
        base = read_edgelist(cfg.graph)
        g = twin_augment(base, x["rounds"], cfg.seed)
        info = {}
    else:
        raise InvalidSpecError(f"unknown generator {kind!r}")
    if cfg.out:
        write_edgelist(g, cfg.out)
    print(f"generated n={g.n} m={g.m}" + "".join(f" {k}={v}" for k, v in info.items()))
    _emit(cfg, {"command": "generate", "kind": kind, "n": g.n, "m": g.m, **info})
    return OK


def cmd_simulate(cfg: RunConfig) -> int:
    g = read_edgelist(cfg.graph)
    spec = _spec(cfg, cfg.k or 1)
    region = solve(g, spec, cfg.state_cap)
    if not region.copwin:
        print("RobberWin: no cop strategy to simulate")
        return NO
    robbers = {
        "optimal": lambda: OptimalRobber(region),
        "greedy": GreedyRobber,
        "random": lambda: RandomRobber(cfg.seed),
    }
    trace = simulate(g, spec, extract_strategy(region), robbers[cfg.extra.get("robber", "optimal")]())
    text = trace.text()
    if cfg.trace:
        Path(cfg.trace).write_text(text)
    sys.stdout.write(text)
    _emit(cfg, {"command": "simulate", "captured": trace.captured, "rounds": trace.rounds})
    return OK if trace.captured else NO


def cmd_bench(cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.extra["corpus"])
    if not corpus:
        raise InvalidSpecError(f"no *.el files in {cfg.extra['corpus']}")
    rows = run_bench(corpus, cfg.k or 2, cfg.param, cfg.extra.get("lift", False), cfg.extra.get("repeat", 1))
    report = format_report(rows)
    if cfg.out:
        Path(cfg.out).write_text(report)
    sys.stdout.write(report)
    return OK


COMMANDS = {
    "solve": cmd_solve,
    "copnumber": cmd_copnumber,
    "kernelize": cmd_kernelize,
    "bound": cmd_bound,
    "generate": cmd_generate,
    "simulate": cmd_simulate,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cnr", description="Cop numbers, kernels and bounds.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph=True, k=True, variant=True):
        if graph:
            p.add_argument("--graph", type=Path, required=True, help="edge-list file")
        if k:
            p.add_argument("--k", type=int, help="number of cops")
        if variant:
            p.add_argument("--variant", default="classic",
                           help="classic, lazy, attacking, active, surround, fast or directed")
            p.add_argument("--speed", type=int, default=2, help="robber speed for --variant fast")
            p.add_argument("--spec", type=Path, help="variant config file (overrides --variant)")
        p.add_argument("--state-cap", type=int, help="solver state cap per layer")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true", help="also print a JSON record")

    p = sub.add_parser("solve", help="decide whether k cops win")
    common(p)
    p = sub.add_parser("copnumber", help="smallest winning number of cops")
    common(p, k=False)
    p.add_argument("--k-max", type=int)
    p = sub.add_parser("kernelize", help="reduce an instance")
    common(p)
    p.add_argument("--param", choices=["vc", "cvd", "dts", "nd", "directed", "general"], default="vc")
    p.add_argument("--cover", type=Path, help="deletion set / cover file")
    p.add_argument("--out", type=Path, help="reduced graph edge list")
    p.add_argument("--trace", type=Path, help="rule trace file")
    p.add_argument("--no-thresholds", action="store_true", help="skip the early-Yes rules")
    p = sub.add_parser("bound", help="upper bounds from a structural parameter")
    common(p, k=False, variant=False)
    p.add_argument("--param", choices=["vc", "cvd", "dts", "nd"], default="vc")
    p.add_argument("--cover", type=Path)
    p = sub.add_parser("generate", help="build a generated instance")
    p.add_argument("kind", choices=["hpqr", "rbds-reduction", "oriented-reduction", "twins"])
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--parts", type=int, default=2)
    p.add_argument("--terminals", type=int, default=2)
    p.add_argument("--dominators", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--budget", type=int, default=1)
    p.add_argument("--ell", type=int)
    p.add_argument("--rounds", type=int, default=5)
    p.add_argument("--graph", type=Path, help="base graph for twins")
    p.add_argument("--out", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("simulate", help="play the optimal cops against a robber policy")
    common(p)
    p.add_argument("--robber", choices=["optimal", "greedy", "random"], default="optimal")
    p.add_argument("--trace", type=Path)
    p = sub.add_parser("bench", help="direct solve versus kernel pipeline")
    p.add_argument("--corpus", type=Path, required=True, help="directory of *.el files")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--param", choices=["vc", "cvd", "dts", "nd"], default="vc")
    p.add_argument("--lift", action="store_true", help="also lift and verify strategies")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--out", type=Path)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns).copy()
    known = {f for f in RunConfig.__dataclass_fields__ if f not in ("command", "as_json", "extra")}
    cfg_kw = {k: d.pop(k) for k in list(d) if k in known}
    command = d.pop("command")
    as_json = d.pop("json", False)
    if command == "generate":
        d["kind"] = d.pop("kind")
        if d.get("q") is None and d["kind"] == "hpqr":
            raise InvalidSpecError("--q is required for hpqr")
    if command == "bench":
        d["corpus"] = d.pop("corpus")
    extra = {k: v for k, v in d.items() if v is not None}
    if "no_thresholds" in extra:
        extra["no_thresholds"] = bool(extra["no_thresholds"])
    return RunConfig(command=command, as_json=as_json, extra=extra, **cfg_kw)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (MalformedInputError, MalformedStateError, InvalidCertificateError,
            DisconnectedGraphError, FileNotFoundError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return MALFORMED
    except (InvalidSpecError, InfeasibleConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except DisagreementError as exc:
        print(f"disagreement: {exc}", file=sys.stderr)
        return NO


if __name__ == "__main__":
    sys.exit(main())
