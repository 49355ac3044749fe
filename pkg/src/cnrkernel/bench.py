"""Direct solving versus kernelize-then-solve, instance by instance."""
from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import CnRError
from .game import extract_strategy, solve, verify_policy
from .generators import twin_augment
from .graph import Graph, cycle_graph
from .io import read_edgelist, write_edgelist
from .kernels import kernelize, lift_strategy
from .params import vertex_cover
from .variants import VariantSpec


class DisagreementError(CnRError):
    """Kernel pipeline and direct solve gave different answers."""


@dataclass
class BenchRow:
    name: str
    n: int
    kernel_n: int
    k: int
    answer: bool
    direct_s: float
    kernel_s: float
    decided_by: str

    @property
    def shrunk_half(self) -> bool:
        return 2 * self.kernel_n <= self.n

    @property
    def speedup(self) -> float:
        return self.direct_s / self.kernel_s if self.kernel_s > 0 else float("inf")


def _best_of(fn, repeat: int):
    best, out = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def bench_instance(
    name: str, g: Graph, k: int, param: str = "vc", lift: bool = False, repeat: int = 1
) -> BenchRow:
    spec = VariantSpec.classic(k)
    direct, t_direct = _best_of(lambda: solve(g, spec).copwin, repeat)

    def pipeline():
        res = kernelize(param, g, k)
        if res.verdict is not None:
            return res, res.verdict == "Yes"
        region = solve(res.reduced, spec)
        if lift and region.copwin and res.changed:
            lifted = lift_strategy(res, extract_strategy(region))
            if not verify_policy(g, spec, lifted).ok:
                raise DisagreementError(f"{name}: lifted strategy fails on the input graph")
        return res, region.copwin

    (res, answer), t_kernel = _best_of(pipeline, repeat)
    if answer != direct:
        raise DisagreementError(f"{name}: direct={direct} kernel={answer}")
    return BenchRow(
        name, g.n, res.reduced.n, k, answer, t_direct, t_kernel,
        res.stats.get("decided_by", "reduced"),
    )


def load_corpus(directory) -> list[tuple[str, Graph]]:
    paths = sorted(Path(directory).glob("*.el"))
    return [(p.stem, read_edgelist(p)) for p in paths]


def run_bench(corpus, k: int = 2, param: str = "vc", lift: bool = False, repeat: int = 1) -> list[BenchRow]:
    """Rows ordered by instance name.  Any disagreement aborts the run."""
    if not corpus:
        raise ValueError("empty corpus")
    return [bench_instance(name, g, k, param, lift, repeat) for name, g in sorted(corpus, key=lambda x: x[0])]


def format_report(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    fields = list(BenchRow.__dataclass_fields__) + ["speedup"]
    w = csv.DictWriter(buf, fieldnames=fields, delimiter="\t", lineterminator="\n")
    w.writeheader()
    for row in rows:
        rec = asdict(row)
        rec["direct_s"] = f"{row.direct_s:.6f}"
        rec["kernel_s"] = f"{row.kernel_s:.6f}"
        rec["speedup"] = f"{row.speedup:.2f}"
        w.writerow(rec)
    return buf.getvalue()


# -- corpora ------------------------------------------------------------------------------


def twin_heavy_corpus(
    count: int = 12, seed: int = 0, base_n: int = 8, rounds: int = 40, min_cover: int = 4
) -> list[tuple[str, Graph]]:
    """Small random bases blown up by false twins of vertices outside a cover.

    Bases need a cover of at least ``min_cover`` vertices so that two cops
    are below every threshold rule and the kernel really has to be solved.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        edges = [(u, v) for u in range(base_n) for v in range(u + 1, base_n) if rng.random() < 0.5]
        base = Graph(base_n, edges)
        if not base.is_connected:
            continue
        cover = vertex_cover(base).U
        if len(cover) < min_cover:
            continue
        pool = [v for v in range(base_n) if v not in cover]
        if not pool:
            continue
        g = twin_augment(base, rounds, seed=rng.randrange(1 << 30), kind="false", pool=pool)
        out.append((f"twins{len(out):03d}", g))
    return out


def cycle_corpus(sizes=range(5, 13)) -> list[tuple[str, Graph]]:
    return [(f"cycle{n:03d}", cycle_graph(n)) for n in sizes]


def write_corpus(corpus, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, g in corpus:
        write_edgelist(g, directory / f"{name}.el")
