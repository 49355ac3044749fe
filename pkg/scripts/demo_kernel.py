"""Walk one instance through kernelization, solving and strategy lifting."""
import argparse

from cnrkernel.game import OptimalRobber, extract_strategy, simulate, solve, verify_policy
from cnrkernel.generators import twin_augment
from cnrkernel.graph import cycle_graph
from cnrkernel.kernels import kernelize, lift_strategy
from cnrkernel.params import vertex_cover
from cnrkernel.variants import VariantSpec


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rounds", type=int, default=12, help="false twins to add to C6")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    base = cycle_graph(6)
    cover = vertex_cover(base).U
    pool = [v for v in range(base.n) if v not in cover]
    g = twin_augment(base, args.rounds, seed=args.seed, kind="false", pool=pool)
    spec = VariantSpec.classic(2)
    print(f"input: n={g.n} m={g.m}, cover {sorted(cover)}")

    res = kernelize("vc", g, 2, cover, use_thresholds=False)
    print(f"kernel: n={res.reduced.n}, {len(res.deleted)} vertices deleted")
    for line in res.trace_lines():
        print("  " + line)

    region = solve(res.reduced, spec)
    print(f"kernel verdict {region.verdict}, capture within {region.placement_rank} rounds")
    lifted = lift_strategy(res, extract_strategy(region))
    check = verify_policy(g, spec, lifted)
    print(f"lifted policy wins on the input graph: {check.ok} (worst case {check.worst_rounds} rounds)")
    trace = simulate(g, spec, lifted, OptimalRobber(solve(g, spec)))
    print(f"against the optimal robber: captured={trace.captured} after {trace.rounds} rounds")
    print(trace.text(), end="")


if __name__ == "__main__":
    main()
