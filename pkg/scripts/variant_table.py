"""Exact variant cop numbers next to the cover-based upper bounds."""
import argparse

from cnrkernel.bounds import variant_bound_table
from cnrkernel.corpus import connected_graphs
from cnrkernel.game import cop_number
from cnrkernel.variants import VariantSpec

NAMES = ("classic", "lazy", "attacking", "active", "surround", "fast")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5, help="vertex count of the exhaustive corpus")
    args = ap.parse_args(argv)
    print("graph\tt\t" + "\t".join(NAMES))
    tight = {name: 0 for name in NAMES}
    graphs = connected_graphs(args.n)
    for i, g in enumerate(graphs):
        table, plans = variant_bound_table(g)
        cells = []
        for name in NAMES:
            c = cop_number(g, VariantSpec.by_name(name, 1, 2), use_bounds=False)
            tight[name] += c == table[name]
            cells.append(f"{c}/{table[name]}")
        print(f"g{i:03d}\t{plans['classic'].t}\t" + "\t".join(cells))
    print("tight\t\t" + "\t".join(f"{tight[n]}/{len(graphs)}" for n in NAMES))


if __name__ == "__main__":
    main()
