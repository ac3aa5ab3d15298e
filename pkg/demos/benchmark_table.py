"""Build and print the PDE benchmark accuracy table.

Each cell trains one model variant on one equation family: the branch and
trunk sizes are picked on a validation split, then held-out in-distribution
and out-of-distribution inputs are scored with relative L2 error. Errors
are pooled across seeds and reported as mean(margin of error).

The default run is one seed on the beam family, which finishes in well
under a minute. The full table is:

    python3 demos/benchmark_table.py --families wave,burgers,beam \
        --variants rbon,nrbon,frbon --seeds 0,1,2,3,4

which repeats every cell five times and takes several minutes.
"""

import argparse

from rbon.harness import FAMILIES, run_benchmark_table
from rbon.model import VARIANTS
from rbon.reporting import benchmark_table_text


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--families", default="beam",
                        help="comma-separated subset of " + ",".join(FAMILIES))
    parser.add_argument("--variants", default="rbon,nrbon,frbon",
                        help="comma-separated subset of " + ",".join(VARIANTS))
    parser.add_argument("--seeds", default="0",
                        help="comma-separated seed list, e.g. 0,1,2,3,4")
    parser.add_argument("--fine-step", action="store_true",
                        help="use the fine wave parameter step (3001 functions)")
    args = parser.parse_args()

    families = tuple(args.families.split(","))
    variants = tuple(args.variants.split(","))
    seeds = tuple(int(s) for s in args.seeds.split(","))

    print(f"families={families} variants={variants} seeds={seeds}")
    print("training (each cell selects its size on a validation split) ...")
    rows = run_benchmark_table(families, variants, seeds, fine_step=args.fine_step)
    print()
    print(benchmark_table_text(rows))
    print()
    for row in rows:
        print(
            f"{row.family}/{row.variant}: picked sizes "
            + ", ".join(f"{c.branch_units}x{c.trunk_units}" for c in row.cells)
            + f"; {row.runtime_seconds:.1f}s"
        )


if __name__ == "__main__":
    main()
