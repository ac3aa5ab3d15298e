"""Train one wave-equation operator end to end, then save and reload it.

The model learns the map from an initial displacement profile, sampled at
128 sensor positions, to the full space-time solution of the wave equation
on a 64 x 64 query grid. Training is deterministic: k-means places the
radial basis centers, a direct least-squares solve sets the output weights,
and no gradient descent is involved.

The script prints held-out errors inside and outside the training range of
the input family, writes the model to disk, and checks that the reloaded
model reproduces its predictions bit for bit.
"""

import argparse
import tempfile
from pathlib import Path

import numpy as np

from rbon.benchmarks import build_benchmark_bundle
from rbon.harness import FAMILY_OVERLAPS, desk_config, per_function_errors
from rbon.metrics import mean_and_moe
from rbon.model import ModelConfig, load_model, predict_matrix, save_model, train
from rbon.reporting import format_mean_moe


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--branch-units", type=int, default=10)
    parser.add_argument("--trunk-units", type=int, default=10)
    parser.add_argument("--out", default=None, help="model file path (default: temp dir)")
    args = parser.parse_args()

    config = desk_config("wave")
    print("building the wave dataset (301 training-range functions) ...")
    bundle = build_benchmark_bundle(config, args.seed)
    print(
        f"splits: train={bundle.train.inputs.shape[0]} "
        f"validation={bundle.validation.inputs.shape[0]} "
        f"id_test={bundle.id_test.inputs.shape[0]} "
        f"ood_test={bundle.ood_test.inputs.shape[0]}"
    )

    branch_overlap, trunk_overlap = FAMILY_OVERLAPS["wave"]
    model_config = ModelConfig(
        variant="rbon",
        branch_units=args.branch_units,
        trunk_units=args.trunk_units,
        branch_overlap=branch_overlap,
        trunk_overlap=trunk_overlap,
        seed=args.seed,
    )
    print(f"training a {args.branch_units}x{args.trunk_units} rbon ...")
    model = train(bundle.train, model_config)
    print(f"training residual (relative, on the solved system): {model.training_residual:.3e}")

    for label, split in (("in-distribution", bundle.id_test), ("out-of-distribution", bundle.ood_test)):
        summary = mean_and_moe(per_function_errors(model, split))
        print(f"{label} relative L2 error: {format_mean_moe(summary)}")

    out = Path(args.out) if args.out else Path(tempfile.mkdtemp()) / "wave_rbon.npz"
    save_model(model, out)
    loaded = load_model(out)
    before = predict_matrix(model, bundle.id_test.inputs, bundle.id_test.queries)
    after = predict_matrix(loaded, bundle.id_test.inputs, bundle.id_test.queries)
    print(f"saved to {out} ({out.stat().st_size} bytes)")
    print(f"reloaded predictions bit-identical: {bool(np.array_equal(before, after))}")


if __name__ == "__main__":
    main()
