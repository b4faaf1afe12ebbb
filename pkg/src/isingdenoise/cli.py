"""Command-line front end: corrupt, denoise, evaluate, experiment.

Every command is deterministic for a fixed flag set. Runtime failures
(missing files, malformed images) exit 1 with a message on stderr; flag
errors exit 2 via argparse.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from dataclasses import dataclass
from pathlib import Path

from .metrics import agreement_percent, disagreement_count
from .model import EnergyParams
from .noise import NoiseSpec, corrupt
from .optimizers import (
    DEFAULT_TEMPERATURE_SCALE,
    AnnealConfig,
    IcmConfig,
    denoise_icm,
    denoise_sa,
)
from .oracle import DEFAULT_MAX_PIXELS, exhaustive_minimize
from .pbm import (
    load_pbm,
    load_pbm_file,
    pbm_format,
    run_summary,
    save_pbm,
    save_pbm_file,
    write_summary_json,
    write_trace_csv,
)
from .testimage import generate_test_image

# Defaults for the end-to-end experiment; chosen for +/-1 images with
# roughly 10% flip noise.
DEFAULT_PROB = 0.1
DEFAULT_H = 0.0
DEFAULT_BETA = 1e-4
DEFAULT_ETA = 2.1e-4
DEFAULT_K_MAX = 30


@dataclass
class ExperimentConfig:
    """Everything the end-to-end experiment run needs."""

    output_dir: Path
    input_path: Path | None = None
    generate: tuple[int, int] | None = None
    flip_probability: float = DEFAULT_PROB
    h: float = DEFAULT_H
    beta: float = DEFAULT_BETA
    eta: float = DEFAULT_ETA
    k_max: int = DEFAULT_K_MAX
    noise_seed: int = 0
    sa_seed: int = 0
    temperature_scale: float = DEFAULT_TEMPERATURE_SCALE
    replicas: int = 1

    def __post_init__(self):
        if (self.input_path is None) == (self.generate is None):
            raise ValueError("exactly one of input_path and generate is required")
        if self.replicas < 1:
            raise ValueError(f"replicas must be at least 1, got {self.replicas}")


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Corrupt, denoise with both methods, write artifacts, return the summary.

    Replica r uses noise seed noise_seed + r and annealing seed sa_seed + r;
    replicas run in seed order and the first one's images and traces are
    written to the output directory alongside summary.json.
    """
    if cfg.input_path is not None:
        original = load_pbm_file(cfg.input_path)
        source = str(cfg.input_path)
    else:
        w, h = cfg.generate
        original = generate_test_image(w, h)
        source = f"generated {w}x{h}"
    params = EnergyParams(h=cfg.h, beta=cfg.beta, eta=cfg.eta)

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    replicas = []
    for r in range(cfg.replicas):
        noise_seed = cfg.noise_seed + r
        sa_seed = cfg.sa_seed + r
        noisy = corrupt(original, NoiseSpec(cfg.flip_probability, noise_seed))
        icm_report = denoise_icm(noisy, params, IcmConfig(cfg.k_max))
        sa_report = denoise_sa(
            noisy, params,
            AnnealConfig(k_max=cfg.k_max, seed=sa_seed,
                         temperature_scale=cfg.temperature_scale),
        )
        replicas.append({
            "replica": r,
            "noise_seed": noise_seed,
            "sa_seed": sa_seed,
            "flipped_pixels": disagreement_count(original, noisy),
            "icm": run_summary("icm", params, cfg.k_max, None,
                               icm_report, noisy, original),
            "sa": run_summary("sa", params, cfg.k_max, sa_seed,
                              sa_report, noisy, original),
        })
        if r == 0:
            save_pbm_file(original, out / "original.pbm", "P4")
            save_pbm_file(noisy, out / "noisy.pbm", "P4")
            save_pbm_file(icm_report.restored, out / "icm.pbm", "P4")
            save_pbm_file(sa_report.restored, out / "sa.pbm", "P4")
            (out / "icm_trace.csv").write_bytes(write_trace_csv(icm_report.trace))
            (out / "sa_trace.csv").write_bytes(write_trace_csv(sa_report.trace))

    summary = {
        "image": {"width": original.width, "height": original.height,
                  "source": source},
        "params": {"h": cfg.h, "beta": cfg.beta, "eta": cfg.eta},
        "k_max": cfg.k_max,
        "noise": {"flip_probability": cfg.flip_probability,
                  "seed": cfg.noise_seed},
        "temperature_scale": cfg.temperature_scale,
        "replicas": replicas,
        "aggregate": {
            "replica_count": cfg.replicas,
            "icm_agreement_median": statistics.median(
                rep["icm"]["agreement_vs_original_percent"] for rep in replicas
            ),
            "sa_agreement_median": statistics.median(
                rep["sa"]["agreement_vs_original_percent"] for rep in replicas
            ),
        },
    }
    (out / "summary.json").write_bytes(write_summary_json(summary))
    return summary


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must be in [0, 1], got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _dimensions(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        w, h = int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}")
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError(f"dimensions must be positive, got {text!r}")
    return w, h


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h", type=float, default=DEFAULT_H,
                   help="bias coefficient (default %(default)s)")
    p.add_argument("--beta", type=float, default=DEFAULT_BETA,
                   help="pair-coupling coefficient (default %(default)s)")
    p.add_argument("--eta", type=float, default=DEFAULT_ETA,
                   help="data-fidelity coefficient (default %(default)s)")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_corrupt(args) -> int:
    data = Path(args.in_path).read_bytes()
    fmt = pbm_format(data)
    image = load_pbm(data)
    noisy = corrupt(image, NoiseSpec(args.prob, args.seed))
    flips = disagreement_count(image, noisy)
    Path(args.out_path).write_bytes(save_pbm(noisy, fmt))
    print(f"flipped {flips} of {image.size} pixels ({100.0 * flips / image.size:.4f}%)")
    return 0


def cmd_denoise(args) -> int:
    data = Path(args.in_path).read_bytes()
    fmt = pbm_format(data)
    noisy = load_pbm(data)
    params = EnergyParams(h=args.h, beta=args.beta, eta=args.eta)
    if args.method == "icm":
        report = denoise_icm(noisy, params, IcmConfig(args.kmax))
        seed = None
    else:
        report = denoise_sa(
            noisy, params,
            AnnealConfig(k_max=args.kmax, seed=args.seed,
                         temperature_scale=args.scale,
                         track_best=args.track_best),
        )
        seed = args.seed
    out_path = Path(args.out_path)
    out_path.write_bytes(save_pbm(report.restored, fmt))
    if args.trace is not None:
        Path(args.trace).write_bytes(write_trace_csv(report.trace))
    reference = None
    if args.reference is not None:
        reference = load_pbm_file(args.reference)
    summary = run_summary(args.method, params, args.kmax, seed,
                          report, noisy, reference)
    summary_path = (Path(args.summary) if args.summary is not None
                    else out_path.with_suffix(".summary.json"))
    summary_path.write_bytes(write_summary_json(summary))
    print(f"{args.method}: final_energy={report.final_energy!r} "
          f"best_energy={report.best_energy!r} sweeps={report.sweeps_run} "
          f"flips={report.flips_accepted}")
    return 0


def cmd_evaluate(args) -> int:
    a = load_pbm_file(args.a)
    b = load_pbm_file(args.b)
    differ = disagreement_count(a, b)
    print(f"agreement {agreement_percent(a, b):.6f}% "
          f"({differ} of {a.size} pixels differ)")
    return 0


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        output_dir=Path(args.out_dir),
        input_path=None if args.in_path is None else Path(args.in_path),
        generate=args.generate,
        flip_probability=args.prob,
        h=args.h, beta=args.beta, eta=args.eta,
        k_max=args.kmax,
        noise_seed=args.noise_seed,
        sa_seed=args.sa_seed,
        temperature_scale=args.scale,
        replicas=args.replicas,
    )
    summary = run_experiment(cfg)
    for rep in summary["replicas"]:
        print(f"replica {rep['replica']}: "
              f"icm={rep['icm']['agreement_vs_original_percent']:.4f}% "
              f"sa={rep['sa']['agreement_vs_original_percent']:.4f}%")
    agg = summary["aggregate"]
    print(f"median agreement vs original: icm={agg['icm_agreement_median']:.4f}% "
          f"sa={agg['sa_agreement_median']:.4f}%")
    return 0


def cmd_oracle(args) -> int:
    y = load_pbm_file(args.in_path)
    params = EnergyParams(h=args.h, beta=args.beta, eta=args.eta)
    result = exhaustive_minimize(y, params, max_pixels=args.max_pixels,
                                 mode=args.mode)
    print(f"global minimum energy {result.global_min_energy!r} "
          f"({len(result.argmin_images)} minimizer(s), "
          f"{result.states_enumerated} states enumerated)")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingdenoise",
        description="Binary (PBM) image denoising by spin-grid energy "
                    "minimization: greedy (icm) or annealed (sa).",
    )
    sub = parser.add_subparsers(
        dest="command", required=True,
        metavar="{corrupt,denoise,evaluate,experiment}",
    )

    p = sub.add_parser("corrupt", help="flip pixels of a PBM at random")
    p.add_argument("--in", dest="in_path", required=True, metavar="PBM",
                   help="input image (P1 or P4)")
    p.add_argument("--out", dest="out_path", required=True, metavar="PBM",
                   help="output image, written in the input's format")
    p.add_argument("--prob", type=_probability, default=DEFAULT_PROB,
                   help="per-pixel flip probability (default %(default)s)")
    p.add_argument("--seed", type=_seed, default=0,
                   help="noise seed (default %(default)s)")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("denoise", help="restore a noisy PBM")
    p.add_argument("--method", required=True, choices=("icm", "sa"),
                   help="greedy (icm) or annealed (sa) minimization")
    p.add_argument("--in", dest="in_path", required=True, metavar="PBM",
                   help="noisy input image")
    p.add_argument("--out", dest="out_path", required=True, metavar="PBM",
                   help="restored image, written in the input's format")
    p.add_argument("--reference", metavar="PBM",
                   help="clean original; enables agreement-vs-original in "
                        "the summary")
    p.add_argument("--trace", metavar="CSV",
                   help="also write the per-sweep energy trace here")
    p.add_argument("--summary", metavar="JSON",
                   help="summary path (default: output path with a "
                        ".summary.json suffix)")
    _add_param_flags(p)
    p.add_argument("--kmax", type=int, default=DEFAULT_K_MAX,
                   help="sweep budget (default %(default)s)")
    p.add_argument("--seed", type=_seed, default=0,
                   help="annealing seed, ignored by icm (default %(default)s)")
    p.add_argument("--scale", type=float, default=DEFAULT_TEMPERATURE_SCALE,
                   help="temperature scale (default 1/500)")
    p.add_argument("--track-best", action="store_true",
                   help="return the best-energy state seen instead of the "
                        "final state (sa only)")
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("evaluate", help="pixel agreement between two PBMs")
    p.add_argument("--a", required=True, metavar="PBM")
    p.add_argument("--b", required=True, metavar="PBM")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser(
        "experiment",
        help="end-to-end run: corrupt, denoise with both methods, compare",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="in_path", metavar="PBM",
                     help="clean input image")
    src.add_argument("--generate", type=_dimensions, metavar="WxH",
                     help="synthesize the bundled glyph test image instead")
    p.add_argument("--out", dest="out_dir", required=True, metavar="DIR",
                   help="output directory for images, traces and summary.json")
    p.add_argument("--prob", type=_probability, default=DEFAULT_PROB,
                   help="per-pixel flip probability (default %(default)s)")
    _add_param_flags(p)
    p.add_argument("--kmax", type=int, default=DEFAULT_K_MAX,
                   help="sweep budget (default %(default)s)")
    p.add_argument("--noise-seed", type=_seed, default=0,
                   help="noise seed of replica 0 (default %(default)s)")
    p.add_argument("--sa-seed", type=_seed, default=0,
                   help="annealing seed of replica 0 (default %(default)s)")
    p.add_argument("--scale", type=float, default=DEFAULT_TEMPERATURE_SCALE,
                   help="temperature scale (default 1/500)")
    p.add_argument("--replicas", type=int, default=1,
                   help="independent (noise seed, sa seed) replicas "
                        "(default %(default)s)")
    p.set_defaults(func=cmd_experiment)

    # debugging helper, deliberately absent from the visible command list
    p = sub.add_parser("oracle")
    p.add_argument("--in", dest="in_path", required=True, metavar="PBM")
    _add_param_flags(p)
    p.add_argument("--max-pixels", type=int, default=DEFAULT_MAX_PIXELS)
    p.add_argument("--mode", choices=("gray", "naive"), default="gray")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
