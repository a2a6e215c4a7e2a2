"""Command line front end: run one algorithm on a curve pair, or sweep sizes.

Exit status 0 on success, 2 on invalid input, 3 when an internal
consistency check fails.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .curve_classes import ApproxParams, appr_f_backbone, approx_dfd_kbounded, approx_fd_continuous
from .curveio import read_curves
from .errors import ContractViolation, GenerationError
from .freespace import dfd_binary_search
from .fuzzy_search import SearchTrace
from .generators import generate_backbone_pair, generate_kbounded, generate_lattice_sigma, lattice_center
from .geometry import Norm, pairwise
from .oracle import dfd_dp
from .output_sensitive import compute_switching_cells, dfd_output_sensitive
from .stats import ProbeStats

ALGORITHMS = ("dp", "binsearch", "output-sensitive", "kbounded", "backbone", "continuous")
APPROXIMATE = ("kbounded", "backbone", "continuous")
DEFAULT_SIZES = {"backbone": "64,128,256,512", "kbounded": "64,128,256,512",
                 "lattice": "27,216,1000,4096,13824"}


@dataclass
class RunReport:
    algorithm: str
    value: float
    eps: float | None
    probes: int
    white_cells: int
    switching_cells: int
    wall_time: float
    n: int
    m: int

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @staticmethod
    def tsv_header() -> str:
        return "\t".join(f.name for f in dataclasses.fields(RunReport))

    def to_tsv(self) -> str:
        return "\t".join(_fmt(getattr(self, f.name)) for f in dataclasses.fields(self))


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(x) if isinstance(x, float) else str(x)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dfrechet", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--algo", choices=ALGORITHMS, default="dp")
    p.add_argument("--norm", choices=[n.value for n in Norm], default="l2")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--kappa", type=float, default=2.0)
    p.add_argument("--c1", type=float, default=0.5)
    p.add_argument("--c2", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=0.5)
    src = p.add_argument_group("input (file or generator)")
    src.add_argument("--input", help="curve file (.csv or .json)")
    src.add_argument("--curve-a", help="name of the first curve (default: first in file)")
    src.add_argument("--curve-b", help="name of the second curve (default: second in file)")
    src.add_argument("--generate", choices=("backbone", "kbounded", "lattice"))
    src.add_argument("--n", type=int, default=100)
    src.add_argument("--m", type=int, default=None, help="length of the second curve (default n)")
    src.add_argument("--dim", type=int, default=2)
    src.add_argument("--seed", type=int, default=0)
    p.add_argument("--dfd-algo", choices=("dp", "binsearch", "output-sensitive"), default="dp",
                   help="exact DFD routine used by --algo continuous")
    p.add_argument("--report", choices=("json", "tsv"), default="json")
    p.add_argument("--bench", action="store_true",
                   help="sweep --sizes with the chosen generator and print TSV")
    p.add_argument("--sizes", help="comma-separated sizes for --bench")
    return p


def load_pair(args) -> tuple[np.ndarray, np.ndarray]:
    if args.input and args.generate:
        raise ValueError("give either --input or --generate, not both")
    if args.input:
        curves = read_curves(args.input)
        names = list(curves)
        name_a = args.curve_a or names[0]
        if args.curve_b:
            name_b = args.curve_b
        elif len(names) > 1:
            name_b = names[1]
        else:
            raise ValueError("the file holds one curve; a second is needed")
        for name in (name_a, name_b):
            if name not in curves:
                raise ValueError(f"no curve named {name!r} in {args.input}")
        return curves[name_a], curves[name_b]
    if args.generate:
        return generate_pair(args.generate, args.n, args.m or args.n, args)
    raise ValueError("no input: use --input FILE or --generate KIND")


def generate_pair(kind: str, n: int, m: int, args) -> tuple[np.ndarray, np.ndarray]:
    if kind == "backbone":
        # a close pair: independent chains drift apart and make the search long
        return generate_backbone_pair(n, m, args.c1, args.c2, args.seed, dim=args.dim)
    if kind == "kbounded":
        return (generate_kbounded(n, args.kappa, args.seed, args.dim),
                generate_kbounded(m, args.kappa, args.seed + 1, args.dim))
    sigma, _ = generate_lattice_sigma(n)
    return lattice_center(n), sigma


def run_algorithm(algo: str, a, b, args) -> RunReport:
    norm = Norm.parse(args.norm)
    stats = ProbeStats()
    trace = SearchTrace()
    eps = args.eps if algo in APPROXIMATE else None
    t0 = time.perf_counter()
    switching = 0
    if algo == "dp":
        value = dfd_dp(a, b, norm, witness=False).value
    elif algo == "binsearch":
        value = dfd_binary_search(a, b, norm)
    elif algo == "output-sensitive":
        value, switching = dfd_output_sensitive(a, b, norm, stats)
    elif algo == "kbounded":
        params = ApproxParams(args.eps, args.kappa, args.c1, args.c2, args.beta)
        value = approx_dfd_kbounded(a, b, params, norm, trace, stats)
    elif algo == "backbone":
        value = appr_f_backbone(a, b, args.eps, norm, args.c1, args.c2, args.beta, trace, stats)
    else:
        value = approx_fd_continuous(a, b, args.eps, norm, args.dfd_algo)
    wall = time.perf_counter() - t0
    if algo in ("dp", "binsearch"):
        white = int(np.count_nonzero(pairwise(a, b, norm) <= value))
    else:
        white = stats.max_white
    return RunReport(algo, float(value), eps, max(stats.probes, len(trace.probes)), white,
                     int(switching), wall, int(a.shape[0]), int(b.shape[0]))


def cli_run(args) -> RunReport:
    a, b = load_pair(args)
    return run_algorithm(args.algo, a, b, args)


def _sizes(args) -> list[int]:
    text = args.sizes or DEFAULT_SIZES[args.generate]
    try:
        sizes = sorted({int(s) for s in text.split(",") if s.strip()})
    except ValueError:
        raise ValueError(f"--sizes must be comma-separated integers, got {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise ValueError("--sizes must be positive")
    return sizes


def run_bench(args, out) -> None:
    if not args.generate:
        raise ValueError("--bench needs --generate")
    sizes = _sizes(args)
    if args.generate == "lattice":
        # one threshold, one column: the free-space counts are the point here
        print("n\twhite_cells\tswitching_cells", file=out)
        for n in sizes:
            sigma, delta = generate_lattice_sigma(n)
            s = compute_switching_cells(lattice_center(n), sigma, delta, args.norm)
            print(f"{n}\t{s.white_count}\t{s.total_count}", file=out)
        return
    print(RunReport.tsv_header(), file=out)
    for n in sizes:
        a, b = generate_pair(args.generate, n, n, args)
        print(run_algorithm(args.algo, a, b, args).to_tsv(), file=out)


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.bench:
            run_bench(args, out)
            return 0
        report = cli_run(args)
    except ContractViolation as exc:
        print(f"dfrechet: internal check failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, GenerationError, OSError) as exc:
        print(f"dfrechet: {exc}", file=sys.stderr)
        return 2
    if args.report == "json":
        print(report.to_json(), file=out)
    else:
        print(RunReport.tsv_header(), file=out)
        print(report.to_tsv(), file=out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
