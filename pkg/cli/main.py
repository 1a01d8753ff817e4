"""
qchu-kit command line: model-checks Chu spaces, state spaces and dictionaries.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error,
3 only REPORT-mode discrepancies.
"""
import argparse
import logging
import sys
from pathlib import Path

# Add parent directory to path to import from src
sys.path.append(str(Path(__file__).parent.parent))

from config.config import LOG_LEVEL
from src.generators import FixtureSpec
from src.model_checker import ModelChecker, Report

logger = logging.getLogger(__name__)

FAMILIES = ["boolean", "mo", "chain", "n5", "product", "from_lattice", "random_chu"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qchu", description="Finite-model checks for possibilistic Chu spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-domain", help="projective-domain axiom bundle")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--exhaustive", action="store_true", help="definitional forms of the finite-trivial axioms")

    p = sub.add_parser("quotient", help="saturate and quotient a chu3 space")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("properties", help="per scheme pair: A, Q, K and flags")
    p.add_argument("file", nargs="?", default="-")

    p = sub.add_parser("measure", help="apply the measurement of a property to a state")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--sigma", required=True)
    p.add_argument("--state", required=True)

    p = sub.add_parser("specker", help="compatibility sweep (REPORT channel)")
    p.add_argument("file", nargs="?", default="-")

    p = sub.add_parser("ortho", help="scheme validation and star laws")
    p.add_argument("file", nargs="?", default="-")

    p = sub.add_parser("hilbert", help="closed-set lattice and Kripke-frame checks")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--dot", default=None, help="write the Hasse diagram of closed sets as DOT")

    p = sub.add_parser("symmetry", help="dictionary morphism, symmetry and preservation checks")
    p.add_argument("file", nargs="?", default="-")

    p = sub.add_parser("generate", help="write a fixture")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default="-")
    return parser


def run(args: argparse.Namespace) -> Report:
    checker = ModelChecker()
    if args.command == "check-domain":
        return checker.check_domain(args.file, exhaustive=args.exhaustive)
    if args.command == "quotient":
        return checker.quotient(args.file, args.output)
    if args.command == "properties":
        return checker.properties(args.file)
    if args.command == "measure":
        return checker.measure(args.file, args.sigma, args.state)
    if args.command == "specker":
        return checker.specker(args.file)
    if args.command == "ortho":
        return checker.ortho(args.file)
    if args.command == "hilbert":
        return checker.hilbert(args.file, args.dot)
    if args.command == "symmetry":
        return checker.symmetry(args.file)
    params = {k: v for k, v in (("n", args.n), ("m", args.m), ("seed", args.seed)) if v is not None}
    return checker.generate(FixtureSpec(family=args.family, params=params), args.output)


def main(argv=None) -> int:
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    report = run(args)
    # documents written to stdout must stay parseable
    writes_stdout = args.command in ("quotient", "generate") and args.output == "-"
    stream = sys.stderr if writes_stdout else sys.stdout
    stream.write(report.render())
    if report.exit_code == 2:
        logger.error(f"Input error: {report.error}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
