"""
Hecke Engine - exact Hecke algebras of augmented algebra pairs

Computes Hk^*(A, B) for finite-dimensional algebras over Q together with
Tor/Ext, the direct degree-0 model, BRST cohomology of Lie actions and the
Dirac reduction of modules, all in exact rational arithmetic.

Version: 1.0.0
"""

import argparse
import sys
from pathlib import Path

# Add src directory to Python path for imports
srcPath = Path(__file__).parent
if str(srcPath) not in sys.path:
    sys.path.insert(0, str(srcPath))

# Import after path setup
from config.settings import settings  # noqa: E402
from utils.exceptions import HeckeEngineError  # noqa: E402
from utils.logger import Logger, logger  # noqa: E402

COMMAND_HELP = {
    "hecke": "Hecke algebra Hk^*(A,B): dims, product table, stability flags",
    "hk0": "degree-0 Hecke algebra against Hom_B(K, A (x)_B K)",
    "ext": "Ext_B(K, V) for a module, or the self-Ext of A (x)_B K",
    "tor": "dims of Tor^B(A, K)",
    "free-cert": "certify A as a free right B-module on a candidate basis",
    "thm3": "compare the two bar-model constructions literally",
    "reduce": "check that Hk^0 operators on V^B are observable operators",
    "act": "matrices of the Hecke action on H^*(V) or H_*(W)",
    "observables": "observable subalgebra and its operators on V^B",
    "brst": "BRST element, cohomology and the identification with End_A",
    "structure": "Hecke, self-Ext and Ext_B(K, A (x)_B K) dims side by side",
    "validate": "check that a resolution file resolves K over B",
    "transport": "compare Hecke algebras from two resolutions along comparison maps",
}

COMMAND_ALIASES = {"thm3": ["bar-models"]}


def canonicalCommand(name: str) -> str:
    """The command an alias stands for."""
    for command, aliases in COMMAND_ALIASES.items():
        if name in aliases:
            return command
    return name


def buildParser() -> argparse.ArgumentParser:
    """Build the command-line parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, type=Path, help="JSON problem document")
    common.add_argument("--output", type=Path, help="also write the report to this file (.json, .csv or text)")
    common.add_argument("--format", default=None, help="text or json (default from settings)")
    common.add_argument("-L", "--truncation", type=int, default=None, help="truncation window L")
    common.add_argument("--max-degree", type=int, default=None, help="highest degree reported")
    common.add_argument("--min-degree", type=int, default=0, help="lowest degree reported (hecke, structure, transport)")
    common.add_argument("--stability-passes", type=int, default=None, help="windows compared for stability")
    common.add_argument("--resolution", default="bar", help="bar, ce or file:<path>")
    common.add_argument("--module", default=None, help="named module from the input, or a built-in one")
    common.add_argument("--shifts", type=int, default=None, help="representative perturbation checks")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    common.add_argument("--allow-unstable", action="store_true", help="exit 0 even if some degree is unstable")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="hecke-engine", description="Exact Hecke algebra computations over Q")
    subparsers = parser.add_subparsers(dest="command", required=True)
    commands = {}
    for name, helpText in COMMAND_HELP.items():
        commands[name] = subparsers.add_parser(
            name, parents=[common], help=helpText, aliases=COMMAND_ALIASES.get(name, [])
        )

    commands["free-cert"].add_argument(
        "--candidate", action="append", default=[], help="basis label or comma separated coordinates (repeatable)"
    )
    commands["act"].add_argument("--homology", action="store_true", help="act on H_*(W) of a right module")
    commands["transport"].add_argument(
        "--pad", type=int, default=None, help="compare with the bar resolution padded by A=A in degrees (k, k-1)"
    )
    return parser


def run(argv: list[str] | None = None) -> int:
    """
    Parse arguments, run one command and print its report.

    Returns:
        Exit code: 0 success, 2 parse or validation failure, 3 unstable
        truncation, 4 a failed check, 1 any other engine error
    """
    from services.application_services import RunOptions, exitCodeFor, services

    args = buildParser().parse_args(argv)
    if args.log_level:
        logger.setLevel(args.log_level)

    try:
        services.initialize()
        options = RunOptions(
            inputPath=args.input,
            window=args.truncation,
            maxDegree=args.max_degree,
            minDegree=args.min_degree,
            passes=args.stability_passes,
            resolution=args.resolution,
            module=args.module,
            candidates=list(getattr(args, "candidate", [])),
            homology=getattr(args, "homology", False),
            allowUnstable=args.allow_unstable,
            padDegree=getattr(args, "pad", None),
            shifts=args.shifts,
            seed=args.seed,
        )
        result = services.run(canonicalCommand(args.command), options)
        sys.stdout.write(services.render(result, args.format or settings.output.format))
        if args.output is not None:
            services.export(result, args.output)
        return result.exitCode

    except HeckeEngineError as e:
        logger.error(f"{e.message} (Code: {e.errorCode})")
        sys.stderr.write(f"error: {e.message}\n")
        return exitCodeFor(e)

    finally:
        services.shutdown()


def main() -> None:
    """Main entry point for the Hecke engine."""
    try:
        Logger.configureRootLogger()
        sys.exit(run())

    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)

    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
