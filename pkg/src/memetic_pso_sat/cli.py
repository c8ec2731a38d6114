"""Command-line interface for the memetic PSO SAT solver."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Optional, Sequence

from .bench import ReportFormat, load_instances, render_report, run_suite
from .config import LocalSearchConfig, PsoParams, SolverConfig, create_example_config
from .dimacs import parse_dimacs, read_dimacs_file, write_dimacs, write_dimacs_file
from .instances import RandomInstanceSpec, brute_force, generate, instance_comments
from .models import CnfFormula, RunReport, unsatisfied_clauses
from .solver import MemeticPsoSolver, verify_report, write_trace

EXIT_SATISFIED = 0
EXIT_UNSATISFIED = 1
EXIT_ERROR = 2

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False) -> None:
    """Set up logging configuration.

    Args:
        verbose: If True, set logging level to DEBUG, otherwise INFO
    """
    level = logging.DEBUG if verbose else logging.INFO
    format_str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    logging.basicConfig(level=level, format=format_str)


def error(message: str) -> int:
    print(f"Error: {message}", file=sys.stderr)
    return EXIT_ERROR


def build_config(args: argparse.Namespace) -> SolverConfig:
    """Defaults, then the --config file, then explicit flags."""
    config = SolverConfig.from_yaml_file(args.config) if args.config else SolverConfig()

    pso_overrides = {
        name: value
        for name, value in (("omega", args.omega), ("c1", args.c1), ("c2", args.c2), ("v_max", args.vmax))
        if value is not None
    }
    ls_overrides: dict[str, Any] = {}
    if args.pivot is not None:
        ls_overrides["pivot"] = args.pivot
    if args.ls_depth is not None:
        ls_overrides["max_depth"] = args.ls_depth
    if args.no_local_search:
        ls_overrides["enabled"] = False

    overrides: dict[str, Any] = {
        name: value
        for name, value in (
            ("population_size", args.pop),
            ("seed_pool_size", args.pool),
            ("max_iterations", args.max_iters),
            ("target_fitness", args.target),
            ("random_seed", args.seed),
        )
        if value is not None
    }
    # --pop given alone raises a smaller pool to match.
    if args.pop is not None and args.pool is None and config.seed_pool_size < args.pop:
        overrides["seed_pool_size"] = args.pop

    return replace(
        config,
        pso=PsoParams(**{**vars(config.pso), **pso_overrides}),
        ls=LocalSearchConfig(**{**vars(config.ls), **ls_overrides}),
        **overrides,
    )


def load_formula(path: str) -> CnfFormula:
    if path == "-":
        return parse_dimacs(sys.stdin)
    return read_dimacs_file(path)


def print_run_report(report: RunReport, formula: CnfFormula) -> None:
    """Print a run report in a readable format."""
    print("\n" + "=" * 60)
    print("MEMETIC PSO RESULT")
    print("=" * 60)

    print("\nFormula:")
    print(f"  Variables: {formula.variable_count}")
    print(f"  Clauses: {formula.clause_count} (ratio {formula.clause_to_variable_ratio:.2f})")

    print("\nRun:")
    print(f"  Status: {report.status.value}")
    print(f"  Best fitness: {report.best_fitness}/{report.clause_count}")
    print(f"  False clauses: {report.false_clause_count}")
    print(f"  Iterations: {report.iterations_used}")
    print(f"  Wall time: {report.wall_time:.3f} s")
    print(f"  Seed: {report.seed}")

    false_clauses = unsatisfied_clauses(formula, list(report.best_assignment))
    if false_clauses:
        shown = ", ".join(str(index) for index in false_clauses[:20])
        more = " ..." if len(false_clauses) > 20 else ""
        print(f"  Unsatisfied clause indices: {shown}{more}")

    values = [
        str(index + 1) if bit else str(-(index + 1))
        for index, bit in enumerate(report.best_assignment)
    ]
    print("\nv " + " ".join(values + ["0"]))


def solve_command(args: argparse.Namespace) -> int:
    """Handle the solve command (single run on one formula)."""
    try:
        config = build_config(args)
        formula = load_formula(args.cnf_file)
        logger.info(f"Loaded formula from: {args.cnf_file}")

        report = MemeticPsoSolver(config).solve(formula)
        if not verify_report(formula, report):
            return error("run report failed verification")

        if args.trace:
            write_trace(args.trace, report)
            logger.info(f"Trace written to: {args.trace}")

        if args.format == "json":
            print(json.dumps(report.to_dict(), indent=2))
        else:
            print_run_report(report, formula)

        return EXIT_SATISFIED if report.is_satisfied else EXIT_UNSATISFIED

    except FileNotFoundError as e:
        return error(str(e))
    except ValueError as e:
        return error(f"{e}")
    except Exception as e:
        return error(f"Unexpected error: {e}")


def bench_command(args: argparse.Namespace) -> int:
    """Handle the bench command (repeated runs over files and directories)."""
    try:
        if args.runs < 1:
            return error(f"--runs must be at least 1, got {args.runs}")
        config = build_config(args)
        instances = load_instances(args.paths)
        report = run_suite(
            instances,
            config,
            runs_per_instance=args.runs,
            base_seed=config.random_seed,
            workers=args.workers,
        )

        if args.trace:
            trace_dir = Path(args.trace)
            # Prefixed by instance position; file names may repeat across directories.
            for position, result in enumerate(report.instances):
                stem = Path(result.name).stem
                for index, run in enumerate(result.runs):
                    write_trace(trace_dir / f"{position:03d}-{stem}.run{index}.csv", run)
            logger.info(f"Traces written to: {trace_dir}")

        output = render_report(report, ReportFormat(args.format), include_traces=args.with_traces)
        if args.output:
            output_path = Path(args.output)
            output_path.parent.mkdir(parents=True, exist_ok=True)
            output_path.write_text(output, encoding="utf-8")
            logger.info(f"Report written to: {output_path}")
        else:
            sys.stdout.write(output)
        return 0

    except ValueError as e:
        return error(f"{e}")
    except Exception as e:
        return error(f"Unexpected error: {e}")


def gen_command(args: argparse.Namespace) -> int:
    """Handle the gen command (random 3-SAT instance)."""
    try:
        spec = RandomInstanceSpec(variable_count=args.vars, clause_count=args.clauses, seed=args.seed)
        formula = generate(spec)
        if args.output:
            write_dimacs_file(args.output, formula, instance_comments(spec))
            logger.info(f"Instance written to: {args.output}")
        else:
            sys.stdout.write(write_dimacs(formula, instance_comments(spec)))
        return 0
    except ValueError as e:
        return error(f"{e}")


def oracle_command(args: argparse.Namespace) -> int:
    """Handle the oracle command (exhaustive optimum of a small formula)."""
    try:
        formula = load_formula(args.cnf_file)
        result = brute_force(formula, workers=args.workers)
    except FileNotFoundError as e:
        return error(str(e))
    except ValueError as e:
        return error(f"{e}")

    print(f"Max satisfiable clauses: {result.max_fitness}/{formula.clause_count}")
    print(f"Satisfiable: {'yes' if result.satisfiable else 'no'}")
    print("Witness: " + "".join(str(int(bit)) for bit in result.witness))
    return EXIT_SATISFIED if result.satisfiable else EXIT_UNSATISFIED


def create_example_command(args: argparse.Namespace) -> int:
    """Handle the create-example command."""
    output_file = Path(args.output or "solver_example.yaml")

    if output_file.exists() and not args.force:
        return error(f"File {output_file} already exists. Use --force to overwrite.")

    try:
        create_example_config(output_file)
    except OSError as e:
        return error(f"Error creating example file: {e}")
    print(f"Example configuration created at: {output_file}")
    print("\nYou can now edit this file and run:")
    print(f"  memetic-pso-sat solve problem.cnf --config {output_file}")
    return 0


def solver_options() -> argparse.ArgumentParser:
    """Flags shared by solve and bench; every SolverConfig field has one."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("solver options")
    group.add_argument("--config", help="YAML solver configuration (flags override it)")
    group.add_argument("--omega", type=float, help="Inertia weight (default 1.0)")
    group.add_argument("--c1", type=float, help="Cognitive coefficient (default 2.0)")
    group.add_argument("--c2", type=float, help="Social coefficient (default 2.0)")
    group.add_argument("--vmax", type=float, help="Velocity clamp (default 4.0)")
    group.add_argument("--pop", type=int, help="Population size (default 100)")
    group.add_argument("--pool", type=int, help="Seeding pool size (default 1000)")
    group.add_argument("--max-iters", type=int, help="Iteration budget (default 200)")
    group.add_argument("--target", type=int, help="Stop at this many satisfied clauses (default: all)")
    group.add_argument("--pivot", choices=["greedy", "steepest"], help="Local search pivot rule (default steepest)")
    group.add_argument("--ls-depth", type=int, help="Local search move bound (default: variable count)")
    group.add_argument("--no-local-search", action="store_true", help="Run plain binary PSO")
    group.add_argument("--seed", type=int, help="Master random seed; bench run k uses seed + k (default 0)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI."""
    parser = argparse.ArgumentParser(
        description="Solve SAT / MAX-SAT instances with a memetic binary particle swarm",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  memetic-pso-sat solve problem.cnf
  memetic-pso-sat gen --vars 36 --clauses 12 --seed 1 | memetic-pso-sat solve
  memetic-pso-sat bench instances/ --runs 10 --format csv -o report.csv
  memetic-pso-sat oracle small.cnf
  memetic-pso-sat create-example -o solver.yaml
        """,
    )

    # Global arguments
    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Enable verbose logging (DEBUG level)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    shared = solver_options()

    solve_parser = subparsers.add_parser("solve", parents=[shared], help="Solve one DIMACS CNF file")
    solve_parser.add_argument("cnf_file", nargs="?", default="-", help="DIMACS file, '-' or omitted for stdin")
    solve_parser.add_argument("--trace", help="Write the iteration,gbest_fitness trace CSV here")
    solve_parser.add_argument("--format", choices=["text", "json"], default="text", help="Output format")

    bench_parser = subparsers.add_parser("bench", parents=[shared], help="Benchmark files or directories of .cnf files")
    bench_parser.add_argument("paths", nargs="+", help="DIMACS files and/or directories")
    bench_parser.add_argument("--runs", type=int, default=10, help="Runs per instance (default 10)")
    bench_parser.add_argument(
        "--format",
        choices=[fmt.value for fmt in ReportFormat],
        default=ReportFormat.TABLE.value,
        help="Report format",
    )
    bench_parser.add_argument("-o", "--output", help="Write the report here instead of stdout")
    bench_parser.add_argument("--with-traces", action="store_true", help="Include per-run traces in CSV/JSON")
    bench_parser.add_argument("--trace", help="Directory for per-run trace CSV files")
    bench_parser.add_argument("--workers", type=int, default=1, help="Parallel worker processes")

    gen_parser = subparsers.add_parser("gen", help="Generate a random 3-SAT instance")
    gen_parser.add_argument("--vars", type=int, required=True, help="Number of variables (>= 3)")
    gen_parser.add_argument("--clauses", type=int, required=True, help="Number of clauses")
    gen_parser.add_argument("--seed", type=int, default=0, help="Generator seed")
    gen_parser.add_argument("-o", "--output", help="Output file (default stdout)")

    oracle_parser = subparsers.add_parser("oracle", help="Exact optimum by brute force (at most 24 variables)")
    oracle_parser.add_argument("cnf_file", help="DIMACS file or '-' for stdin")
    oracle_parser.add_argument("--workers", type=int, default=None, help="Parallel worker processes")

    create_parser = subparsers.add_parser("create-example", help="Create an example solver configuration file")
    create_parser.add_argument("-o", "--output", help="Output file name (default: solver_example.yaml)")
    create_parser.add_argument("-f", "--force", action="store_true", help="Overwrite existing file")

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    # Set up logging based on verbose flag
    setup_logging(verbose=args.verbose)

    if args.command == "solve":
        return solve_command(args)

    if args.command == "bench":
        return bench_command(args)

    if args.command == "gen":
        return gen_command(args)

    if args.command == "oracle":
        return oracle_command(args)

    if args.command == "create-example":
        return create_example_command(args)

    parser.print_help(sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
