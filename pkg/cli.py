# cli.py - command line entry point
"""
Command line for the graph coloring tools.

    python cli.py solve graph.col --solver heat --k 3 [--seed 0 --T 1000 ...]
    python cli.py bench graphs/ --manifest manifest.csv --solvers heat,greedy,tabucol --seeds 0,1,2 --out results/
    python cli.py oracle graph.col [--k 3]
    python cli.py plot --in results/ --out results/
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from atomic_tools.evaluation import EvaluationTools
from atomic_tools.graph_tools import GraphTools
from atomic_tools.reporting import ReportingTools
from config.settings import Settings
from models.solver_models import DiffusionConfig, TabuConfig
from security.allowlists import ALLOWED_SCHEDULES, ALLOWED_SOLVERS
from services.worker_pool_service import WorkerPoolService
from workflows.benchmark import BenchmarkWorkflow, RunTask, solve_task

logger = logging.getLogger("cli")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from None


def _solver_list(text: str) -> List[str]:
    tags = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [tag for tag in tags if tag not in ALLOWED_SOLVERS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown solver(s) {unknown}, choose from {ALLOWED_SOLVERS}")
    return tags


def _add_heat_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("heat diffusion")
    group.add_argument("--T", type=int, help=f"iterations (default {Settings.HEAT_T})")
    group.add_argument("--alpha", type=float, help=f"softmax temperature (default {Settings.HEAT_ALPHA})")
    group.add_argument("--eta", type=float, help=f"learning rate (default {Settings.HEAT_ETA})")
    group.add_argument("--tau0", type=float, help=f"initial diffusion time (default {Settings.HEAT_TAU0})")
    group.add_argument("--tau-min", dest="tau_min", type=float, help=f"final diffusion time (default {Settings.HEAT_TAU_MIN})")
    group.add_argument("--schedule", choices=ALLOWED_SCHEDULES, help=f"tau schedule (default {Settings.HEAT_SCHEDULE})")
    tabu = parser.add_argument_group("tabucol")
    tabu.add_argument("--max-iters", dest="max_iters", type=int, help=f"iteration budget (default {Settings.TABU_MAX_ITERS})")


def _heat_overrides(args: argparse.Namespace) -> dict:
    return {
        "T": args.T, "alpha": args.alpha, "eta": args.eta,
        "tau0": args.tau0, "tau_min": args.tau_min, "schedule": args.schedule,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heat-coloring", description="Graph coloring solvers and benchmark harness")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="color one .col graph")
    solve.add_argument("file")
    solve.add_argument("--solver", required=True, choices=ALLOWED_SOLVERS)
    solve.add_argument("--k", required=True, type=int)
    solve.add_argument("--seed", type=int, default=0)
    _add_heat_options(solve)

    bench = commands.add_parser("bench", help="benchmark solvers over a directory of .col graphs")
    bench.add_argument("dir")
    bench.add_argument("--manifest", required=True)
    bench.add_argument("--solvers", type=_solver_list, default=list(ALLOWED_SOLVERS))
    bench.add_argument("--seeds", type=_int_list, default=[0, 1, 2, 3, 4])
    bench.add_argument("--out", required=True)
    bench.add_argument("--workers", type=int, default=None, help=f"parallel runs (default {Settings.BENCH_MAX_WORKERS})")
    bench.add_argument("--plot", action="store_true", help="also render fig2.svg and fig3.svg")
    _add_heat_options(bench)

    oracle = commands.add_parser("oracle", help="exact colorability for small graphs")
    oracle.add_argument("file")
    oracle.add_argument("--k", type=int, help="decide k-colorability instead of computing the chromatic number")

    plot = commands.add_parser("plot", help="render SVG figures from a report directory")
    plot.add_argument("--in", dest="in_dir", required=True)
    plot.add_argument("--out", required=True)

    return parser


def cmd_solve(args: argparse.Namespace) -> dict:
    graph = GraphTools().load_graph(args.file)
    task = RunTask(
        graph=graph,
        solver_tag=args.solver,
        k=args.k,
        seed=None if args.solver == "greedy" else args.seed,
        diffusion_config=DiffusionConfig.from_settings(k=args.k, seed=args.seed, **_heat_overrides(args)),
        tabu_config=TabuConfig.from_settings(seed=args.seed, max_iters=args.max_iters),
    )
    coloring, result = solve_task(task)
    result["coloring"] = [c + 1 for c in coloring.assignment]
    return result


def cmd_bench(args: argparse.Namespace) -> dict:
    evaluation = EvaluationTools()
    reporting = ReportingTools(evaluation)
    pool = WorkerPoolService(max_workers=args.workers)
    workflow = BenchmarkWorkflow(GraphTools(), pool)
    try:
        manifest = workflow.load_manifest(args.manifest)
        records = workflow.run_benchmark(
            args.dir,
            manifest,
            args.solvers,
            args.seeds,
            diffusion_config=DiffusionConfig.from_settings(k=1, **_heat_overrides(args)),
            tabu_config=TabuConfig.from_settings(max_iters=args.max_iters),
        )
    finally:
        pool.shutdown()

    files = reporting.write_report(records, args.out)
    if args.plot:
        fig2, fig3 = reporting.load_report(args.out)
        files.update(reporting.emit_plots(fig2, fig3, args.out))
    return {
        "runs": len(records),
        "files": {name: str(path) for name, path in sorted(files.items())},
        "summary": [stats.to_dict() for stats in evaluation.aggregate(records)],
    }


def cmd_oracle(args: argparse.Namespace) -> dict:
    graph = GraphTools().load_graph(args.file)
    evaluation = EvaluationTools()
    if args.k is not None:
        colorable, witness = evaluation.exact_k_colorable(graph, args.k)
        return {
            "graph": graph.name,
            "k": args.k,
            "colorable": colorable,
            "witness": [c + 1 for c in witness.assignment] if witness else None,
        }
    return {"graph": graph.name, "chromatic_number": evaluation.chromatic_number(graph)}


def cmd_plot(args: argparse.Namespace) -> dict:
    reporting = ReportingTools(EvaluationTools())
    fig2, fig3 = reporting.load_report(args.in_dir)
    files = reporting.emit_plots(fig2, fig3, args.out)
    return {name: str(path) for name, path in files.items()}


COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "oracle": cmd_oracle,
    "plot": cmd_plot,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else Settings.LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler()],
    )

    try:
        Settings.validate_required_settings()
        result = COMMANDS[args.command](args)
    except Exception as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return 1

    print(json.dumps(result, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
