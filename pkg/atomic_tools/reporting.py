# atomic_tools/reporting.py
"""
Reporting atomic tools for MCP server.
Persists benchmark runs as CSV/JSON and renders the clash-percent scatter
plot and boxplot as self-contained SVG.
"""
import csv
import json
import logging
import math
from html import escape
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from atomic_tools.evaluation import EvaluationTools
from config.settings import Settings
from models.solver_models import RunRecord

logger = logging.getLogger(__name__)

RUNS_CSV_COLUMNS = [
    "graph", "n", "m", "k", "solver", "seed", "rng",
    "clashing_edges", "clash_percent", "iterations", "wall_time_ms",
]
FIG2_COLUMNS = ["edges", "clash_percent", "solver"]
FIG3_COLUMNS = ["solver", "mean", "median", "q1", "q3", "min", "max", "count"]

SERIES_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"]

PathLike = Union[str, Path]


class ReportingTools:
    """Report files and SVG figures for benchmark runs."""

    def __init__(self, evaluation: EvaluationTools, decimals: Optional[int] = None):
        self.evaluation = evaluation
        self.decimals = Settings.REPORT_DECIMALS if decimals is None else decimals

    def _fmt(self, value: float) -> str:
        return f"{value:.{self.decimals}f}"

    def write_report(self, records: Sequence[RunRecord], out_dir: PathLike) -> Dict[str, Path]:
        """
        Write runs.csv, runs.json, fig2.csv and fig3.csv.

        Args:
            records: Benchmark runs, already in their final order
            out_dir: Output directory (created if needed)

        Returns:
            {"runs_csv": path, "runs_json": path, "fig2_csv": path, "fig3_csv": path}
        """
        if not records:
            raise ReportError("Cannot write a report without run records")

        out_dir = Path(out_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)

            runs_rows = [
                [
                    record.graph_name, record.n, record.m, record.k_used, record.solver_tag,
                    "" if record.seed is None else record.seed, record.rng,
                    record.clashing_edges, self._fmt(record.clash_percent),
                    record.iterations_used, f"{record.wall_time_ms:.3f}",
                ]
                for record in records
            ]
            fig2_rows = [
                [record.m, self._fmt(record.clash_percent), record.solver_tag]
                for record in records
            ]
            fig3_rows = [
                [
                    stats.solver_tag, self._fmt(stats.mean), self._fmt(stats.median),
                    self._fmt(stats.quartile1), self._fmt(stats.quartile3),
                    self._fmt(stats.minimum), self._fmt(stats.maximum), stats.count,
                ]
                for stats in self.evaluation.aggregate(records)
            ]

            paths = {
                "runs_csv": _write_csv(out_dir / "runs.csv", RUNS_CSV_COLUMNS, runs_rows),
                "fig2_csv": _write_csv(out_dir / "fig2.csv", FIG2_COLUMNS, fig2_rows),
                "fig3_csv": _write_csv(out_dir / "fig3.csv", FIG3_COLUMNS, fig3_rows),
            }

            runs_json = out_dir / "runs.json"
            payload = [record.to_dict() for record in records]
            runs_json.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            paths["runs_json"] = runs_json

        except OSError as e:
            logger.error("Failed to write report to %s: %s", out_dir, e)
            raise ReportError(f"Unable to write report to {out_dir}") from e

        logger.info("Wrote report for %d runs to %s", len(records), out_dir)
        return paths

    def load_report(self, in_dir: PathLike) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
        """
        Read fig2.csv and fig3.csv back from a report directory.

        Returns:
            (fig2 rows, fig3 rows) with numeric fields converted
        """
        in_dir = Path(in_dir)
        try:
            fig2 = [
                {"edges": int(row["edges"]), "clash_percent": float(row["clash_percent"]), "solver": row["solver"]}
                for row in _read_csv(in_dir / "fig2.csv")
            ]
            fig3 = [
                {
                    "solver": row["solver"],
                    **{key: float(row[key]) for key in ("mean", "median", "q1", "q3", "min", "max")},
                    "count": int(row["count"]),
                }
                for row in _read_csv(in_dir / "fig3.csv")
            ]
        except (OSError, KeyError, ValueError) as e:
            logger.error("Failed to read report from %s: %s", in_dir, e)
            raise ReportError(f"Unable to read report from {in_dir}: {e}") from e
        return fig2, fig3

    def emit_plots(
        self,
        fig2_data: Sequence[Dict[str, Any]],
        fig3_data: Sequence[Dict[str, Any]],
        out_dir: PathLike,
    ) -> Dict[str, Path]:
        """
        Render fig2.svg (clash percent vs edge count) and fig3.svg (boxplot).

        Args:
            fig2_data: Rows with edges, clash_percent, solver
            fig3_data: Rows with solver, mean, median, q1, q3, min, max

        Returns:
            {"fig2_svg": path, "fig3_svg": path}
        """
        if not fig2_data or not fig3_data:
            raise ReportError("Cannot plot empty report data")

        scatter = render_scatter_svg(fig2_data)
        boxplot = render_boxplot_svg(fig3_data)

        out_dir = Path(out_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            fig2_path = out_dir / "fig2.svg"
            fig3_path = out_dir / "fig3.svg"
            fig2_path.write_text(scatter, encoding="utf-8")
            fig3_path.write_text(boxplot, encoding="utf-8")
        except OSError as e:
            logger.error("Failed to write plots to %s: %s", out_dir, e)
            raise ReportError(f"Unable to write plots to {out_dir}") from e

        logger.info("Wrote fig2.svg and fig3.svg to %s", out_dir)
        return {"fig2_svg": fig2_path, "fig3_svg": fig3_path}


def _write_csv(path: Path, header: List[str], rows: List[List[Any]]) -> Path:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _read_csv(path: Path) -> List[Dict[str, str]]:
    with path.open("r", encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def _nice_ticks(upper: float, count: int = 5) -> List[float]:
    """Round tick positions from 0 to at least upper."""
    if upper <= 0:
        return [0.0, 1.0]
    raw_step = upper / count
    magnitude = 10 ** math.floor(math.log10(raw_step))
    step = next(m * magnitude for m in (1, 2, 5, 10) if m * magnitude >= raw_step)
    ticks = [0.0]
    while ticks[-1] < upper:
        ticks.append(ticks[-1] + step)
    return ticks


def _tick_label(value: float) -> str:
    return f"{value:g}"


def _svg_header(width: int, height: int, title: str) -> str:
    svg = f'<svg width="{width}" height="{height}" xmlns="http://www.w3.org/2000/svg" font-family="sans-serif">\n'
    svg += f'  <rect width="{width}" height="{height}" fill="white"/>\n'
    svg += f'  <text x="{width / 2}" y="24" text-anchor="middle" font-size="16" font-weight="bold">{escape(title)}</text>\n'
    return svg


def _y_axis(svg: str, margin: Dict[str, int], plot_h: int, plot_w: int) -> str:
    """Clash percent axis, 0 to 100."""
    for tick in range(0, 101, 20):
        y = margin["top"] + plot_h - plot_h * tick / 100
        svg += f'  <line x1="{margin["left"]}" y1="{y:.1f}" x2="{margin["left"] + plot_w}" y2="{y:.1f}" stroke="#e0e0e0"/>\n'
        svg += f'  <text x="{margin["left"] - 8}" y="{y + 4:.1f}" text-anchor="end" font-size="11" fill="#444">{tick}</text>\n'
    x = margin["left"] - 44
    y = margin["top"] + plot_h / 2
    svg += f'  <text x="{x}" y="{y:.1f}" text-anchor="middle" font-size="12" transform="rotate(-90 {x} {y:.1f})">% clashing edges</text>\n'
    return svg


def render_scatter_svg(rows: Sequence[Dict[str, Any]]) -> str:
    """Scatter plot of clash percent against edge count, one series per solver."""
    width, height = 760, 460
    margin = {"top": 40, "right": 140, "bottom": 50, "left": 70}
    plot_w = width - margin["left"] - margin["right"]
    plot_h = height - margin["top"] - margin["bottom"]

    solvers = sorted({row["solver"] for row in rows})
    colors = {tag: SERIES_COLORS[i % len(SERIES_COLORS)] for i, tag in enumerate(solvers)}
    x_ticks = _nice_ticks(max(float(row["edges"]) for row in rows))
    x_max = x_ticks[-1]

    svg = _svg_header(width, height, "Percent of clashing edges vs number of edges")
    svg = _y_axis(svg, margin, plot_h, plot_w)

    base_y = margin["top"] + plot_h
    for tick in x_ticks:
        x = margin["left"] + plot_w * tick / x_max
        svg += f'  <line x1="{x:.1f}" y1="{base_y}" x2="{x:.1f}" y2="{base_y + 5}" stroke="#444"/>\n'
        svg += f'  <text x="{x:.1f}" y="{base_y + 18}" text-anchor="middle" font-size="11" fill="#444">{_tick_label(tick)}</text>\n'
    svg += f'  <text x="{margin["left"] + plot_w / 2}" y="{height - 10}" text-anchor="middle" font-size="12">Number of edges</text>\n'

    for row in rows:
        x = margin["left"] + plot_w * float(row["edges"]) / x_max
        y = base_y - plot_h * float(row["clash_percent"]) / 100
        svg += (
            f'  <circle class="point" cx="{x:.1f}" cy="{y:.1f}" r="4" fill="{colors[row["solver"]]}" opacity="0.75">'
            f'<title>{escape(str(row["solver"]))}: {row["edges"]} edges, {float(row["clash_percent"]):.2f}%</title></circle>\n'
        )

    svg = _legend(svg, solvers, colors, margin["left"] + plot_w + 20, margin["top"] + 10)
    svg += "</svg>\n"
    return svg


def render_boxplot_svg(rows: Sequence[Dict[str, Any]]) -> str:
    """Boxplot of clash percent per solver with a mean marker."""
    width = max(360, 140 * len(rows) + 120)
    height = 460
    margin = {"top": 40, "right": 30, "bottom": 50, "left": 70}
    plot_w = width - margin["left"] - margin["right"]
    plot_h = height - margin["top"] - margin["bottom"]
    base_y = margin["top"] + plot_h

    def y_of(percent: float) -> float:
        return base_y - plot_h * percent / 100

    svg = _svg_header(width, height, "Percent of clashing edges per method")
    svg = _y_axis(svg, margin, plot_h, plot_w)

    slot = plot_w / len(rows)
    box_w = min(60.0, slot * 0.5)
    for i, row in enumerate(rows):
        color = SERIES_COLORS[i % len(SERIES_COLORS)]
        cx = margin["left"] + slot * (i + 0.5)
        left, right = cx - box_w / 2, cx + box_w / 2
        solver = escape(str(row["solver"]))
        svg += f'  <g class="box" data-solver="{solver}">\n'
        svg += f'    <line x1="{cx:.1f}" y1="{y_of(row["min"]):.1f}" x2="{cx:.1f}" y2="{y_of(row["q1"]):.1f}" stroke="#333"/>\n'
        svg += f'    <line x1="{cx:.1f}" y1="{y_of(row["q3"]):.1f}" x2="{cx:.1f}" y2="{y_of(row["max"]):.1f}" stroke="#333"/>\n'
        for whisker in ("min", "max"):
            svg += f'    <line x1="{cx - box_w / 4:.1f}" y1="{y_of(row[whisker]):.1f}" x2="{cx + box_w / 4:.1f}" y2="{y_of(row[whisker]):.1f}" stroke="#333"/>\n'
        top = y_of(row["q3"])
        svg += f'    <rect x="{left:.1f}" y="{top:.1f}" width="{box_w:.1f}" height="{max(y_of(row["q1"]) - top, 0.5):.1f}" fill="{color}" fill-opacity="0.35" stroke="{color}"/>\n'
        svg += f'    <line x1="{left:.1f}" y1="{y_of(row["median"]):.1f}" x2="{right:.1f}" y2="{y_of(row["median"]):.1f}" stroke="#000" stroke-width="2"/>\n'
        my = y_of(row["mean"])
        svg += (
            f'    <path class="mean" d="M {cx:.1f} {my - 5:.1f} L {cx + 5:.1f} {my:.1f} L {cx:.1f} {my + 5:.1f} L {cx - 5:.1f} {my:.1f} Z" fill="#d62728">'
            f'<title>mean {float(row["mean"]):.2f}%</title></path>\n'
        )
        svg += f'    <text x="{cx:.1f}" y="{base_y + 18}" text-anchor="middle" font-size="12">{solver}</text>\n'
        svg += "  </g>\n"

    svg += "</svg>\n"
    return svg


def _legend(svg: str, labels: Sequence[str], colors: Dict[str, str], x: float, y: float) -> str:
    for i, label in enumerate(labels):
        row_y = y + 20 * i
        svg += f'  <circle cx="{x}" cy="{row_y}" r="5" fill="{colors[label]}"/>\n'
        svg += f'  <text x="{x + 12}" y="{row_y + 4}" font-size="12">{escape(label)}</text>\n'
    return svg


class ReportError(RuntimeError):
    """Raised when report files cannot be written, read or rendered."""
    pass
