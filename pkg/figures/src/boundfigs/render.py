"""Render rate-vs-blocklength comparison figures from auxbounds CSV files.

This is a pure CSV consumer: it never recomputes bounds.  Output is
deterministic for a given CSV and spec (fixed style, fixed SVG hash salt,
no timestamps), so rendering twice yields byte-identical files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

FIXED = "fixed"
VLSF = "vlsf"

FIXED_COLUMNS = ["n", "bound", "rate", "logqM", "params"]
VLSF_COLUMNS = ["k", "n", "delta", "la_lb", "rate", "m_max", "tail_mass"]

# stable styling for the known bound ids; anything else cycles generically
_BOUND_STYLE = {
    "thm2": dict(color="#1f77b4", linestyle="-"),
    "thm3": dict(color="#17becf", linestyle="--"),
    "thm4": dict(color="#1f77b4", linestyle="-"),
    "thm5": dict(color="#17becf", linestyle="--"),
    "meta": dict(color="#2ca02c", linestyle=":"),
    "dt": dict(color="#d62728", linestyle="-."),
    "rcu": dict(color="#d62728", linestyle="-."),
}
_GENERIC_COLORS = ["#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"]


class CsvFormatError(ValueError):
    """Raised for malformed input; carries the offending line number."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class FigureSpec:
    """One figure: an input CSV, its kind, and the output image path."""

    csv_path: Path
    kind: str
    out_path: Path
    title: str | None = None
    labels: tuple[str, str] | None = None

    def __post_init__(self) -> None:
        if self.kind not in (FIXED, VLSF):
            raise ValueError(f"kind must be '{FIXED}' or '{VLSF}', got {self.kind!r}")


@dataclass
class Curve:
    label: str
    x: list[float] = field(default_factory=list)
    y: list[float] = field(default_factory=list)


def _read_rows(path: Path, expected_header: list[str]):
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(text.splitlines())
    rows = list(reader)
    if not rows:
        raise CsvFormatError(path, 1, "empty file, expected a header row")
    if rows[0] != expected_header:
        raise CsvFormatError(
            path, 1, f"bad header {rows[0]!r}, expected {expected_header!r}"
        )
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(expected_header):
            raise CsvFormatError(
                path, line_no, f"expected {len(expected_header)} fields, got {len(row)}"
            )
        yield line_no, row


def _float(path, line_no, name, value):
    try:
        return float(value)
    except ValueError:
        raise CsvFormatError(path, line_no, f"bad {name} value {value!r}") from None


def load_curves(spec: FigureSpec) -> list[Curve]:
    """Parse the CSV into one curve per bound id (fixed) or one curve (vlsf)."""
    curves: dict[str, Curve] = {}
    if spec.kind == FIXED:
        for line_no, row in _read_rows(spec.csv_path, FIXED_COLUMNS):
            n = _float(spec.csv_path, line_no, "n", row[0])
            rate = _float(spec.csv_path, line_no, "rate", row[2])
            curve = curves.setdefault(row[1], Curve(row[1]))
            curve.x.append(n)
            curve.y.append(rate)
    else:
        for line_no, row in _read_rows(spec.csv_path, VLSF_COLUMNS):
            la = _float(spec.csv_path, line_no, "la_lb", row[3])
            rate = _float(spec.csv_path, line_no, "rate", row[4])
            curve = curves.setdefault("stop-feedback bound", Curve("stop-feedback bound"))
            curve.x.append(la)
            curve.y.append(rate)
    if not curves:
        raise CsvFormatError(spec.csv_path, 2, "no curves: the CSV has no data rows")
    return list(curves.values())


def _style_for(label: str, generic_index: int) -> dict:
    if label in _BOUND_STYLE:
        return dict(_BOUND_STYLE[label])
    return dict(
        color=_GENERIC_COLORS[generic_index % len(_GENERIC_COLORS)], linestyle="-"
    )


def render(spec: FigureSpec) -> Path:
    """Draw one line per curve and write the image; returns the output path."""
    curves = load_curves(spec)
    plt.rcParams["svg.hashsalt"] = "boundfigs"

    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=120)
    generic = 0
    for curve in curves:
        style = _style_for(curve.label, generic)
        if curve.label not in _BOUND_STYLE:
            generic += 1
        ax.plot(curve.x, curve.y, label=curve.label, linewidth=1.6, **style)

    if spec.labels is not None:
        xlabel, ylabel = spec.labels
    elif spec.kind == FIXED:
        xlabel, ylabel = "blocklength n", "rate"
    else:
        xlabel, ylabel = "average blocklength", "rate"
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_ylim(0.0, 1.0)
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(spec.out_path, metadata={"Date": None})
    plt.close(fig)
    return spec.out_path
