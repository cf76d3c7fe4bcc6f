"""Standalone SVG line plots rendered from CSV columns through a Jinja2 template."""
import logging
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader, select_autoescape

logger = logging.getLogger(__name__)

# Base directory of the project (templates live next to the packages)
BASE_DIR = Path(__file__).resolve().parent.parent
TEMPLATE = "plot.svg.j2"

WIDTH, HEIGHT = 720, 440
MARGIN = {"left": 70, "right": 20, "top": 36, "bottom": 50}
PALETTE = ("#1f77b4", "#d62728", "#7f7f7f", "#e377c2", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

_env = Environment(
    loader=FileSystemLoader(str(BASE_DIR / "templates")),
    autoescape=select_autoescape(["svg", "xml", "j2"]),
    trim_blocks=True,
    lstrip_blocks=True,
)


def _box():
    left, top = MARGIN["left"], MARGIN["top"]
    right, bottom = WIDTH - MARGIN["right"], HEIGHT - MARGIN["bottom"]
    return {"left": left, "top": top, "right": right, "bottom": bottom,
            "width": right - left, "height": bottom - top}


def _ticks(lo: float, hi: float, to_pixel, count: int = 5, log: bool = False):
    values = np.geomspace(lo, hi, count) if log else np.linspace(lo, hi, count)
    return [{"pos": f"{to_pixel(v):.2f}", "label": f"{v:.3g}"} for v in values]


def render_svg(
    path,
    title: str,
    x: Sequence[float],
    series: Mapping[str, Sequence[float]],
    x_label: str = "t",
    y_label: str = "",
    dashed: Iterable[str] = (),
    log_y: bool = False,
    y_max: Optional[float] = None,
) -> Path:
    """Draw every series against x; NaN samples (and non-positive ones on log axes) are skipped."""
    box = _box()
    x = np.asarray(x, dtype=float)
    curves = {name: np.asarray(v, dtype=float) for name, v in series.items()}
    dashed = set(dashed)

    finite = np.concatenate([v[np.isfinite(v) & ((v > 0) if log_y else True)] for v in curves.values()])
    y_lo = float(finite.min()) if finite.size else 0.0
    y_hi = float(finite.max()) if finite.size else 1.0
    if y_max is not None:
        y_hi = min(y_hi, y_max)
    if not log_y:
        y_lo = min(y_lo, 0.0)
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    x_lo, x_hi = float(x.min()), float(x.max())
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0

    def px(v):
        return box["left"] + (v - x_lo) / (x_hi - x_lo) * box["width"]

    def py(v):
        if log_y:
            frac = (np.log10(v) - np.log10(y_lo)) / (np.log10(y_hi) - np.log10(y_lo))
        else:
            frac = (v - y_lo) / (y_hi - y_lo)
        return box["bottom"] - np.clip(frac, 0.0, 1.0) * box["height"]

    rendered = []
    for i, (name, values) in enumerate(curves.items()):
        keep = np.isfinite(values) & ((values > 0) if log_y else True)
        points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x[keep], values[keep]))
        rendered.append({
            "name": name,
            "color": PALETTE[i % len(PALETTE)],
            "dashed": name in dashed,
            "points": points,
        })

    svg = _env.get_template(TEMPLATE).render(
        title=title,
        width=WIDTH,
        height=HEIGHT,
        box=box,
        x_ticks=_ticks(x_lo, x_hi, px),
        y_ticks=_ticks(y_lo, y_hi, py, log=log_y),
        x_label=x_label,
        y_label=y_label,
        series=rendered,
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg, encoding="utf-8")
    logger.info("✅ Wrote %s", path)
    return path
