"""Plot of P versus e as a self-contained SVG."""

from __future__ import annotations

from typing import Optional, TextIO
from xml.sax.saxutils import escape

from .experiment import ExperimentPoint

WIDTH = 640
HEIGHT = 420
MARGIN_LEFT = 60
MARGIN_RIGHT = 170
MARGIN_TOP = 40
MARGIN_BOTTOM = 50

COLOR_COMPLETE = "#007AFF"
COLOR_WALKSAT = "#FF3B30"


class EmptyInput(ValueError):
    pass


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def emit_plot_svg(
    points: list[ExperimentPoint],
    sink: Optional[TextIO] = None,
    complete_label: str = "PL-Resolution",
    walksat_label: str = "WalkSAT",
) -> str:
    """
    Draw both series of P against e.

    The y axis always spans ``[0, 1]``, the x axis the range of ``e``. Equal
    points give byte-identical output.

    :param points: The points of the sweep, at least one
    :type points: list[ExperimentPoint]
    :param sink: If given, the SVG is written to it as well
    :type sink: Optional[TextIO]
    :param complete_label: Legend text of the complete solver
    :type complete_label: str
    :param walksat_label: Legend text of WalkSAT
    :type walksat_label: str
    :raises EmptyInput: If there are no points
    :rtype: str
    """
    if not points:
        raise EmptyInput("Cannot plot an empty sweep")

    plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_height = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    bottom = MARGIN_TOP + plot_height
    right = MARGIN_LEFT + plot_width
    e_min = min(point.e for point in points)
    e_max = max(point.e for point in points)

    def x_of(e: float) -> float:
        if e_max == e_min:
            return MARGIN_LEFT + plot_width / 2
        return MARGIN_LEFT + (e - e_min) / (e_max - e_min) * plot_width

    def y_of(p: float) -> float:
        return MARGIN_TOP + (1.0 - p) * plot_height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{_fmt(MARGIN_LEFT + plot_width / 2)}" y="24" text-anchor="middle" '
        f'font-size="14">P versus e</text>',
        f'<line class="axis" x1="{MARGIN_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" '
        f'stroke="#333"/>',
        f'<line class="axis" x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{bottom}" stroke="#333"/>',
    ]

    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _fmt(y_of(tick))
        parts.append(
            f'<line x1="{MARGIN_LEFT}" y1="{y}" x2="{right}" y2="{y}" stroke="#eee"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y}" text-anchor="end" '
            f'dominant-baseline="middle">{tick:.2f}</text>'
        )
    for point in points:
        x = _fmt(x_of(point.e))
        parts.append(f'<line x1="{x}" y1="{bottom}" x2="{x}" y2="{bottom + 5}" stroke="#333"/>')
        parts.append(
            f'<text x="{x}" y="{bottom + 18}" text-anchor="middle">{point.e:.2f}</text>'
        )

    parts.append(
        f'<text class="axis-label" x="{_fmt(MARGIN_LEFT + plot_width / 2)}" '
        f'y="{HEIGHT - 10}" text-anchor="middle">e</text>'
    )
    parts.append(
        f'<text class="axis-label" x="18" y="{_fmt(MARGIN_TOP + plot_height / 2)}" '
        f'text-anchor="middle">P</text>'
    )

    series = [
        ("complete", complete_label, COLOR_COMPLETE, [point.p_complete for point in points]),
        ("walksat", walksat_label, COLOR_WALKSAT, [point.p_walksat for point in points]),
    ]
    for name, _, color, values in series:
        coordinates = " ".join(
            f"{_fmt(x_of(point.e))},{_fmt(y_of(value))}" for point, value in zip(points, values)
        )
        parts.append(
            f'<polyline class="series-{name}" points="{coordinates}" fill="none" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        for point, value in zip(points, values):
            parts.append(
                f'<circle cx="{_fmt(x_of(point.e))}" cy="{_fmt(y_of(value))}" r="3" '
                f'fill="{color}"/>'
            )

    legend_x = right + 20
    parts.append(f'<g class="legend" transform="translate({legend_x},{MARGIN_TOP})">')
    for row, (name, label, color, _) in enumerate(series):
        y = row * 22
        parts.append(
            f'<line x1="0" y1="{y}" x2="24" y2="{y}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text class="legend-{name}" x="32" y="{y}" dominant-baseline="middle">'
            f"{escape(label)}</text>"
        )
    parts.append("</g>")
    parts.append("</svg>")

    text = "\n".join(parts) + "\n"
    if sink is not None:
        sink.write(text)
    return text
