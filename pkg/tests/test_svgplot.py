import re

import pytest

from rydeit.svgplot import PlotStyle, emit_plot


def polylines(svg):
    return re.findall(r"<polyline[^>]*>", svg)


def test_minimal_two_point_line():
    svg = emit_plot(["x", "y"], [[0.0, 0.0], [1.0, 1.0]])
    lines = polylines(svg)
    assert len(lines) == 1
    pts = re.search(r'points="([^"]*)"', lines[0]).group(1).split()
    assert len(pts) == 2
    assert svg.startswith("<svg ")
    assert svg.rstrip().endswith("</svg>")


def test_six_series_distinct_styles():
    # three solid curves plus three dashed overlays
    columns = ["x", "q1", "q2", "q3", "a1", "a2", "a3"]
    rows = [[float(i), 1.0, 2.0, 3.0, 1.1, 2.1, 3.1] for i in range(10)]
    svg = emit_plot(columns, rows)
    lines = polylines(svg)
    assert len(lines) == 6
    styles = {re.sub(r'points="[^"]*"', "", ln) for ln in lines}
    assert len(styles) == 6


def test_empty_table_rejected():
    with pytest.raises(ValueError, match="empty"):
        emit_plot(["x", "y"], [])


def test_single_column_rejected():
    with pytest.raises(ValueError):
        emit_plot(["x"], [[1.0]])


def test_non_numeric_rejected():
    with pytest.raises(ValueError, match="non-numeric"):
        emit_plot(["x", "y"], [[0.0, "high"]])


def test_byte_deterministic():
    rows = [[i * 0.1, i ** 2 * 0.01] for i in range(50)]
    style = PlotStyle(title="spectrum", x_label="delta")
    a = emit_plot(["x", "y"], rows, style)
    b = emit_plot(["x", "y"], rows, style)
    assert a == b


def test_constant_series_does_not_crash():
    svg = emit_plot(["x", "y"], [[0.0, 1.0], [1.0, 1.0], [2.0, 1.0]])
    assert len(polylines(svg)) == 1


def test_legend_and_labels_present():
    svg = emit_plot(["x", "beta", "phi"], [[0, 1, 2], [1, 2, 3]],
                    PlotStyle(title="T", x_label="detuning", y_label="resp"))
    assert "detuning" in svg and "resp" in svg and ">T<" in svg
    assert "beta" in svg and "phi" in svg
