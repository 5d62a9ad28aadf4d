"""SVG and CSV emission: structure, determinism, geometry preservation."""

import math
import re
import xml.etree.ElementTree as ET

import pytest

from curvekit.analysis import stress_marker
from curvekit.pseudospiral import (
    CurveSample,
    Pose,
    SampledCurve,
    named_curve,
    sample_curve,
)
from curvekit.render import (
    EmptyInput,
    OrnamentSpec,
    PlotSpec,
    curve_from_rows,
    export_csv,
    ornament_svg,
    parse_csv,
    plot_svg,
)


def euler_path(n=200):
    return sample_curve(named_curve("euler", 0.5), 1.8, n)


def straight_path(n=11):
    samples = tuple(
        CurveSample(float(i), float(i), 0.0, 0.0, 0.0) for i in range(n)
    )
    return SampledCurve(None, samples, Pose())


def circle_path(n=721):
    # exact unit circle centered at (0, 1), unit speed
    samples = tuple(
        CurveSample(
            math.tau * i / (n - 1),
            math.sin(math.tau * i / (n - 1)),
            1.0 - math.cos(math.tau * i / (n - 1)),
            math.tau * i / (n - 1),
            1.0,
        )
        for i in range(n)
    )
    return SampledCurve(None, samples, Pose())


def path_coords(svg, index=0):
    ds = re.findall(r'<path d="([^"]+)"', svg)
    coords = re.findall(r"[ML] (\S+) (\S+)", ds[index])
    return [(float(x), float(y)) for x, y in coords]


# ------------------------------------------------------------ plot structure


def test_single_curve_single_width_one_path():
    svg = plot_svg(PlotSpec(curves=(euler_path(),)))
    assert svg.count("<path ") == 1
    assert svg.count("</svg>") == 1
    assert svg.endswith("\n")


def test_thickness_ladder_order():
    widths = (0.5, 1.0, 2.0, 4.0, 8.0)
    svg = plot_svg(PlotSpec(curves=(euler_path(),), stroke_widths=widths))
    assert svg.count("<path ") == 5
    found = re.findall(r'stroke-width="([^"]+)"', svg)
    assert [float(w) for w in found] == list(widths)


def test_multiple_curves_times_widths():
    curves = (euler_path(50), straight_path())
    svg = plot_svg(PlotSpec(curves=curves, stroke_widths=(1.0, 3.0)))
    assert svg.count("<path ") == 4


def test_axes_flag_adds_gray_path():
    spec = PlotSpec(curves=(euler_path(50),), axes=True)
    svg = plot_svg(spec)
    assert svg.count('stroke="#888888"') == 1
    no_axes = plot_svg(PlotSpec(curves=(euler_path(50),)))
    assert '#888888' not in no_axes


def test_annotations_draw_two_arrows():
    path = euler_path(100)
    marker = stress_marker(path)
    svg = plot_svg(PlotSpec(curves=(path,), annotations=((0, marker),)))
    assert svg.count('stroke="#c43b3b"') == 1
    assert svg.count('fill="#c43b3b"') == 1
    assert svg.count('stroke="#3b5fc4"') == 1
    assert svg.count('fill="#3b5fc4"') == 1


def test_plot_determinism():
    spec = PlotSpec(curves=(euler_path(),), stroke_widths=(1.0, 2.0), axes=True)
    assert plot_svg(spec) == plot_svg(spec)


def test_plot_validation():
    with pytest.raises(EmptyInput):
        plot_svg(PlotSpec(curves=()))
    with pytest.raises(ValueError):
        PlotSpec(curves=(euler_path(10),), stroke_widths=(0.0,))
    with pytest.raises(ValueError):
        PlotSpec(curves=(euler_path(10),), size=(0, 100))
    with pytest.raises(ValueError):
        plot_svg(PlotSpec(curves=(euler_path(10),), size=(50, 50), margin=30.0))


def test_svg_well_formed_and_known_elements():
    path = euler_path(80)
    marker = stress_marker(path)
    svg = plot_svg(PlotSpec(curves=(path,), annotations=((0, marker),), axes=True))
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    assert root.tag == f"{ns}svg"
    allowed = {f"{ns}path", f"{ns}polygon", f"{ns}circle"}
    for child in root.iter():
        if child is root:
            continue
        assert child.tag in allowed, child.tag


def test_plot_preserves_aspect_ratio():
    # an exact circle keeps equal x and y extents on a non-square canvas
    svg = plot_svg(PlotSpec(curves=(circle_path(),), size=(800, 600)))
    pts = path_coords(svg)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span_x = max(xs) - min(xs)
    span_y = max(ys) - min(ys)
    assert abs(span_x / span_y - 1.0) < 1e-9


def test_canvas_fits_margin():
    svg = plot_svg(PlotSpec(curves=(euler_path(),), size=(400, 300), margin=25.0))
    pts = path_coords(svg)
    for x, y in pts:
        assert 25.0 - 1e-9 <= x <= 375.0 + 1e-9
        assert 25.0 - 1e-9 <= y <= 275.0 + 1e-9


# ------------------------------------------------------------ ornaments


def test_ornament_station_count():
    for count in (1, 2, 7, 30):
        svg = ornament_svg(OrnamentSpec(path=euler_path(), count=count))
        assert svg.count("<circle ") == count


def test_ornament_single_station_at_start():
    path = straight_path()
    svg = ornament_svg(OrnamentSpec(path=path, count=1, size_base=0.2))
    m = re.findall(r'<circle cx="([^"]+)" cy="([^"]+)"', svg)
    assert len(m) == 1
    cx, cy = float(m[0][0]), float(m[0][1])
    first = path_coords(svg)[0]
    assert (cx, cy) == pytest.approx(first, abs=1e-12)


def test_ornament_straight_line_equal_spacing():
    svg = ornament_svg(OrnamentSpec(path=straight_path(), count=10, size_base=0.1))
    m = re.findall(r'<circle cx="([^"]+)" cy="([^"]+)" r="([^"]+)"', svg)
    assert len(m) == 10
    centers = [(float(a), float(b)) for a, b, _ in m]
    gaps = [math.dist(a, b) for a, b in zip(centers, centers[1:])]
    mean = sum(gaps) / len(gaps)
    variance = sum((g - mean) ** 2 for g in gaps) / len(gaps)
    assert variance < 1e-9
    radii = {r for _, _, r in m}
    assert len(radii) == 1


def test_ornament_proportional_sizes_follow_radius_of_curvature():
    # curvature falls along the path, so 1/kappa sizes must rise
    svg = ornament_svg(
        OrnamentSpec(
            path=euler_path(400),
            count=8,
            size_base=0.05,
            size_rule="proportional_to_radius_of_curvature",
        )
    )
    radii = [float(r) for r in re.findall(r' r="([^"]+)"', svg)]
    assert len(radii) == 8
    assert all(b > a for a, b in zip(radii, radii[1:]))


def test_ornament_proportional_rejects_straight_path():
    spec = OrnamentSpec(
        path=straight_path(),
        count=3,
        size_rule="proportional_to_radius_of_curvature",
    )
    with pytest.raises(ValueError):
        ornament_svg(spec)


def test_ornament_rhythm_cycling():
    svg = ornament_svg(
        OrnamentSpec(path=straight_path(), count=6, size_base=0.1, rhythm=(1.0, 2.0))
    )
    radii = [float(r) for r in re.findall(r' r="([^"]+)"', svg)]
    assert len(radii) == 6
    for i in range(0, 6, 2):
        assert radii[i + 1] == pytest.approx(2.0 * radii[i], rel=1e-12)


def test_ornament_palette_cycling():
    svg = ornament_svg(
        OrnamentSpec(
            path=straight_path(),
            count=5,
            size_base=0.1,
            palette=("#112233", "#445566"),
        )
    )
    fills = re.findall(r'<circle[^>]* fill="([^"]+)"', svg)
    assert fills == ["#112233", "#445566", "#112233", "#445566", "#112233"]


def test_ornament_polygon_primitives():
    for primitive, corners in (("square", 4), ("triangle", 3)):
        svg = ornament_svg(
            OrnamentSpec(path=straight_path(), count=4, primitive=primitive,
                         size_base=0.2)
        )
        polys = re.findall(r'<polygon points="([^"]+)"', svg)
        assert len(polys) == 4
        for poly in polys:
            assert len(poly.split(" ")) == corners


def test_ornament_validation():
    with pytest.raises(ValueError):
        OrnamentSpec(path=straight_path(), primitive="hexagon")
    with pytest.raises(ValueError):
        OrnamentSpec(path=straight_path(), size_rule="random")
    with pytest.raises(EmptyInput):
        OrnamentSpec(path=straight_path(), count=0)
    with pytest.raises(ValueError):
        OrnamentSpec(path=straight_path(), rhythm=())
    with pytest.raises(ValueError):
        OrnamentSpec(path=straight_path(), rhythm=(1.0, -1.0))
    with pytest.raises(ValueError):
        OrnamentSpec(path=straight_path(), palette=())
    short = SampledCurve(None, (CurveSample(0.0, 0.0, 0.0, 0.0, 1.0),), Pose())
    with pytest.raises(EmptyInput):
        ornament_svg(OrnamentSpec(path=short))


def test_ornament_determinism():
    spec = OrnamentSpec(path=euler_path(), count=12, rhythm=(1.0, 0.5),
                        palette=("#abcdef", "#123456"), primitive="triangle",
                        size_base=0.15)
    assert ornament_svg(spec) == ornament_svg(spec)


def test_ornament_svg_well_formed():
    svg = ornament_svg(OrnamentSpec(path=euler_path(), count=9, primitive="square",
                                    size_base=0.1))
    ET.fromstring(svg)


# ------------------------------------------------------------ CSV


def test_csv_2d_structure():
    sc = sample_curve(named_curve("nielsen", 1.0), 1.0, 2)
    text = export_csv(sc)
    lines = text.split("\n")
    assert lines[0] == "s,x,y,theta,kappa"
    assert len(lines) == 4  # header + 2 rows + trailing empty from final LF
    assert lines[-1] == ""
    assert "\r" not in text


def test_csv_17_significant_digits():
    samples = (
        CurveSample(0.0, 0.0, 0.0, 0.0, 1.0),
        CurveSample(1.0 / 3.0, 0.1, 0.2, 0.3, 2.0 / 3.0),
    )
    sc = SampledCurve(None, samples, Pose())
    text = export_csv(sc)
    assert "0.33333333333333331" in text
    assert "0.66666666666666663" in text


def test_csv_round_trip_byte_identical():
    sc = sample_curve(named_curve("involute", 0.7), 2.5, 40)
    text = export_csv(sc)
    fields, rows = parse_csv(text)
    assert fields == ("s", "x", "y", "theta", "kappa")
    rebuilt = curve_from_rows(rows)
    assert export_csv(rebuilt) == text
    ss = [r[0] for r in rows]
    assert all(b > a for a, b in zip(ss, ss[1:]))


def test_csv_3d_records():
    rows = [
        (0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0),
        (1.0, math.pi, 0.0, 0.5, 0.0, 1.0, 0.0),
    ]
    text = export_csv(rows)
    assert text.startswith("s,x,y,z,tx,ty,tz\n")
    fields, parsed = parse_csv(text)
    assert fields == ("s", "x", "y", "z", "tx", "ty", "tz")
    assert parsed[1][1] == math.pi
    assert export_csv(parsed) == text


def test_csv_errors():
    with pytest.raises(EmptyInput):
        export_csv([])
    with pytest.raises(ValueError):
        export_csv([(1.0, 2.0)])
    with pytest.raises(EmptyInput):
        parse_csv("")
    with pytest.raises(ValueError):
        parse_csv("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        parse_csv("s,x,y,theta,kappa\n1,2,3\n")
