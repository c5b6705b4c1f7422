import dataclasses
import json
import math
import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from conftest import regular_center
from minmaxpoly import cli
from minmaxpoly.cli import (
    InstanceSpec,
    ParseError,
    arc_path,
    generate,
    ingest,
    main,
    read_points,
    render_svg,
    run,
)
from minmaxpoly.geometry import (
    DegenerateInput,
    DuplicatePoint,
    PointSet,
    Polygon,
    convex_hull,
    orientation,
    subtended_angle,
)
from minmaxpoly.polygonize import NoVisibleEdge, beta_max, construct_edgewise, construct_onion

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def hex_csv(tmp_path):
    path = tmp_path / "hex.csv"
    cli.write_points(path, generate(InstanceSpec(shape="regular-center", n=7, seed=1)))
    return path


# ingestion -----------------------------------------------------------------

def test_read_csv(tmp_path):
    path = tmp_path / "sq.csv"
    path.write_text("0,0\n4,0\n4,4\n0,4\n2,2")
    s = ingest(path)
    assert s.n == 5
    assert s[4] == (2.0, 2.0)


def test_read_csv_comments_and_spaces(tmp_path):
    path = tmp_path / "pts.txt"
    path.write_text("# header\n0 0\n\n1.5e0, 0   # trailing\n  0\t2\n")
    assert ingest(path).xy.tolist() == [[0, 0], [1.5, 0], [0, 2]]


def test_read_json(tmp_path):
    path = tmp_path / "pts.json"
    path.write_text("[[0, 0], [1, 0], [0.5, 2]]")
    assert read_points(path).n == 3


def test_duplicate_row_names_its_line(tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text("0,0\n4,0\n# note\n4,4\n4,0\n")
    with pytest.raises(DuplicatePoint, match="line 5 repeats line 2"):
        ingest(path)


@pytest.mark.parametrize("text, line", [
    ("0,0\n1,x\n", 2),
    ("0,0\n1,2,3\n", 2),
    ("0,0\n1,0\n\nnan,1\n", 4),
])
def test_parse_errors_carry_line(tmp_path, text, line):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(ParseError) as info:
        read_points(path)
    assert info.value.line == line
    assert f"bad.csv:{line}" in str(info.value)


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('[[0, 0], [1, "a"]]')
    with pytest.raises(ParseError, match="entry 1"):
        read_points(path)
    path.write_text('{"x": 1}')
    with pytest.raises(ParseError):
        read_points(path)


def test_degenerate_inputs_rejected(tmp_path):
    path = tmp_path / "line.csv"
    path.write_text("0,0\n1,1\n2,2\n")
    with pytest.raises(DegenerateInput):
        ingest(path)
    path.write_text("0,0\n1,1\n")
    with pytest.raises(DegenerateInput):
        ingest(path)


def test_generate_regular_center_is_hexagon():
    s = generate(InstanceSpec(shape="regular-plus-center", n=7, k=6, seed=1))
    h = convex_hull(s)
    assert (s.n, h.m, h.r) == (7, 6, 1)
    assert tuple(s[6]) == (0.5, 0.5)
    radii = np.hypot(*(s.xy[:6] - 0.5).T)
    assert np.allclose(radii, 0.5)


def test_generate_is_seeded():
    a = generate(InstanceSpec(shape="random", n=50, seed=3))
    b = generate(InstanceSpec(shape="random-uniform", n=50, seed=3))
    c = generate(InstanceSpec(shape="random", n=50, seed=4))
    assert a == b and a != c
    assert a.xy.min() >= 0 and a.xy.max() <= 1


def test_generate_regular_random_keeps_ring_as_hull():
    s = generate(InstanceSpec(shape="regular-random", n=40, k=7, seed=2))
    h = convex_hull(s)
    assert (h.m, h.r) == (7, 33)
    assert sorted(h.vertices) == list(range(7))


def test_instance_spec_validates():
    with pytest.raises(ValueError):
        InstanceSpec()
    with pytest.raises(ValueError):
        InstanceSpec(path="a.csv", shape="random")
    with pytest.raises(ValueError):
        InstanceSpec(shape="spiral", n=5)


def test_file_round_trip(tmp_path):
    s = generate(InstanceSpec(shape="random", n=30, seed=5))
    for name in ("pts.csv", "pts.json"):
        cli.write_points(tmp_path / name, s, comment="x")
        assert read_points(tmp_path / name) == s


# reports -------------------------------------------------------------------

def test_run_hexagon_all(hex_csv):
    rep = run(InstanceSpec(path=str(hex_csv)))
    assert (rep.n, rep.m, rep.r, rep.d) == (7, 6, 1, 1)
    for a in rep.algorithms.values():
        assert a.bound == pytest.approx(5 * math.pi / 3)
        assert a.satisfied and a.simple
    assert rep.oracle.theta == pytest.approx(5 * math.pi / 3, abs=1e-9)
    assert rep.ok
    doc = rep.to_dict()
    assert doc["schema_version"] == cli.SCHEMA_VERSION
    assert doc["instance"]["dm_bound"] == {"radians": round(5 * math.pi / 3, 9), "pi": round(5 / 3, 9)}
    assert "timings_s" not in doc


def test_run_random_200_onion():
    rep = run(InstanceSpec(shape="random", n=200, seed=7), algo="onion")
    a = rep.algorithms["onion"]
    assert a.satisfied and a.simple and a.asserted
    assert sorted(a.chain) == list(range(200))
    assert rep.oracle is None
    assert rep.timings["onion"] > 0
    assert "onion" in rep.to_dict(timing=True)["timings_s"]


def test_run_triangle(tmp_path):
    path = tmp_path / "tri.csv"
    path.write_text("0,0\n3,0\n1,2\n")
    rep = run(path)
    for a in rep.algorithms.values():
        assert a.max_angle < math.pi
        assert sorted(a.chain) == [0, 1, 2]
    assert rep.d == 0 and rep.oracle.count == 1


def test_run_flags_boundary_points():
    s = PointSet.from_xy([(0, 0), (2, 0), (4, 0), (4, 4), (0, 4), (1, 1)])
    rep = run(s, algo="edgewise")
    doc = rep.to_dict()["instance"]
    assert doc["boundary_points"] == [1] and doc["boundary_flag"]


def test_global_hit_is_reported_not_asserted():
    rep = run(InstanceSpec(shape="random", n=60, seed=1), algo="onion", global_hit=True)
    g = rep.algorithms["onion_global_hit"]
    assert not g.asserted
    assert g.k == rep.r
    assert g.simple


def test_oracle_skipped_for_large_n():
    rep = run(InstanceSpec(shape="random", n=12, seed=0))
    assert rep.oracle.skipped
    assert rep.ok
    with pytest.raises(ValueError):
        run(InstanceSpec(shape="random", n=12, seed=0), algo="oracle")


def test_angle_entry():
    assert cli.angle_entry(1.5 * math.pi) == {"radians": 4.712388980, "pi": 1.5}


# SVG -----------------------------------------------------------------------

def _arc_center(x1, y1, x2, y2, r, large, sweep):
    # endpoint-to-centre conversion for a circular arc (no rotation)
    xp, yp = (x1 - x2) / 2, (y1 - y2) / 2
    num = max(0.0, r * r - xp * xp - yp * yp)
    coef = math.sqrt(num / (xp * xp + yp * yp))
    if large == sweep:
        coef = -coef
    return coef * yp + (x1 + x2) / 2, -coef * xp + (y1 + y2) / 2


def _check_arc(d, a, b, beta):
    nums = [float(v) for v in re.findall(r"-?[\d.]+(?:e-?\d+)?", d)]
    x1, y1, rx, ry, _, large, sweep, x2, y2 = nums
    assert (x1, -y1, x2, -y2) == pytest.approx((*a, *b))
    chord = math.dist(a, b)
    assert rx == ry == pytest.approx(chord / (2 * math.sin(beta / 2)), rel=1e-8)
    assert large == (1 if beta > math.pi else 0) and sweep == 1
    cx, cy = _arc_center(x1, y1, x2, y2, rx, large, sweep)
    t1 = math.atan2(y1 - cy, x1 - cx)
    t2 = math.atan2(y2 - cy, x2 - cx)
    dt = (t2 - t1) % (2 * math.pi)  # sweep flag 1: increasing angle
    assert dt == pytest.approx(beta, abs=1e-6)
    mid = (cx + rx * math.cos(t1 + dt / 2), -(cy + rx * math.sin(t1 + dt / 2)))
    # midpoint lies on the interior side and sees the chord at the inscribed angle
    assert orientation(a, b, mid) == 1
    assert subtended_angle(a, mid, b) == pytest.approx(math.pi - beta / 2, abs=1e-6)


def test_svg_hexagon_polygon(hexagon_center):
    p = construct_onion(hexagon_center).polygon
    doc = render_svg(hexagon_center, p)
    root = ET.fromstring(doc.encode())
    path = root.find(f".//{SVG}path[@id='polygon']")
    d = path.get("d")
    assert d.startswith("M ") and d.endswith(" Z")
    assert len(d[2:-2].split(" L ")) == 7
    assert len(root.findall(f".//{SVG}circle")) == 7


def test_svg_square_major_segments():
    s = PointSet.from_xy([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])
    p = construct_onion(s).polygon
    root = ET.fromstring(render_svg(s, p, hull=True, segments=True).encode())
    arcs = root.findall(f".//{SVG}path[@class='major-segment']")
    assert len(arcs) == 4
    hull = convex_hull(s)
    for el, (i, j) in zip(arcs, hull.edges):
        d = el.get("d").removesuffix(" Z")
        _check_arc(d, s[i], s[j], beta_max(4))
        assert float(d.split()[4]) == pytest.approx(2.0)  # half the side for a semicircle


@pytest.mark.parametrize("k", [3, 5, 6, 9])
def test_arc_geometry_on_regular_hulls(k):
    s = regular_center(k, radius=3.0)
    for i, j in convex_hull(s).edges:
        d, r = arc_path(s[i], s[j], beta_max(k))
        _check_arc(d, s[i], s[j], beta_max(k))


def test_svg_bare_polygon(square_center):
    p = Polygon.from_chain((0, 1, 4, 2, 3), square_center)
    root = ET.fromstring(render_svg(square_center, p).encode())
    assert root.find(f".//{SVG}path[@class='major-segment']") is None
    assert root.find(f".//{SVG}polygon[@id='hull']") is None
    assert root.find(f".//{SVG}path[@id='polygon']") is not None
    vb = [float(v) for v in root.get("viewBox").split()]
    assert vb == pytest.approx([-0.2, -4.2, 4.4, 4.4])


def test_svg_layers_colour_points():
    s = PointSet.from_xy([(0, 0), (4, 0), (4, 4), (0, 4), (2, 0.3), (2, 0.8)])
    c = construct_onion(s)
    root = ET.fromstring(render_svg(s, c.polygon, layers=c.peeling).encode())
    fills = [el.get("fill") for el in root.findall(f".//{SVG}circle")]
    assert fills[4] != fills[5] and fills[4] != fills[0]


# command line --------------------------------------------------------------

def test_cli_gen_run_round_trip(tmp_path, capsys):
    out = tmp_path / "hex.csv"
    assert main(["gen", "--shape", "regular-center", "--n", "7", "--seed", "1", "--out", str(out)]) == 0
    svg, js = tmp_path / "hex.svg", tmp_path / "hex.json"
    assert main(["run", "--in", str(out), "--algo", "all", "--svg", str(svg), "--json", str(js)]) == 0
    doc = json.loads(js.read_text())
    assert doc["instance"]["d"] == 1 and doc["ok"]
    assert doc["oracle"]["theta"]["pi"] == pytest.approx(5 / 3)
    ET.fromstring(svg.read_bytes())
    assert "oracle theta" in capsys.readouterr().out


def test_cli_is_byte_deterministic(tmp_path):
    pts = tmp_path / "r.csv"
    main(["gen", "--shape", "random", "--n", "80", "--seed", "11", "--out", str(pts)])
    outs = []
    for rep in range(2):
        svg, js = tmp_path / f"{rep}.svg", tmp_path / f"{rep}.json"
        assert main(["run", "--in", str(pts), "--svg", str(svg), "--json", str(js)]) == 0
        outs.append((svg.read_bytes(), js.read_bytes()))
    assert outs[0] == outs[1]


def test_cli_batch_orders_by_input(tmp_path):
    paths = []
    for i in range(3):
        p = tmp_path / f"i{i}.csv"
        main(["gen", "--shape", "random", "--n", str(8 + i), "--seed", str(i), "--out", str(p)])
        paths.append(str(p))
    serial, pooled = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "--in", *paths, "--batch", "--json", str(serial)]) == 0
    assert main(["run", "--in", *paths, "--batch", "--jobs", "2", "--json", str(pooled)]) == 0
    assert serial.read_bytes() == pooled.read_bytes()
    doc = json.loads(serial.read_text())
    assert [d["instance"]["n"] for d in doc["instances"]] == [8, 9, 10]
    assert main(["run", "--in", *paths]) == 2


def test_cli_input_errors(tmp_path, capsys):
    assert main(["run", "--in", str(tmp_path / "missing.csv")]) == 2
    bad = tmp_path / "dup.csv"
    bad.write_text("0,0\n1,0\n0,0\n")
    assert main(["run", "--in", str(bad)]) == 2
    assert "line 3 repeats line 1" in capsys.readouterr().err
    assert main(["certify", "--n-max", "11"]) == 2
    big = tmp_path / "big.csv"
    main(["gen", "--shape", "random", "--n", "12", "--out", str(big)])
    assert main(["run", "--in", str(big), "--algo", "oracle"]) == 2


def test_cli_internal_diagnostic(tmp_path, monkeypatch, hex_csv):
    def boom(s):
        raise NoVisibleEdge(6, (0, 1), [])
    monkeypatch.setattr(cli, "construct_edgewise", boom)
    assert main(["run", "--in", str(hex_csv), "--algo", "edgewise"]) == 3


def test_cli_bound_failure(monkeypatch, hex_csv):
    def tight(s):
        c = construct_edgewise(s)
        c.report = dataclasses.replace(c.report, bound_value=1.0)
        return c
    monkeypatch.setattr(cli, "construct_edgewise", tight)
    assert main(["run", "--in", str(hex_csv), "--algo", "edgewise"]) == 1


def test_cli_certify(tmp_path, capsys):
    js = tmp_path / "c.json"
    assert main(["certify", "--n-min", "5", "--n-max", "6", "--trials", "6", "--seed", "2",
                 "--json", str(js)]) == 0
    doc = json.loads(js.read_text())
    assert doc["ok"] and len(doc["trials"]) == 6
    assert all(5 <= t["n"] <= 6 for t in doc["trials"])
    assert "certified 6/6" in capsys.readouterr().out
