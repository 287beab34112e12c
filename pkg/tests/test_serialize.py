import json
import math
import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zeno.errors import AngleParseError, UsageError
from zeno.experiments import (
    SERIES_THETAS,
    SurvivalCurve,
    SurvivalPoint,
    SweepConfig,
    build_qze_circuit,
    build_rabi_circuit,
    run_sweep,
)
from zeno.serialize import (
    CSV_HEADER,
    emit_csv,
    emit_json,
    emit_qasm,
    emit_svg,
    format_angle,
    parse_angle,
    print_trace,
)
from zeno.statevector import Circuit, U3Apply

PI = math.pi
SVG_NS = "{http://www.w3.org/2000/svg}"


# ------------------------------------------------------------ angles

@pytest.mark.parametrize(
    "expr, value",
    [
        ("pi/2", 1.5707963267948966),
        ("pi/70", PI / 70),
        ("pi", PI),
        ("3*pi/4", 3 * PI / 4),
        ("2pi/3", 2 * PI / 3),
        (" pi / 5 ", PI / 5),
        ("π/6", PI / 6),
        ("0.25", 0.25),
        ("0", 0.0),
        (".5", 0.5),
    ],
)
def test_parse_angle(expr, value):
    assert parse_angle(expr) == value


@pytest.mark.parametrize("expr, token", [("2pi", "2pi"), ("pi/x", "x"), ("tau", "t"), ("", ""), ("-0.1", "-0.1"), ("pi/0", "0")])
def test_parse_angle_errors(expr, token):
    with pytest.raises(AngleParseError) as info:
        parse_angle(expr)
    assert info.value.token == token


@pytest.mark.parametrize("theta", [0.0, PI, PI / 2, PI / 70, 2 * PI / 3, 0.1, 1e-5, 3.0])
def test_format_angle_round_trip(theta):
    assert parse_angle(format_angle(theta)) == theta


@given(st.floats(0, PI))
def test_decimal_round_trip_is_exact(theta):
    assert parse_angle(format(theta, ".17g")) == theta
    assert parse_angle(format_angle(theta)) == theta


def test_format_angle_prefers_pi_fractions():
    assert format_angle(PI / 2) == "pi/2"
    assert format_angle(3 * PI / 4) == "3*pi/4"
    assert format_angle(0.5) == "0.5"


# ------------------------------------------------------------ CSV / JSON

def _curve(theta=PI / 2, n_max=2, **kw):
    return run_sweep(SweepConfig(theta, 1, n_max, shots=kw.get("shots", 256), seed=kw.get("seed", 42)))


def test_csv_layout():
    text = emit_csv(_curve())
    lines = text.splitlines()
    assert len(lines) == 3
    assert lines[0] == CSV_HEADER
    row = dict(zip(CSV_HEADER.split(","), lines[2].split(",")))
    assert row["n"] == "2" and row["p_exact"] == "0.75" and row["p_closed"] == "0.75"
    assert int(row["counts0"]) + int(row["counts1"]) == int(row["shots"])


def test_csv_twelve_significant_digits():
    row = emit_csv(_curve(n_max=3)).splitlines()[3]
    p = row.split(",")[2]
    assert p == "0.824759526419"


def test_csv_deterministic():
    assert emit_csv(_curve(n_max=14)) == emit_csv(_curve(n_max=14))


def test_csv_missing_backend_is_empty_cell():
    curve = run_sweep(SweepConfig(PI / 2, 1, 1, shots=10, backends=("closed_form",)))
    assert emit_csv(curve).splitlines()[1].split(",")[2:5] == ["", "", "0.5"]


def test_json_mirrors_csv():
    curve = _curve()
    data = json.loads(emit_json(curve))
    assert data["theta"] == PI / 2
    assert [p["n"] for p in data["points"]] == [1, 2]
    assert set(data["points"][0]) == set(CSV_HEADER.split(","))
    assert data["points"][1]["p_exact"] == curve.points[1].p_exact
    many = json.loads(emit_json([curve, curve]))
    assert isinstance(many, list) and len(many) == 2


# ------------------------------------------------------------ SVG

def _parse_svg(text):
    return ET.fromstring(text.encode("utf-8"))


def test_svg_five_series():
    curves = [run_sweep(SweepConfig(t, 1, 14, shots=64, seed=1)) for t in SERIES_THETAS]
    root = _parse_svg(emit_svg(curves))
    assert root.get("viewBox") == "0 0 800 500"
    assert len(root.findall(f".//{SVG_NS}polyline")) == 5
    legend = root.find(f".//{SVG_NS}g[@class='legend']")
    labels = [t.text for t in legend.findall(f"{SVG_NS}text")]
    assert labels == ["θ = π/2", "θ = π/3", "θ = π/4", "θ = π/5", "θ = π/6"]
    series = root.findall(f".//{SVG_NS}g[@class='series']")
    assert all(len(g.findall(f"{SVG_NS}circle")) == 14 for g in series)
    assert "href" not in emit_svg(curves) and "<image" not in emit_svg(curves)


def test_svg_flat_curve_at_top():
    curve = run_sweep(SweepConfig(0.0, 1, 5, shots=16))
    root = _parse_svg(emit_svg([curve]))
    pts = root.find(f".//{SVG_NS}polyline").get("points").split()
    ys = {p.split(",")[1] for p in pts}
    assert ys == {"40.00"}  # top margin is y = 1.0


def test_svg_empty_input_is_usage_error():
    with pytest.raises(UsageError):
        emit_svg([])


def test_svg_deterministic():
    curves = [_curve(n_max=5)]
    assert emit_svg(curves) == emit_svg(curves)


# ------------------------------------------------------------ QASM

def test_qasm_rabi():
    text = emit_qasm(build_rabi_circuit(PI / 2))
    assert "u3(1.5707963267948966,-1.5707963267948966,1.5707963267948966) q[0];" in text
    assert text.startswith('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\ncreg c[1];\n')
    assert text.endswith("measure q[0] -> c[0];\n")


@pytest.mark.parametrize("theta", SERIES_THETAS)
@pytest.mark.parametrize("n", [1, 2, 4, 14])
def test_qasm_gate_counts(theta, n):
    lines = emit_qasm(build_qze_circuit(theta, n)).splitlines()
    assert sum(l.startswith("u3(") for l in lines) == n
    assert sum(l.startswith("cx ") for l in lines) == n
    assert sum(l.startswith("measure ") for l in lines) == 1
    assert f"qreg q[{n + 1}];" in lines


def test_qasm_empty_circuit():
    assert emit_qasm(Circuit(2)).splitlines() == [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        "qreg q[2];",
        "creg c[1];",
        "measure q[0] -> c[0];",
    ]


def test_qasm_angles_round_trip():
    text = emit_qasm(build_qze_circuit(PI / 5, 14))
    for args in re.findall(r"u3\(([^)]*)\)", text):
        theta, phi, lam = (float(a) for a in args.split(","))
        assert theta == PI / 5 / 14 and phi == -PI / 2 and lam == PI / 2


# ------------------------------------------------------------ trace

def test_trace_two_slice_circuit_steps():
    a, b = math.cos(PI / 8), math.sin(PI / 8)
    lines = print_trace(build_qze_circuit(PI / 2, 2)).splitlines()
    assert lines[0] == "|0⟩"
    assert len(lines) == 5
    assert lines[1].endswith(f"{a:.6f}|0⟩ -{b:.6f}i|1⟩")
    assert lines[2].endswith(f"{a:.6f}|00⟩ -{b:.6f}i|11⟩")
    assert lines[3].endswith(f"{a*a:.6f}|00⟩ -{a*b:.6f}i|10⟩ -{b*b:.6f}|01⟩ -{a*b:.6f}i|11⟩")
    assert lines[4].endswith(f"{a*a:.6f}|000⟩ -{b*b:.6f}|010⟩ -{a*b:.6f}i|101⟩ -{a*b:.6f}i|111⟩")


def test_trace_half_turn_slices_show_equal_weights():
    lines = print_trace(build_qze_circuit(PI, 2)).splitlines()
    assert "0.707107|00⟩ -0.707107i|11⟩" in lines[2]


def test_trace_empty_circuit():
    assert print_trace(Circuit(1)) == "|0⟩\n"
    assert print_trace(Circuit(3)) == "|0⟩\n"


def test_trace_mixed_amplitudes_are_parenthesised():
    text = print_trace(Circuit(1, (U3Apply(0, PI / 2, 0.3, 0.0),)))
    assert "(" in text.splitlines()[1].split(": ")[-1]
