"""Text renderings: angle expressions, CSV/JSON curves, SVG plots, OpenQASM, traces."""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import AngleParseError, UsageError
from .experiments import SurvivalCurve, SurvivalPoint
from .statevector import Circuit, CnotApply, U3Apply, ket_label, trace_states

# ---------------------------------------------------------------- angles

_PI_EXPR = re.compile(r"^(?:(\d+)\s*\*?\s*)?(?:pi|π)(?:\s*/\s*(\d+))?$", re.IGNORECASE)
_DECIMAL = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?$", re.IGNORECASE)
_TOKEN = re.compile(r"\d+\.\d*|\.\d+|\d+|pi|π|\S", re.IGNORECASE)


def parse_angle(expr: str) -> float:
    """Parse ``pi``, ``pi/K``, ``J*pi/K`` (``*`` optional) or a decimal into radians in ``[0, pi]``."""
    text = expr.strip()
    m = _PI_EXPR.match(text)
    if m:
        j = int(m.group(1)) if m.group(1) else 1
        k = int(m.group(2)) if m.group(2) else 1
        if k == 0:
            raise AngleParseError(expr, "0", "division by zero at")
        value = j * math.pi / k
    elif _DECIMAL.match(text):
        value = float(text)
    else:
        allowed = {"pi", "π", "*", "/"}
        bad = next(
            (t for t in _TOKEN.findall(text) if t.lower() not in allowed and not t[0].isdigit() and t[0] != "."),
            text,
        )
        raise AngleParseError(expr, bad)
    if not 0.0 <= value <= math.pi:
        raise AngleParseError(expr, text, "value outside [0, pi]:")
    return value


def format_angle(theta: float) -> str:
    """Shortest ``J*pi/K`` form that parses back to exactly ``theta``, else 17 significant digits."""
    if theta == 0.0:
        return "0"
    frac = Fraction(theta / math.pi).limit_denominator(1000)
    if frac > 0:
        j, k = frac.numerator, frac.denominator
        text = ("pi" if j == 1 else f"{j}*pi") + ("" if k == 1 else f"/{k}")
        if j * math.pi / k == theta:
            return text
    return format(theta, ".17g")


def angle_label(theta: float) -> str:
    """Display form for legends, e.g. ``θ = π/2``."""
    text = format_angle(theta)
    return "θ = " + text.replace("*pi", "π").replace("pi", "π")


# ---------------------------------------------------------------- CSV / JSON

CSV_HEADER = "theta,n,p_exact,p_channel,p_closed,counts0,counts1,shots,seed"
_PROB_FIELDS = ("p_exact", "p_channel", "p_closed")


def _fmt_prob(p) -> str:
    return "" if p is None else format(p, ".12g")


def _csv_row(theta: float, pt: SurvivalPoint) -> str:
    cells = [format(theta, ".17g"), str(pt.n)]
    cells += [_fmt_prob(getattr(pt, f)) for f in _PROB_FIELDS]
    cells += [str(pt.counts0), str(pt.counts1), str(pt.shots), str(pt.seed)]
    return ",".join(cells)


def emit_csv(curves: SurvivalCurve | Sequence[SurvivalCurve]) -> str:
    if isinstance(curves, SurvivalCurve):
        curves = [curves]
    lines = [CSV_HEADER]
    for curve in curves:
        lines += [_csv_row(curve.theta_total, pt) for pt in curve.points]
    return "\n".join(lines) + "\n"


def curve_to_dict(curve: SurvivalCurve) -> dict:
    return {
        "theta": curve.theta_total,
        "points": [
            {
                "theta": curve.theta_total,
                "n": pt.n,
                "p_exact": pt.p_exact,
                "p_channel": pt.p_channel,
                "p_closed": pt.p_closed,
                "counts0": pt.counts0,
                "counts1": pt.counts1,
                "shots": pt.shots,
                "seed": pt.seed,
            }
            for pt in curve.points
        ],
    }


def emit_json(curves: SurvivalCurve | Sequence[SurvivalCurve]) -> str:
    """One ``{theta, points}`` object, or a list of them for several curves."""
    if isinstance(curves, SurvivalCurve):
        payload = curve_to_dict(curves)
    else:
        payload = [curve_to_dict(c) for c in curves]
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------- SVG

SVG_WIDTH, SVG_HEIGHT = 800, 500
# plot area margins in viewBox units
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 170, 40, 60
Y_MIN, Y_MAX = 0.4, 1.0
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f")


def emit_svg(curves: Sequence[SurvivalCurve], title: str = "Survival probability vs number of measurements") -> str:
    """Self-contained line chart of survival probability against ``n``, one series per curve.

    Points use the statevector value when present; values below 0.4 are
    clipped to the axis floor.
    """
    curves = list(curves)
    if not curves or all(not c.points for c in curves):
        raise UsageError("emit_svg needs at least one non-empty survival curve")

    all_n = [pt.n for c in curves for pt in c.points]
    n_lo, n_hi = min(all_n), max(all_n)
    if n_lo == n_hi:
        n_lo, n_hi = n_lo - 1, n_hi + 1
    x0, x1 = MARGIN_LEFT, SVG_WIDTH - MARGIN_RIGHT
    y0, y1 = SVG_HEIGHT - MARGIN_BOTTOM, MARGIN_TOP

    def sx(n: float) -> float:
        return x0 + (n - n_lo) / (n_hi - n_lo) * (x1 - x0)

    def sy(p: float) -> float:
        p = min(max(p, Y_MIN), Y_MAX)
        return y0 + (p - Y_MIN) / (Y_MAX - Y_MIN) * (y1 - y0)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{(x0 + x1) / 2:.2f}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>',
        '<g class="grid" stroke="#dddddd" stroke-width="1">',
    ]
    y_ticks = [round(Y_MIN + 0.1 * i, 1) for i in range(int(round((Y_MAX - Y_MIN) / 0.1)) + 1)]
    for p in y_ticks:
        out.append(f'<line x1="{x0}" y1="{sy(p):.2f}" x2="{x1}" y2="{sy(p):.2f}"/>')
    step = max(1, math.ceil((n_hi - n_lo) / 20))
    x_ticks = list(range(n_lo, n_hi + 1, step))
    for n in x_ticks:
        out.append(f'<line x1="{sx(n):.2f}" y1="{y0}" x2="{sx(n):.2f}" y2="{y1}"/>')
    out.append("</g>")

    out.append('<g class="axes" stroke="black" stroke-width="1.5">')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>')
    out.append("</g>")
    out.append('<g class="tick-labels">')
    for p in y_ticks:
        out.append(f'<text x="{x0 - 8}" y="{sy(p) + 4:.2f}" text-anchor="end">{p:.1f}</text>')
    for n in x_ticks:
        out.append(f'<text x="{sx(n):.2f}" y="{y0 + 18}" text-anchor="middle">{n}</text>')
    out.append("</g>")
    out.append(
        f'<text x="{(x0 + x1) / 2:.2f}" y="{SVG_HEIGHT - 18}" text-anchor="middle">'
        "number of intermediate measurements n</text>"
    )
    out.append(
        f'<text x="18" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">survival probability P(|0⟩)</text>'
    )

    for i, curve in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        pts = [(sx(pt.n), sy(pt.p_reference)) for pt in curve.points]
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(f'<g class="series" id="series-{i + 1}">')
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>')
        for x, y in pts:
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="{color}"/>')
        out.append("</g>")

    lx = x1 + 20
    out.append('<g class="legend">')
    for i, curve in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        ly = y1 + 10 + 22 * i
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<circle cx="{lx + 12}" cy="{ly}" r="3.5" fill="{color}"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}">{escape(angle_label(curve.theta_total))}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- OpenQASM

def _qasm_real(x: float) -> str:
    return format(x, ".17g")


def emit_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 program for ``circuit`` with one classical bit for the q0 readout."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.num_qubits}];",
        "creg c[1];",
    ]
    for op in circuit.ops:
        if isinstance(op, U3Apply):
            args = ",".join(_qasm_real(a) for a in (op.theta, op.phi, op.lam))
            lines.append(f"u3({args}) q[{op.target}];")
        elif isinstance(op, CnotApply):
            lines.append(f"cx q[{op.control}],q[{op.target}];")
    lines.append(f"measure q[{circuit.measured_qubit}] -> c[0];")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- traces

_ZERO = 1e-12


def _fmt_amp(a: complex) -> str:
    re_zero, im_zero = abs(a.real) < _ZERO, abs(a.imag) < _ZERO
    if im_zero:
        return f"{a.real:.6f}"
    if re_zero:
        return f"{a.imag:.6f}i"
    return f"({a.real:.6f}{a.imag:+.6f}i)"


def format_ket(amps, num_qubits: int) -> str:
    """Nonzero terms of a state in ket notation, qubit 0 leftmost."""
    terms = []
    for index, a in enumerate(amps[: 1 << num_qubits]):
        a = complex(a)
        if abs(a) < _ZERO:
            continue
        text = _fmt_amp(a) + ket_label(index, num_qubits)
        if terms and not text.startswith("-"):
            text = "+" + text
        terms.append(text)
    return " ".join(terms) if terms else "0"


def _describe(op) -> str:
    if isinstance(op, U3Apply):
        return f"u3({op.theta:.6f},{op.phi:.6f},{op.lam:.6f}) q[{op.target}]"
    return f"cx q[{op.control}],q[{op.target}]"


def print_trace(circuit: Circuit) -> str:
    """Step-by-step listing of the state after each gate.

    Only wires up to the highest one touched so far are printed; the rest are
    still in ``|0⟩``. The first line is the initial ket.
    """
    active = 1
    lines = [ket_label(0, active)]
    for step, (op, state) in enumerate(zip(circuit.ops, trace_states(circuit)), start=1):
        touched = op.target if isinstance(op, U3Apply) else max(op.control, op.target)
        active = max(active, touched + 1)
        lines.append(f"step {step}: {_describe(op)}: {format_ket(state.amps, active)}")
    return "\n".join(lines) + "\n"
