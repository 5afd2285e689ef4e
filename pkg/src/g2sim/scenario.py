"""Declarative scenarios: JSON parsing, sweep execution, CSV and gnuplot output.

Configs and tables use GHz and ps; everything is converted to Hz and s
before calling the physics modules. A bare ``{"kind": ...}`` reproduces
the corresponding reference plot with its standard parameters.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from g2sim import correlator, hom, mzi

SCHEMA_VERSION = 1
GHZ = 1e9
PS = 1e-12
TWO_PI = 2.0 * math.pi


class ScenarioError(ValueError):
    pass


class ScenarioParseError(ScenarioError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


class ScenarioValidationError(ScenarioError):
    def __init__(self, key: str, msg: str):
        super().__init__(f"{key}: {msg}")
        self.key = key


@dataclass(frozen=True)
class Param:
    default: Any
    kind: type
    check: Callable[[Any], bool] = lambda v: True
    rule: str = ""


def _finite(v):
    return math.isfinite(v)


def _positive(v):
    return math.isfinite(v) and v > 0


_REAL = Param(0.0, float, _finite, "must be finite")
_SEED = Param(0, int, lambda v: 0 <= v < 2**64, "must be in [0, 2^64)")


def _real(default):
    return Param(default, float, _finite, "must be finite")


def _pos(default):
    return Param(default, float, _positive, "must be > 0")


def _count(default, minimum=1):
    return Param(default, int, lambda v: v >= minimum, f"must be >= {minimum}")


def _choice(default, options):
    return Param(default, str, lambda v: v in options, f"must be one of {list(options)}")


_SPECTRUM = {
    "bw_ghz": _pos(100.0),
    "step_ghz": _pos(2.0),
    "half_span_ghz": _pos(200.0),
}

SCHEMAS: dict[str, dict[str, Param]] = {
    "phi-sweep": {
        "delta": _real(0.0),
        "phi_min": _real(-TWO_PI),
        "phi_max": _real(TWO_PI),
        "n_points": _count(801, 2),
    },
    "spectrum": dict(_SPECTRUM),
    "hom-dip": {
        **_SPECTRUM,
        "phi": _real(math.pi / 2),
        "center_offset_ghz": _real(0.0),
        "tau_min_ps": _real(0.0),
        "tau_max_ps": _real(100.0),
        "tau_step_ps": _pos(0.1),
        "sampling": _choice("grid", ("grid", "monte-carlo")),
        "n_events": _count(201),
        "seed": _SEED,
    },
    "phi-map": {
        **_SPECTRUM,
        "center_offset_ghz": _real(0.0),
        "tau_min_ps": _real(0.0),
        "tau_max_ps": _real(10.0),
        "tau_step_ps": _pos(2.5),
        "phi_min": _real(-TWO_PI),
        "phi_max": _real(TWO_PI),
        "n_phi": _count(401, 1),
    },
    "mzi-sweep": {
        "psi_min": _real(-TWO_PI),
        "psi_max": _real(TWO_PI),
        "n_points": _count(1257, 2),
        "input_port": Param(1, int, lambda v: v in (1, 2), "must be 1 or 2"),
        "e0": _pos(1.0),
    },
    "baseline": {
        "n_samples": _count(100_000),
        "seed": _SEED,
        "phi": _real(0.0),
    },
    "hbt": {
        "n_samples": _count(1_000_000),
        "seed": _SEED,
        "chaotic": Param(True, bool),
    },
    "bunching-stream": {
        "n_events": _count(100_000),
        "seed": _SEED,
        "mode": _choice("phase-sign", mzi.MODES),
    },
}

KINDS = tuple(SCHEMAS)
_RESERVED = {"kind", "schema_version", "out"}


@dataclass(frozen=True)
class Scenario:
    kind: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepTable:
    column_names: tuple
    rows: list

    def __post_init__(self):
        width = len(self.column_names)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} values, expected {width}")
            if not all(math.isfinite(v) for v in row):
                raise ValueError(f"row {i} has a non-finite value")

    def column(self, name: str) -> np.ndarray:
        j = self.column_names.index(name)
        return np.array([row[j] for row in self.rows], dtype=float)


def _coerce(key: str, spec: Param, value):
    if spec.kind is bool:
        ok = isinstance(value, bool)
    elif spec.kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    elif spec.kind is float:
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
        value = float(value) if ok else value
    else:
        ok = isinstance(value, spec.kind)
    if not ok:
        raise ScenarioValidationError(key, f"expected {spec.kind.__name__}, got {value!r}")
    if not spec.check(value):
        raise ScenarioValidationError(key, f"{spec.rule}, got {value!r}")
    return value


def _check_ranges(kind: str, p: dict) -> None:
    for lo, hi in (("phi_min", "phi_max"), ("psi_min", "psi_max"), ("tau_min_ps", "tau_max_ps")):
        if lo in p and not p[hi] >= p[lo]:
            raise ScenarioValidationError(hi, f"must be >= {lo}")
    if "half_span_ghz" in p and p["half_span_ghz"] < p["step_ghz"]:
        raise ScenarioValidationError("half_span_ghz", "must be >= step_ghz")


def scenario_from_mapping(data) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioValidationError("<root>", "scenario must be a JSON object")
    if "kind" not in data:
        raise ScenarioValidationError("kind", "missing required key")
    kind = data["kind"]
    if kind not in SCHEMAS:
        raise ScenarioValidationError("kind", f"unknown kind {kind!r}; expected one of {list(KINDS)}")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION or isinstance(version, bool):
        raise ScenarioValidationError("schema_version", f"unsupported version {version!r}")
    schema = SCHEMAS[kind]
    unknown = sorted(set(data) - set(schema) - _RESERVED)
    if unknown:
        raise ScenarioValidationError(unknown[0], f"unknown key for kind {kind!r}")
    params = {key: _coerce(key, spec, data.get(key, spec.default))
              for key, spec in schema.items()}
    _check_ranges(kind, params)
    if "out" in data:
        if not isinstance(data["out"], str) or not data["out"]:
            raise ScenarioValidationError("out", "must be a non-empty path string")
        params["out"] = data["out"]
    return Scenario(kind, params)


def parse_scenario(text: bytes | str) -> Scenario:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioParseError(f"invalid UTF-8: {exc.reason}", 1, exc.start + 1) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(exc.msg, exc.lineno, exc.colno) from None
    return scenario_from_mapping(data)


def default_scenario(kind: str) -> Scenario:
    return scenario_from_mapping({"kind": kind})


def step_grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(n, dtype=float)


def _ensemble(p: dict) -> hom.SpectralEnsemble:
    return hom.gaussian_spectral_grid(p["bw_ghz"] * GHZ, p["step_ghz"] * GHZ,
                                      p["half_span_ghz"] * GHZ)


def _run_phi_sweep(p):
    phis = np.linspace(p["phi_min"], p["phi_max"], p["n_points"])
    g2 = 0.5 * (1.0 + np.cos(2.0 * (p["delta"] + phis)))
    return ("phi_rad", "g2"), zip(phis.tolist(), g2.tolist())


def _run_spectrum(p):
    ens = _ensemble(p)
    return ("detuning_ghz", "weight"), zip((ens.detunings / GHZ).tolist(), ens.weights.tolist())


def _run_hom_dip(p):
    if p["sampling"] == "grid":
        ens = _ensemble(p)
    else:
        ens = hom.sampled_spectral_ensemble(p["bw_ghz"] * GHZ, p["n_events"], p["seed"])
    taus_ps = step_grid(p["tau_min_ps"], p["tau_max_ps"], p["tau_step_ps"])
    offset = p["center_offset_ghz"] * GHZ
    curve = hom.hom_dip_curve(ens, taus_ps * PS, p["phi"], offset)
    closed = hom.hom_dip_closed_form(p["bw_ghz"] * GHZ, taus_ps * PS, p["phi"], offset)
    return (("tau_ps", "g2", "g2_closed_form"),
            zip(taus_ps.tolist(), curve.g2_values.tolist(), np.atleast_1d(closed).tolist()))


def _run_phi_map(p):
    taus_ps = step_grid(p["tau_min_ps"], p["tau_max_ps"], p["tau_step_ps"])
    phis = np.linspace(p["phi_min"], p["phi_max"], p["n_phi"])
    grid = hom.g2_phi_map(_ensemble(p), taus_ps * PS, phis, p["center_offset_ghz"] * GHZ)
    rows = [(t, f, grid[i, j]) for i, t in enumerate(taus_ps.tolist())
            for j, f in enumerate(phis.tolist())]
    return ("tau_ps", "phi_rad", "g2"), [(a, b, float(c)) for a, b, c in rows]


def _run_mzi_sweep(p):
    rows = []
    for psi in np.linspace(p["psi_min"], p["psi_max"], p["n_points"]).tolist():
        _, i3, i4 = mzi.mzi_outputs(mzi.MziConfig(psi, p["input_port"], p["e0"]))
        rows.append((psi, i3, i4, mzi.mzi_g2_normalized(psi)))
    return ("psi_rad", "I3", "I4", "g2_normalized"), rows


def _run_baseline(p):
    est = correlator.incoherent_baseline(p["n_samples"], p["seed"], p["phi"])
    return ("estimate", "n_samples", "seed"), [(est, p["n_samples"], p["seed"])]


def _run_hbt(p):
    est = correlator.hbt_chaotic_g2(p["n_samples"], p["seed"], p["chaotic"])
    return ("estimate", "n_samples", "seed"), [(est, p["n_samples"], p["seed"])]


def _run_bunching(p):
    events = mzi.random_bunching_stream(p["n_events"], p["seed"], p["mode"])
    return (("event_index", "choice", "port"),
            [(i, ev.choice, ev.output_port) for i, ev in enumerate(events)])


_RUNNERS = {
    "phi-sweep": _run_phi_sweep,
    "spectrum": _run_spectrum,
    "hom-dip": _run_hom_dip,
    "phi-map": _run_phi_map,
    "mzi-sweep": _run_mzi_sweep,
    "baseline": _run_baseline,
    "hbt": _run_hbt,
    "bunching-stream": _run_bunching,
}


def run_scenario(s: Scenario) -> SweepTable:
    columns, rows = _RUNNERS[s.kind](s.params)
    return SweepTable(tuple(columns), [tuple(r) for r in rows])


def format_value(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    s = format(float(v), ".12g")
    return "0" if s == "-0" else s


def emit_csv(table: SweepTable) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.column_names)
    for row in table.rows:
        w.writerow([format_value(v) for v in row])
    return buf.getvalue().encode("utf-8")


_LABELS = {
    "phi_rad": "{/Symbol f} (rad)",
    "psi_rad": "{/Symbol y} (rad)",
    "tau_ps": "{/Symbol t} (ps)",
    "detuning_ghz": "{/Symbol d}_j (GHz)",
}


def _plot_header(csv_name: str, title: str) -> list[str]:
    return [
        "# gnuplot script; run with: gnuplot -persist <this file>",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{title}'",
        "set grid",
        f"data = '{csv_name}'",
    ]


def emit_plot_script(table: SweepTable, kind: str, csv_name: str | None = None) -> str:
    """gnuplot script that plots the CSV written for ``table``."""
    if kind not in SCHEMAS:
        raise ScenarioValidationError("kind", f"unknown kind {kind!r}")
    csv_name = csv_name or f"{kind}.csv"
    cols = table.column_names
    lines = _plot_header(csv_name, kind)
    ref = "0.5 with lines dashtype 2 linecolor rgb 'red' title 'incoherent baseline 1/2'"
    if kind in ("phi-sweep", "hom-dip", "mzi-sweep"):
        lines.append(f"set xlabel '{_LABELS[cols[0]]}'")
    if kind == "phi-sweep":
        lines += ["set ylabel 'g^{(2)}(0)'", "set yrange [-0.05:1.05]",
                  f"plot data using 1:2 with lines linewidth 2, \\\n     {ref}"]
    elif kind == "hom-dip":
        lines += ["set ylabel 'g^{(2)}'", "set yrange [-0.05:1.05]",
                  "plot data using 1:2 with lines linewidth 2 title 'discrete ensemble', \\",
                  "     data using 1:3 with lines dashtype 3 title 'Gaussian closed form', \\",
                  f"     {ref}"]
    elif kind == "phi-map":
        lines += ["set xlabel '{/Symbol f} (rad)'", "set ylabel 'g^{(2)}'",
                  "set yrange [-0.05:1.05]",
                  "taus = system(\"tail -n +2 '\".data.\"' | cut -d, -f1 | uniq\")",
                  "plot for [t in taus] data using ($1 == t ? $2 : 1/0):3 "
                  "with lines title sprintf('{/Symbol t} = %s ps', t), \\",
                  f"     {ref}"]
    elif kind == "mzi-sweep":
        lines += ["set ylabel 'intensity / E_0^2, g^{(2)} (normalized)'",
                  "set yrange [-0.05:1.05]",
                  "plot data using 1:2 with lines dashtype 2 linecolor rgb 'blue' title 'I_3', \\",
                  "     data using 1:3 with lines dashtype 4 linecolor rgb 'dark-green' title 'I_4', \\",
                  "     data using 1:4 with lines linecolor rgb 'red' title 'g^{(2)} (normalized)', \\",
                  f"     {ref}"]
    elif kind == "spectrum":
        lines += [f"set xlabel '{_LABELS['detuning_ghz']}'", "set ylabel 'weight'",
                  "plot data using 1:2 with impulses title 'pair weight'"]
    elif kind == "bunching-stream":
        lines += ["set xlabel 'output port'", "set ylabel 'events'",
                  "set xrange [2.5:4.5]", "set xtics (3, 4)", "set boxwidth 0.5",
                  "set style fill solid 0.5",
                  "plot data using 3:(1) smooth frequency with boxes title 'port occupancy'"]
    else:  # baseline, hbt: single-row summaries
        expected = "0.5" if kind == "baseline" else "2"
        lines += ["set ylabel 'g^{(2)}(0) estimate'", "set xrange [-1:1]", "unset xtics",
                  f"plot data using (0):1 with points pointtype 7 title 'estimate', \\\n"
                  f"     {expected} with lines dashtype 2 linecolor rgb 'red' title 'expected {expected}'"]
    return "\n".join(lines) + "\n"


def write_outputs(table: SweepTable, kind: str, out_dir) -> tuple[Path, Path]:
    """Write ``<kind>.csv`` and ``<kind>.plot`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{kind}.csv"
    plot_path = out / f"{kind}.plot"
    csv_path.write_bytes(emit_csv(table))
    plot_path.write_text(emit_plot_script(table, kind, csv_path.name), encoding="utf-8")
    return csv_path, plot_path
