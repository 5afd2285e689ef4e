"""Exit criteria. Each test checks one criterion at its stated tolerance."""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from g2sim import cli
from g2sim.correlator import (
    RelativePhaseState,
    g2_coherent,
    g2_from_fields,
    hbt_chaotic_g2,
    incoherent_baseline,
)
from g2sim.fields import (
    FieldPair,
    PlaneWaveField,
    apply_two_port,
    bs_matrix,
    compose,
    intensity,
    phase_shifter,
)
from g2sim.hom import (
    event_g2,
    g2_phi_map,
    gaussian_spectral_grid,
    hom_dip_closed_form,
    hom_dip_curve,
)
from g2sim.mzi import mzi_g2_normalized, mzi_outputs, mzi_transfer, MziConfig, random_bunching_stream
from g2sim.scenario import default_scenario, run_scenario

GHZ, PS = 1e9, 1e-12


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f} s, limit {seconds} s"


@pytest.mark.criterion(1, "phi sweep: g2 = (1 + cos 2 phi)/2 on [-2pi, 2pi], zeros at +-pi/2, +-3pi/2")
def test_c01_phi_sweep():
    with within(1.0):
        table = run_scenario(default_scenario("phi-sweep"))
        phis, g2 = table.column("phi_rad"), table.column("g2")
        assert phis[0] == -2 * math.pi and phis[-1] == 2 * math.pi
        assert np.max(np.abs(g2 - 0.5 * (1 + np.cos(2 * phis)))) < 1e-12
        for phi in (math.pi / 2, -math.pi / 2, 1.5 * math.pi, -1.5 * math.pi):
            assert g2_coherent(RelativePhaseState(0.0, phi)) < 1e-12
            i = int(np.argmin(np.abs(phis - phi)))
            assert abs(phis[i] - phi) < 1e-12 and g2[i] < 1e-12
        for phi in (0.0, math.pi, -math.pi):
            assert abs(g2_coherent(RelativePhaseState(0.0, phi)) - 1) < 1e-12
            i = int(np.argmin(np.abs(phis - phi)))
            assert abs(g2[i] - 1) < 1e-12


@pytest.mark.criterion(2, "incoherent baseline: P' = 0.500 +- 0.01 for 3 phi x 3 seeds at n = 1e5")
def test_c02_incoherent_baseline():
    with within(1.0):
        for phi in (0.0, 1.2, -2.7):
            for seed in (1, 2, 3):
                assert abs(incoherent_baseline(100_000, seed, phi) - 0.5) < 0.01


@pytest.mark.criterion(3, "HOM dip: g2(0) = 0, g2 >= 0.48 for tau >= 50 ps, |sum - closed form| < 5e-3")
def test_c03_hom_dip():
    with within(2.0):
        ens = gaussian_spectral_grid(100 * GHZ, 2 * GHZ, 200 * GHZ)
        assert len(ens) == 201
        taus = np.arange(1001) * 0.1 * PS
        g2 = hom_dip_curve(ens, taus, math.pi / 2).g2_values
        assert abs(g2[0]) < 1e-12
        assert np.all(g2[taus >= 50 * PS - 1e-18] >= 0.48)
        assert np.max(np.abs(g2 - hom_dip_closed_form(100 * GHZ, taus, math.pi / 2))) < 5e-3


@pytest.mark.criterion(4, "per-event traces: periods inf, 12.5, 6.25, 4.167 ps for 0, 40, 80, 120 GHz")
def test_c04_event_periods():
    taus = np.linspace(0, 60 * PS, 600_001)
    dt = taus[1] - taus[0]
    for delta_ghz, period_ps in ((0, math.inf), (40, 12.5), (80, 6.25), (120, 4.1666667)):
        trace = event_g2(delta_ghz * GHZ, taus, math.pi / 2)
        assert abs(trace[0]) < 1e-12
        if delta_ghz == 0:
            assert np.max(trace) < 1e-12
            continue
        # oracle: spacing of the interior minima found by scanning the trace
        interior = (trace[1:-1] <= trace[:-2]) & (trace[1:-1] < trace[2:])
        minima = taus[1:-1][interior]
        measured = np.mean(np.diff(np.concatenate([[0.0], minima])))
        assert abs(measured - period_ps * PS) < 2 * dt
        assert abs(1 / (2 * delta_ghz * GHZ) - period_ps * PS) < 1e-6 * PS


@pytest.mark.criterion(5, "phi map: tau = 0 row equals cos^2 phi for any BW; phi = 0 gives 1")
def test_c05_phi_map():
    phis = np.linspace(-2 * np.pi, 2 * np.pi, 401)
    for bw in (25, 100, 400):
        ens = gaussian_spectral_grid(bw * GHZ, 2 * GHZ, 200 * GHZ)
        m = g2_phi_map(ens, [0.0, 5 * PS, 20 * PS], phis)
        assert np.max(np.abs(m[0] - np.cos(phis) ** 2)) < 1e-12
        assert abs(g2_phi_map(ens, [0.0], [0.0])[0, 0] - 1) < 1e-12


@pytest.mark.criterion(6, "MZI: I3 = E0^2 sin^2(psi/2), I4 = E0^2 cos^2(psi/2), g2 = sin^2 psi")
def test_c06_mzi_sweep():
    with within(1.0):
        e0 = 1.0
        table = run_scenario(default_scenario("mzi-sweep"))
        psi = table.column("psi_rad")
        assert np.max(np.abs(table.column("I3") - e0 ** 2 * np.sin(psi / 2) ** 2)) < 1e-12
        assert np.max(np.abs(table.column("I4") - e0 ** 2 * np.cos(psi / 2) ** 2)) < 1e-12
        assert np.max(np.abs(table.column("g2_normalized") - np.sin(psi) ** 2)) < 1e-12
        for p in (0.0, 2 * math.pi, -2 * math.pi):
            _, i3, i4 = mzi_outputs(MziConfig(p, 1, e0))
            assert i3 < 1e-12 and abs(i4 - e0 ** 2) < 1e-12
        for p in (math.pi, -math.pi):
            _, i3, i4 = mzi_outputs(MziConfig(p, 1, e0))
            assert i4 < 1e-12 and abs(i3 - e0 ** 2) < 1e-12
        for n in range(-3, 4):
            assert mzi_g2_normalized(n * math.pi) < 1e-12


@pytest.mark.criterion(7, "quarter-phase routing: +pi/2 on input 1 -> (sqrt2 i E0, 0); -pi/2 -> (0, sqrt2 E0)")
def test_c07_routing():
    for e0 in (1.0, 0.37, 2.5):
        plus = g2_from_fields(PlaneWaveField(e0, initial_phase=math.pi / 2), PlaneWaveField(e0))
        assert plus.g2 < 1e-12
        e1 = e0 * complex(math.cos(math.pi / 2), math.sin(math.pi / 2))
        out = apply_two_port(bs_matrix(), FieldPair(e1, complex(e0)))
        assert abs(out.port_a - math.sqrt(2) * 1j * e0) < 1e-12 and abs(out.port_b) < 1e-12
        e1 = e0 * complex(math.cos(-math.pi / 2), math.sin(-math.pi / 2))
        out = apply_two_port(bs_matrix(), FieldPair(e1, complex(e0)))
        assert abs(out.port_a) < 1e-12 and abs(out.port_b - math.sqrt(2) * e0) < 1e-12


@pytest.mark.criterion(8, "property suites on 1000 random inputs: unitarity/energy, g2 equivalence, MZI identity")
def test_c08_property_suites():
    rng = np.random.default_rng(20191205)
    for _ in range(1000):
        psi = rng.uniform(-4 * np.pi, 4 * np.pi)
        mats = (bs_matrix(), phase_shifter(psi), mzi_transfer(psi),
                compose(bs_matrix(), compose(phase_shifter(psi), bs_matrix())))
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        e_in = intensity(a) + intensity(b)
        for m in mats:
            assert m.unitarity_error() < 1e-10
            out = apply_two_port(m, FieldPair(a, b))
            assert abs(intensity(out.port_a) + intensity(out.port_b) - e_in) < 1e-10 * e_in
        assert mzi_transfer(psi).max_abs_diff(mats[3]) < 1e-12

        e0 = rng.uniform(0.1, 10)
        k1, k2, w1, w2 = rng.uniform(-10, 10, size=4)
        p1, p2 = rng.uniform(-2 * np.pi, 2 * np.pi, size=2)
        r, t = rng.uniform(-1, 1, size=2)
        f1, f2 = PlaneWaveField(e0, k1, w1, p1), PlaneWaveField(e0, k2, w2, p2)
        s = g2_from_fields(f1, f2, r, t)
        assert abs(s.g2 - g2_coherent(RelativePhaseState.from_fields(f1, f2, r, t))) < 1e-10


@pytest.mark.criterion(9, "HBT: chaotic input g2 = 2.00 +- 0.02 at n = 1e6; coherent input exactly 1")
def test_c09_hbt():
    with within(5.0):
        assert abs(hbt_chaotic_g2(1_000_000, 0) - 2.0) < 0.02
        assert hbt_chaotic_g2(1_000_000, 0, chaotic=False) == 1.0


@pytest.mark.criterion(10, "bunching stream n = 1e5: fully bunched, port-3 fraction 0.5 +- 0.01, "
                           "port fixed by choice, byte-identical CSV")
def test_c10_bunching_stream(tmp_path):
    for mode in ("phase-sign", "psi-choice"):
        events = random_bunching_stream(100_000, 12345, mode)
        assert all(e.coincidence_product < 1e-12 * (e.i3 + e.i4) ** 2 for e in events)
        assert abs(sum(e.output_port == 3 for e in events) / len(events) - 0.5) < 0.01
        port_of = {}
        for e in events:
            assert port_of.setdefault(e.choice, e.output_port) == e.output_port
        assert sorted(port_of.values()) == [3, 4]
    outputs = []
    for run in ("a", "b"):
        assert cli.main(["bunching-stream", "--seed", "12345", "--out", str(tmp_path / run)]) == 0
        outputs.append((tmp_path / run / "bunching-stream.csv").read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) == 100_001
