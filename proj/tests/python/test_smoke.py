"""End-to-end smoke tests for the Python module and the command-line tool."""

import math
import os
import subprocess

import pytest

import spcsim

TWO_PI = 2.0 * math.pi


def test_total_mass_of_the_three_families():
    assert spcsim.SpectralDensity.gaussian().total_mass() == pytest.approx(3.0, rel=1e-12)
    assert spcsim.SpectralDensity.semi_elliptic().total_mass() == pytest.approx(
        4.71238898038, rel=1e-10
    )
    assert spcsim.SpectralDensity.lorentzian().total_mass() == pytest.approx(
        2.85782057317, rel=1e-10
    )


def test_gaussian_kernel_and_free_decay_values():
    sd = spcsim.SpectralDensity.gaussian()
    assert sd.cosine_kernel(TWO_PI).value == pytest.approx(2.40258727908, rel=1e-10)
    free = spcsim.intensity(sd, spcsim.PulseTrain(0, 0.0), TWO_PI)
    assert free.value == pytest.approx(0.3027567982, rel=1e-9)


def test_modulation_matches_amplitude_difference():
    train = spcsim.PulseTrain(3, 1.5)
    t = 3 * 1.5 + 0.7
    alpha, beta = spcsim.displacement_amplitudes(train, 1.2, t)
    delta = spcsim.modulation_delta(train, 1.2, t)
    assert abs(delta - (alpha - beta)) < 1e-13
    terms = spcsim.pair_expansion(train, t)
    assert len(terms) == 5
    assert sum(c for c, _ in terms) == pytest.approx(0.0, abs=1e-14)


def test_trace_grid_and_monotone_time():
    sd = spcsim.SpectralDensity.gaussian()
    tr = spcsim.trace(sd, TWO_PI, -1, 5.0, 0.5, spcsim.QuadratureConfig())
    assert len(tr.points) == 11
    times = [p.t for p in tr.points]
    assert times == sorted(times)
    assert tr.points[0].intensity == pytest.approx(1.0, rel=1e-12)
    assert all(0.0 < p.intensity <= 1.0 + 1e-12 for p in tr.points)


def test_small_sweep_finds_the_resonance():
    sd = spcsim.SpectralDensity.gaussian()
    res = spcsim.sweep(sd, 5.8, 6.6, 0.2, spcsim.AnalysisConfig(), spcsim.QuadratureConfig())
    assert len(res.points) == 5
    assert len(res.maxima) == 1
    assert res.maxima[0].tau_s == pytest.approx(6.2098, abs=0.05)


def test_cross_check_passes_on_a_seeded_schedule():
    sd = spcsim.SpectralDensity.semi_elliptic()
    rep = spcsim.cross_check(
        sd, spcsim.PulseTrain(4, 1.1), 4 * 1.1 + 0.3, 64, spcsim.DiscretizationRule.gauss_weighted
    )
    assert rep.passed
    assert rep.max_amplitude_dev <= 1e-10


CLI = os.environ.get("SPCSIM_CLI")


@pytest.mark.skipif(CLI is None, reason="SPCSIM_CLI not set")
def test_cli_trace_repeat_runs_are_byte_identical():
    cmd = [CLI, "trace", "--t-max", "5", "--dt", "0.25"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout
    header = a.stdout.decode().splitlines()[0]
    assert header == "t_scaled,intensity,exponent,n_pulses,err"


@pytest.mark.skipif(CLI is None, reason="SPCSIM_CLI not set")
def test_cli_usage_error_exit_code():
    proc = subprocess.run([CLI, "trace", "--spectrum", "nosuch"], capture_output=True)
    assert proc.returncode == 1
    assert b"unknown spectral family" in proc.stderr


@pytest.mark.skipif(CLI is None, reason="SPCSIM_CLI not set")
def test_cli_report_verdict():
    import json

    proc = subprocess.run([CLI, "report", "--spectrum", "lorentzian"], capture_output=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["interaction_mode"]["verdict"] == "markovian-like"
