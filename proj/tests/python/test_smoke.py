import json
import math

import numpy as np
import pytest

import gdnls_lab as g


def gaussian(grid, width=1.0, amp=1.0):
    x = grid.x()
    return (amp * np.exp(-0.5 * (x / width) ** 2)).astype(complex)


def test_version_and_metadata():
    assert g.__version__
    assert len(g.list_cases()) >= 8
    assert "Theorem 2.7" in g.describe_case("bilinear_free")
    with pytest.raises(g.ConfigError):
        g.describe_case("unknown")


def test_free_evolution_of_a_plane_wave():
    grid = g.GridSpec(16 * math.pi, 256, -1.0, 1.0, 32)
    x, t = grid.x(), grid.t()
    u = g.free_evolve(np.exp(1.5j * x), grid)
    assert u.shape == (32, 256)
    expect = np.exp(1.5j * x[None, :] - 2.25j * t[:, None])
    assert np.max(np.abs(u - expect)) < 1e-12


def test_duhamel_of_a_free_wave():
    grid = g.GridSpec(16 * math.pi, 256, -1.0, 1.0, 64)
    w = g.free_evolve(gaussian(grid, 2.0), grid)
    assert np.allclose(g.duhamel(w, grid), -1j * grid.t()[:, None] * w, atol=1e-10)


def test_polynomial_parsing():
    assert g.parse_polynomial(g.parse_polynomial("i*dx(|u|^2*u)")) == g.parse_polynomial("i*dx(|u|^2*u)")
    with pytest.raises(g.ParseError, match="3\\*w\\*u"):
        g.parse_polynomial("u^2*ubarx + 3*w*u")


def test_band_projection_of_modes():
    L, nx = 16 * math.pi, 512
    x = -L / 2 + np.arange(nx) * L / nx
    at2N = np.exp(8j * x)
    assert np.allclose(g.project(at2N, L, 4.0), at2N, atol=1e-12)
    assert np.max(np.abs(g.project(np.exp(2j * x), L, 4.0))) < 1e-12


def test_shape_errors_surface_as_library_errors():
    grid = g.GridSpec(16 * math.pi, 256, -1.0, 1.0, 32)
    with pytest.raises(g.Error):
        g.duhamel(np.zeros((3, 3), complex), grid)
    with pytest.raises(g.Error):
        g.GridSpec(16 * math.pi, 100, -1.0, 1.0, 32)


def test_short_estimate_sweep():
    r = g.measure("kernel(gamma=2)", sweep=[1, 2, 4, 8], seeds=1)
    assert r["passed"]
    assert abs(r["measured_exponent"] - 1.0) < 0.1
    assert len(r["samples"]) == 4


def test_run_writes_a_record(tmp_path):
    cfg = {"cases": [{"id": "kernel(gamma=2)", "sweep": [1, 2, 4, 8], "seeds": 1}], "output_dir": str(tmp_path)}
    rec = g.run(json.dumps(cfg))
    assert rec["passed"]
    record = json.loads((tmp_path / "record.json").read_text())
    assert record["cases"][0]["case_id"] == "kernel(gamma=2)"
    assert (tmp_path / "case_00_kernel.csv").read_text().startswith("case_id,parameter,seed,ratio,lhs,rhs\n")
