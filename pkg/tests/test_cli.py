"""End-to-end tests of the command line interface.

Every command is compared against the library call it wraps; the CLI adds
serialization, never new numerics.
"""

import csv
import io
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

import polyfock.cli as cli
from polyfock.cli import main
from polyfock.kernels import KernelSpec, kernel_F, kernel_H, kernel_S, kernel_true_poly
from polyfock.multiindex import build_index_table
from polyfock.spectral import R_F_kernel_image
from polyfock.symbols import gamma_toeplitz, polynomial
from polyfock.verify import CaseResult, VerificationReport


def _run_json(capsys, argv):
    rc = main(argv)
    assert rc == 0
    return json.loads(capsys.readouterr().out)


def _pairs_to_complex(pairs):
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def test_indices_matches_table(capsys):
    payload = _run_json(capsys, ["indices", "--n", "2", "--m", "3"])
    table = build_index_table(2, 3)
    assert payload["n"] == 2 and payload["m"] == 3 and payload["d"] == table.d
    assert len(payload["indices"]) == table.d
    for entry in payload["indices"]:
        assert tuple(entry["index"]) == table.phi(entry["position"])


def test_kernel_eval_default_points_match_library(capsys):
    payload = _run_json(capsys, [
        "kernel", "eval", "--space", "F", "--n", "1", "--m", "2",
        "--alpha", "1.5", "--seed", "11",
    ])
    z = _pairs_to_complex(payload["points"]["z"])
    w = _pairs_to_complex(payload["points"]["w"])
    expected = kernel_F(KernelSpec(1, 2, 1.5), z, w)
    assert_allclose(_pairs_to_complex(payload["values"]), expected, rtol=1e-14)

    # the sample is seed deterministic
    again = _run_json(capsys, [
        "kernel", "eval", "--space", "F", "--n", "1", "--m", "2",
        "--alpha", "1.5", "--seed", "11",
    ])
    assert again == payload


def test_kernel_eval_points_file(tmp_path, capsys):
    rng = np.random.default_rng(2)
    pts = {key: rng.uniform(-1, 1, 5).tolist() for key in ("x", "y", "u", "v")}
    path = tmp_path / "points.json"
    path.write_text(json.dumps(pts))
    payload = _run_json(capsys, [
        "kernel", "eval", "--space", "H", "--n", "1", "--m", "3",
        "--points", str(path),
    ])
    expected = kernel_H(1, 3,
                        np.asarray(pts["x"])[:, None], np.asarray(pts["y"])[:, None],
                        np.asarray(pts["u"])[:, None], np.asarray(pts["v"])[:, None])
    assert_allclose(_pairs_to_complex(payload["values"]), expected, rtol=1e-14)


def test_kernel_eval_complex_points_file(tmp_path, capsys):
    # n = 1 convenience shape (count, 2) for [re, im]
    z = [[0.3, -0.2], [0.1, 0.4]]
    w = [[-0.5, 0.1], [0.2, 0.2]]
    path = tmp_path / "zw.json"
    path.write_text(json.dumps({"z": z, "w": w}))
    payload = _run_json(capsys, [
        "kernel", "eval", "--space", "S", "--n", "1", "--m", "2",
        "--sigma", "0.8", "--points", str(path),
    ])
    zc = _pairs_to_complex(z)[:, None]
    wc = _pairs_to_complex(w)[:, None]
    assert_allclose(_pairs_to_complex(payload["values"]),
                    kernel_S(1, 2, 0.8, zc, wc), rtol=1e-14)
    assert payload["sigma"] == 0.8


def test_kernel_eval_true_poly_default_type(capsys):
    payload = _run_json(capsys, [
        "kernel", "eval", "--space", "true", "--n", "2", "--m", "2", "--seed", "3",
    ])
    z = _pairs_to_complex(payload["points"]["z"])
    w = _pairs_to_complex(payload["points"]["w"])
    expected = kernel_true_poly(KernelSpec(2, 2, 1.0), [2, 2], z, w)
    assert_allclose(_pairs_to_complex(payload["values"]), expected, rtol=1e-14)
    assert payload["beta"] == [2, 2]


def test_fiber_matches_library(capsys):
    payload = _run_json(capsys, [
        "fiber", "--n", "1", "--m", "3", "--alpha", "1.2",
        "--xi", "0.7", "--input", "kernel:iy=0.4",
    ])
    fiber = R_F_kernel_image(KernelSpec(1, 3, 1.2), [0.4], [0.7])
    assert_allclose(_pairs_to_complex(payload["components"]),
                    fiber.components, rtol=1e-13)
    assert payload["xi"] == [0.7]


def test_symbol_gamma_grid_matches_library(capsys):
    payload = _run_json(capsys, [
        "symbol", "gamma", "--n", "1", "--m", "2",
        "--g", "poly:0,1", "--xi-grid", "-2:2:5",
    ])
    assert payload["xi"] == [-2.0, -1.0, 0.0, 1.0, 2.0]
    table = build_index_table(1, 2)
    g = polynomial([0.0, 1.0])
    for value, matrix in zip(payload["xi"], payload["matrices"]):
        expected = gamma_toeplitz(table, g, [value]).entries
        assert_allclose(_pairs_to_complex(matrix), expected, atol=1e-14)


def test_symbol_gamma_csv_output(capsys):
    rc = main(["symbol", "gamma", "--n", "1", "--m", "2", "--g", "sign",
               "--xi-grid", "0:1:3", "--format", "csv"])
    assert rc == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0][0] == "xi"
    assert len(rows) == 4  # header + 3 grid points
    assert len(rows[1]) == 1 + 2 * 4  # d = 2, so 4 complex entries
    # first grid point is xi = 0, where the sign symbol has zero diagonal
    assert float(rows[1][1]) == pytest.approx(0.0, abs=1e-12)


def test_emit_writes_file(tmp_path):
    out = tmp_path / "indices.json"
    rc = main(["emit", "indices", "--n", "1", "--m", "4", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["d"] == 4

    with pytest.raises(SystemExit) as err:
        main(["emit", "indices", "--n", "1", "--m", "4"])
    assert err.value.code == 2


def test_emit_unwritable_path_returns_1(tmp_path, capsys):
    rc = main(["emit", "indices", "--n", "1", "--m", "2",
               "--out", str(tmp_path / "missing" / "x.json")])
    assert rc == 1
    assert "could not write" in capsys.readouterr().err


def test_missing_points_file_returns_1(capsys):
    rc = main(["kernel", "eval", "--space", "F", "--n", "1", "--m", "1",
               "--points", "/no/such/points.json"])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_2(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["kernel", "eval", "--space", "Q", "--n", "1", "--m", "1"])
    assert err.value.code == 2

    # S without a scale
    with pytest.raises(SystemExit) as err:
        main(["kernel", "eval", "--space", "S", "--n", "1", "--m", "1"])
    assert err.value.code == 2

    # csv is defined only for matrix payloads
    with pytest.raises(SystemExit) as err:
        main(["kernel", "eval", "--space", "F", "--n", "1", "--m", "1",
              "--format", "csv"])
    assert err.value.code == 2

    with pytest.raises(SystemExit) as err:
        main(["symbol", "gamma", "--n", "1", "--m", "2", "--g", "sign",
              "--xi-grid", "0:1"])
    assert err.value.code == 2

    # malformed points file
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"z": [[0.1, 0.2]]}))
    with pytest.raises(SystemExit) as err:
        main(["kernel", "eval", "--space", "F", "--n", "1", "--m", "1",
              "--points", str(path)])
    assert err.value.code == 2


def test_verify_command_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["verify", "laguerre", "--n-max", "1", "--p-max", "2",
               "--out", str(out)])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert "PASS" in stdout and "FAIL" not in stdout
    report = json.loads(out.read_text())
    assert report["suite"] == "laguerre"
    assert report["passed"] is True
    assert all(case["passed"] for case in report["cases"])


def test_verify_command_failure_exit_code(monkeypatch, capsys):
    failing = VerificationReport(
        suite="sum-products", passed=False,
        cases=(CaseResult(id="forced", max_error=1.0, tolerance=1e-11,
                          passed=False),),
        elapsed_seconds=0.0, params={"seed": 7},
    )
    monkeypatch.setattr(cli, "run_suite", lambda name, config: failing)
    rc = main(["verify", "sum-products"])
    assert rc == 1
    assert "FAIL" in capsys.readouterr().out
