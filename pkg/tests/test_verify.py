"""Unit coverage for the verify battery's hooks and cheap checks.

The full battery runs in the acceptance tests; here the individual pieces
are exercised at small scale, including that the mutation context manager
really patches and restores the evaluation bindings.
"""

import json

from coarse_chains import FlatPair, fill, thom_crossing
from coarse_chains.cli import main
from coarse_chains.verify import (
    _check_fill_boundary,
    _check_snf_cross,
    _check_transport,
    _patched_thom_sign,
)


def test_patched_thom_sign_restores_bindings():
    pair = FlatPair(2, 1)
    down = fill([(0, 1), (0, -1)])
    assert thom_crossing(down, pair) == -1
    with _patched_thom_sign():
        from coarse_chains import geometry, wrongway, equivariant

        assert geometry.thom_crossing(down, pair) == 1
        assert wrongway.thom_crossing is geometry.thom_crossing
        assert equivariant.thom_crossing is geometry.thom_crossing
    assert thom_crossing(down, pair) == -1
    from coarse_chains import geometry

    assert geometry.thom_crossing is thom_crossing


def test_check_fill_boundary_passes():
    ok, detail = _check_fill_boundary(1, 50)
    assert ok and "50" in detail


def test_check_snf_cross_clean_and_mutated():
    ok, _ = _check_snf_cross(transpose_mutation=False)
    assert ok
    bad, detail = _check_snf_cross(transpose_mutation=True)
    assert not bad
    assert "shape mismatch" in detail or "compose" in detail or "betti" in detail


def test_check_transport_reports_signs():
    ok, detail = _check_transport()
    assert ok
    assert "T^2->T^1" in detail


def test_cli_verify_glue(tmp_path, capsys, monkeypatch):
    # The CLI prints one line per check, writes the canonical report, and
    # converts the pass flag into the exit code.
    import coarse_chains.cli as cli

    stub = {
        "suite": "coarse-chains-verify",
        "mutation": None,
        "checks": [
            {"name": "alpha", "status": "pass", "detail": "fine"},
            {"name": "beta", "status": "fail", "detail": "broken"},
        ],
        "passed": False,
    }
    monkeypatch.setattr(cli, "run_verify", lambda mutation=None: stub)
    out_path = tmp_path / "report.json"
    code = main(["verify", "--out", str(out_path)])
    assert code == 1
    printed = capsys.readouterr().out
    assert "PASS alpha: fine" in printed
    assert "FAIL beta: broken" in printed
    assert json.loads(out_path.read_text()) == stub
