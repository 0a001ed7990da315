import json
import math

import pytest

from duk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timestamp(payload):
    payload = json.loads(payload) if isinstance(payload, str) else payload
    payload["manifest"].pop("timestamp")
    return payload


def test_area_right_angle(capsys):
    code, out, _ = run(capsys, "area", "--inline", "[[1,0],[0,1]]")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["remote"] is True
    assert res["closed_form"] == pytest.approx(3 * math.pi / 2 + 1, rel=1e-14)
    assert res["oracle"] == pytest.approx(res["closed_form"], rel=1e-9)
    assert res["abs_diff"] <= 1e-12


def test_area_single_disk_from_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text("[[2, 0]]")
    code, out, _ = run(capsys, "area", "--input", str(path), "--out", str(tmp_path / "r.json"))
    assert code == 0
    res = json.loads((tmp_path / "r.json").read_text())["result"]
    assert res["closed_form"] == pytest.approx(4 * math.pi)
    assert res["oracle"] == pytest.approx(4 * math.pi)


def test_area_reports_permutation(capsys):
    code, out, _ = run(capsys, "area", "--inline", "[[0,1],[1,0]]")
    res = json.loads(out)["result"]
    assert res["permutation"] == [1, 0]
    assert res["sorted_config"] == [[1.0, 0.0], [0.0, 1.0]]


def test_area_non_remote(capsys):
    code, out, _ = run(capsys, "area", "--inline", "[[1,0],[1.9,0]]")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["remote"] is False
    assert res["oracle"] == pytest.approx(math.pi * 1.9**2)
    assert "warning" in res


def test_area_non_remote_closed_form_labelled(capsys):
    code, out, _ = run(capsys, "area", "--inline", "[[1,0],[0.2,0.5]]")
    res = json.loads(out)["result"]
    assert res["remote"] is False and res["closed_form"] is not None
    assert "validity" in res["warning"]


@pytest.mark.parametrize("text", ["[[1,0],[0]]", "not json", "[]", '{"a": 1}'])
def test_area_malformed_input(capsys, text):
    code, _, err = run(capsys, "area", "--inline", text)
    assert code == 2 and err


def test_area_origin_center(capsys):
    code, _, _ = run(capsys, "area", "--inline", "[[1,0],[0,0]]")
    assert code == 3


def test_cn_two(tmp_path, capsys):
    out_path = tmp_path / "c2.json"
    code, out, _ = run(capsys, "cn", "--n", "2", "--rel-tol", "1e-5", "--out", str(out_path))
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert abs(payload["result"]["value"] - 0.316585) <= 5e-4
    assert payload["manifest"]["command"] == "cn"
    assert set(payload["result"]) == {"value", "error_estimate", "evaluations", "converged"}


def test_cn_non_convergence_exit_code(tmp_path, capsys):
    out_path = tmp_path / "c3.json"
    code, _, _ = run(capsys, "cn", "--n", "3", "--rel-tol", "1e-6", "--max-evals", "5000", "--out", str(out_path))
    assert code == 4
    assert json.loads(out_path.read_text())["result"]["converged"] is False


def test_cn_unsupported_n(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cn", "--n", "4"])
    assert exc.value.code == 2
    assert "choose from 2, 3" in capsys.readouterr().err


def test_validate_small_run_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "validate", "--trials", "1", "--n", "2", "--seed", "9", "--out", str(a))[0] == 0
    assert run(capsys, "validate", "--trials", "1", "--n", "2", "--seed", "9", "--out", str(b))[0] == 0
    assert strip_timestamp(a.read_text()) == strip_timestamp(b.read_text())
    res = json.loads(a.read_text())["result"]
    assert res["worst"]["n"] == 2 and res["passed"]


def test_validate_zero_trials(capsys):
    code, _, _ = run(capsys, "validate", "--trials", "0")
    assert code == 2


def test_validate_bad_n(capsys):
    assert run(capsys, "validate", "--trials", "3", "--n", "2,7")[0] == 2
    assert run(capsys, "validate", "--trials", "3", "--n", "x")[0] == 2


def test_validate_failure_exit_code(monkeypatch, capsys):
    import duk.validation

    real = duk.validation.union_area
    monkeypatch.setattr(duk.validation, "union_area", lambda c: real(c) * (1 + 1e-6))
    code, out, _ = run(capsys, "validate", "--trials", "5", "--seed", "1")
    assert code == 5
    assert json.loads(out)["result"]["passed"] is False


def test_mc_cn_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["mc-cn", "--n", "2", "--samples", "100000", "--radius", "3", "--seed", "7"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    pa, pb = strip_timestamp(a.read_text()), strip_timestamp(b.read_text())
    assert pa == pb
    assert pa["manifest"]["seed"] == 7
    assert "truncation_bias" in pa["result"] and "rng" in pa["result"]


def test_mc_cn_errors_exit_six(capsys):
    assert run(capsys, "mc-cn", "--n", "4", "--samples", "100000")[0] == 6
    assert run(capsys, "mc-cn", "--n", "2", "--samples", "10")[0] == 6


def test_mc_cn_experimental(capsys):
    code, out, _ = run(capsys, "mc-cn", "--n", "1", "--samples", "100000", "--experimental")
    assert code == 0
    # c_1 = integral of exp(-pi r^2) over the plane = 1
    res = json.loads(out)["result"]
    assert abs(res["value"] - 1.0) <= 4 * res["std_error"]


def test_render_writes_svg(tmp_path, capsys):
    out_path = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "render", "--inline", "[[1,0],[0,1]]", "--out", str(out_path))
    assert code == 0
    assert out_path.read_text().count('class="disk"') == 2


def test_render_malformed(capsys):
    assert run(capsys, "render", "--inline", "[[1,0],")[0] == 2
