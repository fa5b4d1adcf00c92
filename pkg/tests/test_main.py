import numpy as np
import orjson
import pytest

from hrg.config import EDGES_FILE, HISTOGRAM_FILE, PREDICTION_FILE, REPORT_FILE, ExitCode
from hrg.formats import read_graph
from hrg.main import run
from hrg.model import hyperbolic_distance


def generate(out, *flags: str) -> int:
    return run(["generate", "--out", str(out), "--quiet", *flags])


def test_generate_is_reproducible(tmp_path, capsys):
    for name in ("a", "b"):
        assert generate(tmp_path / name, "--n", "10", "--seed", "5") == ExitCode.OK
    assert (tmp_path / "a" / EDGES_FILE).read_bytes() == (tmp_path / "b" / EDGES_FILE).read_bytes()
    assert "[generate] N=10" in capsys.readouterr().out


def test_disc_graph_reloads_with_short_edges(tmp_path):
    assert generate(tmp_path, "--n", "100", "--disc", "--generator", "naive") == ExitCode.OK
    g = read_graph(tmp_path)
    assert g.params.disc
    u, v = g.edges[:, 0], g.edges[:, 1]
    pos = g.positions
    d = hyperbolic_distance(pos.r[u], pos.theta[u], pos.r[v], pos.theta[v], g.params.zeta)
    assert (d < g.params.radius).all()


def predict(tmp_path, capsys, *flags: str) -> tuple[int, dict]:
    code = run(["predict", "--out", str(tmp_path), *flags])
    return code, orjson.loads(capsys.readouterr().out)


def test_predict_cold(tmp_path, capsys):
    code, payload = predict(tmp_path, capsys)
    assert code == ExitCode.OK
    assert payload["schema"] == 1
    assert payload["k_const"] == pytest.approx(2.0)
    assert payload["exponent"] == 3.0
    assert payload["growth"] == "constant"
    assert payload["mean_degree_limit"] == pytest.approx(4.0)
    assert orjson.loads((tmp_path / PREDICTION_FILE).read_bytes()) == payload


def test_predict_critical(tmp_path, capsys):
    code, payload = predict(tmp_path, capsys, "--beta", "1")
    assert code == ExitCode.OK
    assert payload["growth"] == "logarithmic"
    assert payload["exponent"] is None
    assert "mp_pmf" not in payload


def test_predict_hot_undefined(tmp_path, capsys):
    code, payload = predict(tmp_path, capsys, "--zeta", "3", "--beta", "0.9")
    assert code == ExitCode.VALIDATION
    assert "hot-regime constant undefined" in payload["error"]
    assert not (tmp_path / PREDICTION_FILE).exists()


def test_validate_refuses_outside_theory(tmp_path, capsys):
    code = run(["validate", "--out", str(tmp_path), "--zeta", "2", "--quiet"])
    assert code == ExitCode.VALIDATION
    assert "Refused" in capsys.readouterr().err
    assert orjson.loads((tmp_path / "validation.json").read_bytes())["passed"] is False


def test_usage_errors(tmp_path):
    assert run(["generate", "--bogus"]) == ExitCode.USAGE
    assert run([]) == ExitCode.USAGE
    assert run(["generate", "--n", "0", "--out", str(tmp_path)]) == ExitCode.USAGE
    assert run(["--help"]) == ExitCode.OK


def test_missing_config_is_an_io_error(tmp_path):
    assert run(["generate", "--config", str(tmp_path / "none.json")]) == ExitCode.IO


def test_missing_graph_is_an_io_error(tmp_path):
    assert run(["analyze", "--out", str(tmp_path)]) == ExitCode.IO


def test_config_file_is_used(tmp_path):
    config = tmp_path / "run.json"
    config.write_bytes(orjson.dumps({"n": 30, "seed": 2, "out": str(tmp_path / "g")}))
    assert run(["generate", "--config", str(config), "--n", "40"]) == ExitCode.OK
    assert read_graph(tmp_path / "g").n == 40


def test_analyze_after_generate(tmp_path, capsys):
    assert generate(tmp_path, "--n", "2000", "--seed", "1") == ExitCode.OK
    assert run(["analyze", "--out", str(tmp_path), "--k-min", "5"]) == ExitCode.OK
    report = orjson.loads((tmp_path / REPORT_FILE).read_bytes())
    g = read_graph(tmp_path)
    assert report["n_edges"] == g.n_edges
    assert report["report"]["mean_degree"] == pytest.approx(2 * g.n_edges / g.n)
    assert 0.0 <= report["clustering_coefficient"] <= 1.0
    header = (tmp_path / HISTOGRAM_FILE).read_text().splitlines()[0]
    assert header == "k,n_k,frac,mp_pmf"
    assert "[analysis] mean degree=" in capsys.readouterr().out


def test_scale(tmp_path):
    flags = ["--n-grid", "50,100,200,400", "--replicates", "2", "--generator", "naive"]
    assert run(["scale", "--out", str(tmp_path), "--quiet", *flags]) == ExitCode.OK
    payload = orjson.loads((tmp_path / "scaling.json").read_bytes())
    assert [row["n"] for row in payload["rows"]] == [50, 100, 200, 400]
    assert np.isfinite(payload["linear_fit"]["slope"])
