import io
import json
import math

import numpy as np
import pytest

from sictool import cli, serialize
from sictool.sic import family_sic


def run(argv, capsys):
    status = cli.main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_parse_t_tokens():
    assert cli.parse_t("0") == 0.0
    assert cli.parse_t("pi/3") == math.pi / 3
    assert cli.parse_t("2pi/9") == 2 * math.pi / 9
    assert cli.parse_t("0.5") == 0.5
    for bad in ("bogus", "nan", "inf", "pi/0"):
        with pytest.raises(cli.UsageError):
            cli.parse_t(bad)


def test_fmt_float_17_digits():
    assert serialize.fmt_float(0.1) == "0.10000000000000001"
    assert serialize.fmt_float(-0.0) == "0"
    assert float(serialize.fmt_float(math.pi)) == math.pi


def test_sic_json_round_trip():
    povm = family_sic(0.4)
    data = json.loads(serialize.dumps(serialize.sic_to_dict(povm)))
    assert list(data) == ["t", "vectors"]
    assert len(data["vectors"]) == 9 and len(data["vectors"][0]) == 3
    back = serialize.sic_from_dict(data)
    np.testing.assert_array_equal(back.vectors, povm.vectors)
    assert back.t == 0.4


def test_state_file_round_trip():
    states = family_sic(0.4).vectors
    buf = io.StringIO()
    serialize.write_states(states, buf)
    back = serialize.read_states(io.StringIO("# comment\n\n" + buf.getvalue()))
    np.testing.assert_allclose(back, states, atol=1e-16)
    with pytest.raises(ValueError):
        serialize.read_states(io.StringIO("1 0 0\n"))


def test_minimize_text(capsys):
    status, out, _ = run(["minimize", "--t", "0.6283"], capsys)
    assert status == 0
    assert "min entropy 1.791759" in out
    assert "3 minimizer state(s)" in out


def test_power_t0(capsys):
    status, out, _ = run(["power", "--t", "0", "--format", "json"], capsys)
    rep = json.loads(out)
    assert status == 0
    assert abs(rep["power_nats"] - 0.405465) < 1e-6
    assert len(rep["ensembles"]) == 4


def test_certify_json(capsys):
    status, out, _ = run(["certify", "--format", "json"], capsys)
    rep = json.loads(out)
    assert status == 0
    assert list(rep) == ["bound_nats", "coefficients", "grid_margin", "power_nats"]
    assert abs(rep["bound_nats"] - math.log(6)) < 1e-12
    assert rep["grid_margin"] >= -1e-12


def test_minimize_json_schema(capsys):
    status, out, _ = run(["minimize", "--t", "2pi/9", "--format", "json"], capsys)
    rep = json.loads(out)
    assert status == 0
    for key in ("t", "min_entropy_nats", "minimizers", "bases", "mub_pairs", "ensembles"):
        assert key in rep
    assert len(rep["minimizers"]) == 12
    assert len(rep["bases"]) == 4 and len(rep["mub_pairs"]) == 6
    assert len(rep["ensembles"]) == 2
    assert rep["routes"]["geometric_matches_numeric"]


def test_json_byte_identical(capsys):
    outs = [run(["minimize", "--t", "0.3", "--format", "json", "--seed", "7"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_seed_env_var(capsys, monkeypatch):
    monkeypatch.setenv("SICTOOL_SEED", "123")
    _, out, _ = run(["power", "--t", "0.3", "--format", "json", "--restarts", "20"], capsys)
    assert json.loads(out)["seed"] == 123
    _, out, _ = run(["power", "--t", "0.3", "--format", "json", "--restarts", "20", "--seed", "5"], capsys)
    assert json.loads(out)["seed"] == 5
    monkeypatch.setenv("SICTOOL_SEED", "-4")
    assert run(["power", "--restarts", "5"], capsys)[0] == 1


def test_gen_and_verify_file(tmp_path, capsys):
    path = tmp_path / "sic.json"
    assert cli.main(["gen", "--t", "pi/3", "--format", "json", "--output", str(path)]) == 0
    status, out, _ = run(["verify", "--file", str(path)], capsys)
    assert status == 0 and "PASS" in out


def test_verify_perturbed_file_fails(tmp_path, capsys):
    vecs = family_sic(0.5).vectors.copy()
    vecs[3] = vecs[3] + 0.05 * np.array([1, -1, 0.5])
    path = tmp_path / "bad.txt"
    with open(path, "w") as fh:
        serialize.write_states(vecs, fh)
    status, out, _ = run(["verify", "--file", str(path)], capsys)
    assert status == 2 and "FAIL" in out


def test_verify_wrong_count(tmp_path, capsys):
    path = tmp_path / "three.txt"
    path.write_text("1 0 0 0 0 0\n0 0 1 0 0 0\n0 0 0 0 1 0\n")
    assert run(["verify", "--file", str(path)], capsys)[0] == 2


def test_triples_json(capsys):
    status, out, _ = run(["triples", "--t", "2pi/9", "--format", "json"], capsys)
    rep = json.loads(out)
    assert rep["count"] == 12
    assert [[0, 0], [1, 2], [2, 0]] in [d["indices"] for d in rep["triples"]]


def test_landscape_csv(tmp_path):
    path = tmp_path / "land.csv"
    assert cli.main(["landscape", "--t", "0.3", "--points", "3", "--output", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "theta1,theta2,chi1,chi2,entropy"
    assert len(lines) == 1 + 3**4


def test_mubs_file(tmp_path, capsys):
    from sictool.minimizers import geometric_minimizers

    path = tmp_path / "states.txt"
    with open(path, "w") as fh:
        serialize.write_states(geometric_minimizers(family_sic(0.0)).states, fh)
    status, out, _ = run(["mubs", "--file", str(path), "--t", "0", "--format", "json"], capsys)
    rep = json.loads(out)
    assert status == 0
    assert len(rep["bases"]) == 4 and rep["all_mutually_unbiased"]
    assert all(abs(h - math.log(6)) < 1e-10 for h in rep["entropies_nats"])


@pytest.mark.parametrize(
    "argv",
    [
        ["minimize", "--t", "bogus"],
        ["minimize", "--bogus-flag"],
        ["frobnicate"],
        ["mubs", "--file", "/nonexistent/states.txt"],
        ["gen", "--format", "csv"],
        ["minimize", "--restarts", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(cli.main(argv))
    assert exc.value.code == 1


def test_run_config_defaults():
    cfg = cli.config_from_args(["gen"])
    assert (cfg.seed, cfg.restarts, cfg.fmt) == (42, 200, "text")
