import csv
import io
import json

import numpy as np
import pytest

from infospec import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestCompute:
    def test_underline(self, capsys):
        code, rec = run_json(capsys, "compute", "underline-Ds", "diag:0.75,0.25", "maxmixed:2", "--eps", "0.25")
        assert code == 0 and rec["value"] == -2.0 and rec["schema_version"] == 1
        assert rec["conventions"]["log_base"] == 2

    def test_relent(self, capsys):
        code, rec = run_json(capsys, "compute", "relent", "diag:0.75,0.25", "maxmixed:2")
        assert code == 0 and rec["value"] == 0.188721875541

    def test_dmax0(self, capsys):
        code, rec = run_json(capsys, "compute", "dmax0", "diag:1,0", "maxmixed:2")
        assert code == 0 and abs(rec["value"] - 1) <= 1e-12

    def test_infinite_serialized(self, capsys):
        code, rec = run_json(capsys, "compute", "dmax0", "maxmixed:2", "diag:1,0")
        assert code == 0 and rec["value"] == "inf"

    def test_matrix_file(self, capsys, tmp_path):
        f = tmp_path / "rho.json"
        f.write_text(json.dumps({"re": [[0.75, 0], [0, 0.25]], "im": [[0, 0], [0, 0]]}))
        code, rec = run_json(capsys, "compute", "relent", str(f), "maxmixed:2")
        assert code == 0 and rec["value"] == 0.188721875541

    def test_out_file(self, capsys, tmp_path):
        f = tmp_path / "r.json"
        code, _, _ = run(capsys, "compute", "relent", "diag:0.75,0.25", "maxmixed:2", "--format", "json",
                         "--out", str(f))
        assert code == 0 and json.loads(f.read_text())["record"] == "compute"


class TestUsageErrors:
    def test_bad_quantity(self, capsys):
        assert run(capsys, "compute", "nonsense", "maxmixed:2")[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "compute", "relent", str(tmp_path / "none.json"), "maxmixed:2")
        assert code == 2 and "error" in err

    def test_bad_eps(self, capsys):
        assert run(capsys, "compute", "H-overline", "maxmixed:4", "--eps", "1.5")[0] == 2

    def test_non_hermitian(self, capsys, tmp_path):
        f = tmp_path / "m.json"
        f.write_text(json.dumps({"re": [[1, 1], [0, 0]]}))
        assert run(capsys, "compute", "relent", str(f), "maxmixed:2")[0] == 2

    def test_unknown_config_key(self, capsys, tmp_path):
        f = tmp_path / "c.cfg"
        f.write_text("colour = blue\n")
        assert run(capsys, "compute", "relent", "diag:0.75,0.25", "maxmixed:2", "--config", str(f))[0] == 2


class TestConfig:
    def test_config_values(self, capsys, tmp_path):
        f = tmp_path / "c.cfg"
        f.write_text("# comment\neps = 0.25\nformat = json\n")
        code, out, _ = run(capsys, "compute", "underline-Ds", "diag:0.75,0.25", "maxmixed:2", "--config", str(f))
        assert code == 0 and json.loads(out)["value"] == -2.0

    def test_flags_win(self, capsys, tmp_path):
        f = tmp_path / "c.cfg"
        f.write_text("eps = 0.9\n")
        code, rec = run_json(capsys, "compute", "underline-Ds", "diag:0.75,0.25", "maxmixed:2",
                             "--eps", "0.25", "--config", str(f))
        assert rec["epsilon"] == 0.25


class TestExpand:
    def test_source(self, capsys):
        code, rec = run_json(capsys, "expand", "source_visible", "builtin:two-state-source", "--eps", "0.1")
        ex = rec["expansions"][0]
        assert code == 0 and abs(ex["a"] - 0.600876036693) <= 1e-11 and ex["b"] > 0

    def test_dense_bell(self, capsys):
        code, rec = run_json(capsys, "expand", "dense_coding", "builtin:phi+:2", "--eps", "0.1",
                             "--channel", "identity")
        ex = rec["expansions"][0]
        assert code == 0 and abs(ex["a"] - 2) <= 1e-11 and abs(ex["b"]) <= 1e-11


def _csv(text):
    return list(csv.reader(io.StringIO(text)))


class TestFigure:
    def test_header(self, capsys):
        code, out, _ = run(capsys, "figure", "rate_curve", "builtin:two-state-source", "--n-grid", "1,10,100")
        rows = _csv(out)
        assert code == 0 and tuple(rows[0]) == cli.CSV_COLUMNS and len(rows) == 4

    def test_below_entropy_marker(self, capsys):
        code, out, _ = run(capsys, "figure", "below_entropy", "builtin:two-state-source", "--eps", "0.9",
                           "--n-grid", "1,2,3")
        rows = _csv(out)
        assert rows[-1][0] == "S"
        assert all(float(r[1]) < float(rows[-1][1]) for r in rows[1:-1])

    def test_irreversibility_crossover(self, capsys):
        code, out, _ = run(capsys, "figure", "irreversibility", "schmidt:0.7,0.3", "--eps", "0.1",
                           "--delta", "0.1", "--n-grid", "1,2")
        rows = _csv(out)
        assert rows[-1][0] == "crossover_n" and rows[-1][1] == "1"
        g = [float(r[1]) for r in rows[1:-1]]
        assert abs(g[1] / g[0] - np.sqrt(2)) <= 1e-10


class TestProtocol:
    def test_concentration_failure_exit(self, capsys):
        code, out, _ = run(capsys, "protocol", "concentrate", "schmidt:0.7,0.3", "--eps", "0.3", "--eta", "0.1")
        assert code == 1 and "tr(Q rho_A)" in out

    def test_dilute(self, capsys):
        code, rec = run_json(capsys, "protocol", "dilute", "schmidt:0.7,0.2,0.1", "--eps", "0.15")
        assert code == 0

    def test_visible(self, capsys):
        code, rec = run_json(capsys, "protocol", "visible", "builtin:two-state-source", "--eps", "0.2")
        assert code == 0 and rec["schema_version"] == 1 and rec["M"] >= 1


class TestVerify:
    def test_csv_columns(self, capsys):
        code, out, err = run(capsys, "verify", "classical", "--trials", "5", "--format", "csv")
        rows = _csv(out)
        assert code == 0 and rows[0][:3] == ["suite", "property", "trials"]
        assert "failures" in err

    def test_deterministic(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            f = tmp_path / f"r{k}.json"
            code, _, _ = run(capsys, "verify", "core_lemmas", "--trials", "20", "--seed", "3", "--out", str(f))
            assert code == 0
            outs.append(f.read_bytes())
        assert outs[0] == outs[1]
        rep = json.loads(outs[0])
        assert rep["schema_version"] == 1 and "seconds" not in json.dumps(rep)

    def test_seed_changes_report(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "verify", "core_lemmas", "--trials", "20", "--seed", "3", "--out", str(a))
        run(capsys, "verify", "core_lemmas", "--trials", "20", "--seed", "4", "--out", str(b))
        assert a.read_bytes() != b.read_bytes()


def test_fmt_rounding():
    assert cli.fmt(0.1 + 0.2) == "0.3"
    assert cli.fmt(float("inf")) == "inf" and cli.fmt(-float("inf")) == "-inf"
