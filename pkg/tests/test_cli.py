import csv
import io
import json
import os
import subprocess
import sys

import pytest

from laakso.cli import main, parse_complex, parse_range


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def table(text):
    return list(csv.reader(io.StringIO(text)))


def test_spectrum_examples(capsys):
    code, out, _ = run(["spectrum", "--j", "2", "--variant", "free", "--cutoff", "15"], capsys)
    assert code == 0
    rows = table(out)
    assert rows[0] == ["lambda", "multiplicity", "symbolic"]
    assert [r[1] for r in rows[1:]] == ["1", "3"]
    assert float(rows[2][0]) == pytest.approx(9.8696044, rel=1e-7)
    code, out, _ = run(["spectrum", "--j", "2", "--variant", "finite", "--level", "0",
                        "--cutoff", "50"], capsys)
    assert code == 0 and len(table(out)) == 4
    code, _, err = run(["spectrum", "--j", "5", "--variant", "plated", "--cutoff", "50"], capsys)
    assert code == 2 and "--Z" in err


def test_oracle_examples(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code, _, _ = run(["oracle", "--j", "2", "--level", "2", "--mesh", "512", "--cutoff", "400",
                      "--format", "json", "--out", str(out)], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["columns"] == ["lambda", "closed_mult", "oracle_mult", "rel_err", "status"]
    assert all(r["status"] == "match" for r in doc["rows"])
    assert json.loads((tmp_path / "rep.audit.json").read_text())["ok"] is True
    code, _, _ = run(["oracle", "--j", "2", "--level", "5", "--cutoff", "10"], capsys)
    assert code == 3
    code, out, _ = run(["oracle", "--j", "5", "--level", "1", "--dirichlet-plates", "--Z", "3",
                        "--cutoff", "400"], capsys)
    assert code == 0 and all(r[-1] == "match" for r in table(out)[1:])
    code, _, err = run(["oracle", "--j", "5", "--level", "1", "--dirichlet-plates", "--Z", "2",
                        "--cutoff", "400"], capsys)
    assert code == 2 and "wormholes" in err


def test_oracle_mismatch_exit_code(capsys):
    # a coarse mesh with a tight tolerance cannot match
    code, _, _ = run(["oracle", "--j", "3", "--level", "1", "--mesh", "4", "--cutoff", "400",
                      "--tol", "1e-9"], capsys)
    assert code == 1


def test_poles_example(capsys, tmp_path):
    out = tmp_path / "poles.csv"
    code, _, _ = run(["poles", "--j", "2", "--level", "5", "--re", "0:1.5", "--im", "0:10",
                      "--out", str(out)], capsys)
    assert code == 0
    rows = table(out.read_text())
    assert rows[0] == ["re", "im", "order", "tower", "k"]
    # canonical finite-level zeta: only s = 1/2 survives; towers live in the printed form
    assert [(r[0], r[1]) for r in rows[1:]] == [("0.5", "0")]
    audit = json.loads((tmp_path / "poles.audit.json").read_text())
    assert len(audit["printed_form_poles"]) >= 2
    # removable candidates are reported with a vanishing order slope
    assert audit["rejected"] and all(abs(r["slope"]) < 0.1 for r in audit["rejected"])


def test_casimir_pressure(capsys):
    code, out, _ = run(["casimir", "pressure", "--j", "2", "--d", "1"], capsys)
    rows = table(out)
    assert code == 0 and rows[0] == ["j_or_seq", "d", "pressure", "units", "exact"]
    assert rows[1][4] == "7/31"


def test_casimir_other_kinds(capsys):
    for args in (["energy", "--j", "5", "--Z", "3"], ["force", "--j", "5", "--Z", "3", "--X0", "0.3"],
                 ["force-numeric", "--j", "5", "--Z", "3", "--X0", "3/10"],
                 ["pressure-periodic", "--j", "2,3", "--d", "2"], ["energy3d", "--j", "2"],
                 ["cross"]):
        code, out, err = run(["casimir"] + args, capsys)
        assert code == 0, (args, err)
        assert len(table(out)) == 2 or args[0] == "cross"
    code, _, _ = run(["casimir", "pressure", "--j", "2,3"], capsys)
    assert code == 2


def test_sweep_example(tmp_path, capsys):
    out = tmp_path / "force.csv"
    code, _, _ = run(["sweep", "--j", "256", "--Z", "1:125", "--out", str(out)], capsys)
    assert code == 0
    rows = table(out.read_text())
    assert rows[0] == ["Z", "X0", "force"] and len(rows) == 126
    audit = json.loads((tmp_path / "force.audit.json").read_text())
    assert len(audit["crossovers"]) == 1
    # nothing but the two outputs is left behind
    assert sorted(p.name for p in tmp_path.iterdir()) == ["force.audit.json", "force.csv"]


def test_zeta_grid_and_guards(capsys, tmp_path):
    code, out, _ = run(["zeta", "--j", "2", "--re", "1.5:2.5:0.5", "--im", "0:1"], capsys)
    rows = table(out)
    assert code == 0 and rows[0] == ["re_s", "im_s", "re_val", "im_val"] and len(rows) == 7
    code, _, err = run(["zeta", "--j", "2", "--s", "0.5"], capsys)
    assert code == 4
    code, _, _ = run(["zeta", "--j", "2", "--s", "1+4.532360141827194i"], capsys)
    assert code == 4
    code, _, _ = run(["zeta", "--j", "2", "--s", "banana"], capsys)
    assert code == 2
    out = tmp_path / "z.csv"
    code, _, _ = run(["zeta", "--j", "2", "--variant", "finite", "--level", "5", "--s", "2",
                      "--out", str(out)], capsys)
    assert code == 0 and (tmp_path / "z.audit.json").exists()


def test_validation_exit_codes(capsys):
    for args in (["spectrum", "--j", "1", "--cutoff", "5"],
                 ["spectrum", "--j", "2,x", "--cutoff", "5"],
                 ["spectrum", "--j", "2,3", "--period", "3", "--cutoff", "5"],
                 ["poles", "--j", "2", "--level", "5", "--re", "1:0", "--im", "0:1"],
                 ["sweep", "--j", "5", "--Z", "1:9"],
                 ["nonsense"], []):
        code, _, _ = run(args, capsys)
        assert code == 2, args


def test_json_csv_parity(capsys):
    base = ["spectrum", "--j", "3", "--variant", "plated", "--Z", "1", "--cutoff", "500"]
    _, c, _ = run(base, capsys)
    _, j, _ = run(base + ["--format", "json"], capsys)
    rows = table(c)
    doc = json.loads(j)
    assert doc["columns"] == rows[0]
    assert [[r[k] for k in doc["columns"]] for r in doc["rows"]] == rows[1:]


def test_deterministic_output_files(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["zeta", "--j", "2,3", "--variant", "dirichlet", "--re", "1:2:0.25",
                     "--im=-3:3:1.5", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# spectrum settings\nj = 2\nvariant = finite\nlevel = 0\ncutoff = 50\n")
    code, out, _ = run(["--config", str(cfg), "spectrum"], capsys)
    assert code == 0 and len(table(out)) == 4
    # explicit flags win over the file
    code, out, _ = run(["--config", str(cfg), "spectrum", "--cutoff", "15"], capsys)
    assert code == 0 and len(table(out)) == 3
    bad = tmp_path / "bad.cfg"
    bad.write_text("cutoff\n")
    assert run(["--config", str(bad), "spectrum"], capsys)[0] == 2


def test_parsers():
    assert parse_complex("0.5+14.1i") == complex(0.5, 14.1)
    assert parse_complex("2") == 2
    assert parse_range("0:1.5") == (0.0, 1.5, None)
    assert parse_range("1:2:0.5") == (1.0, 2.0, 0.5)


def test_console_script_with_thread_cap():
    env = dict(os.environ, LAAKSO_THREADS="1")
    res = subprocess.run([sys.executable, "-m", "laakso.cli", "casimir", "pressure", "--j", "5"],
                         capture_output=True, text=True, env=env, check=False)
    assert res.returncode == 0
    assert table(res.stdout)[1][0] == "5"
