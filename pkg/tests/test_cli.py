import io
import shutil
import subprocess

import pytest

from fctheory.cli import RunConfig, config_from, main
from fctheory.errors import PreconditionError
from fctheory.io import get_model, write_model

BAD_SYNTAX = "name = x\nlabels = [0, a]\nweights = [0, 1/2\n"
NON_ASSOC = """name = broken
labels = [0, a, b]
weights = [0, 0, 0]
fusion = [[1, 1, 0, 1], [2, 2, 0, 1], [1, 2, 1, 1]]
"""
# d_t = 1 + sqrt2 cannot live in a field of conductor 3..12 built from weight 1/3
NOT_CYCLOTOMIC = """name = silver
labels = [0, t]
weights = [0, 1/3]
fusion = [[1, 1, 0, 1], [1, 1, 1, 2]]
"""


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def _bad_smatrix_model():
    mf = get_model("ds3")
    S = [list(r) for r in mf.smatrix]
    S[1], S[2] = S[2], S[1]
    for r in S:
        r[1], r[2] = r[2], r[1]
    mf.smatrix = S
    return write_model(mf)


def test_exit_codes(write):
    assert run("validate", "catalog:ising")[0] == 0
    code, _, err = run("validate", write("a.model", BAD_SYNTAX))
    assert code == 1 and "line 3" in err
    assert run("validate", write("b.model", NON_ASSOC))[0] == 1
    assert run("info", write("c.model", _bad_smatrix_model()))[0] == 2
    assert run("info", write("d.model", NOT_CYCLOTOMIC))[0] == 3
    assert run("deconstruct", "catalog:ising", "--twister", "0,eps,sigma")[0] == 4
    assert run("galois", "catalog:ising", "--ell", "2")[0] == 4
    assert run("classes", "catalog:ising", "--set", "sigma")[0] == 4
    assert run("info", "catalog:nonesuch")[0] == 4
    assert run("info", "/nonexistent/file.model")[0] == 4
    assert run("--budget", "2", "fcsets", "catalog:ds3")[0] == 4


def test_fcsets_so16():
    code, out, _ = run("fcsets", "catalog:so16_lvl1")
    assert code == 0
    assert "fc_sets: 5" in out
    assert "modular: yes" in out and "distributive: no" in out
    assert "distributive_witness: {0,v} {0,s} {0,c}" in out


def test_deconstruct_toric():
    code, out, _ = run("deconstruct", "catalog:toric_code", "--twister", "1,e")
    assert code == 0
    assert "twister: yes" in out
    assert "twist_group_order: 2" in out
    assert "sectors: 2" in out


def test_galois_records_format():
    code, out, _ = run("--format", "records", "galois", "catalog:fibonacci", "--ell", "2")
    assert code == 0
    assert 'report="theta fibonacci l=2" key=permutation value="(0 tau)"' in out
    assert all(line.startswith("report=") for line in out.splitlines())


def test_verify_and_conjectures_pass():
    code, out, _ = run("verify", "catalog:ds3")
    assert code == 0 and "[FAIL]" not in out
    code, out, _ = run("conjectures", "catalog:ds3", "--suite", "algint,spect,lagrange,charring,nilpdiv")
    assert code == 0 and "counterexamples: 0" in out and "[FAIL]" not in out
    assert run("conjectures", "catalog:ds3", "--suite", "bogus")[0] == 4


def test_reports_are_byte_identical_across_runs():
    for argv in (("verify", "catalog:ising"), ("classes", "catalog:ds3", "--set", "0.0,0.1"),
                 ("--format", "records", "conjectures", "catalog:ds3")):
        assert run(*argv) == run(*argv)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("FCTHEORY_FORMAT", "records")
    code, out, _ = run("info", "catalog:ising")
    assert code == 0 and out.startswith("report=")
    # command-line flags win over the environment
    code, out, _ = run("--format", "text", "info", "catalog:ising")
    assert out.startswith("== info ising ==")


def test_config_checks():
    class A:
        precision_bits = None
        denom_bound = None
        budget = None
        format = None
        seed = None
    cfg = config_from(A(), {"FCTHEORY_PRECISION": "256", "FCTHEORY_SEED": "7"})
    assert cfg.precision_bits == 256 and cfg.seed == 7
    with pytest.raises(PreconditionError):
        RunConfig(precision_bits=32).check()
    with pytest.raises(PreconditionError):
        RunConfig(format="xml").check()


def test_catalog_emit_and_reparse(tmp_path):
    code, out, _ = run("catalog", "--emit", str(tmp_path))
    assert code == 0
    assert (tmp_path / "ising.model").exists()
    assert run("validate", str(tmp_path / "ds3.model"))[0] == 0


def test_double_matches_catalog():
    code, out, _ = run("double", "--group", "s3", "--name", "ds3")
    assert code == 0
    assert out == write_model(get_model("ds3"))
    assert run("double", "--group", "q8")[0] == 4


def test_lattice_dot_output(tmp_path):
    p = tmp_path / "lat.dot"
    assert run("fcsets", "catalog:ising", "--lattice-out", str(p))[0] == 0
    assert p.read_text().startswith("digraph")


@pytest.mark.skipif(shutil.which("fctheory") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["fctheory", "info", "catalog:fibonacci"], capture_output=True, text=True)
    assert r.returncode == 0 and "rank: 2" in r.stdout
