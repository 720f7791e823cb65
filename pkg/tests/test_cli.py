import io
import json
import os
import subprocess
import sys


from poisson_pages import cli, specfile
from poisson_pages.catalog import kodaira

PY = [sys.executable, "-m", "poisson_pages"]


def sh(args, stdin=None, env=None):
    full_env = dict(os.environ)
    full_env.pop(cli.SEED_ENV, None)
    full_env.update(env or {})
    return subprocess.run(PY + args, input=stdin, capture_output=True, text=True, env=full_env)


def test_emit_check_pipeline():
    emitted = sh(["catalog", "emit", "iwasawa"])
    assert emitted.returncode == 0
    checked = sh(["check"], stdin=emitted.stdout)
    assert checked.returncode == 0
    doc = json.loads(checked.stdout)
    assert doc["validation"]["ok"] and doc["validation"]["parallelizable"]


def test_emit_round_trip_is_byte_identical():
    text = sh(["catalog", "emit", "w", "--n", "1"]).stdout
    assert specfile.dumps(specfile.loads(text)) + "\n" == text or \
        json.dumps(specfile.spec_to_json(specfile.loads(text)), indent=2) + "\n" == text


def test_catalog_list():
    out = sh(["catalog", "list"])
    assert json.loads(out.stdout)["catalog"] == ["kodaira", "iwasawa", "torus", "h_r", "h_h", "w", "p"]


def test_validation_failure_exit_two(tmp_path):
    doc = specfile.spec_to_json(kodaira().spec)
    dim = doc["dim"]
    # J X1 = Y1 and J Y1 = X1, so J^2 != -1 (row-major entries)
    doc["J"][1], doc["J"][dim] = {"num": 1, "den": 1}, {"num": 1, "den": 1}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    r = sh(["check", "--spec", str(path)])
    assert r.returncode == 2


def test_schema_error_exit_three():
    assert sh(["check"], stdin="{not json").returncode == 3
    assert sh(["check"], stdin=json.dumps({"name": "x"})).returncode == 3


def test_not_poisson_exit_two(tmp_path):
    lam = tmp_path / "lam.json"
    # W1 ^ W3 on iwasawa is holomorphic but not Poisson
    from poisson_pages.exterior import SparseElement, wedge
    v = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    lam.write_text(json.dumps(wedge(v[0], v[2]).to_json()))
    r = sh(["pages", "--catalog", "iwasawa", "--lambda", str(lam)])
    assert r.returncode == 2


def test_torus_has_no_standard_lambda():
    assert sh(["pages", "--catalog", "torus"]).returncode == 2
    assert sh(["pages", "--catalog", "torus", "--lambda", "zero"]).returncode == 0


def test_kodaira_pages_report():
    r = sh(["pages", "--catalog", "kodaira", "--lambda", "standard", "--r-max", "4"])
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["degeneracy_page"] <= 2
    assert doc["checks"] == {"square_zero": True, "chain_map": True, "einfty_consistency": True}
    assert [pg["r"] for pg in doc["pages"]] == [0, 1, 2, 3, 4]


def test_default_r_max_is_2n_plus_1():
    doc = json.loads(sh(["pages", "--catalog", "kodaira"]).stdout)
    assert len(doc["pages"]) == 6


def test_reports_are_deterministic():
    args = ["pages", "--catalog", "w", "--lambda", "sample", "--count", "2", "--seed", "5"]
    a, b = sh(args).stdout, sh(args).stdout
    assert a == b and len(json.loads(a)["runs"]) >= 3


def test_env_seed_fallback():
    base = ["degeneracy", "--catalog", "h_r", "--lambda", "sample", "--count", "3"]
    with_env = sh(base, env={cli.SEED_ENV: "11"}).stdout
    with_flag = sh(base + ["--seed", "11"]).stdout
    assert with_env == with_flag
    assert sh(base, env={cli.SEED_ENV: "nope"}).returncode == 3


def test_jobs_matches_serial():
    base = ["cohomology", "--catalog", "kodaira", "--lambda", "sample", "--count", "3", "--seed", "2"]
    assert sh(base).stdout == sh(base + ["--jobs", "2"]).stdout


def test_out_file(tmp_path):
    out = tmp_path / "r.json"
    r = sh(["cohomology", "--catalog", "iwasawa", "--lambda", "zero", "--out", str(out)])
    assert r.returncode == 0 and r.stdout == ""
    assert json.loads(out.read_text())["total_cohomology"] == [1, 5, 11, 14, 11, 5, 1]


def test_torus_e1_table():
    text = sh(["pages", "--catalog", "torus", "--n", "2", "--lambda", "zero", "--format", "table"]).stdout
    block = text.split("E_1:\n")[1].splitlines()[:3]
    rows = [[int(x) for x in line.split("|")[1].split()] for line in block]
    assert rows == [[1, 2, 1], [2, 4, 2], [1, 2, 1]]
    assert block[0].strip().startswith("q=2")


def test_iwasawa_e1_bottom_row():
    text = sh(["pages", "--catalog", "iwasawa", "--lambda", "zero", "--format", "table"]).stdout
    block = text.split("E_1:\n")[1].splitlines()
    bottom = next(line for line in block if line.strip().startswith("q=0"))
    assert [int(x) for x in bottom.split("|")[1].split()] == [1, 3, 3, 1]


def test_missing_blocks_render_as_zero():
    report = {"algebra": "x", "pages": [{"r": 5, "entries": [{"p": 0, "q": 0, "dim": 1},
                                                             {"p": 1, "q": 1, "dim": 0}],
                                         "d_nonzero": []}]}
    text = cli.render_table(report)
    assert "q=1 | 0 0" in text and "q=0 | 1 0" in text


def test_run_in_process():
    code, doc = cli.run(cli.RunConfig(command="degeneracy", catalog="kodaira"))
    assert code == 0 and doc["degeneracy_page"] <= 2
    code, doc = cli.run(cli.RunConfig(command="check"), stdin=io.StringIO("[]"))
    assert code == 3
