import json
import subprocess
import sys

import pytest

from rankone.cli import independent_checks, main, run_job
from rankone.jsonio import CERT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_gab(capsys):
    code, doc, _ = run(capsys, "gab", "--field", "2", "--a", "2", "--b", "3")
    assert code == 0 and doc["schema"] == CERT_SCHEMA and doc["ok"]
    assert doc["result"]["coeffs"] == [1, 0, 1, 0, 1] and doc["result"]["degree"] == 4


def test_divides_two_routes(capsys):
    code, doc, _ = run(capsys, "divides", "--field", "5", "--terms", "1@7,-1@1", "--a", "2", "--b", "3")
    assert code == 0 and doc["result"]["divides"] is True and doc["result"]["divides_folded"] is True
    code, doc, _ = run(capsys, "divides", "--field", "5", "--terms", "1@3,-1@1", "--divisor", "1,0,1")
    assert code == 0 and doc["result"]["divides"] is False


def test_partitions(capsys):
    code, doc, _ = run(capsys, "partitions", "--field", "2", "--terms", "1@0,1@0,1@0,1@0")
    assert code == 0 and doc["result"]["partitions"] == [[[1, 2], [3, 4]], [[1, 3], [2, 4]], [[1, 4], [2, 3]]]
    code, doc, _ = run(capsys, "partitions", "--field", "3", "--terms", "1@31,1@32,-1@1,-1@2",
                       "--a", "6", "--b", "5")
    assert code == 0 and doc["result"]["residue_partition"] == [[1, 3], [2, 4]]
    assert doc["result"]["consistent"]


def test_solve_contains_known_coset(capsys):
    code, doc, _ = run(capsys, "solve", "--input", "corpus:product_f2", "--box", "6")
    assert code == 0 and doc["result"]["kind"] == "positive" and doc["result"]["box"]["agree"]
    (c,) = doc["result"]["cosets"]
    assert c["basis"] in ([[1, -1]], [[-1, 1]])
    assert (c["particular"][0] + c["particular"][1]) == 1


def test_lift(capsys):
    code, doc, _ = run(capsys, "lift", "--input", "corpus:product_f2", "--e", "54,163", "--a", "6")
    res = doc["result"]
    assert code == 0 and res["vanishes"] and res["congruent"] and res["level"] == 3
    assert sum(res["exponents"]) == 1
    code, doc, _ = run(capsys, "lift", "--input", "corpus:affine_line_empty_f2", "--e", "0,0", "--a", "6")
    assert code == 1 and "error" in doc["result"]


def test_closure_and_density(capsys):
    code, doc, _ = run(capsys, "closure", "--input", "corpus:two_points_f3", "--level-degrees", "2")
    assert code == 0 and doc["result"]["contained"]
    code, doc, _ = run(capsys, "density", "--input", "corpus:two_points_f3")
    assert code == 0 and doc["result"]["sound"] and doc["result"]["final_equal"]
    assert doc["result"]["counterexamples"] == []


def test_density_reports_unresolved_residues(tmp_path, capsys):
    # X1^2 - T^2 with no resolution search: r = 1 + N/2 persists as a certificate
    job = {"field": {"p": 5, "d": 1},
           "system": [[{"coeff": 1, "t": 0, "x": [2]}, {"coeff": -1, "t": 2, "x": [0]}]]}
    path = tmp_path / "square.json"
    path.write_text(json.dumps(job))
    flags = ["--input", str(path), "--level-degrees", "2", "--level-precision", "1"]
    code, doc, _ = run(capsys, "density", *flags)
    assert code == 1 and doc["result"]["sound"] and doc["result"]["counterexamples"]
    code, doc, _ = run(capsys, "density", *flags, "--resolve", "4,3")
    assert doc["result"]["counterexamples"] == [] and doc["result"]["resolved"]
    # the bundled instance carries its own resolution parameters
    code, doc, _ = run(capsys, "density", "--input", "corpus:square_f5", "--level-degrees", "2",
                       "--level-precision", "1")
    assert doc["result"]["counterexamples"] == [] and not doc["result"]["final_equal"]


def test_frobenius(capsys):
    code, doc, _ = run(capsys, "frobenius", "--field", "2", "--level-degrees", "4")
    assert code == 0 and all(r["equal"] for r in doc["result"]["places"])
    assert doc["result"]["minpoly_degrees"] == [1, 2, 3, 4]


def test_linearize(capsys):
    code, doc, _ = run(capsys, "linearize", "--input", "corpus:product_f2", "--e=2,-1")
    assert code == 0 and doc["result"]["point"] == {"e": [2, -1], "on_variety": True, "forms_vanish": True}


def test_corpus(capsys):
    code, doc, _ = run(capsys, "corpus")
    names = [r["name"] for r in doc["result"]["instances"]]
    assert code == 0 and "two_points_f3" in names and "fourth_power_f5" in names
    code, doc, _ = run(capsys, "corpus", "two_points_f3")
    assert doc["result"]["field"] and doc["result"]["system"]


def test_output_is_deterministic(capsys):
    argv = ["solve", "--input", "corpus:diagonal_curve_f3"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_job_file_input(tmp_path, capsys):
    job = {"schema": "rankone.job/1", "field": {"p": 3, "d": 1},
           "system": [[{"coeff": 1, "t": 0, "x": [1, 0]}, {"coeff": 1, "t": 0, "x": [0, 1]},
                       {"coeff": -1, "t": 1, "x": [0, 0]}, {"coeff": -1, "t": 2, "x": [0, 0]}]]}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    code, doc, _ = run(capsys, "solve", "--input", str(path))
    assert code == 0 and doc["result"]["kind"] == "finite"


@pytest.mark.parametrize("argv", [
    ["gab", "--field", "2", "--a", "2", "--b", "3"],
    ["solve", "--input", "corpus:weighted_f5"],
    ["lift", "--input", "corpus:product_f2", "--e", "54,163", "--a", "6"],
    ["partitions", "--field", "5", "--terms", "1@0,-1@6,2@1,-2@4"],
    ["frobenius", "--field", "3", "--level-degrees", "2"],
])
def test_certificate_round_trip(tmp_path, capsys, argv):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, *argv, "--out", str(cert))
    assert code == 0
    code, doc, _ = run(capsys, "--verify", str(cert))
    assert code == 0 and doc["ok"] and doc["problems"] == []


def test_verify_detects_tampering(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    run(capsys, "solve", "--input", "corpus:product_f2", "--out", str(cert))
    doc = json.loads(cert.read_text())
    doc["result"]["cosets"][0]["particular"] = [2, 0]
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "--verify", str(cert))
    assert code == 1 and out["problems"]
    assert any("not a solution" in p for p in out["problems"])


def test_verify_independent_gab_check():
    doc = run_job({"schema": "rankone.job/1", "command": "gab", "field": {"p": 2, "d": 1},
                   "params": {"a": 2, "b": 3}, "caps": {"terms": 10, "enum": 10 ** 6, "cutoff": 20}})
    assert independent_checks(doc) == []
    doc["result"]["coeffs"] = [1, 1, 1, 0, 1]
    assert independent_checks(doc)


@pytest.mark.parametrize("argv", [
    ["gab", "--field", "4", "--a", "2", "--b", "3"],             # 4 is not prime
    ["gab", "--field", "2", "--a", "2"],                         # missing b
    ["solve", "--field", "2"],                                   # no system
    ["solve", "--input", "/nonexistent/job.json"],
    ["solve", "--input", "corpus:no_such_instance"],
    ["partitions", "--field", "2", "--terms", "1@0,1@0,1@0", "--caps", "terms=99"],
    ["partitions", "--field", "2", "--terms", "1@0,1@0,1@0", "--caps", "bogus=1"],
    ["solve", "--input", "corpus:torus_surface_f2", "--box", "20", "--caps", "enum=1000"],
    ["nosuch"],
    [],
])
def test_malformed_input_exits_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_rejects_non_certificate(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text("[1, 2]")
    assert main(["--verify", str(path)]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rankone", "gab", "--field", "3", "--a", "1", "--b", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["coeffs"] == [1, 1]


def test_corpus_output_feeds_input(tmp_path, capsys):
    job = tmp_path / "job.json"
    code, doc, _ = run(capsys, "corpus", "weighted_f5")
    job.write_text(json.dumps(doc))
    code, doc, _ = run(capsys, "solve", "--input", str(job))
    assert code == 0 and doc["result"]["kind"] == "positive"
    other = tmp_path / "gab.json"
    code, doc, _ = run(capsys, "gab", "--field", "2", "--a", "1", "--b", "3")
    other.write_text(json.dumps(doc))
    assert main(["solve", "--input", str(other)]) == 2
