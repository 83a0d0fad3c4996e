import io
import json
from pathlib import Path

from kszl.cli import SCHEMA, run
from kszl.presentation import parse_presentation

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, report = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, report, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, _, out, err = call(*argv, "--json")
    return code, json.loads(out), err


def test_nakayama_of_jordan_plane():
    code, rep, _ = call_json("nakayama", SAMPLES / "ex612.alg", "--dim", 2)
    assert code == 0
    assert rep["results"]["nu"] == {"x": "x", "y": "2*x + y"}
    assert rep["schema"] == SCHEMA and rep["verdicts"][0]["window"] == {"dual_socle_degree": 2}


def test_dual_of_free_algebra():
    code, rep, _ = call_json("dual", SAMPLES / "free2.alg")
    assert code == 0
    assert rep["results"]["dual"]["dim_relations"] == 4
    assert rep["results"]["dims"] == [1, 2, 0]


def test_skew3_classify():
    code, rep, _ = call_json("skew3", "classify", "--a", "2,3,5", "--b", "5,2,3")
    assert code == 0
    assert rep["results"]["isomorphic"] is True
    assert rep["results"]["witness"]["isomorphic"] == "(a3,a1,a2)"


def test_skew3_classify_csv():
    code, rep, _ = call_json("skew3", "classify", "--csv", SAMPLES / "skew3_pairs.csv")
    assert code == 0
    triples = [(r["isomorphic"], r["stable_cm_equivalent"], r["graded_morita"]) for r in rep["results"]["rows"]]
    assert triples == [(True, True, True), (True, True, True), (False, False, True), (False, True, True)]
    code, _, out, _ = call("skew3", "classify", "--csv", SAMPLES / "skew3_pairs.csv")
    assert out.splitlines()[4] == "1,1,2,-1,-1,2,false,true,true"


def test_twist_by_inverse_nakayama_matches_printed_presentation():
    code, rep, _ = call_json("twist", SAMPLES / "ex612.alg", "--nakayama", 2, "--inverse")
    assert code == 0
    got = parse_presentation("algebra T over QQ { gens x, y; rels %s; }" % ", ".join(rep["results"]["result"]["relations"]))
    assert got == parse_presentation("algebra T over QQ { gens x, y; rels x*y - y*x + x^2; }")


def test_koszul_report_carries_window():
    code, rep, _ = call_json("koszul", SAMPLES / "ex64.alg")
    assert code == 0 and rep["results"]["koszul"] is True
    assert all(v["window"] == {"homological": 5, "internal": 7} for v in rep["verdicts"])


def test_exit_codes(tmp_path):
    assert call("verify-map", SAMPLES / "ex611.alg", "--map", "swap")[0] == 1
    assert call("verify-map", SAMPLES / "ex611.alg", "--map", "nu_inv")[0] == 0
    code, _, out, err = call("hilbert", tmp_path / "missing.alg")
    assert code == 2 and out == "" and "cannot read" in err
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra B over QQ { gens x; rels x*x*x; }")
    assert call("show", bad)[0] == 2
    assert call("bogus")[0] == 2
    assert call("skew3", "classify", "--a", "1,0,2", "--b", "1,1,1")[0] == 2
    assert call("hilbert", SAMPLES / "free2.alg", "--max-degree", 30)[0] == 3
    assert call("skew3", "hunt", "--budget", 0)[0] == 1


def test_error_reports_are_json_on_stdout():
    code, rep, err = call_json("hilbert", SAMPLES / "free2.alg", "--max-degree", 30)
    assert code == 3 and rep["error"]["kind"] == "BudgetExceeded" and "budget" in err


def test_reports_are_deterministic():
    argv = ("betti", SAMPLES / "ex64.alg", "--homological", 4, "--json")
    outs = []
    for _ in range(2):
        _, _, out, _ = call(*argv)
        rep = json.loads(out)
        rep.pop("timing")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]
    a = call("skew3", "hunt", "--seed", 5, "--json")[2]
    b = call("skew3", "hunt", "--seed", 5, "--json")[2]
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "timing"}
    assert strip(a) == strip(b)


def test_inputs_digest_depends_on_file_contents(tmp_path):
    f = tmp_path / "a.alg"
    f.write_text("algebra A over QQ { gens x, y; rels x*y - y*x; }")
    d1 = call_json("show", f)[1]["inputs_sha256"]
    f.write_text("algebra A over QQ { gens x, y; rels x*y + y*x; }")
    d2 = call_json("show", f)[1]["inputs_sha256"]
    assert d1 != d2


def test_batch_empty(tmp_path):
    f = tmp_path / "empty.batch"
    f.write_text("")
    code, rep, _ = call_json("batch", f)
    assert code == 0 and rep["results"]["summary"] == {"total": 0, "passed": 0, "failed": 0}


def test_batch_malformed_line(tmp_path):
    f = tmp_path / "one.batch"
    f.write_text(f"hilbert {SAMPLES / 'free2.alg'}\nshow {tmp_path / 'nope.alg'}\n")
    code, rep, _ = call_json("batch", f)
    lines = rep["results"]["lines"]
    assert [e["exit"] for e in lines] == [0, 2]
    assert rep["results"]["summary"]["failed"] == 1 and code == 2


def test_batch_fail_fast_and_nesting(tmp_path):
    f = tmp_path / "ff.batch"
    f.write_text(f"batch {f}\nhilbert {SAMPLES / 'free2.alg'}\n")
    assert [e["exit"] for e in call_json("batch", f)[1]["results"]["lines"]] == [2, 0]
    assert len(call_json("batch", f, "--fail-fast")[1]["results"]["lines"]) == 1


def test_regression_batch_all_pass(monkeypatch):
    monkeypatch.chdir(ROOT)
    code, rep, _ = call_json("batch", "samples/regression.batch")
    summary = rep["results"]["summary"]
    assert code == 0 and summary["failed"] == 0 and summary["total"] >= 15


def test_human_readable_betti_grid():
    code, _, out, _ = call("betti", SAMPLES / "ex64.alg", "--homological", 3, "--max-degree", 5)
    assert code == 0 and "boundary-uncertain" in out
