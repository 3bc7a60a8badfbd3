import csv
import io
import json

import pytest

from permlab.cli import CSV_COLUMNS, main

# every invocation goes through main(argv) in-process; --out keeps stdout
# quiet and gives the test a file to parse


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    doc = json.loads(out.read_text()) if out.exists() else None
    return code, doc


def flat_instances(doc):
    for r in doc["stable"]["runs"]:
        for blk in r["conditions"]:
            for inst in blk["instances"]:
                yield r, inst


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_single_instance_family(tmp_path, capsys):
    code, doc = run(tmp_path, "verify", "--family", "thm7", "--q", "7")
    assert code == 0
    assert doc["stable"]["schema"] == "permlab-report/1"
    assert doc["stable"]["verb"] == "verify"
    runs = doc["stable"]["runs"]
    assert len(runs) == 1 and runs[0]["family"] == "thm7" and runs[0]["q"] == 7
    insts = list(flat_instances(doc))
    assert len(insts) == 1
    _, inst = insts[0]
    assert inst["permutes"] and inst["s"] == 19 and inst["c"] == 1
    assert "PASS thm7 q=7" in capsys.readouterr().err


def test_verify_sweeps_every_valid_coefficient(tmp_path):
    code, doc = run(tmp_path, "verify", "--family", "thm5", "--q", "9")
    assert code == 0
    insts = [i for _, i in flat_instances(doc)]
    assert len(insts) == 5
    assert sorted(i["c"] for i in insts) == [1, 20, 26, 47, 59]
    assert all(i["s"] == 65 and i["permutes"] for i in insts)


def test_verify_whole_catalog_defaults(tmp_path):
    code, doc = run(tmp_path, "verify")
    assert code == 0
    runs = doc["stable"]["runs"]
    assert len(runs) == 82                       # two parameter sets each
    assert len({r["family"] for r in runs}) == 41
    for r in runs:
        assert r["summary"]["failed"] == 0


def test_verify_inapplicable_parameters(tmp_path):
    code, doc = run(tmp_path, "verify", "--family", "thm7", "--q", "5")
    assert code == 2 and doc is None


def test_verify_config_errors(tmp_path):
    assert run(tmp_path, "verify", "--family", "nosuch")[0] == 3
    assert run(tmp_path, "verify", "--family", "thm7", "--q", "6")[0] == 3
    assert run(tmp_path, "verify", "--q", "9")[0] == 3       # family required
    assert run(tmp_path, "verify", "--family", "thm7", "--q", "7",
               "--p", "7", "--k", "1")[0] == 3               # q xor p/k
    assert run(tmp_path, "verify", "--family", "thm5", "--q", "9",
               "--cap", "16")[0] == 3                        # over the cap


def test_verify_bad_flag_exits_config(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--bogus"])
    assert exc.value.code == 3


# ---------------------------------------------------------------------------
# failure reporting
# ---------------------------------------------------------------------------

def test_failing_run_reports_witnesses(tmp_path, capsys):
    # this row's residue exponent rule stops permuting when 3 | k
    code, doc = run(tmp_path, "table1", "--row", "8", "--k", "3")
    assert code == 1
    run_doc = doc["stable"]["runs"][0]
    assert run_doc["summary"]["failed"] > 0
    for _, inst in flat_instances(doc):
        if not inst["permutes"]:
            a, b = inst["witness"]
            assert a != b and inst["image_deficit"] > 0
        else:
            assert inst["witness"] is None
    assert "FAIL table1-r8 q=8" in capsys.readouterr().err


def test_summary_counts_match_instances(tmp_path):
    code, doc = run(tmp_path, "table1", "--row", "8", "--k", "3")
    assert code == 1
    for r in doc["stable"]["runs"]:
        for blk in r["conditions"]:
            insts = blk["instances"]
            s = blk["summary"]
            asserted = [i for i in insts if not i["informational"]]
            assert s["instances"] == len(insts)
            assert s["asserted"] == len(asserted)
            assert s["passed"] == sum(i["permutes"] for i in asserted)
            assert s["failed"] == sum(not i["permutes"] for i in asserted)


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------

def test_table1_all_rows_smallest_k(tmp_path):
    code, doc = run(tmp_path, "table1")
    assert code == 0
    runs = doc["stable"]["runs"]
    assert [r["family"] for r in runs] == [
        f"table1-r{i}" for i in range(1, 14)]
    assert [r["q"] for r in runs] == [4, 2, 2, 4, 2, 2, 4, 2, 2, 4, 4, 2, 4]
    assert all(r["deltas_exhaustive"] for r in runs)


def test_table1_single_row(tmp_path):
    code, doc = run(tmp_path, "table1", "--row", "9")
    assert code == 0
    (r,) = doc["stable"]["runs"]
    assert r["family"] == "table1-r9" and r["q"] == 2
    tags = {blk["condition"] for blk in r["conditions"]}
    assert tags == {"unity", "c=1"}


def test_table1_inadmissible_k(tmp_path):
    code, doc = run(tmp_path, "table1", "--row", "1", "--k", "3")
    assert code == 2 and doc is None


# ---------------------------------------------------------------------------
# step variants
# ---------------------------------------------------------------------------

def test_step_outcomes_recorded(tmp_path):
    code, doc = run(tmp_path, "verify", "--family", "thm14", "--q", "3")
    assert code == 0        # the failing step is informational only
    (r,) = doc["stable"]["runs"]
    assert r["step_outcomes"] == {"1": "fail", "2": "pass"}
    blk = r["conditions"][0]
    assert blk["summary"]["passed"] == 81
    assert blk["summary"]["informational_failed"] == 81
    for _, inst in flat_instances(doc):
        assert inst["informational"] == (inst["step"] == 1)


def test_single_step_families_omit_outcomes(tmp_path):
    _, doc = run(tmp_path, "verify", "--family", "thm7", "--q", "7")
    assert "step_outcomes" not in doc["stable"]["runs"][0]


# ---------------------------------------------------------------------------
# output formats and determinism
# ---------------------------------------------------------------------------

def test_csv_format(tmp_path):
    out = tmp_path / "r.csv"
    code = main(["verify", "--family", "thm5", "--q", "9",
                 "--format", "csv", "--out", str(out)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 6                      # header + five coefficients
    assert all(row[0] == "thm5" and row[1] == "9" for row in rows[1:])


def test_stable_section_is_deterministic(tmp_path):
    argv = ["verify", "--family", "thm11", "--q", "5", "--seed", "7"]
    _, one = run(tmp_path, *argv, name="a.json")
    _, two = run(tmp_path, *argv, name="b.json")
    blob = lambda d: json.dumps(d["stable"], sort_keys=True).encode()
    assert blob(one) == blob(two)
    _, par = run(tmp_path, *argv, "--jobs", "4", name="c.json")
    assert blob(par) == blob(one)


def test_report_reemit_csv(tmp_path):
    _, doc = run(tmp_path, "verify", "--family", "thm5", "--q", "9",
                 name="src.json")
    out = tmp_path / "again.csv"
    code = main(["report", "--input", str(tmp_path / "src.json"),
                 "--format", "csv", "--out", str(out)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert len(rows) == 6 and rows[0] == CSV_COLUMNS


def test_report_rejects_foreign_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"stable": {"schema": "other/9"}}))
    assert main(["report", "--input", str(bad)]) == 3
    assert main(["report", "--input", str(tmp_path / "missing.json")]) == 3


# ---------------------------------------------------------------------------
# config file
# ---------------------------------------------------------------------------

def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# smallest non-square case\nfamily = thm7\nq = 7\n")
    code, doc = run(tmp_path, "verify", "--config", str(cfg))
    assert code == 0
    assert doc["stable"]["runs"][0]["q"] == 7


def test_cli_flags_override_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = thm7\nq = 7\nseed = 5\n")
    code, doc = run(tmp_path, "verify", "--config", str(cfg), "--q", "4")
    assert code == 0
    assert doc["stable"]["runs"][0]["q"] == 4
    assert doc["stable"]["config"]["seed"] == 5


def test_config_file_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("familly = thm7\n")
    assert main(["verify", "--config", str(cfg)]) == 3


# ---------------------------------------------------------------------------
# catalog and sweep
# ---------------------------------------------------------------------------

def test_catalog_lists_every_family(tmp_path):
    out = tmp_path / "cat.json"
    code = main(["catalog", "--out", str(out)])
    assert code == 0
    cat = json.loads(out.read_text())
    assert len(cat) == 41
    ids = [e["id"] for e in cat]
    assert len(set(ids)) == 41 and "thm5" in ids and "table1-r13" in ids
    for e in cat:
        assert {"id", "form", "shape", "applies", "s_rule",
                "conditions"} <= set(e)


def test_sweep_tags_catalog_hits(tmp_path):
    out = tmp_path / "sweep.json"
    code = main(["sweep", "--q", "7", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    hits = doc["stable"]["hits"]
    assert len(hits) == 8
    tagged = {h["s"]: h["families"] for h in hits}
    assert "thm7" in tagged[19]
    assert any(h["families"] == ["unexplained"] for h in hits)
