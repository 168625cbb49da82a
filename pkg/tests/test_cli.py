"""CLI surface tests: subcommands, encodings, exit codes, determinism."""
import csv
import io
import json

import pytest

from cubicpart import cli


def run_cli(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def _strip_timing(rows):
    return [{k: v for k, v in r.items() if k != "timing"} for r in rows]


def test_cubic_3(capsys):
    code, out = run_cli(["cubic", "3", "--json"], capsys)
    assert code == 0
    rec = json.loads(out.strip())
    assert rec["value"] == "4"
    assert int(rec["K_used"]) >= 1


def test_cubic_oracle_flag(capsys):
    code, out = run_cli(["cubic", "30", "--oracle", "--json"], capsys)
    assert code == 0
    rec = json.loads(out.strip())
    assert rec["value"] == "46092" and rec["method"] == "oracle"


def test_partition_compare(capsys):
    code, out = run_cli(["partition", "20", "--compare", "--json"], capsys)
    assert code == 0
    rec = json.loads(out.strip())
    assert rec["value"] == rec["oracle"] == "627"
    assert rec["match"] == "True"


def test_table_cubic_csv(capsys):
    code, out = run_cli(["table", "--kind", "cubic", "--to", "6", "--csv"],
                        capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["1", "1", "3", "4", "9", "12", "23"]


def test_table_ordinary(capsys):
    code, out = run_cli(["table", "--kind", "ordinary", "--to", "4", "--json"],
                        capsys)
    assert code == 0
    vals = [json.loads(line)["value"] for line in out.strip().splitlines()]
    assert vals == ["1", "1", "2", "3", "5"]


def test_json_and_csv_agree(capsys):
    _, out_j = run_cli(["table", "--kind", "cubic", "--to", "10", "--json"],
                       capsys)
    _, out_c = run_cli(["table", "--kind", "cubic", "--to", "10", "--csv"],
                       capsys)
    jrows = _strip_timing([json.loads(l) for l in out_j.strip().splitlines()])
    crows = _strip_timing(list(csv.DictReader(io.StringIO(out_c))))
    assert jrows == crows


def test_verify_small_sweep(capsys):
    code, out = run_cli(["verify", "--to", "12", "--json"], capsys)
    assert code == 0
    rows = [json.loads(l) for l in out.strip().splitlines()]
    assert len(rows) == 13
    assert all(r["match"] == "True" for r in rows)


def test_verify_threads_identical(capsys):
    _, out1 = run_cli(["verify", "--to", "10", "--threads", "1", "--json"],
                      capsys)
    _, out2 = run_cli(["verify", "--to", "10", "--threads", "3", "--json"],
                      capsys)
    rows1 = _strip_timing([json.loads(l) for l in out1.strip().splitlines()])
    rows2 = _strip_timing([json.loads(l) for l in out2.strip().splitlines()])
    assert rows1 == rows2


def test_congruence_pass_and_fail(capsys):
    code, _ = run_cli(["congruence", "--kind", "cubic", "--step", "3",
                       "--offset", "2", "--mod", "3", "--to", "300"], capsys)
    assert code == 0
    code, out = run_cli(["congruence", "--kind", "ordinary", "--step", "5",
                         "--offset", "0", "--mod", "5", "--to", "50",
                         "--json"], capsys)
    assert code == 1
    rec = json.loads(out.strip())
    assert rec["ok"] == "False" and rec["first_failure"] != ""


def test_convergence(capsys):
    code, out = run_cli(["convergence", "30", "--terms", "10", "--json"],
                        capsys)
    assert code == 0
    rows = [json.loads(l) for l in out.strip().splitlines()]
    assert len(rows) == 11
    assert rows[-1]["index"] == "final"
    remaining = [float(r["remaining"]) for r in rows[:-1]]
    assert remaining[-1] < remaining[0]


def test_conjecture(capsys):
    code, out = run_cli(["conjecture", "--grid", "100,1000", "--json"], capsys)
    assert code == 0
    rows = [json.loads(l) for l in out.strip().splitlines()]
    assert rows[0]["n"] == "100" and rows[-1]["n"] == "extrapolated"
    assert abs(float(rows[0]["residual"])) > abs(float(rows[1]["residual"]))


def test_digits_flag(capsys):
    _, out = run_cli(["conjecture", "--grid", "100,1000", "--digits", "30",
                      "--json"], capsys)
    rec = json.loads(out.strip().splitlines()[0])
    mantissa = rec["exact_log"].replace(".", "").replace("-", "").lstrip("0")
    assert len(mantissa) >= 25


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        cli.run(["table", "--kind", "bogus", "--to", "5"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["cubic", "3", "--json", "--csv"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.run([])


def test_bad_grid(capsys):
    assert cli.run(["conjecture", "--grid", "10,abc"]) == 2
    assert cli.run(["conjecture", "--grid", "50"]) == 2


def test_negative_input(capsys):
    assert cli.run(["cubic", "-5"]) == 2
