import io
import json
import random

import pytest

from ringoids.cli import main as cli_main
from ringoids.formats import (
    ParseError,
    jsonl_record,
    looks_like_json,
    parse_auto,
    parse_json,
    parse_tables_json,
    parse_tables_text,
    parse_text,
    read_csv_summary,
    read_jsonl,
    render_json,
    render_text,
    write_csv_summary,
    write_jsonl,
)
from ringoids.tables import Ringoid

from conftest import random_semiring

Z4_TEXT = "4\n" + "\n".join(
    " ".join(str((a + b) % 4) for b in range(4)) for a in range(4)
) + "\n\n" + "\n".join(
    " ".join(str((a * b) % 4) for b in range(4)) for a in range(4)
) + "\n"

B2_TEXT = "2\n0 1\n1 1\n\n0 0\n0 1\n"


def test_text_round_trip():
    rng = random.Random(12)
    for _ in range(25):
        r = random_semiring(rng)
        back = parse_text(render_text(r))
        assert back.plus == r.plus and back.times == r.times
        back2 = parse_text(render_text(r, provenance="made by a test"))
        assert back2.plus == r.plus


def test_text_parse_positions():
    with pytest.raises(ParseError) as ei:
        parse_tables_text("")
    assert ei.value.line == 1 and ei.value.col == 1

    with pytest.raises(ParseError) as ei:
        parse_tables_text("2\n0 1\n1 x\n\n0 0\n0 0\n")
    assert (ei.value.line, ei.value.col) == (3, 3)
    assert "expected an integer" in ei.value.reason

    with pytest.raises(ParseError) as ei:
        parse_tables_text("2\n0 1\n1 2\n\n0 0\n0 0\n")
    assert (ei.value.line, ei.value.col) == (3, 3)
    assert "outside" in ei.value.reason

    with pytest.raises(ParseError) as ei:
        parse_tables_text("2\n0 1 0\n1 0\n\n0 0\n0 0\n")
    assert ei.value.line == 2

    with pytest.raises(ParseError) as ei:
        parse_tables_text(B2_TEXT + "\nleftover\n")
    assert "trailing" in ei.value.reason

    with pytest.raises(ParseError) as ei:
        parse_tables_text("2\n0 1\n1 1\n\n0 0\n")
    assert "expected 2 table rows" in ei.value.reason

    with pytest.raises(ParseError):
        parse_tables_text("zero\n")
    with pytest.raises(ParseError):
        parse_tables_text("0\n")


def test_text_comments_skipped():
    text = "# header\n2\n# between\n0 1\n1 1\n\n# more\n0 0\n0 1\n"
    plus, times = parse_tables_text(text)
    assert plus.rows == ((0, 1), (1, 1))
    assert times.rows == ((0, 0), (0, 1))


def test_non_distributive_text_rejected():
    bad = "2\n0 1\n1 0\n\n0 1\n1 1\n"
    with pytest.raises(ValueError):
        parse_text(bad)


def test_json_round_trip():
    rng = random.Random(34)
    for _ in range(25):
        r = random_semiring(rng)
        back = parse_json(render_json(r))
        assert back.plus == r.plus and back.times == r.times


def test_json_errors():
    with pytest.raises(ParseError) as ei:
        parse_tables_json("{bad json")
    assert ei.value.line == 1

    with pytest.raises(ParseError) as ei:
        parse_tables_json('{"n": 2, "plus": [[0,1],[1,1]]}')
    assert "times" in ei.value.reason

    with pytest.raises(ParseError):
        parse_tables_json('{"n": 2, "plus": [[0,1]], "times": [[0,0],[0,1]]}')
    with pytest.raises(ParseError):
        parse_tables_json('{"n": 2, "plus": [[0,1],[1,9]], "times": [[0,0],[0,1]]}')
    with pytest.raises(ParseError):
        parse_tables_json('[1,2,3]')
    with pytest.raises(ParseError):
        parse_tables_json('{"n": 0, "plus": [], "times": []}')


def test_parse_auto_dispatch():
    assert looks_like_json('  {"n": 1}')
    assert not looks_like_json("2\n0 1")
    p1, t1 = parse_auto(B2_TEXT)
    obj = {"n": 2, "plus": [[0, 1], [1, 1]], "times": [[0, 0], [0, 1]]}
    p2, t2 = parse_auto(json.dumps(obj))
    assert p1 == p2 and t1 == t2


def test_jsonl_round_trip():
    rng = random.Random(56)
    rs = [random_semiring(rng) for _ in range(8)]
    buf = io.StringIO()
    write_jsonl(buf, rs, provenance="unit test batch")
    buf.seek(0)
    first = buf.readline()
    assert first.startswith("# unit test batch")
    buf.seek(0)
    back = read_jsonl(buf)
    assert len(back) == len(rs)
    for a, b in zip(rs, back):
        assert a.plus == b.plus and a.times == b.times


def test_jsonl_record_flags():
    r = Ringoid.from_rows([[0, 1], [1, 1]], [[0, 0], [0, 1]])
    obj = json.loads(jsonl_record(r))
    assert obj["canonical"] is True
    assert obj["flags"]["plus_idempotent"] is True
    assert obj["flags"]["has_absorbing_zero"] is True


def test_read_jsonl_reports_bad_line():
    buf = io.StringIO('{"n":1,"plus":[[0]],"times":[[0]]}\nnot json\n')
    with pytest.raises(ParseError) as ei:
        read_jsonl(buf)
    assert ei.value.line == 2


def test_csv_round_trip():
    rows = [
        {"order": 3, "class": "general", "filter": "congruence-simple",
         "count": 5, "seconds": 0.01234},
        {"order": 4, "class": "commutative", "filter": "congruence-simple",
         "count": 19, "seconds": 1.5},
    ]
    buf = io.StringIO()
    write_csv_summary(buf, rows, provenance="test run")
    text = buf.getvalue()
    assert text.startswith("# test run\n")
    assert "0.012" in text
    back = read_csv_summary(text)
    assert back[0]["count"] == 5 and back[1]["order"] == 4
    assert back[0]["seconds"] == 0.012


def run_cli(argv, capsys):
    code = cli_main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_cli_check_nonsimple(tmp_path, capsys):
    f = tmp_path / "z4.txt"
    f.write_text(Z4_TEXT)
    code, out, err = run_cli(["check", str(f)], capsys)
    assert code == 0
    assert "congruence_simple: false" in out
    assert "witness_congruence: {0,2}/{1,3}" in out
    assert "plus_dichotomy: group" in out
    assert "k_ideal_simple_fast: n/a" in out


def test_cli_check_simple_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(B2_TEXT))
    code, out, err = run_cli(["check"], capsys)
    assert code == 0
    assert "congruence_simple: true" in out
    assert "witness_congruence" not in out
    assert "k_ideal_simple_fast: true" in out
    assert "trichotomy:" in out


def test_cli_check_rejects_parse_garbage(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("2\n0 1\nnope\n")
    code, out, err = run_cli(["check", str(f)], capsys)
    assert code == 1
    assert "parse error" in err
    assert out.startswith("failures:")


def test_cli_check_rejects_non_distributive(tmp_path, capsys):
    f = tmp_path / "nd.txt"
    f.write_text("2\n0 1\n1 0\n\n0 1\n1 1\n")
    code, out, err = run_cli(["check", str(f)], capsys)
    assert code == 1
    assert "distributive: false" in out
    assert '"not distributive"' in out


def test_cli_enumerate_csv(tmp_path, capsys):
    dest = tmp_path / "o3.csv"
    code, out, err = run_cli(
        ["enumerate", "--order", "3", "--count-only", "--format", "csv",
         "--out", str(dest)],
        capsys,
    )
    assert code == 0
    assert "count 5 order 3" in out
    rows = read_csv_summary(dest.read_text())
    assert rows == [
        {"order": 3, "class": "general", "filter": "congruence-simple",
         "count": 5, "seconds": rows[0]["seconds"]}
    ]


def test_cli_enumerate_jsonl(tmp_path, capsys):
    dest = tmp_path / "o3.jsonl"
    code, out, err = run_cli(
        ["enumerate", "--order", "3", "--out", str(dest)], capsys
    )
    assert code == 0
    with open(dest) as fh:
        rs = read_jsonl(fh)
    assert len(rs) == 5
    assert dest.read_text().startswith("# ringoids enumerate order=3")


def test_cli_enumerate_text_stdout(capsys):
    code, out, err = run_cli(
        ["enumerate", "--order", "2", "--format", "text"], capsys
    )
    assert code == 0
    assert out.startswith("# ringoids enumerate order=2")
    assert "count 2 order 2" in err
    blocks = [b for b in out.split("\n\n") if b.strip() and not b.startswith("#")]
    assert len(blocks) >= 2


def test_cli_enumerate_refuses_oversized(monkeypatch, capsys):
    monkeypatch.setenv("RINGOID_WORK_CEILING", "10")
    code, out, err = run_cli(["enumerate", "--order", "4"], capsys)
    assert code == 2
    assert "refused" in err and "suggestion" in err
    code2, out2, err2 = run_cli(
        ["enumerate", "--order", "4", "--count-only", "--format", "csv"], capsys
    )
    assert code2 == 0


def test_cli_enumerate_rejects_bad_shard_args(tmp_path, capsys):
    code, out, err = run_cli(
        ["enumerate", "--order", "3", "--resume"], capsys
    )
    assert code == 2
    assert "error" in err


def test_cli_reproduce_table_small(capsys):
    code, out, err = run_cli(["reproduce-table", "--max-order", "3"], capsys)
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") == 6  # orders 2 and 3, three classes
    for cls in ("general", "commutative", "associative"):
        assert cls in out


def test_cli_reproduce_table_single_class(capsys):
    code, out, err = run_cli(
        ["reproduce-table", "--max-order", "2", "--class", "associative"], capsys
    )
    assert code == 0
    assert "general" not in out.replace("census of", "")
    assert "2 PASS" in out


def test_cli_scan_groupoids(tmp_path, capsys):
    dest = tmp_path / "g3.jsonl"
    code, out, err = run_cli(
        ["scan-groupoids", "--order", "3", "--require", "quasigroup",
         "--format", "jsonl", "--out", str(dest)],
        capsys,
    )
    assert code == 0
    lines = [l for l in dest.read_text().splitlines() if not l.startswith("#")]
    for line in lines:
        obj = json.loads(line)
        assert obj["n"] == 3 and len(obj["table"]) == 3
    assert f"count {len(lines)} order 3" in out


def test_cli_scan_parasemifields(capsys):
    code, out, err = run_cli(
        ["scan-groupoids", "--order", "2", "--parasemifields"], capsys
    )
    assert code == 0
    assert "instances" in err  # data on stdout, summary on stderr


def test_cli_demo_examples(capsys):
    code, out, err = run_cli(["demo-examples", "--window", "6"], capsys)
    assert code == 0
    assert out.count("generalised parasemifield") == 5
    assert "sampled check only, not a proof" in out
    assert "failures" not in out


def test_cli_requires_subcommand(capsys):
    with pytest.raises(SystemExit):
        cli_main([])
