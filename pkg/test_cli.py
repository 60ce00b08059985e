import json

from openpyxl import load_workbook

from app.main import main
from app.schemas import CSV_COLUMNS, OutputRecord


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_curve_n7(capsys):
    code, out, _ = run(capsys, "curve", "--n", "7", "--s", "2", "--t", "1")
    assert code == 0
    assert "-2^7*13" in out
    assert "[1,-1,1,-3,3]" in out
    assert "(0,0) has order 7" in out


def test_curve_singular_parameter_exits_2(capsys):
    code, _, err = run(capsys, "curve", "--n", "4", "--s", "0", "--t", "1")
    assert code == 2
    assert "singular: s=0" in err


def test_curve_n8_reports_additive_reduction(capsys):
    code, out, _ = run(capsys, "curve", "--n", "8", "--s", "1", "--t", "4", "--format", "json-lines")
    assert code == 0
    record = json.loads(out)
    assert record["command"] == "curve"
    at2 = record["payload"]["locals"][0]
    assert at2["p"] == "2" and at2["reduction"] == "additive"
    assert record["payload"]["disc_min"]["factored"] == "-2^11*3^8"


def test_invalid_n_is_a_usage_error(capsys):
    code, _, _ = run(capsys, "enumerate", "--n", "11")
    assert code == 2


def test_enumerate_empty_for_ten(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "10", "--bound", "40", "--format", "json-lines")
    assert code == 0
    assert out == ""


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "7", "--bound", "20", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2
    assert lines[1].startswith("7,2,1,1,-1,1,-3,3,-1664,26,")
    assert lines[1].endswith(",7")


def test_enumerate_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "enumerate", "--n", "6", "--bound", "25", "--format", "json-lines")
    _, second, _ = run(capsys, "enumerate", "--n", "6", "--bound", "25", "--format", "json-lines", "--jobs", "2")
    assert first == second
    for line in first.splitlines():
        record = OutputRecord.model_validate_json(line)
        assert record.schema_version == "1.0"
        assert isinstance(record.payload["disc_min"], str)
        assert OutputRecord.model_validate_json(record.model_dump_json()) == record


def test_enumerate_xlsx(capsys, tmp_path):
    path = tmp_path / "n7.xlsx"
    code, _, _ = run(capsys, "enumerate", "--n", "7", "--bound", "20", "--format", "xlsx", "--output", str(path))
    assert code == 0
    ws = load_workbook(path).active
    assert [c.value for c in ws[1]] == CSV_COLUMNS
    assert ws.max_row == 2


def test_xlsx_needs_an_output_file(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "7", "--bound", "10", "--format", "xlsx")
    assert code == 2
    assert "--output" in err


def test_verify_twelve(capsys):
    code, out, _ = run(capsys, "verify", "--n", "12", "--bound", "40")
    assert code == 0
    assert "0 curves (expected 0)" in out


def test_verify_seven(capsys):
    code, out, _ = run(capsys, "verify", "--n", "7", "--bound", "50")
    assert code == 0
    assert "matched      -2^7*13" in out
    assert "0 violation(s)" in out


def test_verify_report_discrepancies(capsys):
    code, out, _ = run(capsys, "verify", "--n", "8", "--bound", "20", "--report-discrepancies")
    assert code == 0
    assert "computed conductor" in out
    assert "stated 2^2*3 = 12" in out
    assert "unlisted     3^8*7  (21a)" in out
    assert "unlisted     -3^2*5^8  (15a4)" in out
    assert "0 violation(s), 2 unlisted" in out


def test_verify_unlisted_curves_in_json(capsys):
    code, out, _ = run(capsys, "verify", "--n", "8", "--bound", "20", "--format", "json-lines")
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["ok"] is True
    assert payload["violations"] == []
    assert payload["unlisted"] == [{"disc": "-3^2*5^8", "source": "15a4"}, {"disc": "3^8*7", "source": "21a"}]


def test_verify_json_and_xlsx(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--n", "9", "--bound", "20", "--format", "json-lines")
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["ok"] is True
    assert payload["matched"] == [{"disc": "-2^9*3^5", "source": "listed"}]
    path = tmp_path / "n9.xlsx"
    code, _, _ = run(capsys, "verify", "--n", "9", "--bound", "20", "--format", "xlsx", "--output", str(path))
    assert code == 0
    ws = load_workbook(path).active
    assert ws.cell(row=2, column=1).value == "-2^9*3^5"
    assert ws.cell(row=2, column=2).value == "matched"


def test_dioph_unknown_equation(capsys):
    code, _, _ = run(capsys, "dioph", "--eq", "fermat")
    assert code == 2


def test_dioph_option_that_does_not_apply(capsys):
    code, _, err = run(capsys, "dioph", "--eq", "catalan", "--count", "3")
    assert code == 2
    assert "--count" in err


def test_dioph_pell(capsys):
    code, out, _ = run(capsys, "dioph", "--eq", "pell125", "--sign", "-4", "--count", "3", "--format", "json-lines")
    assert code == 0
    record = json.loads(out)
    assert record["schema_version"] == "1.0"
    assert record["payload"]["solutions"] == [["11", "1"], ["1364", "122"], ["167761", "15005"]]
    assert record["payload"]["search_bounds"] == {"c": "-4", "count": "3"}


def test_dioph_mordell_and_lemma22(capsys):
    code, out, _ = run(capsys, "dioph", "--eq", "mordell2000", "--bound", "10000")
    assert code == 0
    assert "4 solution(s)" in out
    code, out, _ = run(capsys, "dioph", "--eq", "lemma22", "--pbound", "100", "--mbound", "10")
    assert code == 0
    assert "0 solution(s)" in out


def test_dioph_cor25_lists_rejections(capsys):
    code, out, _ = run(capsys, "dioph", "--eq", "cor25")
    assert code == 0
    assert "rejected (-26, 31, 2): not a prime power" in out
    assert "rejected (18, 5, 3): not a prime power" in out


def test_szpiro_command(capsys):
    code, out, _ = run(capsys, "szpiro", "--n", "7", "--bound", "20")
    assert code == 0
    assert "ok" in out
    code, _, _ = run(capsys, "szpiro", "--n", "7", "--bound", "20", "--k", "2")
    assert code == 1
    code, _, _ = run(capsys, "szpiro", "--n", "10", "--bound", "20")
    assert code == 2
