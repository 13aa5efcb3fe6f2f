import io
import json

import pytest

from otree.cli import main


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def ok(*argv, stdin=""):
    code, out, err = run(*argv, stdin=stdin)
    assert code == 0, err
    return out


ALPHA = json.dumps({"cutoff": 2, "terms": [{"coeff": "1", "forest": "()"}]})


class TestProducts:
    def test_gl(self):
        assert ok("gl", "()", "()") == "()() + (())\n"

    def test_graft_and_words(self):
        assert ok("graft", "()", "()") == "(())\n"
        out = ok("gl", "()()", "(())", "--words")
        assert "words" in out

    def test_shuffle_concat(self):
        assert ok("shuffle", "()", "()") == "2·()()\n"
        assert ok("concat", "()", "(())") == "()(())\n"

    def test_linear_input(self):
        assert ok("shuffle", "() - (())", "𝟙") == "() - (())\n"

    def test_latex(self):
        assert ok("gl", "()", "()", "--format", "latex") == r"\bullet\,\bullet + [\bullet]" + "\n"


class TestHopf:
    def test_antipode_json(self):
        data = json.loads(ok("antipode", "(())", "--format", "json"))
        assert data == [
            {"coeff": "2", "forest": "()()"},
            {"coeff": "-1", "forest": "(())"},
        ]

    @pytest.mark.parametrize("method", ["closed", "recursive", "cut-recursive"])
    def test_antipode_methods_agree(self, method):
        assert ok("antipode", "(()())", "--method", method) == "-3·()()() + ()(()) + (())() - (()())\n"

    def test_reversal(self):
        assert ok("antipode", "()(())", "--method", "reversal") == "(())()\n"

    @pytest.mark.parametrize("method", ["cuts", "recursive"])
    def test_coproduct(self, method):
        assert ok("coproduct", "(())", "--method", method) == "𝟙 ⊗ (()) + () ⊗ () + (()) ⊗ 𝟙\n"

    def test_coproduct_words(self):
        assert ok("coproduct", "()(())", "--method", "words") == "𝟙 ⊗ ()(()) + () ⊗ (()) + ()(()) ⊗ 𝟙\n"

    def test_coproduct_json(self):
        data = json.loads(ok("coproduct", "()", "--format", "json"))
        assert data == [{"coeff": "1", "left": "", "right": "()"}, {"coeff": "1", "left": "()", "right": ""}]


class TestEnumerate:
    def test_count(self):
        assert ok("enumerate", "3", "--count") == "5\n"
        assert ok("enumerate", "2", "--colors", "a,b", "--count") == "8\n"
        assert ok("enumerate", "4", "--unordered", "--count") == "9\n"

    def test_listing(self):
        assert ok("enumerate", "2").split() == ["()()", "(())"]
        assert json.loads(ok("enumerate", "2", "--format", "json")) == ["()()", "(())"]
        assert ok("enumerate", "3", "--filter", "trees").split() == ["(()())", "((()))"]

    def test_bound(self, monkeypatch):
        monkeypatch.setenv("OTREE_MAX_ORDER", "2")
        code, _, err = run("enumerate", "3")
        assert code == 1 and "error" in err


class TestCuts:
    def test_text_table(self):
        lines = ok("cuts", "()((()))").splitlines()
        assert lines[0].split() == ["i", "cut", "kinds", "P", "R"]
        assert len(lines) == 9

    def test_family_and_json(self):
        data = json.loads(ok("cuts", "()((()))", "--family", "wc", "--format", "json"))
        assert [row["R"] for row in data] == ["()((()))", "((()))", ""]
        assert data[1]["cut"] == [{"node": [], "count": 1}]
        assert "wc" in data[1]["kinds"]


class TestSymmetry:
    def test_symmetrize(self):
        assert ok("symmetrize", "()(())") == "()(()) + (())()\n"
        assert ok("symmetrize", "(()())", "--orbit") == "2·(()())\n"
        assert ok("symmetrize", "2·(()())", "--inverse") == "(()())\n"

    def test_scalars(self):
        assert ok("sigma", "(()())") == "2\n"
        assert ok("pi", "((())())()") == "4\n"
        assert ok("forget", "(())()") == "()(())\n"
        assert ok("forget", "") == "𝟙\n"
        assert ok("pi", "()()", "--format", "json") == '"2"\n'


class TestSeries:
    def test_exp_inline(self):
        out = ok("series-exp", ALPHA)
        assert out.splitlines() == ["cutoff 2", "1\t𝟙", "1\t()", "1/2\t()()", "1/2\t(())"]

    def test_roundtrip_via_file(self, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text(ok("series-exp", ALPHA, "--format", "json"), encoding="utf-8")
        assert json.loads(ok("series-log", str(path), "--format", "json")) == json.loads(ALPHA)

    def test_compose_and_inverse(self):
        beta = ok("series-exp", ALPHA, "--format", "json")
        inv = ok("series-compose", beta, "--inverse", "--format", "json")
        out = ok("series-compose", beta, inv, "--format", "json")
        assert json.loads(out) == {"cutoff": 2, "terms": [{"coeff": "1", "forest": ""}]}

    def test_stdin(self):
        assert ok("series-check", "-", stdin=ALPHA) == "logarithmic: yes\nexponential: no\n"

    def test_check_json(self):
        assert json.loads(ok("series-check", ALPHA, "--format", "json")) == {
            "cutoff": 2,
            "logarithmic": True,
            "exponential": False,
        }

    def test_errors(self, tmp_path):
        assert run("series-exp", str(tmp_path / "missing.json"))[0] == 1
        assert run("series-exp", "{oops")[0] == 1
        assert run("series-log", ALPHA)[0] == 1
        assert run("series-compose", ALPHA)[0] == 2


class TestTablesAndVerify:
    def test_tables_deterministic(self):
        first = ok("tables", "--max-order", "4")
        assert first == ok("tables", "--max-order", "4")
        assert first.count("# ") == 4

    def test_table_json(self):
        data = json.loads(ok("tables", "--table", "antipode", "--format", "json"))
        assert len(data["antipode"]) == 23

    def test_verify(self):
        out = ok("verify", "--max-order", "3", "--law", "coassociativity", "--law", "gl-laws")
        assert out.count(" ok ") == 2

    def test_verify_list_and_unknown(self):
        assert "coassociativity" in ok("verify", "--list")
        assert run("verify", "--law", "nonsense")[0] == 1


class TestErrors:
    def test_syntax_error_reports_offset(self):
        code, out, err = run("gl", "(()", "()")
        assert code == 1 and out == ""
        assert "byte 0" in err and err.startswith("otree gl: error:")

    def test_usage_errors(self):
        code, _, err = run("gl", "()")
        assert code == 2 and "usage" in err
        code, _, err = run("antipode", "()", "--method", "bogus")
        assert code == 2 and "--method" in err
        assert run()[0] == 2
        assert run("nope")[0] == 2

    def test_help(self):
        code, out, _ = run("--help")
        assert code == 0 and "otree" in out

    def test_stdin_forest(self):
        assert ok("antipode", "-", stdin="()()\n") == "()()\n"
