import json

import pytest

from src.algebra.annulus import hook_expansion, meridian_eigenvalue
from src.algebra.coeff import DomainError
from src.api.schemas import CheckResultSchema, SuiteReportSchema
from src.cli import main as cli
from src.cli.main import main, parse_partition, parse_vector
from src.verification.sampling import PRNG_ID

pytestmark = pytest.mark.unit


class TestArguments:
    @pytest.mark.parametrize("arg", [(2, -3), [2, -3], "(2, -3)", "2,-3", "2 -3", "[2,-3]"])
    def test_vector(self, arg):
        assert parse_vector(arg) == (2, -3)

    @pytest.mark.parametrize("arg", ["1,2,3", "a,b", 5])
    def test_bad_vector(self, arg):
        with pytest.raises(DomainError):
            parse_vector(arg)

    def test_partition(self):
        assert parse_partition("3,1") == (3, 1)
        assert parse_partition((2, 2, 1)) == (2, 2, 1)
        assert parse_partition(4) == (4,)
        with pytest.raises(DomainError):
            parse_partition("3,x")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


class TestCommands:
    def test_nf(self, capsys):
        code, out, _ = run(capsys, "nf", "D[1,0]*D[0,1] - D[0,1]*D[1,0]")
        assert code == 0
        assert out == "(-s + s^-1)*D[1,-1] + (s - s^-1)*D[1,1]"

    def test_nf_annulus(self, capsys):
        code, out, _ = run(capsys, "nf", "Q[1|0] - Q[0|1] - 1", "--context", "annulus")
        assert code == 0
        assert out == hook_expansion(2).render()

    def test_nf_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "nf", "2*D[1,0]")
        assert code == 0
        data = json.loads(out)
        assert data["terms"][0]["word"] == [[1, 0]]

    def test_comm_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "comm", "1,0", "0,1")
        assert code == 0
        data = json.loads(out)
        assert data["matches_relation"] is True
        assert (data["x"], data["y"]) == ([1, 0], [0, 1])

    def test_certify_text(self, capsys):
        code, out, err = run(capsys, "certify", "1,0", "0,1")
        assert code == 0
        assert "base unit-det" in out
        assert "certificate replays" in err

    def test_project(self, capsys):
        code, out, _ = run(capsys, "project", "0", "2")
        assert code == 0
        assert out == "-Q[0|1] + Q[1|0] - 1"

    def test_eig(self, capsys):
        code, out, _ = run(capsys, "eig", "1")
        assert code == 0
        assert out == meridian_eigenvalue((1,)).render()

    def test_cheb(self, capsys):
        assert run(capsys, "cheb", "3")[:2] == (0, "x^3 - 3*x")
        code, out, _ = run(capsys, "--format", "json", "cheb", "2", "--kind", "S")
        assert code == 0
        assert json.loads(out) == {"n": 2, "kind": "S", "coeffs": [-1, 0, 1]}

    def test_map_bracket(self, capsys):
        code, out, _ = run(capsys, "map-bracket", "D[1,0]*D[1,0]")
        assert code == 0
        assert out == "e[2,0] + 2"

    def test_verify_limit_override(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "verify", "--suite", "annulus", "--n_max", "2")
        assert code == 0
        report = json.loads(out)
        assert report["limits"]["n_max"] == 2
        assert report["prng"] == PRNG_ID


class TestExitCodes:
    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "nf", "s + D[0,0]")
        assert code == 2
        assert "parse error" in err and "(byte 4)" in err

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "project", "1", "0")
        assert code == 2
        assert err.startswith("error:")

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_bad_format(self, capsys):
        assert run(capsys, "--format", "xml", "cheb", "2")[0] == 2

    def test_unknown_limit(self, capsys):
        assert run(capsys, "verify", "--suite", "bmw2", "--max_dett", "3")[0] == 2

    def test_failing_report(self, capsys, monkeypatch):
        def failing(name, **kwargs):
            return SuiteReportSchema(
                suite=name,
                seed=kwargs["seed"],
                prng=PRNG_ID,
                passed=False,
                checks=[CheckResultSchema(name="bmw2/associativity", passed=False, cases=1, detail="boom")],
            )

        monkeypatch.setattr(cli, "run_suite", failing)
        code, out, _ = run(capsys, "--format", "json", "verify", "--suite", "bmw2")
        assert code == 1
        assert json.loads(out)["passed"] is False

    @pytest.mark.parametrize("fmt", [[], ["--format", "json"]])
    def test_defective_certificate(self, capsys, monkeypatch, fmt):
        monkeypatch.setattr(cli.certificates, "validate_certificate", lambda cert: False)
        code, _, err = run(capsys, *fmt, "certify", "1,0", "0,1")
        assert code == 1
        if not fmt:
            assert "certificate has defects" in err
