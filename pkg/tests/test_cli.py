"""
Tests for the command-line verbs and exit statuses
"""

import json

import pytest

from mvduality.domain.schemas import LawResult, SuiteReport, Verdict
from mvduality.main import run
from mvduality.services.verification_service import VerificationService


def invoke(capsys, *args):
    status = run([str(a) for a in args])
    captured = capsys.readouterr()
    return status, captured.out, captured.err


@pytest.mark.integration
class TestBuildVerbs:
    """Test build-bn and build-m"""

    def test_build_bn_single_atom(self, capsys):
        status, out, _ = invoke(capsys, "build-bn", "--atoms", 1, "--n", 1)
        assert status == 0
        assert out == (
            "# 2^1[1]\n# 0: [{}]\n# 1: [{0}]\n"
            "wajsberg size=2 top=1\nneg: 1 0\nimp:\n1 1\n0 1\n"
        )

    def test_build_bn_size(self, capsys):
        status, out, _ = invoke(capsys, "build-bn", "--atoms", 2, "--n", 3)
        assert status == 0
        assert "wajsberg size=16 top=15" in out

    def test_build_bn_json(self, capsys):
        status, out, _ = invoke(capsys, "build-bn", "--atoms", 1, "--n", 2, "--format", "json")
        table = json.loads(out)
        assert status == 0
        assert table["size"] == 3
        assert table["elements"] == ["[{},{}]", "[{},{0}]", "[{0},{0}]"]

    def test_build_m(self, capsys, six_pair_file):
        status, out, _ = invoke(capsys, "build-m", "--pair", six_pair_file)
        assert status == 0
        assert "wajsberg size=6 " in out


@pytest.mark.integration
class TestAlgebraVerbs:
    """Test axioms, primes, decompose and reconstruct"""

    def test_axioms_ok(self, capsys, l3_file):
        status, out, _ = invoke(capsys, "axioms", "--algebra", l3_file)
        assert status == 0
        assert out == "OK axioms l3\n"

    def test_axioms_fail(self, capsys, corrupted_file):
        status, out, _ = invoke(capsys, "axioms", "--algebra", corrupted_file)
        assert status == 1
        assert out.splitlines()[0] == "FAIL axioms bad identity 1 fails at (0,)"

    def test_primes(self, capsys, l2xl3_file):
        status, out, _ = invoke(capsys, "primes", "--algebra", l2xl3_file)
        assert status == 0
        assert out.splitlines() == [
            "prime 2 quotient=L3 members={2,5}",
            "prime 3 quotient=L2 members={3,4,5}",
        ]

    def test_primes_json(self, capsys, l2xl3_file):
        _, out, _ = invoke(capsys, "primes", "--algebra", l2xl3_file, "--format", "json")
        assert [p["length"] for p in json.loads(out)] == [2, 1]

    def test_decompose_chain(self, capsys, l3_file):
        status, out, _ = invoke(capsys, "decompose", "--algebra", l3_file, "--n", 2)
        assert status == 0
        assert out == "pair n=2 atoms=1\nh 1 = {}\nh 2 = {0}\n"

    def test_decompose_product(self, capsys, l2xl3_file):
        _, out, _ = invoke(capsys, "decompose", "--algebra", l2xl3_file, "--n", 6)
        assert out.splitlines()[1:] == ["h 1 = {1}", "h 2 = {0,1}", "h 3 = {1}", "h 6 = {0,1}"]

    def test_decompose_json(self, capsys, l3_file):
        _, out, _ = invoke(capsys, "decompose", "--algebra", l3_file, "--n", 2, "--format", "json")
        assert json.loads(out) == {"n": 2, "atoms": 1, "h": {"1": "{}", "2": "{0}"}}

    def test_reconstruct(self, capsys, l3_file):
        status, out, _ = invoke(capsys, "reconstruct", "--algebra", l3_file, "--n", 2)
        lines = out.splitlines()
        assert status == 0
        assert lines[:3] == ["phi 0 = [{},{}]", "phi 1 = [{},{0}]", "phi 2 = [{0},{0}]"]
        assert all(line.startswith("OK ") for line in lines[3:])
        assert len(lines) == 8

    def test_reconstruct_not_n_valued(self, capsys, l3_file):
        status, _, err = invoke(capsys, "reconstruct", "--algebra", l3_file, "--n", 3)
        assert status == 2
        assert "error: " in err


@pytest.mark.integration
class TestPairVerbs:
    """Test roundtrip and stone"""

    def test_roundtrip(self, capsys, six_pair_file):
        status, out, _ = invoke(capsys, "roundtrip", "--pair", six_pair_file)
        assert status == 0
        assert out
        assert all(line.startswith("OK ") for line in out.splitlines())

    def test_stone(self, capsys, six_pair_file):
        status, out, _ = invoke(capsys, "stone", "--pair", six_pair_file)
        lines = out.splitlines()
        assert status == 0
        assert lines[:3] == ["space points=2 n=2", "closed 1 = {0}", "closed 2 = {0,1}"]
        assert all(line.startswith("OK stone-") for line in lines[3:])

    def test_stone_with_map(self, capsys, six_pair_file, valued_map_file):
        status, out, _ = invoke(capsys, "stone", "--pair", six_pair_file, "--map", valued_map_file)
        assert status == 0
        assert "psi_inverse = [{},{1}]" in out.splitlines()

    def test_stone_images(self, capsys, six_pair_file):
        """Test that psi images print in the valued map format"""
        status, out, _ = invoke(capsys, "stone", "--pair", six_pair_file, "--images")
        lines = out.splitlines()
        assert status == 0
        assert lines[3:9] == ["psi [{},{}]", "0: 0/2", "1: 0/2", "psi [{0},{0}]", "0: 2/2", "1: 0/2"]
        assert sum(line.startswith("psi ") for line in lines) == 6

    def test_stone_rejects_map(self, capsys, tmp_path, six_pair_file):
        path = tmp_path / "half.txt"
        path.write_text("0: 1/2\n1: 1/2\n")
        status, _, err = invoke(capsys, "stone", "--pair", six_pair_file, "--map", path)
        assert status == 2
        assert "point 0" in err

    def test_stone_json(self, capsys, six_pair_file):
        _, out, _ = invoke(capsys, "stone", "--pair", six_pair_file, "--format", "json")
        assert len(json.loads(out)["results"]) == 2


@pytest.mark.integration
class TestSuiteVerb:
    """Test the suite verb with the service patched"""

    def test_suite_ok(self, capsys, mocker):
        report = SuiteReport(results=[LawResult(verdict=Verdict.OK, law="axioms", subject="L2")])
        run_suite = mocker.patch.object(VerificationService, "run_suite", return_value=report)
        status, out, _ = invoke(capsys, "suite", "--n", 2, "--n", 3, "--sequential", "--seed", 9)
        assert status == 0
        assert out == "OK axioms L2\n"
        run_suite.assert_called_once_with(
            ns=(2, 3), max_size=None, max_atoms=2, seed=9, concurrent=False
        )

    def test_suite_defaults(self, capsys, mocker):
        run_suite = mocker.patch.object(VerificationService, "run_suite", return_value=SuiteReport())
        invoke(capsys, "suite")
        assert run_suite.call_args.kwargs["ns"] == (2, 3, 4, 6)
        assert run_suite.call_args.kwargs["concurrent"] is None

    def test_suite_failure(self, capsys, mocker):
        report = SuiteReport(
            results=[LawResult(verdict=Verdict.FAIL, law="axioms", subject="L2", counterexample="x")]
        )
        mocker.patch.object(VerificationService, "run_suite", return_value=report)
        status, out, _ = invoke(capsys, "suite")
        assert status == 1
        assert out == "FAIL axioms L2 x\n"


@pytest.mark.unit
class TestExitStatus:
    """Test usage and input errors"""

    def test_unknown_verb(self, capsys):
        status, _, _ = invoke(capsys, "frobnicate")
        assert status == 2

    def test_missing_file(self, capsys, tmp_path):
        status, _, _ = invoke(capsys, "axioms", "--algebra", tmp_path / "missing.txt")
        assert status == 2

    def test_missing_option(self, capsys):
        status, _, _ = invoke(capsys, "build-bn", "--atoms", 1)
        assert status == 2

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "broken.txt"
        path.write_text("wajsberg size=2\n")
        status, _, err = invoke(capsys, "axioms", "--algebra", path)
        assert status == 2
        assert "error: bad algebra header" in err

    def test_invalid_pair(self, capsys, tmp_path):
        path = tmp_path / "invalid.txt"
        path.write_text("pair n=2 atoms=1\nh 1 = {}\nh 2 = {}\n")
        status, _, err = invoke(capsys, "build-m", "--pair", path)
        assert status == 2
        assert "invalid filter map" in err

    def test_version(self, capsys):
        status, out, _ = invoke(capsys, "--version")
        assert status == 0
        assert "1.0.0" in out
