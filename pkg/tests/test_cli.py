"""The command-line surface: verbs, formats, exit codes, file input."""

import json

from twisted_satake.cli import EXIT_INPUT, EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDescribe:
    def test_su3_table(self, capsys):
        code, out, _err = run(capsys, "describe", "SU3")
        assert code == EXIT_OK
        assert "coinvariants X_*(T)_I: Z" in out
        assert "adjacent-pair" in out
        assert "pi1(G)_I: 0" in out
        assert "relative Weyl order: 2" in out
        assert "ell2-quasi-reductive=True" in out

    def test_pgl2_component_group(self, capsys):
        code, out, _ = run(capsys, "describe", "PGL2")
        assert code == EXIT_OK
        assert "pi1(G)_I: Z/2" in out

    def test_sl2_trivial(self, capsys):
        code, out, _ = run(capsys, "describe", "SL2")
        assert code == EXIT_OK
        assert "|I| 1" in out
        assert "pi1(G)_I: 0" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "describe", "SU3", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert doc["result"]["coinvariants"] == "Z"

    def test_json_deterministic(self, capsys):
        _, out1, _ = run(capsys, "describe", "SU4", "--format", "json")
        _, out2, _ = run(capsys, "describe", "SU4", "--format", "json")
        assert out1 == out2


class TestSchubert:
    def test_su3_bound_six(self, capsys):
        code, out, _ = run(capsys, "schubert", "SU3", "--bound", "6")
        assert code == EXIT_OK
        lines = [l for l in out.splitlines() if l.startswith("stratum")]
        assert len(lines) == 7
        dims = [int(l.split("dim")[1].split("component")[0]) for l in lines]
        assert dims == [0, 2, 4, 6, 8, 10, 12]

    def test_dot_format(self, capsys):
        code, out, _ = run(capsys, "schubert", "SL2", "--bound", "2", "--format", "dot")
        assert code == EXIT_OK
        assert out.startswith("digraph")

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "schubert", "SU3", "--bound", "2", "--format", "json")
        doc = json.loads(out)
        assert [n["dim"] for n in doc["result"]["nodes"]] == [0, 2, 4]


class TestCells:
    def test_mv(self, capsys):
        code, out, _ = run(capsys, "mv", "SU3", "--mu=-1", "--lam=1")
        assert code == EXIT_OK
        assert "nonempty, dim 0" in out

    def test_mv_empty(self, capsys):
        code, out, _ = run(capsys, "mv", "SU3", "--mu=-3", "--lam=1")
        assert code == EXIT_OK
        assert "empty" in out

    def test_conv(self, capsys):
        code, out, _ = run(
            capsys, "conv", "SU3", "--mu=-1", "--mu2=1", "--lam=1", "--lam2=1"
        )
        assert code == EXIT_OK
        assert "nonempty, dim 2" in out

    def test_mv_non_dominant_lam(self, capsys):
        code, _out, err = run(capsys, "mv", "SU3", "--mu=0", "--lam=-1")
        assert code == EXIT_INPUT
        assert "input error" in err


class TestBranchTensor:
    def test_tensor_sl2(self, capsys):
        code, out, _ = run(capsys, "tensor", "SL2", "1", "1")
        assert code == EXIT_OK
        assert out.strip() == "V(2) + V(0)"

    def test_branch_su3(self, capsys):
        code, out, _ = run(capsys, "branch", "SU3", "--weight", "1,0")
        assert code == EXIT_OK
        assert out.strip() == "V(1)"

    def test_branch_swap(self, capsys):
        code, out, _ = run(capsys, "branch", "SL2xSL2-swap", "--weight", "1,1")
        assert code == EXIT_OK
        assert out.strip() == "V(2) + V(0)"

    def test_branch_modular_refusal_keeps_restriction(self, capsys):
        code, out, _ = run(
            capsys, "branch", "SU3", "--weight", "1,0", "--coeff", "Fl:2"
        )
        assert code == EXIT_OK
        assert "unsupported decomposition" in out
        assert "multiplicity 1" in out

    def test_bad_prime_rejected(self, capsys):
        code, _out, err = run(capsys, "branch", "SU3", "--weight", "1,0", "--coeff", "Fl:4")
        assert code == EXIT_INPUT


class TestDominantImage:
    def test_su3_exact_image(self, capsys):
        code, out, _ = run(capsys, "dominant-image", "SU3", "--bound", "10")
        assert code == EXIT_OK
        line = [l for l in out.splitlines() if l.startswith("image")][0]
        assert line == "image: {0, 2, 3, 4, 5, 6, 7, 8, 9, 10}"
        assert "surjective within bound: False" in out

    def test_psu3_saturates(self, capsys):
        code, out, _ = run(capsys, "dominant-image", "PSU3", "--bound", "4")
        assert code == EXIT_OK
        assert "image: {0, 1, 2, 3, 4}" in out
        assert "surjective within bound: True" in out


class TestCorr:
    def test_full_levi(self, capsys):
        code, out, _ = run(capsys, "corr", "SU3", "--levi", "all", "--vector", "1,0")
        assert code == EXIT_OK
        assert "corr = 0" in out

    def test_torus_levi(self, capsys):
        code, out, _ = run(capsys, "corr", "SU3", "--levi", "none", "--vector", "1,0")
        assert code == EXIT_OK
        assert "corr = 2" in out


class TestVerify:
    def test_su3_all(self, capsys):
        code, out, _ = run(capsys, "verify", "SU3", "all")
        assert code == EXIT_OK
        assert "pass:" in out

    def test_pgl2_exactness_records_cokernel(self, capsys):
        code, out, _ = run(capsys, "verify", "PGL2", "exactness")
        assert code == EXIT_OK
        assert "Z/2" in out

    def test_json_records(self, capsys):
        code, out, _ = run(capsys, "verify", "SL2", "orbits", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["result"]["passed"] is True

    def test_pinning_violation_fails_suite(self, capsys, tmp_path):
        bad = {
            "base": {
                "rank": 2,
                "simple_roots": [[2, -1], [-1, 2]],
                "simple_coroots": [[1, 0], [0, 1]],
            },
            # Swap matrix with the identity permutation: pinning violated.
            "generators": [{"lattice_map": [[0, 1], [1, 0]], "root_permutation": [0, 1]}],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, out, _ = run(capsys, "verify", "--file", str(path), "all")
        assert code == EXIT_PROPERTY
        assert "FAIL" in out


class TestFileInput:
    def test_valid_file(self, capsys, tmp_path):
        datum = {
            "name": "user-su3",
            "base": {
                "rank": 2,
                "simple_roots": [[2, -1], [-1, 2]],
                "simple_coroots": [[1, 0], [0, 1]],
            },
            "generators": [{"lattice_map": [[0, 1], [1, 0]], "root_permutation": [1, 0]}],
        }
        path = tmp_path / "datum.json"
        path.write_text(json.dumps(datum))
        code, out, _ = run(capsys, "describe", "--file", str(path))
        assert code == EXIT_OK
        assert "coinvariants X_*(T)_I: Z" in out

    def test_malformed_json_diagnostics(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        code, _out, err = run(capsys, "describe", "--file", str(path))
        assert code == EXIT_INPUT
        assert "line 1" in err

    def test_missing_field_diagnostics(self, capsys, tmp_path):
        path = tmp_path / "missing.json"
        path.write_text(json.dumps({"base": {"rank": 1, "simple_roots": []}}))
        code, _out, err = run(capsys, "describe", "--file", str(path))
        assert code == EXIT_INPUT
        assert "simple_coroots" in err


class TestExitCodes:
    def test_unknown_preset(self, capsys):
        code, _out, err = run(capsys, "describe", "NOPE")
        assert code == EXIT_INPUT

    def test_usage_error(self, capsys):
        code, _out, _err = run(capsys, "schubert", "SU3", "--bound", "x")
        assert code == EXIT_USAGE

    def test_unknown_command(self, capsys):
        code, _out, _err = run(capsys, "frobnicate")
        assert code == EXIT_USAGE

    def test_nonpositive_bound(self, capsys):
        code, _out, err = run(capsys, "schubert", "SU3", "--bound", "0")
        assert code == EXIT_INPUT
        assert "positive" in err
