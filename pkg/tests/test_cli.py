import json
from pathlib import Path

import pytest

from gaugetriple.cli import main
from gaugetriple.config import ENV_VAR, bundled_names, load_text
from gaugetriple.errors import ConfigError
from gaugetriple.poly import Poly

GOLDEN = Path(__file__).parent / "golden"

# (config, command args, documented exit code)
CASES = [
    ("vacuum", ["check"], 0),
    ("vacuum", ["curvature"], 0),
    ("vacuum", ["dynamics"], 0),
    ("vacuum", ["dynamics", "--on-shell"], 0),
    ("vacuum", ["ym"], 0),
    ("plane-wave", ["check"], 0),
    ("plane-wave", ["dynamics", "--on-shell"], 0),
    ("plane-wave", ["jet"], 0),
    ("plane-wave", ["ym"], 0),
    ("offshell", ["check"], 0),
    ("offshell", ["curvature"], 0),
    ("offshell", ["dynamics", "--on-shell"], 1),
    ("offshell", ["ym"], 1),
    ("so3-sample", ["check"], 0),
    ("so3-sample", ["curvature"], 0),
    ("so3-sample", ["dynamics", "--on-shell"], 1),
    ("so3-sample", ["jet"], 0),
    ("so3-sample", ["ym"], 1),
]


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def golden_name(config, args):
    return "_".join([config] + [a.lstrip("-") for a in args]) + ".json"


def write_config(tmp_path, text, name="problem.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_bundled_list(capsys):
    code, out, _ = run(capsys, ["--list-bundled"])
    assert code == 0
    assert out.split() == ["offshell", "plane-wave", "so3-sample", "vacuum"] == bundled_names()


@pytest.mark.parametrize("config,args,code", CASES, ids=[golden_name(c, a)[:-5] for c, a, _ in CASES])
def test_golden_reports(capsys, config, args, code):
    argv = args + ["--config", f"bundled:{config}", "--json", "--seed", "7"]
    got, out, _ = run(capsys, argv)
    assert got == code
    again, out2, _ = run(capsys, argv)
    assert (again, out2) == (got, out)
    expected = (GOLDEN / golden_name(config, args)).read_text(encoding="utf-8")
    assert out == expected
    assert json.loads(out)["exit"] == code


@pytest.mark.parametrize("config,args,code", CASES, ids=[golden_name(c, a)[:-5] for c, a, _ in CASES])
def test_human_reports_exit_codes(capsys, config, args, code):
    got, out, _ = run(capsys, args + ["--config", f"bundled:{config}"])
    assert got == code
    assert out.endswith("\n") and "\r" not in out


def test_printed_polynomials_reparse(capsys):
    code, out, _ = run(capsys, ["dynamics", "--on-shell", "--config", "bundled:so3-sample", "--json"])
    data = json.loads(out)
    for key in ("momentum", "res_momentum", "res_field"):
        for _, _, text in data[key]:
            assert str(Poly.parse(text, 2)) == text


def test_curvature_abelian_line(capsys, tmp_path):
    path = write_config(tmp_path, "[problem]\ndim = 2\n[algebra]\nbuiltin = abelian(1)\n[connection]\ne1.0 = -x1\n")
    code, out, _ = run(capsys, ["curvature", "--config", path])
    assert code == 0
    assert out.strip() == "F[e1][01] = 1"


def test_curvature_zero_connection(capsys):
    code, out, _ = run(capsys, ["curvature", "--config", "bundled:vacuum", "--json"])
    assert json.loads(out)["curvature"] == []


def test_so3_curvature_three_components(capsys):
    code, out, _ = run(capsys, ["curvature", "--config", "bundled:so3-sample"])
    assert out.splitlines() == ["F[e1][01] = 1", "F[e2][01] = -1", "F[e3][01] = -x0*x1"]


CORRUPT = """
[problem]
dim = 3
[algebra]
dim = 3
structure = 1 2 3 1; 1 3 2 -1; 2 3 1 1; 2 1 3 -1; 3 1 2 1; 3 2 1 -1; 1 1 2 1; 1 2 1 -1
[connection]
e1.0 = x1
"""


def test_corrupted_jacobi(capsys, tmp_path):
    code, out, _ = run(capsys, ["check", "--config", write_config(tmp_path, CORRUPT)])
    assert code == 1
    lines = out.splitlines()
    assert lines[1].startswith("FAIL    lie-algebra")
    assert "jacobi violated at (1,0,1,2)" in lines[1]
    assert all(line.startswith("SKIPPED") for line in lines[2:])


def test_custom_structure_so3_passes(capsys, tmp_path):
    text = CORRUPT.replace("; 1 1 2 1; 1 2 1 -1", "")
    code, out, _ = run(capsys, ["check", "--config", write_config(tmp_path, text), "--trials", "3"])
    assert code == 0, out


def test_abelian_skips_sardanashvily(capsys):
    code, out, _ = run(capsys, ["check", "--config", "bundled:plane-wave"])
    assert code == 0
    assert "SKIPPED sardanashvily" in out
    assert "FAIL" not in out


def test_jet_cross_check(capsys):
    code, out, _ = run(capsys, ["jet", "--config", "bundled:so3-sample", "--point", "1,1"])
    assert code == 0
    assert "e3: F = [['0', '-1'], ['1', '0']]" in out
    assert out.strip().endswith("CONSISTENT")


def test_jet_constant_abelian(capsys, tmp_path):
    path = write_config(tmp_path, "[problem]\ndim = 2\n[algebra]\nbuiltin = abelian(1)\n[connection]\ne1.0 = 3\n")
    code, out, _ = run(capsys, ["jet", "--config", path, "--point", "0,0", "--json"])
    data = json.loads(out)
    assert data["S"] == [[["0", "0"], ["0", "0"]]] and data["F"] == data["S"]


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_jet_random_configs_consistent(capsys, tmp_path, seed):
    import random
    from gaugetriple import sampling
    rng = random.Random(seed)
    lines = ["[problem]", "dim = 3", "[algebra]", "builtin = so3", "[connection]"]
    for a in range(1, 4):
        for mu in range(3):
            lines.append(f"e{a}.{mu} = {sampling.poly(rng, 3, 2)}")
    path = write_config(tmp_path, "\n".join(lines) + "\n")
    code, out, _ = run(capsys, ["jet", "--config", path, "--point", "1/2, -1, 2"])
    assert code == 0 and "CONSISTENT" in out


class TestInputErrors:
    def test_missing_config(self, capsys, monkeypatch):
        monkeypatch.delenv(ENV_VAR, raising=False)
        code, _, err = run(capsys, ["check"])
        assert code == 2 and "no config" in err

    def test_env_default(self, capsys, monkeypatch, tmp_path):
        path = write_config(tmp_path, "[problem]\ndim = 2\n[algebra]\nbuiltin = abelian(1)\n[connection]\ne1.0 = -x1\n")
        monkeypatch.setenv(ENV_VAR, path)
        code, out, _ = run(capsys, ["curvature"])
        assert code == 0 and out.strip() == "F[e1][01] = 1"

    def test_bad_polynomial_has_line(self, capsys, tmp_path):
        path = write_config(tmp_path, "[problem]\ndim = 2\n[algebra]\nbuiltin = so3\n[connection]\ne1.0 = x0 +* 2\n")
        code, _, err = run(capsys, ["curvature", "--config", path])
        assert code == 2
        assert "line 6" in err and "position" in err

    def test_variable_out_of_range(self, capsys, tmp_path):
        path = write_config(tmp_path, "[problem]\ndim = 2\n[algebra]\nbuiltin = so3\n[connection]\ne1.0 = x3\n")
        code, _, err = run(capsys, ["curvature", "--config", path])
        assert code == 2 and "x3" in err

    def test_missing_momentum(self, capsys):
        code, _, err = run(capsys, ["dynamics", "--config", "bundled:so3-sample"])
        assert code == 2 and "--on-shell" in err

    def test_malformed_point(self, capsys):
        code, _, err = run(capsys, ["jet", "--config", "bundled:so3-sample", "--point", "1,a"])
        assert code == 2

    def test_wrong_point_length(self, capsys):
        code, _, err = run(capsys, ["jet", "--config", "bundled:so3-sample", "--point", "1,2,3"])
        assert code == 2 and "2 entries" in err

    def test_bad_generator(self, capsys, tmp_path):
        path = write_config(tmp_path, "[problem]\ndim = 2\n[algebra]\nbuiltin = so3\n[connection]\ne4.0 = 1\n")
        code, _, err = run(capsys, ["curvature", "--config", path])
        assert code == 2 and "generator" in err

    def test_unknown_file(self, capsys, tmp_path):
        code, _, err = run(capsys, ["check", "--config", str(tmp_path / "nope.ini")])
        assert code == 2

    def test_no_subcommand(self, capsys):
        code, _, _ = run(capsys, [])
        assert code == 2

    def test_unknown_bundled(self):
        with pytest.raises(ConfigError):
            from gaugetriple.config import load
            load("bundled:nothing")


class TestConfigParsing:
    def test_momentum_orientation(self):
        text = ("[problem]\ndim = 4\n[algebra]\nbuiltin = abelian(1)\n[connection]\n"
                "[momentum]\ne1.1.0 = x2\n")
        cfg = load_text(text)
        assert cfg.momentum[0].coeff((0, 1)) == Poly.parse("-x2", 4)

    def test_custom_lagrangian(self):
        # density variables on R^2 with one generator: x0, x1, A_0 = x2, A_1 = x3, F_01 = x4
        text = ("[problem]\ndim = 2\n[algebra]\nbuiltin = abelian(1)\n[connection]\ne1.0 = -x1\n"
                "[lagrangian]\nkind = custom\nbody = 1/2*x4^2\n")
        cfg = load_text(text)
        assert cfg.lagrangian.body == Poly.parse("1/2*x4^2", 5)

    def test_metric_length(self):
        with pytest.raises(ConfigError, match="signature"):
            load_text("[problem]\ndim = 2\nmetric = - + +\n[algebra]\nbuiltin = so3\n")

    def test_bad_kind(self):
        with pytest.raises(ConfigError, match="kind"):
            load_text("[problem]\ndim = 2\n[algebra]\nbuiltin = so3\n[lagrangian]\nkind = maxwell\n")


FREE = """
[problem]
dim = 2
[algebra]
builtin = abelian(1)
[connection]
e1.0 = -x1                 ; F = dq0 ^ dq1
[momentum]
e1 = 1
[lagrangian]
kind = custom
body = 1/2*x4^2
"""


def test_custom_lagrangian_on_shell(capsys, tmp_path):
    path = write_config(tmp_path, FREE)
    code, out, _ = run(capsys, ["dynamics", "--config", path])
    assert code == 0 and out.splitlines()[-1] == "ON-SHELL"
    code, out, _ = run(capsys, ["dynamics", "--config", write_config(tmp_path, FREE.replace("e1 = 1", "e1 = 2"))])
    assert code == 1 and "res_momentum[e*1][] = 1" in out
