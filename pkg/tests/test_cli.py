import json

import pytest

from curvelab.cli import main

CURVES = {
    "E.crv": "y = x^(3/2) + x^(13/6)\ny = x^(7/3)\n",
    "E-rescaled.crv": "y = 5x^(3/2) - 2x^(13/6)\ny = -x^(7/3)\n",
    "E2.crv": "y = 2x^(3/2) + x^(13/6)\ny = x^(7/3)\n",
    "cusp23.crv": "y = x^(3/2)\n",
    "cusp25.crv": "y = x^(5/2)\n",
    "S1.crv": "param (w^2, w^3, w^5)\n",
    "bad.crv": "y = x^(1/2)\n",
    "garbled.crv": "y = x ^^ 2\n",
}


@pytest.fixture
def files(tmp_path, monkeypatch):
    for name, text in CURVES.items():
        (tmp_path / name).write_text(text)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_equiv(files, capsys):
    assert run(capsys, "equiv", "E.crv", "E-rescaled.crv")[:2] == (0, "equivalent\n")
    code, out, _ = run(capsys, "equiv", "cusp23.crv", "cusp25.crv")
    assert code == 1
    assert out == "not equivalent (characteristic exponents {3/2} vs {5/2})\n"


def test_splice_dot(files, capsys):
    code, out, _ = run(capsys, "splice", "E.crv", "--dot")
    assert code == 0
    assert 'taillabel="1", headlabel="3"' in out
    assert 'taillabel="2", headlabel="7"' in out
    assert out.count('taillabel="3", arrowhead=none') == 2
    assert out.count('taillabel="1", arrowhead=normal') == 2


def test_verify_reports_bottom_weight(files, capsys):
    code, out, _ = run(capsys, "splice", "E.crv", "--verify")
    assert code == 0
    assert "bottom weight 22 above 13/6: s + r*r'*m' = 4 + 3*2*3" in out
    assert "test branch y = x^(3/2) + 2*x^(13/6) meets branch 1 with multiplicity 66 = 3*22" in out
    assert "linking(arrow 1, arrow 2) = 27, intersection multiplicity = 27: ok" in out
    assert "edge determinants: 1, 4, 5: ok" in out


def test_verify_keeps_json_clean(files, capsys):
    code, out, err = run(capsys, "tree", "E.crv", "--json", "--verify")
    assert code == 0
    json.loads(out)
    assert "ultrametric: ok" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "E.crv"],
        ["tree", "E.crv"],
        ["eggers", "E.crv"],
        ["splice", "E.crv"],
        ["equiv", "E.crv", "E-rescaled.crv"],
        ["project", "S1.crv", "--find-generic"],
        ["project", "S1.crv", "--direction", "0,1"],
        ["carrousel", "E.crv"],
        ["carrousel", "E.crv", "E-rescaled.crv"],
        ["sections", "E.crv", "--at", "0.01"],
        ["probe", "E.crv", "E2.crv", "--grid", "1e-4,1e-2,8"],
    ],
)
def test_json_and_determinism(files, capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    json.loads(out)
    assert run(capsys, *argv, "--json")[1] == out
    text = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == text


def test_invariants_text(files, capsys):
    _, out, _ = run(capsys, "invariants", "E.crv")
    assert "q-values: 3/2, 13/6, 7/3" in out
    assert "branches 1, 2: coincidence 3/2, intersection multiplicity 27" in out
    assert "essential exponents: 9, 13" in out


def test_project_text(files, capsys):
    _, out, _ = run(capsys, "project", "S1.crv", "--find-generic")
    assert "verdict: GENERIC" in out and "topology: 1[3/2[L,L]]" in out
    _, out, err = run(capsys, "project", "S1.crv", "--direction", "0,1")
    assert "FAILS_BRANCH(1, 3)" in out and "non-generic" in err


def test_carrousel_inventory(files, capsys):
    _, out, _ = run(capsys, "carrousel", "E.crv")
    assert "pieces: B(1) 1, B 4, A 4, D 9, total 18" in out
    assert run(capsys, "carrousel", "cusp23.crv", "cusp25.crv")[0] == 1


def test_sections_svg(files, capsys):
    code, out, _ = run(capsys, "sections", "E.crv", "--at", "0.1,0.05", "--svg", "sec-{t}.svg")
    assert code == 0
    for t in ("0.1", "0.05"):
        svg = (files / f"sec-{t}.svg").read_text()
        assert svg.count('class="point"') == 9
    run(capsys, "sections", "E.crv", "--at", "0.025", "--svg", "one.svg")
    assert (files / "one.svg").exists()
    run(capsys, "sections", "E.crv", "--at", "0.1,0.05", "--svg", "many.svg")
    assert (files / "many-0.1.svg").exists() and (files / "many-0.05.svg").exists()


def test_probe_text(files, capsys):
    code, out, _ = run(capsys, "probe", "E.crv")
    assert code == 0
    assert "symbolic tree: same" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["tree", "missing.crv"],
        ["tree", "bad.crv"],
        ["tree", "garbled.crv"],
        ["tree", "E.crv", "--svg", "x.svg"],
        ["equiv", "E.crv"],
        ["sections", "E.crv", "--at", "zero"],
        ["sections", "E.crv", "--at", "0.5"],
        ["project", "S1.crv", "--direction", "1,0", "--find-generic"],
        ["project", "S1.crv", "--direction", "1"],
        ["probe", "E.crv", "--grid", "1,2"],
        ["splice", "E.crv", "--json", "--dot"],
        [],
    ],
)
def test_input_errors(files, capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_parse_error_message(files, capsys):
    _, _, err = run(capsys, "tree", "bad.crv")
    assert "tangent to y-axis" in err


def test_invariant_failure_exit_code(files, capsys, monkeypatch):
    from curvelab import cli
    from curvelab.puiseux import InvariantError

    def broken(_):
        raise InvariantError("bottom weight 1/2 is not integral")

    monkeypatch.setattr(cli, "build_splice", broken)
    code, _, err = run(capsys, "splice", "E.crv")
    assert code == 3 and "not integral" in err
