import json

import pytest

from closure_homology.main import main
from closure_homology.models.theory import ProductKind
from closure_homology.services import spaces
from closure_homology.utils.helpers import load_space, save_space, space_to_data

J1_FILE = {"points": ["0", "1"], "closure": {"0": ["0", "1"], "1": ["0", "1"]}}
JPLUS_FILE = {"points": ["0", "1"], "closure": {"0": ["0", "1"], "1": ["1"]}}
C4_FILE = {
    "points": ["0", "1", "2", "3"],
    "closure": {"0": ["3", "0", "1"], "1": ["0", "1", "2"], "2": ["1", "2", "3"], "3": ["2", "3", "0"]},
}


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def test_validate_accepts_well_formed_file(write_json, capsys):
    path = write_json("j1.json", J1_FILE)
    assert main(["validate", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True
    assert report["points"] == 2


def test_validate_reports_missing_loop(write_json, capsys):
    path = write_json("bad.json", {"points": ["a", "b"], "closure": {"a": ["a"], "b": ["a"]}})
    assert main(["validate", path]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is False
    assert len(report["problems"]) == 1


def test_invalid_json_is_input_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"points": [', encoding="utf-8")
    assert main(["validate", str(path)]) == 2
    assert main(["homology", str(tmp_path / "missing.json")]) == 2


def test_build_products_and_tau(write_json, tmp_path):
    j1 = write_json("j1.json", J1_FILE)
    box = str(tmp_path / "box.json")
    assert main(["build", "inductive-product", j1, j1, "--out", box]) == 0
    data = _read(box)
    assert data["points"] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert data["closure"]["(0,0)"] == ["(0,0)", "(0,1)", "(1,0)"]

    tau = str(tmp_path / "tau.json")
    assert main(["build", "tau", box, "--out", tau]) == 0
    assert all(len(closure) == 4 for closure in _read(tau)["closure"].values())

    cross = str(tmp_path / "cross.json")
    assert main(["build", "product", j1, j1, "--out", cross]) == 0
    assert all(len(closure) == 4 for closure in _read(cross)["closure"].values())


def test_build_power_and_standard(write_json, tmp_path):
    jplus = write_json("jplus.json", JPLUS_FILE)
    point = str(tmp_path / "point.json")
    assert main(["build", "power", jplus, "0", "--out", point]) == 0
    assert _read(point) == {"points": ["()"], "closure": {"()": ["()"]}}

    cube = str(tmp_path / "cube.json")
    assert main(["build", "power", jplus, "3", "--kind", "inductive", "--out", cube]) == 0
    assert len(_read(cube)["points"]) == 8

    standard = str(tmp_path / "jle.json")
    assert main(["build", "standard", "J_le", "--m", "2", "--out", standard]) == 0
    assert _read(standard)["closure"]["0"] == ["0", "1", "2"]

    assert main(["build", "power", jplus, "two"]) == 2
    assert main(["build", "product", jplus]) == 2


def test_build_quotient_and_subspace(write_json, tmp_path):
    c4 = write_json("c4.json", C4_FILE)
    subset = write_json("a.json", {"parts": [["0", "1"]]})
    out = str(tmp_path / "q.json")
    assert main(["build", "quotient", c4, subset, "--out", out]) == 0
    assert len(_read(out)["points"]) == 3
    out = str(tmp_path / "sub.json")
    assert main(["build", "subspace", c4, subset, "--out", out]) == 0
    assert _read(out)["points"] == ["0", "1"]
    unknown = write_json("z.json", {"parts": [["9"]]})
    assert main(["build", "subspace", c4, unknown]) == 2


def test_homology_of_cycle(write_json, capsys):
    c4 = write_json("c4.json", C4_FILE)
    assert main(["homology", c4]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["selector"] == "(j1,cross,simplicial)"
    assert [e["betti"] for e in report["homology"]] == [1, 1, 0]
    assert [e["betti"] for e in report["reduced"]] == [0, 1, 0]

    assert main(["homology", c4, "--product", "inductive", "--flavor", "cubical", "--max-dim", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [e["betti"] for e in report["homology"]] == [1, 0]


def test_homology_with_field_coefficients(write_json, capsys):
    c4 = write_json("c4.json", C4_FILE)
    assert main(["homology", c4, "--coeff", "Zp:2", "--max-dim", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["coefficients"] == "Z/2"
    assert [e["betti"] for e in report["homology"]] == [1, 1]
    assert main(["homology", c4, "--coeff", "Zp:4"]) == 2
    assert main(["homology", c4, "--coeff", "R"]) == 2


def test_resource_and_theory_errors(write_json):
    c4 = write_json("c4.json", C4_FILE)
    assert main(["homology", c4, "--cap", "1"]) == 3
    assert main(["homology", c4, "--interval", "i"]) == 2
    assert main(["homology", c4, "--max-dim", "9"]) == 2


def test_pi0_and_homotopy(write_json, capsys):
    jplus = write_json("jplus.json", JPLUS_FILE)
    identity = write_json("id.json", {"assignment": {"0": "0", "1": "1"}})
    to_zero = write_json("zero.json", {"assignment": {"0": "0", "1": "0"}})

    assert main(["pi0", jplus, "--interval", "j1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["count"] == 2
    assert report["classes"] == [["0"], ["1"]]

    assert main(["homotopy", jplus, jplus, identity, to_zero, "--interval", "jplus"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "yes"
    assert report["witness"][0] == {"0": "0", "1": "1"}
    assert report["witness"][-1] == {"0": "0", "1": "0"}

    assert main(["homotopy", jplus, jplus, identity, to_zero, "--interval", "j1"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "no"

    assert main(["contractible", jplus, "--interval", "jplus"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "yes"


def test_verify_single_instance(write_json, capsys):
    c4 = write_json("c4.json", C4_FILE)
    subset = write_json("a.json", {"parts": [["0"]]})
    assert main(["verify", "les", c4, subset, "--max-dim", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "verified"
    assert report["details"]["H(X,A)"] == ["0", "Z"]


def test_verify_unsupported_theory_is_not_an_error(write_json, capsys):
    c4 = write_json("c4.json", C4_FILE)
    j1 = write_json("j1.json", J1_FILE)
    for flavor in ("simplicial", "cubical"):
        args = ["verify", "kunneth", c4, j1, "--product", "inductive", "--flavor", flavor, "--max-dim", "1"]
        assert main(args) == 0
        assert json.loads(capsys.readouterr().out)["status"] == "unsupported"
    assert main(["verify", "kunneth", c4, j1, "--product", "inductive", "--max-dim", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "unsupported"


def test_simplicial_theory_ignores_product_for_homology(write_json, capsys):
    c4 = write_json("c4.json", C4_FILE)
    assert main(["homology", c4, "--product", "inductive", "--max-dim", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [e["betti"] for e in report["homology"]] == [1, 1]
    jplus = write_json("jplus.json", JPLUS_FILE)
    assert main(["contractible", jplus, "--interval", "jplus", "--product", "inductive"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "yes"


def test_verify_distinct(capsys):
    assert main(["verify", "distinct", "--max-dim", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "verified"
    assert report["details"]["H1"]["(j1,inductive,cubical)"] == "0"


def test_verify_usage_errors(write_json):
    c4 = write_json("c4.json", C4_FILE)
    assert main(["verify", "mv", c4]) == 2
    assert main(["verify", "uct", c4, "--coeff", "Q"]) == 2
    assert main(["verify", "les", "--corpus", "-1"]) == 2


def test_verify_corpus_writes_json_lines(capsys):
    assert main(["verify", "les", "--corpus", "3", "--seed", "5", "--max-dim", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    records = [json.loads(line) for line in lines]
    assert [r["instance"].split()[0] for r in records] == ["#0", "#1", "#2"]
    assert all(r["status"] == "verified" for r in records)


def test_corpus_output_is_independent_of_workers(capsys):
    args = ["verify", "excision", "--corpus", "4", "--seed", "11", "--max-dim", "1"]
    assert main(args) == 0
    serial = capsys.readouterr().out
    assert main(args + ["--workers", "2"]) == 0
    assert capsys.readouterr().out == serial


@pytest.mark.parametrize("space", [spaces.JPLUS, spaces.cycle_space(5), spaces.power(spaces.J1, 2, ProductKind.INDUCTIVE)])
def test_space_file_is_a_fixed_point(space, tmp_path):
    path = str(tmp_path / "space.json")
    save_space(space, path)
    loaded = load_space(path)
    assert space_to_data(loaded) == space_to_data(space)
    assert _read(path) == space_to_data(space).model_dump()
