import json

import pytest

from quadrings.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, f"quadrings {' '.join(argv)} exited with {code}"
    data = json.loads(out)
    assert data["schema"] == 1, "Missing schema version"
    return data


def test_disc(capsys):
    """Test if disc prints the discriminant next to the form document."""
    data = run_json(capsys, "disc", "--form=1,1,6")
    assert data["discriminant"] == -23, "Incorrect discriminant"
    assert data["form"] == {"ring": "Z", "coeffs": [1, 1, 6], "flavor": "linear"}, "Incorrect form document"


def test_disc_text_over_z5(capsys):
    code, out, _ = run(capsys, "disc", "--form=2,1,3", "--ring", "zmod:5", "--format", "text")
    assert code == 0
    assert out.strip() == "disc (2, 1, 3) over zmod:5 [linear] = 2"


def test_act(capsys):
    """Test the plain action by a translation and the GL1 factor in linear mode."""
    data = run_json(capsys, "act", "--form=2,1,3", "--matrix", "1,1,0,1", "--mode", "plain")
    assert data["form"]["coeffs"] == [2, 5, 6], "Incorrect translated form"
    data = run_json(capsys, "act", "--form=2,1,3", "--matrix", "1,0,0,1", "--unit=-1")
    assert data["form"]["coeffs"] == [-2, -1, -3], "Incorrect scaled form"


def test_act_rejects_a_unit_outside_linear_mode(capsys):
    """Test if --unit with a non-linear mode is an error instead of being ignored."""
    code, out, err = run(capsys, "act", "--form=2,1,3", "--matrix", "1,0,0,1", "--mode", "plain", "--unit=-1")
    assert code == 1, "Expected a domain error"
    assert out == "", "Nothing should reach stdout"
    assert json.loads(err)["error"] == "wrong_flavor", "Incorrect error code"


def test_reduce(capsys):
    data = run_json(capsys, "reduce", "--form=6,5,2")
    assert data["form"]["coeffs"] == [2, -1, 3]
    assert len(data["matrix"]) == 2


def test_equiv(capsys):
    """Test twisted GL2 equivalence at D = 12 and SL2 inequivalence at D = -23."""
    data = run_json(capsys, "equiv", "--flavor", "twisted", "--form=1,0,-3", "--form=-1,0,3")
    assert data["equivalent"] is True, "Forms should be twisted-equivalent"
    assert data["witness"]["matrix"] == [[1, 0], [0, -1]], "Incorrect witness"
    data = run_json(capsys, "equiv", "--mode", "sl2", "--form=2,1,3", "--form=2,-1,3")
    assert data["equivalent"] is False, "A class and its inverse are not SL2-equivalent"


def test_to_pair_and_back(capsys, tmp_path):
    """Test if the pair printed by to-pair nests its algebra and reads back through to-form."""
    data = run_json(capsys, "to-pair", "--form=2,1,3")
    assert (data["algebra"]["q"], data["algebra"]["r"]) == (1, 6), "Incorrect algebra"
    assert data["T"] == [[-1, 2], [-3, 0]], "Incorrect action matrix"
    assert "q" not in data, "Algebra fields belong under 'algebra'"
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(data))
    back = run_json(capsys, "to-form", "--pair", f"@{path}")
    assert back["form"]["coeffs"] == [2, 1, 3], "Round trip changed the form"


def test_to_form_from_json_text(capsys):
    pair = json.dumps({"q": -1, "r": 6, "T": [[0, 2], [-3, 1]]})
    assert run_json(capsys, "to-form", "--pair", pair)["form"]["coeffs"] == [2, 1, 3]
    assert run_json(capsys, "to-form", "--global", "--pair", pair)["form"]["coeffs"] == [2, 1, 3]


def test_untraceable_pair_exits_with_one(capsys):
    """Test if an untraceable pair exits with 1 and a JSON error on stderr."""
    pair = json.dumps({"q": 0, "r": -1, "T": [[1, 0], [0, 1]]})
    code, out, err = run(capsys, "to-form", "--pair", pair)
    assert code == 1, "Expected a domain error"
    assert out == "", "Nothing should reach stdout"
    assert json.loads(err)["error"] == "not_traceable", "Incorrect error code"


def test_compose(capsys):
    data = run_json(capsys, "compose", "--form=2,1,3", "--form=2,1,3")
    assert data["form"]["coeffs"] == [2, -1, 3]
    assert data["discriminant"] == -23


def test_classgroup(capsys, tmp_path):
    """Test the class group of -23 with a stable payload and a DOT file."""
    dot = tmp_path / "cg.dot"
    data = run_json(capsys, "classgroup", "-D", "-23", "--stable", "--dot", str(dot))
    assert data["class_number"] == 3, "Incorrect class number"
    assert data["invariants"] == [3], "Incorrect invariants"
    assert data["forms"] == [[1, 1, 6], [2, 1, 3], [2, -1, 3]], "Incorrect reduced forms"
    assert "elapsed" not in data, "Stable output must not carry timing"
    assert dot.read_text().startswith("digraph"), "DOT file not written"


def test_realize_ideal(capsys):
    """Test the ideal attached to (2, 1, 3) and the refusal of the zero form."""
    data = run_json(capsys, "realize-ideal", "--form=2,1,3")
    assert data["hnf"] == [[2, 0], [0, 1]], "Incorrect HNF"
    assert data["norm"] == 2, "Incorrect norm"
    assert data["isomorphic"] is True, "Ideal module should match the input module"
    code, _, err = run(capsys, "realize-ideal", "--form=0,0,0")
    assert code == 1
    assert json.loads(err)["error"] == "not_realizable"


def test_realize_ideal_checks_indefinite_modules_within_the_search_bound(capsys):
    """Test if --search-bound reaches the isomorphism check of realize-ideal."""
    data = run_json(capsys, "realize-ideal", "--form=1,0,-3")
    assert data["hnf"] == [[1, 0], [0, 1]], "Expected the unit ideal"
    assert data["isomorphic"] is True, "The default bound should find the flip"
    data = run_json(capsys, "realize-ideal", "--form=1,0,-3", "--search-bound=0")
    assert data["isomorphic"] is False, "A zero bound leaves no witness to find"


def test_kneser(capsys):
    data = run_json(capsys, "kneser", "--form=2,1,3")
    assert data["qmap"]["values"] == [2, 3, 6]
    assert data["primitive"] is True
    data = run_json(capsys, "kneser", "--qmap", "2,3,6")
    assert data["form"]["coeffs"] == [2, 1, 3]


def test_base_change(capsys):
    data = run_json(capsys, "base-change", "--form=2,1,3", "--to", "zmod:5")
    assert data["form"]["ring"] == {"zmod": 5}
    assert data["commutes"] is True


def test_census(capsys):
    """Test the orbit census of plain forms and of pairs over Z/2."""
    data = run_json(capsys, "census", "--ring", "zmod:2", "--flavor", "plain")
    assert (data["ring"], data["flavor"], data["side"]) == ("zmod:2", "plain", "forms")
    assert data["total"] == 8, "Z/2 has 8 forms"
    assert sum(o["size"] for o in data["orbits"]) == 8, "Orbit sizes should add up to the state count"
    zero = [o for o in data["orbits"] if o["representative"] == [0, 0, 0]]
    assert len(zero) == 1 and zero[0]["size"] == 1, "The zero form is its own orbit"
    assert zero[0]["primitive"] is False
    data = run_json(capsys, "census", "--ring", "zmod:2", "--side", "pairs")
    assert data["total"] == 16, "Z/2 has 16 traceable pairs"
    assert sum(o["size"] for o in data["orbits"]) == 16


def test_verify(capsys):
    data = run_json(capsys, "verify", "--ring", "zmod:3", "--stable")
    assert data["passed"] is True
    assert [r["flavor"] for r in data["reports"]] == ["plain", "twisted", "linear"]
    assert all("elapsed" not in r for r in data["reports"])


def test_verify_over_a_large_ring_is_refused(capsys):
    code, _, err = run(capsys, "verify", "--ring", "zmod:7")
    assert code == 1
    assert json.loads(err)["error"] == "bound_exceeded"


@pytest.mark.parametrize(
    "argv",
    [["disc"], ["nope"], ["disc", "--form=1,2"], ["act", "--form=1,0,1", "--matrix", "1,0"]],
)
def test_usage_errors(capsys, argv):
    """Test if missing or malformed arguments exit with 2."""
    code, _, _ = run(capsys, *argv)
    assert code == 2, f"quadrings {' '.join(argv)} should be a usage error"


@pytest.mark.parametrize(
    "argv",
    [["disc", "--form=1,1,6", "--search-bound=-1"], ["disc", "--form=1,1,6", "--jobs", "0"]],
)
def test_bad_flag_values_are_config_errors(capsys, argv):
    """Test if out of range --search-bound and --jobs values are config errors."""
    code, out, err = run(capsys, *argv)
    assert code == 1, "Expected a domain error"
    assert out == ""
    assert json.loads(err)["error"] == "config", "Incorrect error code"


@pytest.mark.parametrize("variable", ["QUADRINGS_SEARCH_BOUND", "QUADRINGS_JOBS"])
def test_malformed_environment_is_a_config_error(capsys, monkeypatch, variable):
    """Test if a malformed environment value is reported instead of crashing the command."""
    monkeypatch.setenv(variable, "abc")
    code, _, err = run(capsys, "disc", "--form=1,1,6")
    assert code == 1, "Malformed environment should fail the command"
    payload = json.loads(err)
    assert payload["error"] == "config", "Incorrect error code"
    assert payload["details"] == {"variable": variable, "value": "abc"}, "Incorrect error details"


def test_degenerate_composition(capsys):
    code, _, err = run(capsys, "compose", "--form=1,2,1", "--form=1,2,1")
    assert code == 1
    assert json.loads(err)["error"] == "degenerate"
