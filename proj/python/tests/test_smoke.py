import pytest

import guardlab

TWO = "%guard 1\nvertices 2\ncopregion 1 1\nedge 0 1\ncops {c}\n"
MINIMAL = "%formulagame 1\nturn 1\nrvars y\ncvars x\nassign y=0 x=0\nrclause y\ncclause x\n"


def test_parse_and_round_trip():
    inst = guardlab.GuardInstance.parse(TWO.format(c=1))
    assert inst.vertices == 2
    assert inst.edges == [(0, 1)]
    assert inst.cop_region == [1]
    assert inst.start is None
    assert guardlab.GuardInstance.parse(inst.serialize()) == inst


def test_solve_and_min_cops():
    assert guardlab.solve(guardlab.GuardInstance.parse(TWO.format(c=0)))["winner"] == "robber"
    assert guardlab.solve(guardlab.GuardInstance.parse(TWO.format(c=1)))["winner"] == "cop"
    assert guardlab.min_cops(guardlab.GuardInstance.parse(TWO.format(c=0))) == 1


def test_compile_matches_formula_game():
    game = guardlab.FormulaGame.parse(MINIMAL)
    assert guardlab.solve_formula_game(game) == 1
    inst, index, counters = guardlab.compile(game)
    assert counters["cops"] == 4
    assert inst.start is not None
    assert guardlab.solve(inst)["winner"] == "robber"
    rows = guardlab.check_gadget_lemmas(inst, index)
    assert rows and all(ok for _, ok, _ in rows)


def test_forced_start():
    inst, _, counters = guardlab.compile(guardlab.FormulaGame.parse(MINIMAL), force_start=True)
    assert inst.start is None
    assert inst.cops == 4 + counters["border"]
    assert guardlab.solve(inst)["winner"] == "robber"


def test_verification_suites():
    assert guardlab.check_exhaustive_1x1() == [("equivalence", True, "16/16")]
    [(name, ok, detail)] = guardlab.check_oracle_agreement(20, 3)
    assert (name, ok, detail) == ("oracle-agreement", True, "20/20 seed 3")


def test_errors():
    with pytest.raises(guardlab.InputError):
        guardlab.GuardInstance.parse("%guard 1\nvertices x\n")
    with pytest.raises(ValueError):
        guardlab.FormulaGame.parse("nope")
    inst, _, _ = guardlab.compile(guardlab.FormulaGame.parse(MINIMAL))
    with pytest.raises(guardlab.ResourceError):
        guardlab.solve(inst, max_states=100)
