"""Guarding game solver and formula-game reduction."""

from ._core import (
    FormulaGame,
    GuardInstance,
    InputError,
    ResourceError,
    check_exhaustive_1x1,
    check_gadget_lemmas,
    check_oracle_agreement,
    compile,
    forward_oracle,
    min_cops,
    solve,
    solve_formula_game,
)

__all__ = [
    "FormulaGame",
    "GuardInstance",
    "InputError",
    "ResourceError",
    "check_exhaustive_1x1",
    "check_gadget_lemmas",
    "check_oracle_agreement",
    "compile",
    "forward_oracle",
    "min_cops",
    "solve",
    "solve_formula_game",
]
