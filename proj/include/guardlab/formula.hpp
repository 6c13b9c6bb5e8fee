/*
 * Copyright 2026 The guardlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace guardlab {

/// Player I controls the R variables, player II the C variables.
enum class Player : std::uint8_t { I = 1, II = 2 };

std::string to_string(Player p);

inline constexpr std::size_t kMaxClauseLength = 12;
inline constexpr std::size_t kDefaultMaxVariables = 24;

struct Literal {
    std::size_t var = 0; // index into FormulaGameInstance::variable order (R first, then C)
    bool positive = true;

    bool operator==(const Literal&) const = default;
};

using Clause = std::vector<Literal>;
using Formula = std::vector<Clause>; // disjunction of conjunctive clauses
using Assignment = std::vector<bool>;

/// Formula-satisfying game: two DNF formulas over disjoint variable sets, an
/// initial assignment, and the player to move.
struct FormulaGameInstance {
    std::vector<std::string> rvars;
    std::vector<std::string> cvars;
    Formula robber_formula; // F_R, player I wins when it holds after his move
    Formula cop_formula;    // F_C, likewise for player II
    Assignment initial;
    Player first = Player::I;

    std::size_t variable_count() const noexcept { return rvars.size() + cvars.size(); }
    bool is_robber_variable(std::size_t v) const noexcept { return v < rvars.size(); }
    const std::string& name(std::size_t v) const { return v < rvars.size() ? rvars[v] : cvars[v - rvars.size()]; }

    bool operator==(const FormulaGameInstance&) const = default;
};

struct FormulaGameState {
    Assignment alpha;
    Player to_move = Player::I;
    std::optional<Player> last_mover;

    bool operator==(const FormulaGameState&) const = default;
};

bool eval_formula(const Formula& f, const Assignment& alpha);

/// Moves of the player to move: pass or flip one own variable, provided the
/// opponent's formula is false under the current assignment.
std::vector<FormulaGameState> legal_moves(const FormulaGameState& s, const FormulaGameInstance& inst);

/// Exact winner by backward induction over 2 * 2^p states.
///
/// A state produced by a player-I move with F_R true is won by I (and
/// symmetrically for II). A player with no legal move loses. Everything outside
/// player I's attractor, including infinite play, belongs to player II.
/// Throws ResourceError above `max_variables`.
Player solve_formula_game(const FormulaGameInstance& inst, std::size_t max_variables = kDefaultMaxVariables);

/// Empty iff the instance is well formed (disjoint names, literals in range,
/// clause lengths in [1, 12], full initial assignment).
std::vector<std::string> validate(const FormulaGameInstance& inst);

/// Parses "%formulagame 1". Throws ParseError with the line number.
FormulaGameInstance parse_formula_game(std::string_view text);

std::string serialize(const FormulaGameInstance& inst);

} // namespace guardlab
