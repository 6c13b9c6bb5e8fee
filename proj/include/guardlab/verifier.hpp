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
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "guardlab/compiler.hpp"
#include "guardlab/engine.hpp"
#include "guardlab/formula.hpp"
#include "guardlab/graph.hpp"
#include "guardlab/solver.hpp"

namespace guardlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::string counterexample; // replayable payload, set whenever pass == false
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    void add(CheckResult check) { checks.push_back(std::move(check)); }
    /// Appends and re-sorts by check name (stable), so merge order does not matter.
    void merge(VerificationReport other);
};

/// "<check> PASS|FAIL[ (detail)][ <file>]" per check; `files[i]` names the
/// counterexample file written for check i, if any.
void write_report(std::ostream& os, const VerificationReport& report, const std::vector<std::string>& files = {});

// --- forward oracle ---------------------------------------------------------

inline constexpr std::size_t kDefaultOracleBudget = 1'000'000;

/// 2 |V|^(c+1), saturating.
std::uint64_t default_ply_bound(const GuardInstance& inst);

/**
 * Depth-bounded minimax from the prescribed start, memoized on (position,
 * remaining plies). Shares only the move rules with the retrograde solver.
 * The robber loses when the bound runs out. Depth is additionally capped at
 * the rank-space size, beyond which no shortest win can extend.
 */
Winner forward_oracle(const GuardInstance& inst, std::uint64_t ply_bound,
                      std::size_t max_pairs = kDefaultOracleBudget);

/// Winner of the game with placement turns, by the forward oracle over every
/// robber vertex and cop multiset.
Winner forward_oracle_full(const GuardInstance& inst, std::uint64_t ply_bound,
                           std::size_t max_pairs = kDefaultOracleBudget);

/// Smallest c with a cop win, each c decided by forward_oracle_full.
std::size_t brute_force_min_cops(const GameGraph& g, std::size_t max_pairs = kDefaultOracleBudget);

// --- random instances -------------------------------------------------------

struct RandomInstanceParams {
    std::size_t min_vertices = 2;
    std::size_t max_vertices = 7;
    double edge_density = 0.3;
    double min_cop_fraction = 0.2;
    double max_cop_fraction = 0.6;
    std::size_t max_cops = 2;
    std::size_t max_cop_region = 64;
    bool with_start = true;
};

GuardInstance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params = {});

/// Retrograde solver vs forward oracle on `count` seeded random instances.
VerificationReport check_oracle_agreement(std::size_t count, std::uint64_t seed,
                                          const RandomInstanceParams& params = {});

// --- equivalence of the reduction ------------------------------------------

struct EquivalenceOptions {
    bool check_forced = false; // also solve the full game after force_start
    CompileOptions compile;
    SolveOptions solve;
};

struct EquivalenceOutcome {
    Player formula = Player::II;
    Winner psp = Winner::Cops;
    std::optional<Winner> forced;
    CompileCounters counters;
    std::size_t border = 0;
    std::uint64_t psp_reachable = 0;
    std::uint64_t forced_reachable = 0;

    bool psp_agrees() const { return (formula == Player::I) == (psp == Winner::Robber); }
    bool forced_agrees() const { return !forced || *forced == psp; }
};

EquivalenceOutcome run_equivalence(const FormulaGameInstance& f, const EquivalenceOptions& opts = {});

/// "equivalence" (and "start-forcing" when requested) for one formula game.
VerificationReport check_equivalence(const FormulaGameInstance& f, const EquivalenceOptions& opts = {});

/// The sixteen games R={y}, C={x}, F_R=[(+-y)], F_C=[(+-x)] over all initial
/// assignments, player I to move. Order: sign of y, sign of x, y0, x0.
std::vector<FormulaGameInstance> exhaustive_1x1_family();

/// Single check per requested kind with "k/16" counts in the detail.
VerificationReport check_exhaustive_1x1(const EquivalenceOptions& opts = {});

// --- gadget lemmas ----------------------------------------------------------

/// Distance limit for the "loses within ten turns" clause, in plies.
inline constexpr std::uint32_t kFastLossPlies = 10;

/**
 * Builds the hypothesis position of each gadget lemma on a compiled game and
 * compares the solver's verdict with the lemma's conclusion. Robber-win
 * verdicts must also be reached within kFastLossPlies. Roles are recovered
 * from the index labels and the prescribed start.
 */
VerificationReport check_gadget_lemmas(const GuardInstance& compiled, const GadgetIndex& index,
                                       const SolveOptions& opts = {});
VerificationReport check_gadget_lemmas(const CompiledGame& cg, const SolveOptions& opts = {});

// --- size and state bounds --------------------------------------------------

/// Regression constant for vertices + edges <= K * (p + f). Largest ratio seen
/// over the 8x8 sweep and clauses of length 1, 6 and 12 was 46.5 (one variable,
/// one cop clause). Instances with repeated literals in a clause can exceed it.
inline constexpr std::size_t kSizeConstant = 48;

/// 4 n C(|V_C| + c - 1, c), saturating.
std::uint64_t state_bound(const GuardInstance& inst);

/// "state-bound" (reachable positions of the prescribed game vs the bound) and
/// "size-bound" (vertices + edges vs K (p + f)).
VerificationReport check_bounds(const CompiledGame& cg, const SolveOptions& opts = {});

struct SizeSample {
    std::size_t variables = 0;
    std::size_t clauses = 0;
    std::size_t size = 0; // vertices + edges
};

/// Deterministic formula game with p variables (C gets the extra one) and f
/// clauses (F_C gets the extra one); clause j has 1 + (j mod 3) literals over
/// consecutive variables.
FormulaGameInstance sweep_instance(std::size_t variables, std::size_t clauses);

std::vector<SizeSample> size_sweep(std::size_t max_variables, std::size_t max_clauses);

struct AffineFit {
    double intercept = 0;
    double per_variable = 0;
    double per_clause = 0;
    double relative_residual = 0;     // |y - A x|_2 / |y|_2
    double max_pointwise_residual = 0; // max_i |y_i - (A x)_i| / y_i
};

/// Least-squares fit size ~ intercept + a * p + b * f.
AffineFit fit_size_model(const std::vector<SizeSample>& samples);

} // namespace guardlab
