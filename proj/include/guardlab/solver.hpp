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
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "guardlab/engine.hpp"
#include "guardlab/graph.hpp"

namespace guardlab {

inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 31;

struct SolveOptions {
    std::uint64_t max_states = kDefaultStateBudget;
    std::size_t successor_cap = kDefaultSuccessorCap;
    bool robber_pass = true;
    bool extract_strategy = false;
    unsigned workers = 1;
};

struct SolveStats {
    std::uint64_t reachable = 0;
    std::uint64_t iterations = 0;
};

using Strategy = std::map<std::uint64_t, std::uint64_t>;

struct SolveResult {
    Winner winner = Winner::Cops;
    std::optional<Strategy> strategy; // rank -> chosen successor rank, winner's moves only
    SolveStats stats;
};

struct FullSolveResult {
    SolveResult result;
    /// A robber placement that wins against every cop placement (RobberWin only).
    std::optional<Vertex> robber_placement;
};

/**
 * Backward labelling over the configuration graph reachable from a set of roots.
 *
 * Exploration assigns dense local ids in breadth-first order and records the
 * deduplicated successor lists. Labelling then runs a reverse BFS from the
 * terminal robber-win positions: a Robber-to-move position joins when one
 * successor is won, a Cops-to-move position when its remaining-successor
 * counter reaches zero. Whatever is left is won by the cops. The BFS order
 * makes `distance` the exact number of plies the robber needs.
 *
 * Expansion can be split across workers; ids are assigned in a sequential merge
 * so results do not depend on the worker count.
 */
class RetrogradeSolver {
public:
    RetrogradeSolver(GuardInstance inst, SolveOptions opts = {});

    /// Explores everything reachable from `roots` (plus earlier roots) and relabels.
    void solve(std::span<const GuardConfig> roots);

    bool contains(const GuardConfig& cfg) const;
    Winner winner(const GuardConfig& cfg) const;
    /// Plies to a forced robber win, or nullopt for cop-won positions.
    std::optional<std::uint32_t> distance(const GuardConfig& cfg) const;

    std::uint64_t reachable() const noexcept { return ranks_.size(); }
    std::uint64_t iterations() const noexcept { return iterations_; }

    /// Winner's choices at every reachable position where the winner of that
    /// position is to move: robber picks the lowest-rank successor one ply closer
    /// to the win, cops pick the lowest-rank successor that stays cop-won.
    Strategy strategy() const;

    /// True if one more propagation round over all positions would label nothing new.
    bool is_fixpoint() const;

    const RankSpace& rank_space() const noexcept { return space_; }
    const GuardInstance& instance() const noexcept { return inst_; }

private:
    std::uint32_t id_of(const GuardConfig& cfg) const;
    void explore(std::span<const GuardConfig> roots);
    void label();

    GuardInstance inst_;
    SolveOptions opts_;
    RankSpace space_;
    MoveGenerator gen_;

    std::vector<std::uint64_t> ranks_;
    std::unordered_map<std::uint64_t, std::uint32_t> ids_;
    std::vector<std::uint64_t> succ_begin_{0};
    std::vector<std::uint32_t> succ_;
    std::size_t expanded_ = 0;

    std::vector<std::uint8_t> robber_win_;
    std::vector<std::uint32_t> dist_;
    std::uint64_t iterations_ = 0;
};

/// Game with prescribed start; the robber moves first.
SolveResult solve_psp(const GuardInstance& inst, const SolveOptions& opts = {});

/// Game with placement turns: robber places, then cops place, then robber moves.
FullSolveResult solve_full(const GuardInstance& inst, const SolveOptions& opts = {});

/// Smallest c in 0..|V_C| for which the cops win the full game. Throws
/// InputError if the answer exceeds `cap`.
std::size_t min_cops(const GameGraph& g, std::optional<std::size_t> cap = std::nullopt,
                     const SolveOptions& opts = {});

/// "rank <from> -> <to>" lines, ascending by from-rank.
void write_strategy(std::ostream& os, const Strategy& strategy);

} // namespace guardlab
