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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "guardlab/graph.hpp"

namespace guardlab {

enum class Side : std::uint8_t { Robber = 0, Cops = 1 };
enum class Winner : std::uint8_t { Robber, Cops };

inline constexpr std::size_t kDefaultSuccessorCap = 1'000'000;

std::string to_string(Side s);
std::string to_string(Winner w);

/// One game position. Cops are an ascending multiset, so equal positions have
/// equal representations.
struct GuardConfig {
    Vertex robber = 0;
    std::vector<Vertex> cops;
    Side to_move = Side::Robber;

    auto operator<=>(const GuardConfig&) const = default;
};

std::string to_string(const GuardConfig& cfg);

/// Sorts a cop placement. Throws InputError if any id is outside the cop region.
std::vector<Vertex> canonicalize(std::vector<Vertex> cops, const GameGraph& g);

/// Robber wins as soon as he stands in the cop region. Cop wins are never
/// terminal; they are decided by the solvers.
std::optional<Winner> terminal_status(const GuardConfig& cfg, const GameGraph& g);

/// All positions after the robber's move (stay included), each with Cops to move.
std::vector<GuardConfig> robber_successors(const GuardConfig& cfg, const GuardInstance& inst);

/// All positions after the cops' move, canonical and deduplicated.
/// Throws ResourceError when the raw product exceeds `cap`.
std::vector<GuardConfig> cop_successors(const GuardConfig& cfg, const GuardInstance& inst,
                                        std::size_t cap = kDefaultSuccessorCap);

/**
 * Allocation-light move generation over raw cop arrays, for the solvers.
 *
 * Cops sharing a vertex are interchangeable, so a group of k cops on v with d
 * options (stay plus cop-region out-neighbours) contributes multisets of size k
 * over the options rather than d^k tuples. Different groups can still collide
 * (two cops swapping places), so callers must deduplicate.
 */
class MoveGenerator {
public:
    MoveGenerator(const GameGraph& g, std::size_t cops, std::size_t successor_cap = kDefaultSuccessorCap);

    /// Robber targets: stay (if allowed) plus every out-neighbour not holding a cop.
    void robber_moves(Vertex robber, std::span<const Vertex> cops, bool include_stay, std::vector<Vertex>& out) const;

    /// Calls `emit` with each successor placement (sorted, possibly repeated).
    void cop_moves(std::span<const Vertex> cops, const std::function<void(std::span<const Vertex>)>& emit) const;

    /// Upper bound on the number of emitted placements; throws ResourceError above the cap.
    std::uint64_t cop_move_bound(std::span<const Vertex> cops) const;

    std::span<const Vertex> cop_options(Vertex v) const { return options_[v]; }

private:
    const GameGraph* graph_;
    std::size_t cops_;
    std::size_t cap_;
    std::vector<std::vector<Vertex>> options_; // stay first, then cop-region out-neighbours
};

/**
 * Dense ranking of positions:
 *   rank = (side * n + robber) * M + multiset_rank(cops),  M = C(|V_C| + c - 1, c).
 * Multisets of cop-region indices a_0 <= ... <= a_{c-1} map to the strictly
 * increasing sequence b_i = a_i + i and are ranked in the combinatorial number
 * system, sum_i C(b_i, i + 1).
 */
class RankSpace {
public:
    RankSpace(const GameGraph& g, std::size_t cops);

    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t placements() const noexcept { return placements_; }
    std::size_t cops() const noexcept { return cops_; }
    std::size_t vertices() const noexcept { return n_; }

    std::uint64_t rank(const GuardConfig& cfg) const;
    GuardConfig unrank(std::uint64_t index) const;

    std::uint64_t rank(Vertex robber, std::span<const Vertex> cops, Side side) const;
    /// Writes cops into `cops` (size c) and returns robber and side.
    std::pair<Vertex, Side> unrank(std::uint64_t index, std::span<Vertex> cops) const;

    std::uint64_t rank_cops(std::span<const Vertex> cops) const;
    void unrank_cops(std::uint64_t index, std::span<Vertex> cops) const;

private:
    std::uint64_t binom(std::size_t n, std::size_t k) const { return binom_[n * (cops_ + 1) + k]; }

    std::size_t n_;
    std::size_t cops_;
    std::vector<Vertex> region_;          // index -> vertex
    std::vector<std::uint32_t> index_of_; // vertex -> index (or sentinel)
    std::vector<std::uint64_t> binom_;
    std::uint64_t placements_ = 0;
    std::uint64_t size_ = 0;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

} // namespace guardlab
