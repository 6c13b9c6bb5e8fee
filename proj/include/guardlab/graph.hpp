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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guardlab {

using Vertex = std::uint32_t;

/**
 * Simple directed graph with a designated cop region.
 *
 * Vertex ids are dense (0..n-1). Adjacency lists are kept sorted ascending,
 * which makes them canonical: inserting an existing edge is a no-op and two
 * graphs with the same edge set compare equal regardless of insertion order.
 * Everything outside the cop region is the robber region.
 */
class GameGraph {
public:
    GameGraph() = default;
    explicit GameGraph(std::size_t n);

    std::size_t size() const noexcept { return out_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    Vertex add_vertex(bool cop_region = false);

    /// Adds u->v; returns false if the edge was already present.
    /// Throws InputError on a self-loop or an id out of range.
    bool add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;

    void set_cop_region(Vertex v, bool in_region = true);
    bool in_cop_region(Vertex v) const { return cop_[check(v)] != 0; }

    std::span<const Vertex> out(Vertex v) const { return out_[check(v)]; }
    std::span<const Vertex> in(Vertex v) const { return in_[check(v)]; }

    /// Sorted list of cop-region vertices.
    std::vector<Vertex> cop_region() const;
    std::size_t cop_region_size() const noexcept { return cop_count_; }

    bool operator==(const GameGraph&) const = default;

private:
    Vertex check(Vertex v) const;

    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::vector<std::uint8_t> cop_;
    std::size_t edges_ = 0;
    std::size_t cop_count_ = 0;
};

/// Prescribed starting position: robber vertex and sorted cop multiset.
struct StartPosition {
    Vertex robber = 0;
    std::vector<Vertex> cops;

    bool operator==(const StartPosition&) const = default;
};

struct GuardInstance {
    GameGraph graph;
    std::size_t cops = 0;
    std::optional<StartPosition> start;

    bool operator==(const GuardInstance&) const = default;
};

/// Parses the line-oriented "%guard 1" format. Throws ParseError with the
/// offending line number; the result satisfies every instance invariant.
GuardInstance parse_guard_instance(std::string_view text);

/// Canonical text form (edges sorted, start cops sorted).
std::string serialize(const GuardInstance& inst);

/// Empty iff all invariants hold. Violations are reported, not thrown.
std::vector<std::string> validate(const GuardInstance& inst);

/// Cop-region vertices with an in-edge from the robber region, ascending.
std::vector<Vertex> border_targets(const GameGraph& g);

/// Robber-region vertices with an out-edge into the cop region, ascending.
std::vector<Vertex> border_sources(const GameGraph& g);

} // namespace guardlab
