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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "guardlab/formula.hpp"
#include "guardlab/graph.hpp"

namespace guardlab {

/**
 * Bijection between emitted vertex ids and hierarchical gadget labels
 * ("basic:RM", "var:x:FT", "block:3:q", "robg:0:z'", "copg:a''", ...).
 * Ids are handed out in emission order.
 */
class GadgetIndex {
public:
    Vertex add(std::string label);
    Vertex id(std::string_view label) const; // throws InputError("unknown anchor label ...")
    std::optional<Vertex> find(std::string_view label) const;
    const std::string& label(Vertex v) const { return labels_.at(v); }
    std::size_t size() const noexcept { return labels_.size(); }

    /// "<id> <label>" lines sorted by id.
    void write(std::ostream& os) const;
    static GadgetIndex parse(std::string_view text);

    bool operator==(const GadgetIndex& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> ids_;
};

struct GadgetDelta {
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

struct NamedLiteral {
    std::string var;
    bool positive = true;
};

/**
 * Emits gadgets into a growing graph. Gadgets refer to earlier ones through
 * index labels; a missing anchor is an InputError. Every call reports how many
 * vertices and (new, after merging) edges it added.
 */
class GadgetBuilder {
public:
    GadgetBuilder(GameGraph& g, GadgetIndex& index) : g_(g), index_(index) {}

    Vertex vertex(std::string label, bool cop_region);
    Vertex anchor(std::string_view label) const { return index_.id(label); }

    /// RM -> RT -> CM -> RW -> CT -> RM, robber region.
    GadgetDelta basic_cycle();
    /// T -> FT -> F -> TF -> T, cop region.
    GadgetDelta var_cell(const std::string& x);
    /// Path u -> p -> q plus s -> q for each blocked s; p robber region, q cop region.
    GadgetDelta blocker(Vertex u, std::span<const Vertex> blocked);
    /// f with in-edges from `from`, and f -> bar(v) -> v per target; f and bars robber region.
    GadgetDelta force(std::span<const Vertex> from, std::span<const Vertex> targets);
    /// Blocker(RT, {T_x : !x in clause} + {F_x : x in clause}) with entry z.
    GadgetDelta robber_gate(std::size_t i, std::span<const NamedLiteral> clause);
    /// Cycle a -> a' -> a'' -> a''' -> a (a'' shared, created with edges a'' -> z_i for
    /// every robber gate), plus Blocker(CT, {T_x or F_x, a, a''}) per literal.
    GadgetDelta cop_gate(std::size_t j, std::span<const NamedLiteral> clause, std::size_t robber_gates);
    /// HQ <-> G_x, G_x -> GF_x -> F_x, G_x -> GT_x -> T_x, cop region.
    GadgetDelta commander(std::span<const std::string> vars);
    /// RM -> Sw_y -> RT, RM -> HQ, RT -> HQ, Sw_y -> G_y, RM -> RT, Blocker(Sw_y, {FT_y, TF_y}).
    GadgetDelta robber_switch(const std::string& y);
    /// Blocker(CM, {G_x : x in C}).
    GadgetDelta cop_switch(std::span<const std::string> cvars);

private:
    struct Mark {
        std::size_t vertices, edges;
    };
    Mark mark() const { return {g_.size(), g_.edge_count()}; }
    GadgetDelta since(Mark m) const { return {g_.size() - m.vertices, g_.edge_count() - m.edges}; }
    void edge(Vertex u, Vertex v) { g_.add_edge(u, v); }
    void blocker_into(Vertex u, std::span<const Vertex> blocked, std::string p_label, std::string q_label);

    GameGraph& g_;
    GadgetIndex& index_;
    std::size_t blockers_ = 0;
    std::size_t forces_ = 0;
};

struct CompileCounters {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t cops = 0;
};

struct CompileOptions {
    /// When player II's formula already holds at the initial position (player I
    /// is stuck and loses), start the first satisfied clause's gate cop on the
    /// shared a'' vertex instead of its own a vertex, i.e. in the position that
    /// encodes a finished player-II win. With this off the compiled game lets the
    /// robber move first regardless and the winners can disagree.
    bool settle_initial_cop_win = true;
};

struct CompiledGame {
    GuardInstance instance; // with prescribed start (robber on start:r)
    GadgetIndex index;
    FormulaGameInstance source;
    CompileCounters counters;
};

/// Gadget construction of a guarding game with prescribed start whose winner
/// matches the formula game. Requires player I to move first and at least one
/// C variable.
CompiledGame compile_psp(const FormulaGameInstance& f, const CompileOptions& opts = {});

struct ForcedGame {
    GuardInstance instance; // no prescribed start
    std::optional<GadgetIndex> index;
    std::size_t border = 0;                 // m, number of added dummy cop vertices
    std::vector<Vertex> border_outdegree;   // border sources whose out-degree is not 1
};

/// Replaces the prescribed start by structure: m = |border targets| new sinks T
/// in the cop region, edges from the robber start to T and to every start cop
/// vertex, and c' = c + m. Requires a start, no in-edges into the robber start,
/// and pairwise distinct start cop vertices.
ForcedGame force_start(const GuardInstance& inst, const GadgetIndex* index = nullptr);
ForcedGame force_start(const CompiledGame& cg);

} // namespace guardlab
