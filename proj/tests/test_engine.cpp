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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "guardlab/compiler.hpp"
#include "guardlab/engine.hpp"
#include "guardlab/error.hpp"
#include "support.hpp"

using namespace guardlab;
using guardlab::testing::make_instance;

namespace {

std::vector<std::vector<Vertex>> cop_sets(const std::vector<GuardConfig>& succ)
{
    std::vector<std::vector<Vertex>> out;
    for (const auto& s : succ) out.push_back(s.cops);
    return out;
}

// All non-decreasing sequences of length c over `region`.
void multisets(const std::vector<Vertex>& region, std::size_t c, std::size_t from, std::vector<Vertex>& cur,
               std::vector<std::vector<Vertex>>& out)
{
    if (cur.size() == c) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < region.size(); ++i) {
        cur.push_back(region[i]);
        multisets(region, c, i, cur, out);
        cur.pop_back();
    }
}

} // namespace

TEST(Canonicalize, Examples)
{
    GameGraph g(6);
    for (Vertex v : {1u, 2u, 5u}) g.set_cop_region(v);
    EXPECT_EQ(canonicalize({2, 1, 1}, g), (std::vector<Vertex>{1, 1, 2}));
    EXPECT_EQ(canonicalize({}, g), std::vector<Vertex>{});
    EXPECT_EQ(canonicalize({5, 5, 5}, g), (std::vector<Vertex>{5, 5, 5}));
    EXPECT_THROW(canonicalize({0}, g), InputError);
}

TEST(Terminal, Examples)
{
    const auto inst = make_instance(2, {1}, {{0, 1}}, 1);
    EXPECT_EQ(terminal_status({1, {1}, Side::Cops}, inst.graph), Winner::Robber);
    EXPECT_FALSE(terminal_status({0, {1}, Side::Robber}, inst.graph).has_value());
    EXPECT_FALSE(terminal_status({0, {}, Side::Robber}, inst.graph).has_value());
}

TEST(RobberMoves, Examples)
{
    const auto occupied = make_instance(2, {1}, {{0, 1}}, 1);
    const auto s1 = robber_successors({0, {1}, Side::Robber}, occupied);
    ASSERT_EQ(s1.size(), 1u);
    EXPECT_EQ(s1[0], (GuardConfig{0, {1}, Side::Cops}));

    const auto free = make_instance(2, {1}, {{0, 1}}, 0);
    const auto s2 = robber_successors({0, {}, Side::Robber}, free);
    ASSERT_EQ(s2.size(), 2u);
    EXPECT_EQ(s2[0].robber, 0u);
    EXPECT_EQ(s2[1].robber, 1u);
    EXPECT_EQ(terminal_status(s2[1], free.graph), Winner::Robber);

    EXPECT_THROW(robber_successors({0, {}, Side::Cops}, free), InputError);
    EXPECT_THROW(robber_successors({1, {}, Side::Robber}, free), InputError);
}

TEST(RobberMoves, CompiledStart)
{
    FormulaGameInstance f;
    f.rvars = {"y"};
    f.cvars = {"x"};
    f.robber_formula = {{Literal{0, true}}};
    f.cop_formula = {{Literal{1, true}}};
    f.initial = {false, false};
    const auto cg = compile_psp(f);
    GuardConfig at_rm{cg.index.id("basic:RM"), cg.instance.start->cops, Side::Robber};
    std::set<std::string> labels;
    for (const auto& s : robber_successors(at_rm, cg.instance)) labels.insert(cg.index.label(s.robber));
    // HQ holds the commander, so the robber keeps to the robber region.
    const std::set<std::string> expected{"basic:RM", "basic:RT", "robs:y:Sw", "force:0:f",
                                         "force:1:f", "force:2:f", "force:3:f"};
    EXPECT_EQ(labels, expected);
}

TEST(CopMoves, SharedVertexDedup)
{
    const auto inst = make_instance(3, {1, 2}, {{1, 2}}, 2);
    const auto succ = cop_successors({0, {1, 1}, Side::Cops}, inst);
    EXPECT_EQ(cop_sets(succ), (std::vector<std::vector<Vertex>>{{1, 1}, {1, 2}, {2, 2}}));
    for (const auto& s : succ) EXPECT_EQ(s.to_move, Side::Robber);
}

TEST(CopMoves, SinkStays)
{
    const auto inst = make_instance(2, {1}, {{0, 1}}, 1);
    EXPECT_EQ(cop_sets(cop_successors({0, {1}, Side::Cops}, inst)), (std::vector<std::vector<Vertex>>{{1}}));
}

TEST(CopMoves, VariableCell)
{
    FormulaGameInstance f;
    f.cvars = {"x"};
    f.cop_formula = {{Literal{0, true}}};
    f.initial = {false};
    const auto cg = compile_psp(f);
    GuardInstance one{cg.instance.graph, 1, std::nullopt};
    const Vertex t = cg.index.id("var:x:T");
    const auto succ = cop_successors({cg.index.id("basic:RM"), {t}, Side::Cops}, one);
    // T_x also feeds the cop-gate blocker of the literal x
    std::set<std::string> labels;
    for (const auto& s : succ) labels.insert(cg.index.label(s.cops.at(0)));
    EXPECT_EQ(succ.size(), 3u);
    EXPECT_TRUE(labels.count("var:x:T") && labels.count("var:x:FT"));
    for (const auto& l : labels)
        if (l.rfind("var:", 0) != 0) EXPECT_TRUE(l.starts_with("block:") && l.ends_with(":q")) << l;
}

TEST(CopMoves, SuccessorCap)
{
    GameGraph g(6);
    for (Vertex v = 1; v < 6; ++v) g.set_cop_region(v);
    for (Vertex u = 1; u < 6; ++u)
        for (Vertex v = 1; v < 6; ++v)
            if (u != v) g.add_edge(u, v);
    GuardInstance inst{g, 3, std::nullopt};
    EXPECT_THROW(cop_successors({0, {1, 2, 3}, Side::Cops}, inst, 10), ResourceError);
    EXPECT_NO_THROW(cop_successors({0, {1, 2, 3}, Side::Cops}, inst, 1000));
}

TEST(CopMoves, MatchesCartesianProductProperty)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto inst = guardlab::testing::random_graph_instance(rng, 7, 3, true, 0.4);
        if (terminal_status({inst.start->robber, inst.start->cops, Side::Cops}, inst.graph)) continue;
        const auto succ = cop_successors({inst.start->robber, inst.start->cops, Side::Cops}, inst);
        EXPECT_EQ(cop_sets(succ), guardlab::testing::brute_cop_moves(inst.start->cops, inst.graph));
    }
}

TEST(Rank, NoCops)
{
    const auto inst = make_instance(4, {3}, {}, 0);
    const RankSpace space(inst.graph, 0);
    EXPECT_EQ(space.size(), 8u);
    std::set<std::uint64_t> seen;
    for (Vertex r = 0; r < 4; ++r)
        for (Side s : {Side::Robber, Side::Cops}) seen.insert(space.rank(GuardConfig{r, {}, s}));
    EXPECT_EQ(seen.size(), 8u);
    EXPECT_EQ(*seen.rbegin(), 7u);
}

TEST(Rank, ThreeVerticesTwoCops)
{
    const auto inst = make_instance(3, {1, 2}, {}, 2);
    const RankSpace space(inst.graph, 2);
    EXPECT_EQ(space.size(), 18u);
    std::vector<std::vector<Vertex>> placements;
    std::vector<Vertex> cur;
    multisets({1, 2}, 2, 0, cur, placements);
    std::set<std::uint64_t> seen;
    for (Vertex r = 0; r < 3; ++r)
        for (Side s : {Side::Robber, Side::Cops})
            for (const auto& p : placements) {
                const GuardConfig cfg{r, p, s};
                const auto k = space.rank(cfg);
                EXPECT_LT(k, 18u);
                EXPECT_EQ(space.unrank(k), cfg);
                seen.insert(k);
            }
    EXPECT_EQ(seen.size(), 18u);
}

TEST(Rank, BijectionProperty)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto inst = guardlab::testing::random_graph_instance(rng, 5, 2, false);
        const RankSpace space(inst.graph, inst.cops);
        const auto region = inst.graph.cop_region();
        std::vector<std::vector<Vertex>> placements;
        std::vector<Vertex> cur;
        multisets(region, inst.cops, 0, cur, placements);
        ASSERT_EQ(space.placements(), placements.size());
        ASSERT_EQ(space.size(), 2 * inst.graph.size() * placements.size());
        std::vector<bool> hit(space.size(), false);
        for (Vertex r = 0; r < inst.graph.size(); ++r)
            for (Side s : {Side::Robber, Side::Cops})
                for (const auto& p : placements) {
                    const GuardConfig cfg{r, p, s};
                    const auto k = space.rank(cfg);
                    ASSERT_LT(k, space.size());
                    EXPECT_FALSE(hit[k]);
                    hit[k] = true;
                    EXPECT_EQ(space.unrank(k), cfg);
                }
    }
}

TEST(Rank, Binomial)
{
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(2, 5), 0u);
    EXPECT_EQ(binomial(0, 0), 1u);
    EXPECT_EQ(binomial(62, 31), 465428353255261088u);
    EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

TEST(Rank, OverflowIsResourceError)
{
    GameGraph g(200);
    for (Vertex v = 100; v < 200; ++v) g.set_cop_region(v);
    EXPECT_THROW(RankSpace(g, 40), ResourceError);
}
