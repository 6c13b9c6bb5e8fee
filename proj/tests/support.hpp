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

// Small builders and generators shared by the unit tests.

#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "guardlab/engine.hpp"
#include "guardlab/graph.hpp"

namespace guardlab::testing {

inline GuardInstance make_instance(std::size_t n, std::initializer_list<Vertex> region,
                                   std::initializer_list<std::pair<Vertex, Vertex>> edges, std::size_t cops,
                                   std::optional<StartPosition> start = std::nullopt)
{
    GuardInstance inst;
    inst.graph = GameGraph(n);
    for (Vertex v : region) inst.graph.set_cop_region(v);
    for (auto [u, v] : edges) inst.graph.add_edge(u, v);
    inst.cops = cops;
    inst.start = std::move(start);
    return inst;
}

// Independent of the library generator: region size uniform in [1, n-1],
// each ordered pair an edge with probability `density`.
inline GuardInstance random_graph_instance(std::mt19937_64& rng, std::size_t max_n, std::size_t max_cops,
                                           bool with_start, double density = 0.35)
{
    std::uniform_int_distribution<std::size_t> nd(2, max_n);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> kd(1, n - 1);
    const std::size_t k = kd(rng);
    GuardInstance inst;
    inst.graph = GameGraph(n);
    // cop region is the top k ids after a random relabelling
    std::vector<Vertex> perm(n);
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < k; ++i) inst.graph.set_cop_region(perm[i]);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && coin(rng) < density) inst.graph.add_edge(u, v);
    inst.cops = std::uniform_int_distribution<std::size_t>(0, max_cops)(rng);
    if (with_start) {
        StartPosition s;
        s.robber = perm[std::uniform_int_distribution<std::size_t>(k, n - 1)(rng)];
        for (std::size_t i = 0; i < inst.cops; ++i)
            s.cops.push_back(perm[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)]);
        std::sort(s.cops.begin(), s.cops.end());
        inst.start = std::move(s);
    }
    return inst;
}

// Cop successors by the full cartesian product over per-cop options.
inline std::vector<std::vector<Vertex>> brute_cop_moves(const std::vector<Vertex>& cops, const GameGraph& g)
{
    std::vector<std::vector<Vertex>> out{{}};
    for (Vertex c : cops) {
        std::vector<Vertex> opts{c};
        for (Vertex w : g.out(c))
            if (g.in_cop_region(w)) opts.push_back(w);
        std::vector<std::vector<Vertex>> next;
        for (const auto& partial : out)
            for (Vertex o : opts) {
                auto p = partial;
                p.push_back(o);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    for (auto& p : out) std::sort(p.begin(), p.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace guardlab::testing
