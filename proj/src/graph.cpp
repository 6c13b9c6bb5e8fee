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

#include "guardlab/graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "guardlab/error.hpp"
#include "text_util.hpp"

namespace guardlab {

GameGraph::GameGraph(std::size_t n) : out_(n), in_(n), cop_(n, 0)
{
    if (n > std::numeric_limits<Vertex>::max()) throw InputError("too many vertices");
}

Vertex GameGraph::check(Vertex v) const
{
    if (v >= out_.size())
        throw InputError("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(out_.size()) + ")");
    return v;
}

Vertex GameGraph::add_vertex(bool cop_region)
{
    out_.emplace_back();
    in_.emplace_back();
    cop_.push_back(cop_region ? 1 : 0);
    if (cop_region) ++cop_count_;
    return static_cast<Vertex>(out_.size() - 1);
}

bool GameGraph::add_edge(Vertex u, Vertex v)
{
    check(u);
    check(v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    auto& outs = out_[u];
    auto it = std::lower_bound(outs.begin(), outs.end(), v);
    if (it != outs.end() && *it == v) return false;
    outs.insert(it, v);
    auto& ins = in_[v];
    ins.insert(std::lower_bound(ins.begin(), ins.end(), u), u);
    ++edges_;
    return true;
}

bool GameGraph::has_edge(Vertex u, Vertex v) const
{
    auto outs = out(u);
    return std::binary_search(outs.begin(), outs.end(), v);
}

void GameGraph::set_cop_region(Vertex v, bool in_region)
{
    auto& flag = cop_[check(v)];
    if ((flag != 0) == in_region) return;
    flag = in_region ? 1 : 0;
    if (in_region)
        ++cop_count_;
    else
        --cop_count_;
}

std::vector<Vertex> GameGraph::cop_region() const
{
    std::vector<Vertex> vs;
    vs.reserve(cop_count_);
    for (Vertex v = 0; v < out_.size(); ++v)
        if (cop_[v]) vs.push_back(v);
    return vs;
}

std::vector<Vertex> border_targets(const GameGraph& g)
{
    std::vector<Vertex> targets;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!g.in_cop_region(v)) continue;
        auto ins = g.in(v);
        if (std::any_of(ins.begin(), ins.end(), [&](Vertex u) { return !g.in_cop_region(u); }))
            targets.push_back(v);
    }
    return targets;
}

std::vector<Vertex> border_sources(const GameGraph& g)
{
    std::vector<Vertex> sources;
    for (Vertex u = 0; u < g.size(); ++u) {
        if (g.in_cop_region(u)) continue;
        auto outs = g.out(u);
        if (std::any_of(outs.begin(), outs.end(), [&](Vertex v) { return g.in_cop_region(v); }))
            sources.push_back(u);
    }
    return sources;
}

std::vector<std::string> validate(const GuardInstance& inst)
{
    std::vector<std::string> violations;
    const auto& g = inst.graph;
    const std::size_t n = g.size();
    if (!inst.start) return violations;

    const auto& s = *inst.start;
    if (s.robber >= n)
        violations.push_back("robber start out of range: " + std::to_string(s.robber));
    else if (g.in_cop_region(s.robber))
        violations.push_back("robber start inside cop region: " + std::to_string(s.robber));
    if (s.cops.size() != inst.cops)
        violations.push_back("cop count mismatch: c=" + std::to_string(inst.cops) + " but start_cops has " +
                             std::to_string(s.cops.size()) + " entries");
    for (Vertex v : s.cops) {
        if (v >= n)
            violations.push_back("start cop out of range: " + std::to_string(v));
        else if (!g.in_cop_region(v))
            violations.push_back("start cop outside cop region: " + std::to_string(v));
    }
    if (!std::is_sorted(s.cops.begin(), s.cops.end()))
        violations.push_back("start cops not sorted");
    return violations;
}

GuardInstance parse_guard_instance(std::string_view text)
{
    using detail::parse_uint;
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines.front().tokens.size() != 2 || lines.front().tokens[0] != "%guard" ||
        lines.front().tokens[1] != "1")
        throw ParseError(lines.empty() ? 1 : lines.front().number, "expected header '%guard 1'");

    GuardInstance inst;
    std::optional<std::size_t> vertices_line, copregion_line, cops_line, robber_line, start_cops_line;
    std::optional<Vertex> robber;
    std::vector<Vertex> start_cops;

    auto vertex_arg = [&](std::string_view tok, std::size_t line, std::string_view what) {
        if (!vertices_line) throw ParseError(line, "'vertices' must precede " + std::string(what));
        auto v = parse_uint(tok, line, what);
        if (v >= inst.graph.size())
            throw ParseError(line, std::string(what) + " " + std::to_string(v) + " out of range (n=" +
                                       std::to_string(inst.graph.size()) + ")");
        return static_cast<Vertex>(v);
    };
    auto once = [](std::optional<std::size_t>& seen, std::size_t line, std::string_view what) {
        if (seen) throw ParseError(line, "duplicate '" + std::string(what) + "' directive");
        seen = line;
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line, tok] = lines[i];
        const auto& kw = tok[0];
        if (kw == "vertices") {
            once(vertices_line, line, kw);
            if (tok.size() != 2) throw ParseError(line, "usage: vertices <n>");
            auto n = parse_uint(tok[1], line, "vertex count");
            if (n > std::numeric_limits<Vertex>::max()) throw ParseError(line, "vertex count too large");
            inst.graph = GameGraph(n);
        } else if (kw == "copregion") {
            once(copregion_line, line, kw);
            if (tok.size() < 2) throw ParseError(line, "usage: copregion <k> <v1> ... <vk>");
            auto k = parse_uint(tok[1], line, "cop region size");
            if (k != tok.size() - 2)
                throw ParseError(line, "copregion declares " + std::to_string(k) + " vertices but lists " +
                                           std::to_string(tok.size() - 2));
            for (std::size_t j = 2; j < tok.size(); ++j) {
                auto v = vertex_arg(tok[j], line, "cop region vertex");
                if (inst.graph.in_cop_region(v))
                    throw ParseError(line, "cop region vertex " + std::to_string(v) + " listed twice");
                inst.graph.set_cop_region(v);
            }
        } else if (kw == "edge") {
            if (tok.size() != 3) throw ParseError(line, "usage: edge <u> <v>");
            auto u = vertex_arg(tok[1], line, "edge source");
            auto v = vertex_arg(tok[2], line, "edge target");
            if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
            inst.graph.add_edge(u, v);
        } else if (kw == "cops") {
            once(cops_line, line, kw);
            if (tok.size() != 2) throw ParseError(line, "usage: cops <c>");
            inst.cops = parse_uint(tok[1], line, "cop count");
        } else if (kw == "start_robber") {
            once(robber_line, line, kw);
            if (tok.size() != 2) throw ParseError(line, "usage: start_robber <r>");
            robber = vertex_arg(tok[1], line, "robber start");
        } else if (kw == "start_cops") {
            once(start_cops_line, line, kw);
            for (std::size_t j = 1; j < tok.size(); ++j) start_cops.push_back(vertex_arg(tok[j], line, "start cop"));
        } else {
            throw ParseError(line, "unknown directive '" + std::string(kw) + "'");
        }
    }

    const std::size_t last = lines.back().number;
    if (!vertices_line) throw ParseError(last, "missing 'vertices' directive");
    if (!copregion_line) throw ParseError(last, "missing 'copregion' directive");
    if (!cops_line) throw ParseError(last, "missing 'cops' directive");
    if (robber_line.has_value() != start_cops_line.has_value())
        throw ParseError(robber_line.value_or(start_cops_line.value_or(last)),
                         "'start_robber' and 'start_cops' must be given together");

    if (robber) {
        if (inst.graph.in_cop_region(*robber))
            throw ParseError(*robber_line, "robber start inside cop region: " + std::to_string(*robber));
        for (Vertex v : start_cops)
            if (!inst.graph.in_cop_region(v))
                throw ParseError(*start_cops_line, "start cop outside cop region: " + std::to_string(v));
        if (start_cops.size() != inst.cops)
            throw ParseError(*start_cops_line, "cop count mismatch: c=" + std::to_string(inst.cops) +
                                                   " but start_cops has " + std::to_string(start_cops.size()) +
                                                   " entries");
        std::sort(start_cops.begin(), start_cops.end());
        inst.start = StartPosition{*robber, std::move(start_cops)};
    }
    return inst;
}

std::string serialize(const GuardInstance& inst)
{
    const auto& g = inst.graph;
    std::ostringstream os;
    os << "%guard 1\n";
    os << "vertices " << g.size() << '\n';
    const auto region = g.cop_region();
    os << "copregion " << region.size();
    for (Vertex v : region) os << ' ' << v;
    os << '\n';
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v : g.out(u)) os << "edge " << u << ' ' << v << '\n';
    os << "cops " << inst.cops << '\n';
    if (inst.start) {
        os << "start_robber " << inst.start->robber << '\n';
        auto cops = inst.start->cops;
        std::sort(cops.begin(), cops.end());
        os << "start_cops";
        for (Vertex v : cops) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

} // namespace guardlab
