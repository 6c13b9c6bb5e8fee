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

#include "guardlab/compiler.hpp"

#include <algorithm>
#include <ostream>

#include "guardlab/error.hpp"
#include "text_util.hpp"

namespace guardlab {

// ---------------------------------------------------------------------------
// GadgetIndex

Vertex GadgetIndex::add(std::string label)
{
    const auto v = static_cast<Vertex>(labels_.size());
    if (!ids_.emplace(label, v).second) throw InputError("duplicate gadget label '" + label + "'");
    labels_.push_back(std::move(label));
    return v;
}

std::optional<Vertex> GadgetIndex::find(std::string_view label) const
{
    auto it = ids_.find(std::string(label));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

Vertex GadgetIndex::id(std::string_view label) const
{
    if (auto v = find(label)) return *v;
    throw InputError("unknown anchor label '" + std::string(label) + "'");
}

void GadgetIndex::write(std::ostream& os) const
{
    for (std::size_t v = 0; v < labels_.size(); ++v) os << v << ' ' << labels_[v] << '\n';
}

GadgetIndex GadgetIndex::parse(std::string_view text)
{
    GadgetIndex index;
    for (const auto& line : detail::tokenize(text)) {
        if (line.tokens.size() != 2) throw ParseError(line.number, "expected '<id> <label>'");
        const auto id = detail::parse_uint(line.tokens[0], line.number, "vertex id");
        if (id != index.size())
            throw ParseError(line.number, "ids must be consecutive from 0, expected " + std::to_string(index.size()));
        try {
            index.add(std::string(line.tokens[1]));
        } catch (const InputError& e) {
            throw ParseError(line.number, e.what());
        }
    }
    return index;
}

// ---------------------------------------------------------------------------
// GadgetBuilder

namespace {

std::string var_label(const std::string& x, const char* part) { return "var:" + x + ":" + part; }

} // namespace

Vertex GadgetBuilder::vertex(std::string label, bool cop_region)
{
    const Vertex id = index_.add(std::move(label));
    const Vertex v = g_.add_vertex(cop_region);
    if (v != id) throw std::logic_error("gadget index out of sync with graph");
    return v;
}

GadgetDelta GadgetBuilder::basic_cycle()
{
    const auto m = mark();
    const Vertex rm = vertex("basic:RM", false);
    const Vertex rt = vertex("basic:RT", false);
    const Vertex cm = vertex("basic:CM", false);
    const Vertex rw = vertex("basic:RW", false);
    const Vertex ct = vertex("basic:CT", false);
    edge(rm, rt);
    edge(rt, cm);
    edge(cm, rw);
    edge(rw, ct);
    edge(ct, rm);
    return since(m);
}

GadgetDelta GadgetBuilder::var_cell(const std::string& x)
{
    const auto m = mark();
    const Vertex t = vertex(var_label(x, "T"), true);
    const Vertex ft = vertex(var_label(x, "FT"), true);
    const Vertex f = vertex(var_label(x, "F"), true);
    const Vertex tf = vertex(var_label(x, "TF"), true);
    edge(t, ft);
    edge(ft, f);
    edge(f, tf);
    edge(tf, t);
    return since(m);
}

void GadgetBuilder::blocker_into(Vertex u, std::span<const Vertex> blocked, std::string p_label, std::string q_label)
{
    const Vertex p = vertex(std::move(p_label), false);
    const Vertex q = vertex(std::move(q_label), true);
    edge(u, p);
    edge(p, q);
    for (Vertex s : blocked) edge(s, q);
}

GadgetDelta GadgetBuilder::blocker(Vertex u, std::span<const Vertex> blocked)
{
    const auto m = mark();
    const std::string k = "block:" + std::to_string(blockers_++);
    blocker_into(u, blocked, k + ":p", k + ":q");
    return since(m);
}

GadgetDelta GadgetBuilder::force(std::span<const Vertex> from, std::span<const Vertex> targets)
{
    const auto m = mark();
    const std::string k = "force:" + std::to_string(forces_++);
    const Vertex f = vertex(k + ":f", false);
    for (Vertex s : from) edge(s, f);
    for (Vertex v : targets) {
        const Vertex bar = vertex(k + ":bar:" + index_.label(v), false);
        edge(f, bar);
        edge(bar, v);
    }
    return since(m);
}

GadgetDelta GadgetBuilder::robber_gate(std::size_t i, std::span<const NamedLiteral> clause)
{
    const auto m = mark();
    std::vector<Vertex> blocked;
    for (const auto& l : clause) blocked.push_back(anchor(var_label(l.var, l.positive ? "F" : "T")));
    std::sort(blocked.begin(), blocked.end());
    blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());
    const std::string k = "robg:" + std::to_string(i);
    blocker_into(anchor("basic:RT"), blocked, k + ":z'", k + ":z");
    return since(m);
}

GadgetDelta GadgetBuilder::cop_gate(std::size_t j, std::span<const NamedLiteral> clause, std::size_t robber_gates)
{
    const auto m = mark();
    const std::string k = "copg:" + std::to_string(j);
    const Vertex a = vertex(k + ":a", true);
    const Vertex a1 = vertex(k + ":a'", true);
    auto shared = index_.find("copg:a''");
    const Vertex a2 = shared ? *shared : vertex("copg:a''", true);
    const Vertex a3 = vertex(k + ":a'''", true);
    edge(a, a1);
    edge(a1, a2);
    edge(a2, a3);
    edge(a3, a);
    if (!shared)
        for (std::size_t i = 0; i < robber_gates; ++i) edge(a2, anchor("robg:" + std::to_string(i) + ":z"));

    const Vertex ct = anchor("basic:CT");
    for (const auto& l : clause) {
        const Vertex blocked[] = {anchor(var_label(l.var, l.positive ? "T" : "F")), a, a2};
        blocker(ct, blocked);
    }
    return since(m);
}

GadgetDelta GadgetBuilder::commander(std::span<const std::string> vars)
{
    const auto m = mark();
    const Vertex hq = vertex("com:HQ", true);
    for (const auto& x : vars) {
        const Vertex g = vertex("com:G:" + x, true);
        const Vertex gf = vertex("com:GF:" + x, true);
        const Vertex gt = vertex("com:GT:" + x, true);
        edge(hq, g);
        edge(g, hq);
        edge(g, gf);
        edge(gf, anchor(var_label(x, "F")));
        edge(g, gt);
        edge(gt, anchor(var_label(x, "T")));
    }
    return since(m);
}

GadgetDelta GadgetBuilder::robber_switch(const std::string& y)
{
    const auto m = mark();
    const Vertex rm = anchor("basic:RM");
    const Vertex rt = anchor("basic:RT");
    const Vertex hq = anchor("com:HQ");
    const Vertex sw = vertex("robs:" + y + ":Sw", false);
    edge(rm, sw);
    edge(sw, rt);
    edge(rm, hq);
    edge(rt, hq);
    edge(sw, anchor("com:G:" + y));
    edge(rm, rt);
    const Vertex blocked[] = {anchor(var_label(y, "FT")), anchor(var_label(y, "TF"))};
    blocker(sw, blocked);
    return since(m);
}

GadgetDelta GadgetBuilder::cop_switch(std::span<const std::string> cvars)
{
    const auto m = mark();
    std::vector<Vertex> blocked;
    for (const auto& x : cvars) blocked.push_back(anchor("com:G:" + x));
    blocker(anchor("basic:CM"), blocked);
    return since(m);
}

// ---------------------------------------------------------------------------
// Whole construction

namespace {

std::vector<NamedLiteral> named(const FormulaGameInstance& f, const Clause& clause)
{
    std::vector<NamedLiteral> out;
    for (const auto& l : clause) out.push_back({f.name(l.var), l.positive});
    return out;
}

} // namespace

CompiledGame compile_psp(const FormulaGameInstance& f, const CompileOptions& opts)
{
    if (auto v = validate(f); !v.empty()) throw InputError(v.front());
    if (f.first != Player::I) throw InputError("compile requires player I (turn 1) to move first");
    if (f.cvars.empty()) throw InputError("compile requires at least one C variable");

    CompiledGame cg;
    cg.source = f;
    GameGraph& g = cg.instance.graph;
    GadgetBuilder b(g, cg.index);

    std::vector<std::string> vars(f.rvars);
    vars.insert(vars.end(), f.cvars.begin(), f.cvars.end());

    b.basic_cycle();                                                         // 1
    for (const auto& x : vars) b.var_cell(x);                                // 2
    for (std::size_t i = 0; i < f.robber_formula.size(); ++i)                // 3
        b.robber_gate(i, named(f, f.robber_formula[i]));
    for (std::size_t j = 0; j < f.cop_formula.size(); ++j)                   // 4
        b.cop_gate(j, named(f, f.cop_formula[j]), f.robber_formula.size());
    b.commander(vars);                                                       // 5
    for (const auto& y : f.rvars) b.robber_switch(y);                        // 6
    g.add_edge(b.anchor("basic:RM"), b.anchor("basic:RT"));                  // RM -> RT even when R is empty
    b.cop_switch(f.cvars);                                                   // 7

    const Vertex rm = b.anchor("basic:RM"), rt = b.anchor("basic:RT"), cm = b.anchor("basic:CM"),
                 rw = b.anchor("basic:RW"), ct = b.anchor("basic:CT"), hq = b.anchor("com:HQ");
    std::vector<Vertex> s1{rm, rt, cm, rw};                                  // 8
    for (const auto& y : f.rvars) s1.push_back(b.anchor("robs:" + y + ":Sw"));
    std::vector<Vertex> s2(s1);
    s2.push_back(ct);
    std::vector<Vertex> trues, falses, gates;
    for (const auto& x : vars) {
        trues.push_back(b.anchor("var:" + x + ":T"));
        falses.push_back(b.anchor("var:" + x + ":F"));
    }
    for (std::size_t j = 0; j < f.cop_formula.size(); ++j) gates.push_back(b.anchor("copg:" + std::to_string(j) + ":a"));
    b.force(s2, trues);
    b.force(s2, falses);
    b.force(s1, gates);
    if (auto a2 = cg.index.find("copg:a''")) b.force(s1, std::span(&*a2, 1));
    for (Vertex u : {rm, rt, rw, ct}) g.add_edge(u, hq);                     // 9

    // Robber start r' copies RM's out-edges and has no in-edges.
    const Vertex start = b.vertex("start:r", false);
    for (Vertex v : std::vector<Vertex>(g.out(rm).begin(), g.out(rm).end())) g.add_edge(start, v);

    std::vector<Vertex> cops;
    for (std::size_t v = 0; v < vars.size(); ++v)
        cops.push_back(b.anchor("var:" + vars[v] + (f.initial[v] ? ":T" : ":F")));
    std::optional<std::size_t> settled;
    if (opts.settle_initial_cop_win && f.cop_formula.size() > 0) {
        for (std::size_t j = 0; j < f.cop_formula.size() && !settled; ++j)
            if (eval_formula(Formula{f.cop_formula[j]}, f.initial)) settled = j;
    }
    for (std::size_t j = 0; j < f.cop_formula.size(); ++j)
        cops.push_back(settled == j ? b.anchor("copg:a''") : gates[j]);
    cops.push_back(hq);
    std::sort(cops.begin(), cops.end());

    cg.instance.cops = cops.size();
    cg.instance.start = StartPosition{start, std::move(cops)};
    cg.counters = {g.size(), g.edge_count(), cg.instance.cops};
    return cg;
}

ForcedGame force_start(const GuardInstance& inst, const GadgetIndex* index)
{
    if (!inst.start) throw InputError("force_start requires a prescribed start");
    if (auto v = validate(inst); !v.empty()) throw InputError(v.front());
    const auto& start = *inst.start;
    if (!inst.graph.in(start.robber).empty())
        throw InputError("robber start " + std::to_string(start.robber) + " has incoming edges");
    if (std::adjacent_find(start.cops.begin(), start.cops.end()) != start.cops.end())
        throw InputError("two start cops share a vertex");

    ForcedGame out;
    out.instance.graph = inst.graph;
    auto& g = out.instance.graph;
    if (index) out.index = *index;

    for (Vertex u : border_sources(inst.graph))
        if (inst.graph.out(u).size() != 1) out.border_outdegree.push_back(u);
    out.border = border_targets(inst.graph).size();

    for (std::size_t k = 0; k < out.border; ++k) {
        const Vertex t = g.add_vertex(true);
        if (out.index) out.index->add("start:t:" + std::to_string(k));
        g.add_edge(start.robber, t);
    }
    for (Vertex s : start.cops) g.add_edge(start.robber, s);
    out.instance.cops = inst.cops + out.border;
    return out;
}

ForcedGame force_start(const CompiledGame& cg) { return force_start(cg.instance, &cg.index); }

} // namespace guardlab
