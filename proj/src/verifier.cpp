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

#include "guardlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "guardlab/error.hpp"

namespace guardlab {

bool VerificationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void VerificationReport::merge(VerificationReport other)
{
    for (auto& c : other.checks) checks.push_back(std::move(c));
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

void write_report(std::ostream& os, const VerificationReport& report, const std::vector<std::string>& files)
{
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        os << c.name << (c.pass ? " PASS" : " FAIL");
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        if (i < files.size() && !files[i].empty()) os << ' ' << files[i];
        os << '\n';
    }
}

// --- forward oracle ---------------------------------------------------------

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t placement_count(std::size_t region, std::size_t cops)
{
    if (region == 0) return cops == 0 ? 1 : 0;
    return binomial(region + cops - 1, cops);
}

class ForwardSearch {
public:
    ForwardSearch(const GuardInstance& inst, std::uint64_t ply_bound, std::size_t max_pairs)
        : inst_(inst), space_(inst.graph, inst.cops), max_pairs_(max_pairs)
    {
        bound_ = std::min(ply_bound, space_.size());
    }

    bool robber_wins(const GuardConfig& cfg) { return wins(cfg, bound_); }

private:
    // Robber wins within `depth` plies. Results are monotone in depth, so a
    // position keeps the smallest depth known to win and the largest known to lose.
    bool wins(const GuardConfig& cfg, std::uint64_t depth)
    {
        if (terminal_status(cfg, inst_.graph)) return true;
        if (depth == 0) return false;
        auto& m = memo_[space_.rank(cfg)];
        if (m.win_at <= depth) return true;
        if (m.lose_upto != kNone && m.lose_upto >= depth) return false;
        if (++pairs_ > max_pairs_) throw ResourceError("forward oracle exceeded its budget");

        bool result;
        if (cfg.to_move == Side::Robber) {
            result = false;
            for (const auto& s : robber_successors(cfg, inst_))
                if (wins(s, depth - 1)) {
                    result = true;
                    break;
                }
        } else {
            result = true;
            for (const auto& s : cop_successors(cfg, inst_))
                if (!wins(s, depth - 1)) {
                    result = false;
                    break;
                }
        }
        // memo_ may have rehashed during recursion
        auto& after = memo_[space_.rank(cfg)];
        if (result)
            after.win_at = std::min(after.win_at, depth);
        else
            after.lose_upto = after.lose_upto == kNone ? depth : std::max(after.lose_upto, depth);
        return result;
    }

    static constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    struct Bounds {
        std::uint64_t win_at = kNone;
        std::uint64_t lose_upto = kNone;
    };

    const GuardInstance& inst_;
    RankSpace space_;
    std::uint64_t bound_ = 0;
    std::size_t max_pairs_;
    std::size_t pairs_ = 0;
    std::unordered_map<std::uint64_t, Bounds> memo_;
};

} // namespace

std::uint64_t default_ply_bound(const GuardInstance& inst)
{
    std::uint64_t b = 2;
    for (std::size_t i = 0; i <= inst.cops; ++i) b = saturating_mul(b, inst.graph.size());
    return b;
}

Winner forward_oracle(const GuardInstance& inst, std::uint64_t ply_bound, std::size_t max_pairs)
{
    if (!inst.start) throw InputError("forward oracle requires a prescribed start");
    if (auto v = validate(inst); !v.empty()) throw InputError(v.front());
    ForwardSearch search(inst, ply_bound, max_pairs);
    GuardConfig root{inst.start->robber, inst.start->cops, Side::Robber};
    return search.robber_wins(root) ? Winner::Robber : Winner::Cops;
}

Winner forward_oracle_full(const GuardInstance& inst, std::uint64_t ply_bound, std::size_t max_pairs)
{
    if (auto v = validate(inst); !v.empty()) throw InputError(v.front());
    const auto& g = inst.graph;
    const std::size_t region = g.cop_region_size();
    if (region == 0 && inst.cops > 0) return Winner::Cops;

    GuardInstance plain{g, inst.cops, std::nullopt};
    ForwardSearch search(plain, ply_bound, max_pairs);
    const RankSpace space(g, inst.cops);
    std::vector<Vertex> cops(inst.cops);
    for (Vertex r = 0; r < g.size(); ++r) {
        if (g.in_cop_region(r)) continue;
        bool all = true;
        for (std::uint64_t i = 0; i < space.placements() && all; ++i) {
            space.unrank_cops(i, cops);
            all = search.robber_wins(GuardConfig{r, cops, Side::Robber});
        }
        if (all) return Winner::Robber;
    }
    return Winner::Cops;
}

std::size_t brute_force_min_cops(const GameGraph& g, std::size_t max_pairs)
{
    for (std::size_t c = 0;; ++c) {
        GuardInstance inst{g, c, std::nullopt};
        if (forward_oracle_full(inst, default_ply_bound(inst), max_pairs) == Winner::Cops) return c;
    }
}

// --- random instances -------------------------------------------------------

GuardInstance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params)
{
    std::uniform_int_distribution<std::size_t> size_dist(std::max<std::size_t>(params.min_vertices, 2),
                                                         std::max(params.max_vertices, params.min_vertices));
    std::uniform_real_distribution<double> frac_dist(params.min_cop_fraction, params.max_cop_fraction);
    std::bernoulli_distribution edge_dist(params.edge_density);
    std::uniform_int_distribution<std::size_t> cop_dist(0, params.max_cops);

    const std::size_t n = size_dist(rng);
    auto k = static_cast<std::size_t>(std::lround(frac_dist(rng) * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, std::min(n - 1, std::max<std::size_t>(params.max_cop_region, 1)));

    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);

    GuardInstance inst;
    inst.graph = GameGraph(n);
    for (std::size_t i = 0; i < k; ++i) inst.graph.set_cop_region(order[i]);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && edge_dist(rng)) inst.graph.add_edge(u, v);
    inst.cops = cop_dist(rng);

    if (params.with_start) {
        std::uniform_int_distribution<std::size_t> rpick(k, n - 1), cpick(0, k - 1);
        StartPosition s;
        s.robber = order[rpick(rng)];
        for (std::size_t i = 0; i < inst.cops; ++i) s.cops.push_back(order[cpick(rng)]);
        std::sort(s.cops.begin(), s.cops.end());
        inst.start = std::move(s);
    }
    return inst;
}

VerificationReport check_oracle_agreement(std::size_t count, std::uint64_t seed, const RandomInstanceParams& params)
{
    std::mt19937_64 rng(seed);
    CheckResult res{"oracle-agreement", true, {}, {}};
    std::size_t agreed = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const auto inst = random_instance(rng, params);
        const Winner retro = solve_psp(inst).winner;
        const Winner fwd = forward_oracle(inst, default_ply_bound(inst));
        if (retro == fwd) {
            ++agreed;
        } else if (res.pass) {
            res.pass = false;
            res.counterexample = "# instance " + std::to_string(i) + ": solver " + to_string(retro) + ", oracle " +
                                 to_string(fwd) + "\n" + serialize(inst);
        }
    }
    res.detail = std::to_string(agreed) + "/" + std::to_string(count) + " seed " + std::to_string(seed);
    VerificationReport r;
    r.add(std::move(res));
    return r;
}

// --- equivalence ------------------------------------------------------------

EquivalenceOutcome run_equivalence(const FormulaGameInstance& f, const EquivalenceOptions& opts)
{
    EquivalenceOutcome out;
    out.formula = solve_formula_game(f);
    const CompiledGame cg = compile_psp(f, opts.compile);
    out.counters = cg.counters;
    const SolveResult psp = solve_psp(cg.instance, opts.solve);
    out.psp = psp.winner;
    out.psp_reachable = psp.stats.reachable;
    if (opts.check_forced) {
        const ForcedGame fg = force_start(cg);
        out.border = fg.border;
        const FullSolveResult full = solve_full(fg.instance, opts.solve);
        out.forced = full.result.winner;
        out.forced_reachable = full.result.stats.reachable;
    }
    return out;
}

namespace {

std::string outcome_text(const EquivalenceOutcome& o)
{
    std::string s = "formula " + to_string(o.formula) + ", psp " + to_string(o.psp);
    if (o.forced) s += ", forced " + to_string(*o.forced);
    return s;
}

} // namespace

VerificationReport check_equivalence(const FormulaGameInstance& f, const EquivalenceOptions& opts)
{
    const auto o = run_equivalence(f, opts);
    VerificationReport r;
    const std::string payload = "# " + outcome_text(o) + "\n" + serialize(f);
    r.add({"equivalence", o.psp_agrees(), outcome_text(o), o.psp_agrees() ? "" : payload});
    if (opts.check_forced) r.add({"start-forcing", o.forced_agrees(), outcome_text(o), o.forced_agrees() ? "" : payload});
    return r;
}

std::vector<FormulaGameInstance> exhaustive_1x1_family()
{
    std::vector<FormulaGameInstance> out;
    for (int sy = 0; sy < 2; ++sy)
        for (int sx = 0; sx < 2; ++sx)
            for (int y0 = 0; y0 < 2; ++y0)
                for (int x0 = 0; x0 < 2; ++x0) {
                    FormulaGameInstance f;
                    f.rvars = {"y"};
                    f.cvars = {"x"};
                    f.robber_formula = {{Literal{0, sy == 0}}};
                    f.cop_formula = {{Literal{1, sx == 0}}};
                    f.initial = {y0 != 0, x0 != 0};
                    f.first = Player::I;
                    out.push_back(std::move(f));
                }
    return out;
}

VerificationReport check_exhaustive_1x1(const EquivalenceOptions& opts)
{
    const auto family = exhaustive_1x1_family();
    CheckResult eq{"equivalence", true, {}, {}};
    CheckResult forced{"start-forcing", true, {}, {}};
    std::size_t eq_ok = 0, forced_ok = 0;
    for (const auto& f : family) {
        const auto o = run_equivalence(f, opts);
        const std::string payload = "# " + outcome_text(o) + "\n" + serialize(f);
        if (o.psp_agrees()) {
            ++eq_ok;
        } else if (eq.pass) {
            eq.pass = false;
            eq.counterexample = payload;
        }
        if (o.forced_agrees()) {
            ++forced_ok;
        } else if (forced.pass) {
            forced.pass = false;
            forced.counterexample = payload;
        }
    }
    const auto total = std::to_string(family.size());
    eq.detail = std::to_string(eq_ok) + "/" + total;
    forced.detail = std::to_string(forced_ok) + "/" + total;
    VerificationReport r;
    r.add(std::move(eq));
    if (opts.check_forced) r.add(std::move(forced));
    return r;
}

// --- gadget lemmas ----------------------------------------------------------

namespace {

bool has_prefix(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::vector<Vertex> moved(std::vector<Vertex> cops, Vertex from, Vertex to)
{
    auto it = std::find(cops.begin(), cops.end(), from);
    if (it == cops.end()) throw InputError("no cop on vertex " + std::to_string(from));
    *it = to;
    std::sort(cops.begin(), cops.end());
    return cops;
}

struct Hypothesis {
    std::string name;
    GuardConfig config;
    Winner expected;
    bool fast = false; // robber win must come within kFastLossPlies
};

class LemmaContext {
public:
    LemmaContext(const GuardInstance& inst, const GadgetIndex& index) : inst_(inst), index_(index)
    {
        if (!inst.start) throw InputError("lemma checks require a prescribed start");
        if (index.size() > inst.graph.size()) throw InputError("index does not match the instance");
        for (Vertex v = 0; v < index.size(); ++v) {
            const auto& l = index.label(v);
            if (has_prefix(l, "copg:") && l.size() > 2 && l.substr(l.size() - 2) == ":a") gates_.push_back(v);
        }
    }

    std::optional<Vertex> find(std::string_view label) const { return index_.find(label); }
    const std::vector<Vertex>& start_cops() const { return inst_.start->cops; }
    bool holds_cop(Vertex v) const
    {
        return std::find(start_cops().begin(), start_cops().end(), v) != start_cops().end();
    }

    /// Start cops with any gate cop that sits on a'' returned to its own gate.
    std::vector<Vertex> normalized_cops() const
    {
        auto cops = start_cops();
        const auto a2 = find("copg:a''");
        if (!a2) return cops;
        for (Vertex a : gates_)
            if (!holds_cop(a) && std::find(cops.begin(), cops.end(), *a2) != cops.end()) cops = moved(cops, *a2, a);
        return cops;
    }

private:
    const GuardInstance& inst_;
    const GadgetIndex& index_;
    std::vector<Vertex> gates_;
};

std::string hypothesis_payload(const GuardInstance& inst, const GuardConfig& cfg, const std::string& what)
{
    GuardInstance copy = inst;
    copy.start = StartPosition{cfg.robber, cfg.cops};
    return "# " + what + "; " + to_string(cfg.to_move) + " to move\n" + serialize(copy);
}

} // namespace

VerificationReport check_gadget_lemmas(const GuardInstance& compiled, const GadgetIndex& index, const SolveOptions& opts)
{
    LemmaContext ctx(compiled, index);
    const auto& g = compiled.graph;
    std::vector<Hypothesis> hyps;
    VerificationReport report;

    const auto rm = ctx.find("basic:RM");
    const auto ct = ctx.find("basic:CT");
    const auto hq = ctx.find("com:HQ");
    if (!rm || !ct || !hq) throw InputError("index lacks the basic cycle or commander anchors");
    const auto base = ctx.normalized_cops();

    // First variable with a cell.
    std::optional<std::string> x;
    for (Vertex v = 0; v < index.size() && !x; ++v) {
        const auto& l = index.label(v);
        if (has_prefix(l, "var:") && l.size() > 6 && l.substr(l.size() - 2) == ":T") x = l.substr(4, l.size() - 6);
    }
    // A hypothesis whose roles cannot be placed on this start fails outright.
    auto hypothesis = [&](std::string name, Winner expected, bool fast, auto&& build) {
        try {
            hyps.push_back({name, build(), expected, fast});
        } catch (const InputError& e) {
            report.add({std::move(name), false, e.what(), "# " + std::string(e.what()) + "\n" + serialize(compiled)});
        }
    };

    if (x) {
        hypothesis("lemma4-unguarded", Winner::Robber, true, [&] {
            const Vertex t = index.id("var:" + *x + ":T"), f = index.id("var:" + *x + ":F");
            const bool on_true = std::find(base.begin(), base.end(), t) != base.end();
            const Vertex to = index.id("var:" + *x + (on_true ? ":FT" : ":TF"));
            return GuardConfig{*rm, moved(base, on_true ? t : f, to), Side::Robber};
        });
    }
    if (auto f0 = ctx.find("force:0:f"))
        hypothesis("lemma4-guarded", Winner::Cops, false, [&] { return GuardConfig{*f0, base, Side::Cops}; });
    if (x) {
        hypothesis("lemma5-commander", Winner::Robber, true, [&] {
            return GuardConfig{*rm, moved(base, *hq, index.id("com:GF:" + *x)), Side::Robber};
        });
    }

    // First literal blocker of the first cop gate: q has in-edges from {p, s, a_0, a''}.
    const auto a0 = ctx.find("copg:0:a");
    const auto a0p = ctx.find("copg:0:a'");
    const auto a2 = ctx.find("copg:a''");
    if (a0 && a0p && a2) {
        for (Vertex q = 0; q < index.size(); ++q) {
            const auto& l = index.label(q);
            if (!has_prefix(l, "block:") || l.substr(l.size() - 2) != ":q") continue;
            const auto in = g.in(q);
            if (std::find(in.begin(), in.end(), *a0) == in.end()) continue;
            const Vertex p = index.id(l.substr(0, l.size() - 1) + "p");
            Vertex lit = 0;
            for (Vertex s : in)
                if (has_prefix(index.label(s), "var:")) lit = s;
            const auto& ll = index.label(lit);
            const std::string var = ll.substr(4, ll.rfind(':') - 4);
            const Vertex other = index.id("var:" + var + (ll.back() == 'T' ? ":F" : ":T"));
            auto holds = [](const std::vector<Vertex>& cops, Vertex v) {
                return std::find(cops.begin(), cops.end(), v) != cops.end();
            };
            hypothesis("lemma6-open", Winner::Robber, true, [&] {
                auto cops = holds(base, lit) ? moved(base, lit, other) : base;
                return GuardConfig{*ct, moved(cops, *a0, *a0p), Side::Robber};
            });
            hypothesis("lemma6-closed", Winner::Cops, false, [&] {
                return GuardConfig{p, holds(base, other) ? moved(base, other, lit) : base, Side::Cops};
            });
            break;
        }
        hypothesis("lemma9-arnold", Winner::Cops, false,
                   [&] { return GuardConfig{*rm, moved(base, *a0, *a2), Side::Robber}; });
    }

    std::vector<GuardConfig> roots;
    for (const auto& h : hyps) roots.push_back(h.config);
    RetrogradeSolver solver(compiled, opts);
    solver.solve(roots);
    for (const auto& h : hyps) {
        const Winner w = solver.winner(h.config);
        const auto d = solver.distance(h.config);
        bool pass = w == h.expected;
        std::string detail = to_string(w);
        if (d) detail += " in " + std::to_string(*d) + " plies";
        if (h.fast) pass = pass && d && *d <= kFastLossPlies;
        report.add({h.name, pass, detail,
                    pass ? "" : hypothesis_payload(compiled, h.config, "expected " + to_string(h.expected))});
    }

    // Enforcer side condition: no cop vertex with two out-neighbours among one gadget's targets.
    CheckResult side{"lemma4-side-condition", true, {}, {}};
    std::size_t gadgets = 0;
    for (Vertex v = 0; v < index.size(); ++v) {
        const auto& l = index.label(v);
        if (!has_prefix(l, "force:") || l.substr(l.size() - 2) != ":f") continue;
        ++gadgets;
        std::vector<Vertex> targets;
        for (Vertex bar : g.out(v))
            for (Vertex t : g.out(bar)) targets.push_back(t);
        std::sort(targets.begin(), targets.end());
        for (Vertex u : g.cop_region()) {
            std::size_t hits = 0;
            for (Vertex w : g.out(u)) hits += std::binary_search(targets.begin(), targets.end(), w);
            if (hits > 1 && side.pass) {
                side.pass = false;
                side.counterexample = "# " + index.label(u) + " reaches several targets of " + l + "\n";
            }
        }
    }
    side.detail = std::to_string(gadgets) + " enforcers";
    report.add(std::move(side));
    return report;
}

VerificationReport check_gadget_lemmas(const CompiledGame& cg, const SolveOptions& opts)
{
    return check_gadget_lemmas(cg.instance, cg.index, opts);
}

// --- size and state bounds --------------------------------------------------

std::uint64_t state_bound(const GuardInstance& inst)
{
    return saturating_mul(4 * inst.graph.size(), placement_count(inst.graph.cop_region_size(), inst.cops));
}

VerificationReport check_bounds(const CompiledGame& cg, const SolveOptions& opts)
{
    VerificationReport r;
    const auto res = solve_psp(cg.instance, opts);
    const auto bound = state_bound(cg.instance);
    r.add({"state-bound", res.stats.reachable <= bound,
           std::to_string(res.stats.reachable) + " <= " + std::to_string(bound), {}});

    std::size_t clauses = 0;
    for (const auto& c : cg.source.robber_formula) clauses += !c.empty();
    for (const auto& c : cg.source.cop_formula) clauses += !c.empty();
    const std::size_t size = cg.counters.vertices + cg.counters.edges;
    const std::size_t limit = kSizeConstant * (cg.source.variable_count() + clauses);
    r.add({"size-bound", size <= limit, std::to_string(size) + " <= " + std::to_string(limit), {}});
    for (auto& c : r.checks)
        if (!c.pass) c.counterexample = serialize(cg.source);
    return r;
}

FormulaGameInstance sweep_instance(std::size_t variables, std::size_t clauses)
{
    if (variables == 0) throw InputError("sweep needs at least one variable");
    FormulaGameInstance f;
    const std::size_t rcount = variables / 2;
    for (std::size_t i = 0; i < rcount; ++i) f.rvars.push_back("r" + std::to_string(i));
    for (std::size_t i = rcount; i < variables; ++i) f.cvars.push_back("c" + std::to_string(i - rcount));
    for (std::size_t j = 0; j < clauses; ++j) {
        Clause c;
        const std::size_t len = std::min<std::size_t>(1 + j % 3, variables);
        for (std::size_t t = 0; t < len; ++t) {
            const std::size_t v = (j + t) % variables;
            c.push_back(Literal{v, (j + t) % 2 == 0});
        }
        (j % 2 == 0 ? f.cop_formula : f.robber_formula).push_back(std::move(c));
    }
    f.initial.assign(variables, false);
    f.first = Player::I;
    return f;
}

std::vector<SizeSample> size_sweep(std::size_t max_variables, std::size_t max_clauses)
{
    std::vector<SizeSample> out;
    for (std::size_t p = 1; p <= max_variables; ++p)
        for (std::size_t f = 1; f <= max_clauses; ++f) {
            const auto cg = compile_psp(sweep_instance(p, f));
            out.push_back({p, f, cg.counters.vertices + cg.counters.edges});
        }
    return out;
}

AffineFit fit_size_model(const std::vector<SizeSample>& samples)
{
    if (samples.size() < 3) throw InputError("fit needs at least three samples");
    Eigen::MatrixXd a(samples.size(), 3);
    Eigen::VectorXd y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        a(row, 0) = 1.0;
        a(row, 1) = static_cast<double>(samples[i].variables);
        a(row, 2) = static_cast<double>(samples[i].clauses);
        y(row) = static_cast<double>(samples[i].size);
    }
    const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd residual = y - a * coef;
    AffineFit fit{coef(0), coef(1), coef(2), residual.norm() / y.norm(), 0.0};
    for (Eigen::Index i = 0; i < residual.size(); ++i)
        fit.max_pointwise_residual = std::max(fit.max_pointwise_residual, std::abs(residual(i)) / y(i));
    return fit;
}

} // namespace guardlab
