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

#include "guardlab/solver.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "guardlab/error.hpp"

namespace guardlab {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kExpansionChunk = 1 << 14;

} // namespace

RetrogradeSolver::RetrogradeSolver(GuardInstance inst, SolveOptions opts)
    : inst_(std::move(inst)), opts_(opts), space_(inst_.graph, inst_.cops),
      gen_(inst_.graph, inst_.cops, opts_.successor_cap)
{
    if (opts_.workers == 0) opts_.workers = 1;
}

std::uint32_t RetrogradeSolver::id_of(const GuardConfig& cfg) const
{
    auto it = ids_.find(space_.rank(cfg));
    if (it == ids_.end()) throw InputError("configuration not explored: " + to_string(cfg));
    return it->second;
}

bool RetrogradeSolver::contains(const GuardConfig& cfg) const { return ids_.contains(space_.rank(cfg)); }

void RetrogradeSolver::explore(std::span<const GuardConfig> roots)
{
    auto intern = [&](std::uint64_t r) -> std::uint32_t {
        auto [it, fresh] = ids_.try_emplace(r, static_cast<std::uint32_t>(ranks_.size()));
        if (fresh) {
            if (ranks_.size() >= opts_.max_states)
                throw ResourceError("state budget of " + std::to_string(opts_.max_states) + " exceeded");
            ranks_.push_back(r);
        }
        return it->second;
    };
    for (const auto& root : roots) {
        if (root.to_move == Side::Robber && inst_.graph.in_cop_region(root.robber))
            throw InputError("robber root inside the cop region: " + to_string(root));
        intern(space_.rank(GuardConfig{root.robber, canonicalize(root.cops, inst_.graph), root.to_move}));
    }

    const std::size_t c = inst_.cops;
    const std::uint64_t placements = space_.placements();

    // Successor ranks of one state, sorted and unique.
    auto expand = [&](std::uint64_t r, std::vector<Vertex>& cops, std::vector<Vertex>& targets,
                      std::vector<std::uint64_t>& out) {
        out.clear();
        auto [robber, side] = space_.unrank(r, cops);
        if (inst_.graph.in_cop_region(robber)) return; // terminal
        if (side == Side::Robber) {
            gen_.robber_moves(robber, cops, opts_.robber_pass, targets);
            for (Vertex t : targets) out.push_back(space_.rank(t, cops, Side::Cops));
        } else {
            // Successors have the robber to move, so the rank head is just the robber vertex.
            gen_.cop_moves(cops, [&](std::span<const Vertex> next) {
                out.push_back(std::uint64_t{robber} * placements + space_.rank_cops(next));
            });
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    };

    struct Chunk {
        std::vector<std::uint64_t> offsets;
        std::vector<std::uint64_t> succ;
        std::exception_ptr error;
    };

    while (expanded_ < ranks_.size()) {
        const std::size_t begin = expanded_;
        const std::size_t end = std::min(ranks_.size(), begin + kExpansionChunk);
        const std::size_t workers = std::min<std::size_t>(opts_.workers, end - begin);
        std::vector<Chunk> chunks(workers);

        auto work = [&](std::size_t w) {
            auto& chunk = chunks[w];
            try {
                std::vector<Vertex> cops(c), targets;
                std::vector<std::uint64_t> out;
                const std::size_t lo = begin + (end - begin) * w / workers;
                const std::size_t hi = begin + (end - begin) * (w + 1) / workers;
                chunk.offsets.push_back(0);
                for (std::size_t s = lo; s < hi; ++s) {
                    expand(ranks_[s], cops, targets, out);
                    chunk.succ.insert(chunk.succ.end(), out.begin(), out.end());
                    chunk.offsets.push_back(chunk.succ.size());
                }
            } catch (...) {
                chunk.error = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        }

        for (auto& chunk : chunks) {
            if (chunk.error) std::rethrow_exception(chunk.error);
            for (std::size_t i = 0; i + 1 < chunk.offsets.size(); ++i) {
                for (std::uint64_t k = chunk.offsets[i]; k < chunk.offsets[i + 1]; ++k)
                    succ_.push_back(intern(chunk.succ[k]));
                succ_begin_.push_back(succ_.size());
            }
        }
        expanded_ = end;
    }
}

void RetrogradeSolver::label()
{
    const std::size_t states = ranks_.size();
    const std::uint64_t placements = space_.placements();
    const std::size_t n = inst_.graph.size();
    auto is_cops_turn = [&](std::size_t s) { return ranks_[s] / placements >= n; };
    auto robber_of = [&](std::size_t s) { return static_cast<Vertex>((ranks_[s] / placements) % n); };

    std::vector<std::uint64_t> pred_begin(states + 1, 0);
    for (auto t : succ_) ++pred_begin[t + 1];
    for (std::size_t s = 0; s < states; ++s) pred_begin[s + 1] += pred_begin[s];
    std::vector<std::uint32_t> preds(succ_.size());
    {
        auto fill = pred_begin;
        for (std::size_t s = 0; s < states; ++s)
            for (auto k = succ_begin_[s]; k < succ_begin_[s + 1]; ++k) preds[fill[succ_[k]]++] = static_cast<std::uint32_t>(s);
    }

    std::vector<std::uint32_t> remaining(states);
    for (std::size_t s = 0; s < states; ++s)
        remaining[s] = static_cast<std::uint32_t>(succ_begin_[s + 1] - succ_begin_[s]);

    robber_win_.assign(states, 0);
    dist_.assign(states, kUnreached);
    std::deque<std::uint32_t> queue;
    for (std::size_t s = 0; s < states; ++s) {
        if (inst_.graph.in_cop_region(robber_of(s))) {
            robber_win_[s] = 1;
            dist_[s] = 0;
            queue.push_back(static_cast<std::uint32_t>(s));
        }
    }

    std::uint32_t max_dist = 0;
    while (!queue.empty()) {
        const auto t = queue.front();
        queue.pop_front();
        max_dist = std::max(max_dist, dist_[t]);
        for (auto k = pred_begin[t]; k < pred_begin[t + 1]; ++k) {
            const auto p = preds[k];
            if (robber_win_[p]) continue;
            if (is_cops_turn(p) && --remaining[p] != 0) continue;
            robber_win_[p] = 1;
            dist_[p] = dist_[t] + 1;
            queue.push_back(p);
        }
    }
    iterations_ = std::any_of(robber_win_.begin(), robber_win_.end(), [](auto b) { return b != 0; }) ? max_dist + 1 : 0;
}

void RetrogradeSolver::solve(std::span<const GuardConfig> roots)
{
    explore(roots);
    label();
}

Winner RetrogradeSolver::winner(const GuardConfig& cfg) const
{
    return robber_win_.at(id_of(cfg)) ? Winner::Robber : Winner::Cops;
}

std::optional<std::uint32_t> RetrogradeSolver::distance(const GuardConfig& cfg) const
{
    const auto s = id_of(cfg);
    if (!robber_win_.at(s)) return std::nullopt;
    return dist_[s];
}

Strategy RetrogradeSolver::strategy() const
{
    Strategy strat;
    const std::uint64_t placements = space_.placements();
    const std::size_t n = inst_.graph.size();
    for (std::size_t s = 0; s < ranks_.size(); ++s) {
        const bool cops_turn = ranks_[s] / placements >= n;
        std::optional<std::uint64_t> best;
        for (auto k = succ_begin_[s]; k < succ_begin_[s + 1]; ++k) {
            const auto t = succ_[k];
            const bool pick = robber_win_[s] ? (!cops_turn && robber_win_[t] && dist_[t] + 1 == dist_[s])
                                             : (cops_turn && !robber_win_[t]);
            if (pick && (!best || ranks_[t] < *best)) best = ranks_[t];
        }
        if (best) strat.emplace(ranks_[s], *best);
    }
    return strat;
}

bool RetrogradeSolver::is_fixpoint() const
{
    const std::uint64_t placements = space_.placements();
    const std::size_t n = inst_.graph.size();
    for (std::size_t s = 0; s < ranks_.size(); ++s) {
        if (robber_win_[s]) continue;
        const bool cops_turn = ranks_[s] / placements >= n;
        if (inst_.graph.in_cop_region(static_cast<Vertex>((ranks_[s] / placements) % n))) return false;
        const auto b = succ_begin_[s], e = succ_begin_[s + 1];
        std::size_t won = 0;
        for (auto k = b; k < e; ++k) won += robber_win_[succ_[k]];
        if (cops_turn ? (e > b && won == e - b) : won > 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

SolveResult solve_psp(const GuardInstance& inst, const SolveOptions& opts)
{
    if (!inst.start) throw InputError("solve_psp requires a prescribed start");
    if (auto v = validate(inst); !v.empty()) throw InputError(v.front());
    RetrogradeSolver solver(inst, opts);
    const GuardConfig root{inst.start->robber, inst.start->cops, Side::Robber};
    solver.solve(std::span(&root, 1));

    SolveResult result;
    result.winner = solver.winner(root);
    result.stats = {solver.reachable(), solver.iterations()};
    if (opts.extract_strategy) result.strategy = solver.strategy();
    return result;
}

namespace {

// Enumerates multisets of size `size` over `pool` (ascending), calling emit with each.
template <class F>
void for_each_multiset(std::span<const Vertex> pool, std::size_t size, F&& emit)
{
    std::vector<Vertex> cur(size);
    auto rec = [&](auto&& self, std::size_t i, std::size_t from) -> void {
        if (i == size) {
            emit(std::span<const Vertex>(cur));
            return;
        }
        for (std::size_t j = from; j < pool.size(); ++j) {
            cur[i] = pool[j];
            self(self, i + 1, j);
        }
    };
    rec(rec, 0, 0);
}

} // namespace

FullSolveResult solve_full(const GuardInstance& inst, const SolveOptions& opts)
{
    const auto& g = inst.graph;
    const std::size_t c = inst.cops;
    const auto region = g.cop_region();
    FullSolveResult full;
    full.result.winner = Winner::Cops;
    if (region.empty() || region.size() == g.size()) return full;

    // Per robber placement r, three cases:
    //  - r has more cop-region out-neighbours than there are cops: every
    //    placement leaves one open and the robber steps in immediately;
    //  - the cop-region vertices adjacent to everything the robber can reach
    //    inside the robber region number at most c: cops sit on them forever;
    //  - otherwise solve every placement that covers r's cop-region
    //    out-neighbours (the rest lose on the first move).
    std::vector<Vertex> exact;
    std::vector<GuardConfig> roots;
    std::uint64_t root_budget = 0;
    for (Vertex r = 0; r < g.size(); ++r) {
        if (g.in_cop_region(r)) continue;
        std::vector<Vertex> required;
        for (Vertex v : g.out(r))
            if (g.in_cop_region(v)) required.push_back(v);
        if (required.size() > c) {
            full.result.winner = Winner::Robber;
            full.robber_placement = r;
            return full;
        }

        std::vector<std::uint8_t> seen(g.size(), 0), target(g.size(), 0);
        std::vector<Vertex> stack{r};
        seen[r] = 1;
        std::size_t targets = 0;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex v : g.out(u)) {
                if (g.in_cop_region(v)) {
                    if (!target[v]) ++targets;
                    target[v] = 1;
                } else if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        if (targets <= c) continue;

        const std::size_t free = c - required.size();
        root_budget += binomial(region.size() + free - 1, free);
        if (root_budget > opts.max_states)
            throw ResourceError("cop placements exceed the state budget of " + std::to_string(opts.max_states));
        exact.push_back(r);
        for_each_multiset(region, free, [&](std::span<const Vertex> extra) {
            std::vector<Vertex> cops(required);
            cops.insert(cops.end(), extra.begin(), extra.end());
            std::sort(cops.begin(), cops.end());
            roots.push_back(GuardConfig{r, std::move(cops), Side::Robber});
        });
    }
    if (exact.empty()) return full;

    RetrogradeSolver solver(inst, opts);
    solver.solve(roots);
    full.result.stats = {solver.reachable(), solver.iterations()};
    for (Vertex r : exact) {
        const bool all_won = std::all_of(roots.begin(), roots.end(), [&](const GuardConfig& root) {
            return root.robber != r || solver.winner(root) == Winner::Robber;
        });
        if (all_won) {
            full.result.winner = Winner::Robber;
            full.robber_placement = r;
            break;
        }
    }
    return full;
}

std::size_t min_cops(const GameGraph& g, std::optional<std::size_t> cap, const SolveOptions& opts)
{
    for (std::size_t c = 0;; ++c) {
        if (cap && c > *cap)
            throw InputError("no cop-win cop count up to the cap of " + std::to_string(*cap));
        GuardInstance inst{g, c, std::nullopt};
        if (solve_full(inst, opts).result.winner == Winner::Cops) return c;
    }
}

void write_strategy(std::ostream& os, const Strategy& strategy)
{
    for (const auto& [from, to] : strategy) os << "rank " << from << " -> " << to << '\n';
}

} // namespace guardlab
