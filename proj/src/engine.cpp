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

#include "guardlab/engine.hpp"

#include <algorithm>
#include <limits>

#include "guardlab/error.hpp"

namespace guardlab {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint32_t kNotInRegion = std::numeric_limits<std::uint32_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

} // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    // C(n, i+1) = C(n, i) * (n - i) / (i + 1) stays integral at every step.
    __extension__ typedef unsigned __int128 wide;
    wide r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > kSaturated) return kSaturated;
    }
    return static_cast<std::uint64_t>(r);
}

std::string to_string(Side s) { return s == Side::Robber ? "robber" : "cops"; }
std::string to_string(Winner w) { return w == Winner::Robber ? "robber" : "cop"; }

std::string to_string(const GuardConfig& cfg)
{
    std::string s = "robber=" + std::to_string(cfg.robber) + " cops=[";
    for (std::size_t i = 0; i < cfg.cops.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cfg.cops[i]);
    }
    return s + "] to_move=" + to_string(cfg.to_move);
}

std::vector<Vertex> canonicalize(std::vector<Vertex> cops, const GameGraph& g)
{
    for (Vertex v : cops)
        if (v >= g.size() || !g.in_cop_region(v))
            throw InputError("cop position " + std::to_string(v) + " is outside the cop region");
    std::sort(cops.begin(), cops.end());
    return cops;
}

std::optional<Winner> terminal_status(const GuardConfig& cfg, const GameGraph& g)
{
    if (g.in_cop_region(cfg.robber)) return Winner::Robber;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

MoveGenerator::MoveGenerator(const GameGraph& g, std::size_t cops, std::size_t successor_cap)
    : graph_(&g), cops_(cops), cap_(successor_cap), options_(g.size())
{
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!g.in_cop_region(v)) continue;
        auto& opts = options_[v];
        opts.push_back(v);
        for (Vertex w : g.out(v))
            if (g.in_cop_region(w)) opts.push_back(w);
    }
}

void MoveGenerator::robber_moves(Vertex robber, std::span<const Vertex> cops, bool include_stay,
                                 std::vector<Vertex>& out) const
{
    out.clear();
    if (include_stay) out.push_back(robber);
    for (Vertex v : graph_->out(robber)) {
        if (graph_->in_cop_region(v) && std::binary_search(cops.begin(), cops.end(), v)) continue;
        out.push_back(v);
    }
}

std::uint64_t MoveGenerator::cop_move_bound(std::span<const Vertex> cops) const
{
    std::uint64_t bound = 1;
    for (std::size_t i = 0; i < cops.size();) {
        std::size_t j = i;
        while (j < cops.size() && cops[j] == cops[i]) ++j;
        const std::uint64_t d = options_[cops[i]].size();
        bound = sat_mul(bound, binomial(d + (j - i) - 1, j - i));
        i = j;
    }
    if (bound > cap_)
        throw ResourceError("cop successor count " + (bound == kSaturated ? std::string(">2^64") : std::to_string(bound)) +
                            " exceeds cap " + std::to_string(cap_));
    return bound;
}

void MoveGenerator::cop_moves(std::span<const Vertex> cops,
                              const std::function<void(std::span<const Vertex>)>& emit) const
{
    cop_move_bound(cops);
    const std::size_t c = cops.size();
    std::vector<Vertex> choice(c), sorted(c);
    std::vector<std::size_t> option(c, 0);
    if (c == 0) {
        emit(sorted);
        return;
    }

    // Slot i picks an option index; within a group of equal cops the indices
    // are non-decreasing so each multiset of moves is produced once per group.
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == c) {
            sorted = choice;
            std::sort(sorted.begin(), sorted.end());
            emit(sorted);
            return;
        }
        const auto& opts = options_[cops[i]];
        const std::size_t first = (i > 0 && cops[i - 1] == cops[i]) ? option[i - 1] : 0;
        for (std::size_t j = first; j < opts.size(); ++j) {
            option[i] = j;
            choice[i] = opts[j];
            self(self, i + 1);
        }
    };
    recurse(recurse, 0);
}

std::vector<GuardConfig> robber_successors(const GuardConfig& cfg, const GuardInstance& inst)
{
    if (cfg.to_move != Side::Robber) throw InputError("robber_successors: cops to move");
    if (terminal_status(cfg, inst.graph)) throw InputError("robber_successors: terminal configuration");
    MoveGenerator gen(inst.graph, cfg.cops.size());
    std::vector<Vertex> targets;
    gen.robber_moves(cfg.robber, cfg.cops, true, targets);
    std::vector<GuardConfig> succ;
    succ.reserve(targets.size());
    for (Vertex v : targets) succ.push_back(GuardConfig{v, cfg.cops, Side::Cops});
    std::sort(succ.begin(), succ.end());
    return succ;
}

std::vector<GuardConfig> cop_successors(const GuardConfig& cfg, const GuardInstance& inst, std::size_t cap)
{
    if (cfg.to_move != Side::Cops) throw InputError("cop_successors: robber to move");
    if (terminal_status(cfg, inst.graph)) throw InputError("cop_successors: terminal configuration");
    const auto cops = canonicalize(cfg.cops, inst.graph);
    MoveGenerator gen(inst.graph, cops.size(), cap);
    std::vector<GuardConfig> succ;
    gen.cop_moves(cops, [&](std::span<const Vertex> next) {
        succ.push_back(GuardConfig{cfg.robber, {next.begin(), next.end()}, Side::Robber});
    });
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    return succ;
}

// ---------------------------------------------------------------------------

RankSpace::RankSpace(const GameGraph& g, std::size_t cops)
    : n_(g.size()), cops_(cops), region_(g.cop_region()), index_of_(g.size(), kNotInRegion)
{
    for (std::size_t i = 0; i < region_.size(); ++i) index_of_[region_[i]] = static_cast<std::uint32_t>(i);
    const std::size_t k = region_.size();

    if (cops_ == 0) {
        placements_ = 1;
    } else if (k == 0) {
        placements_ = 0;
    } else {
        const std::size_t rows = k + cops_;
        binom_.assign(rows * (cops_ + 1), 0);
        for (std::size_t r = 0; r < rows; ++r) {
            binom_[r * (cops_ + 1)] = 1;
            for (std::size_t j = 1; j <= std::min(r, cops_); ++j)
                binom_[r * (cops_ + 1) + j] =
                    sat_add(binom_[(r - 1) * (cops_ + 1) + j - 1], j <= r - 1 ? binom_[(r - 1) * (cops_ + 1) + j] : 0);
        }
        placements_ = binom(k + cops_ - 1, cops_);
    }
    size_ = sat_mul(sat_mul(2, n_), placements_);
    if (placements_ == kSaturated || size_ == kSaturated)
        throw ResourceError("rank space exceeds 64-bit range");
}

std::uint64_t RankSpace::rank_cops(std::span<const Vertex> cops) const
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < cops.size(); ++i) {
        const Vertex v = cops[i];
        if (v >= n_ || index_of_[v] == kNotInRegion)
            throw InputError("cop position " + std::to_string(v) + " is outside the cop region");
        if (i > 0 && cops[i - 1] > v) throw InputError("cop placement is not sorted");
        r += binom(index_of_[v] + i, i + 1);
    }
    return r;
}

void RankSpace::unrank_cops(std::uint64_t index, std::span<Vertex> cops) const
{
    std::size_t upper = region_.size() + cops_ - 1; // exclusive bound on b_i
    for (std::size_t i = cops_; i-- > 0;) {
        std::size_t b = upper - 1;
        while (binom(b, i + 1) > index) --b;
        index -= binom(b, i + 1);
        cops[i] = region_[b - i];
        upper = b;
    }
}

std::uint64_t RankSpace::rank(Vertex robber, std::span<const Vertex> cops, Side side) const
{
    if (robber >= n_) throw InputError("robber position " + std::to_string(robber) + " out of range");
    if (cops.size() != cops_) throw InputError("configuration has the wrong number of cops");
    return (static_cast<std::uint64_t>(side) * n_ + robber) * placements_ + rank_cops(cops);
}

std::uint64_t RankSpace::rank(const GuardConfig& cfg) const { return rank(cfg.robber, cfg.cops, cfg.to_move); }

std::pair<Vertex, Side> RankSpace::unrank(std::uint64_t index, std::span<Vertex> cops) const
{
    if (index >= size_) throw InputError("rank " + std::to_string(index) + " out of range");
    const std::uint64_t head = index / placements_;
    unrank_cops(index % placements_, cops);
    return {static_cast<Vertex>(head % n_), head >= n_ ? Side::Cops : Side::Robber};
}

GuardConfig RankSpace::unrank(std::uint64_t index) const
{
    GuardConfig cfg;
    cfg.cops.resize(cops_);
    std::tie(cfg.robber, cfg.to_move) = unrank(index, cfg.cops);
    return cfg;
}

} // namespace guardlab
