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

// One line per acceptance criterion: "criterion <k> <name> PASS|FAIL (detail)".
// Exit status is the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "guardlab/compiler.hpp"
#include "guardlab/solver.hpp"
#include "guardlab/verifier.hpp"

using namespace guardlab;

namespace {

constexpr double kEquivalenceSeconds = 600.0;
constexpr double kOracleSeconds = 300.0;
constexpr std::size_t kOracleInstances = 500;
constexpr std::uint64_t kOracleSeed = 20260101;
constexpr std::size_t kForcedMinimum = 4;
constexpr double kResidualLimit = 0.05;
constexpr std::size_t kMinCopsInstances = 50;
constexpr std::uint64_t kMinCopsSeed = 77;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int k, const std::string& name, bool pass, const std::string& detail)
{
    std::cout << "criterion " << k << ' ' << name << (pass ? " PASS" : " FAIL") << " (" << detail << ")" << std::endl;
    failures += !pass;
}

std::string fmt(double v, int digits = 3)
{
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

struct BoundTally {
    std::size_t checked = 0;
    std::size_t violations = 0;

    void add(const GuardInstance& inst, std::uint64_t reachable)
    {
        ++checked;
        violations += reachable > state_bound(inst);
    }
};

} // namespace

int main()
{
    BoundTally bounds;
    std::size_t cop_formula_checked = 0, cop_formula_bad = 0;
    auto check_cop_formula = [&](const FormulaGameInstance& f, const CompiledGame& cg) {
        ++cop_formula_checked;
        const std::size_t expected = f.rvars.size() + f.cvars.size() + f.cop_formula.size() + 1;
        cop_formula_bad += cg.counters.cops != expected || cg.instance.cops != expected;
    };

    // 1. equivalence on the sixteen 1+1 variable games
    const auto family = exhaustive_1x1_family();
    struct Solved {
        const FormulaGameInstance* f;
        CompiledGame cg;
        Winner psp;
        std::uint64_t reachable;
    };
    std::vector<Solved> solved;
    {
        const auto t0 = Clock::now();
        std::size_t agree = 0;
        for (const auto& f : family) {
            const Player formula = solve_formula_game(f);
            auto cg = compile_psp(f);
            check_cop_formula(f, cg);
            const auto res = solve_psp(cg.instance);
            bounds.add(cg.instance, res.stats.reachable);
            agree += (formula == Player::I) == (res.winner == Winner::Robber);
            solved.push_back({&f, std::move(cg), res.winner, res.stats.reachable});
        }
        const double t = seconds_since(t0);
        report(1, "equivalence", agree == family.size() && t < kEquivalenceSeconds,
               std::to_string(agree) + "/" + std::to_string(family.size()) + " in " + fmt(t) + " s");
    }

    // 2. start forcing, smallest state spaces first, as many as the family has
    {
        std::sort(solved.begin(), solved.end(),
                  [](const Solved& a, const Solved& b) { return a.reachable < b.reachable; });
        std::size_t agree = 0, tried = 0;
        for (const auto& s : solved) {
            const auto fg = force_start(s.cg);
            if (fg.instance.cops != s.cg.instance.cops + fg.border) ++cop_formula_bad;
            const auto full = solve_full(fg.instance);
            if (full.result.stats.reachable > 0) bounds.add(fg.instance, full.result.stats.reachable);
            ++tried;
            agree += full.result.winner == s.psp;
        }
        report(2, "start-forcing", agree == tried && tried >= kForcedMinimum,
               std::to_string(agree) + "/" + std::to_string(tried) + " agree, at least " +
                   std::to_string(kForcedMinimum) + " required");
    }

    // 3. solver vs forward oracle
    {
        const auto t0 = Clock::now();
        std::mt19937_64 rng(kOracleSeed);
        std::size_t agree = 0, robber = 0;
        for (std::size_t i = 0; i < kOracleInstances; ++i) {
            const auto inst = random_instance(rng);
            const auto res = solve_psp(inst);
            bounds.add(inst, res.stats.reachable);
            const Winner fwd = forward_oracle(inst, default_ply_bound(inst));
            agree += fwd == res.winner;
            robber += res.winner == Winner::Robber;
        }
        const double t = seconds_since(t0);
        report(3, "oracle-agreement", agree == kOracleInstances && t < kOracleSeconds,
               std::to_string(agree) + "/" + std::to_string(kOracleInstances) + " seed " + std::to_string(kOracleSeed) +
                   ", " + std::to_string(robber) + " robber wins, " + fmt(t) + " s");
    }

    // 5 and 7 share the sweep; 4 is reported after everything has been solved.
    std::vector<SizeSample> samples;
    for (std::size_t p = 1; p <= 8; ++p)
        for (std::size_t f = 1; f <= 8; ++f) {
            const auto game = sweep_instance(p, f);
            const auto cg = compile_psp(game);
            check_cop_formula(game, cg);
            samples.push_back({p, f, cg.counters.vertices + cg.counters.edges});
        }

    // 6. gadget lemmas on the minimal instance
    const CompiledGame* minimal = nullptr;
    for (const auto& s : solved)
        if (s.f->robber_formula[0][0].positive && s.f->cop_formula[0][0].positive && !s.f->initial[0] &&
            !s.f->initial[1])
            minimal = &s.cg;
    VerificationReport lemmas = check_gadget_lemmas(*minimal);

    // 8. min_cops vs brute force
    std::size_t mc_agree = 0;
    {
        std::mt19937_64 rng(kMinCopsSeed);
        RandomInstanceParams params;
        params.max_cop_region = 4;
        params.with_start = false;
        for (std::size_t i = 0; i < kMinCopsInstances; ++i) {
            const auto inst = random_instance(rng, params);
            mc_agree += min_cops(inst.graph) == brute_force_min_cops(inst.graph);
        }
    }

    report(4, "state-bound", bounds.violations == 0,
           std::to_string(bounds.violations) + " violations over " + std::to_string(bounds.checked) + " solves");

    const auto fit = fit_size_model(samples);
    report(5, "size-linearity", fit.relative_residual < kResidualLimit,
           "residual " + fmt(fit.relative_residual) + ", max pointwise " + fmt(fit.max_pointwise_residual) +
               ", size ~ " + fmt(fit.intercept, 4) + " + " + fmt(fit.per_variable, 4) + " p + " +
               fmt(fit.per_clause, 4) + " f");

    std::size_t lemma_pass = 0;
    std::string failed;
    for (const auto& c : lemmas.checks) {
        if (c.pass) ++lemma_pass;
        else failed += " " + c.name;
    }
    report(6, "gadget-lemmas", lemmas.passed(),
           std::to_string(lemma_pass) + "/" + std::to_string(lemmas.checks.size()) + (failed.empty() ? "" : ", failed:" + failed));

    report(7, "cop-count", cop_formula_bad == 0,
           std::to_string(cop_formula_checked - std::min(cop_formula_bad, cop_formula_checked)) + "/" +
               std::to_string(cop_formula_checked) + " compiled instances, forced counts included");

    report(8, "min-cops", mc_agree == kMinCopsInstances,
           std::to_string(mc_agree) + "/" + std::to_string(kMinCopsInstances) + " seed " + std::to_string(kMinCopsSeed));

    return failures;
}
