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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "guardlab/compiler.hpp"
#include "guardlab/error.hpp"
#include "guardlab/formula.hpp"
#include "guardlab/graph.hpp"
#include "guardlab/solver.hpp"
#include "guardlab/verifier.hpp"

using namespace guardlab;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write " + path);
}

GuardInstance load_guard(const std::string& path)
{
    try {
        return parse_guard_instance(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::uint64_t env_budget()
{
    const char* s = std::getenv("GUARDLAB_MEM_BUDGET");
    if (!s || !*s) return kDefaultStateBudget;
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (*end != '\0' || v == 0) throw InputError(std::string("GUARDLAB_MEM_BUDGET must be a positive integer: ") + s);
    return v;
}

struct Common {
    unsigned workers = 1;
    bool trace = false;

    SolveOptions solve() const
    {
        SolveOptions o;
        o.max_states = env_budget();
        o.workers = workers;
        return o;
    }
};

int cmd_solve(const Common& common, const std::string& path, const std::string& strategy_path)
{
    const auto inst = load_guard(path);
    auto opts = common.solve();
    opts.extract_strategy = !strategy_path.empty();
    SolveResult res;
    std::optional<Vertex> placement;
    if (inst.start) {
        res = solve_psp(inst, opts);
    } else {
        auto full = solve_full(inst, opts);
        res = std::move(full.result);
        placement = full.robber_placement;
    }
    std::cout << to_string(res.winner) << '\n';
    if (common.trace) {
        std::cerr << "reachable " << res.stats.reachable << "\niterations " << res.stats.iterations << '\n';
        if (placement) std::cerr << "robber placement " << *placement << '\n';
    }
    if (!strategy_path.empty()) {
        std::ostringstream ss;
        if (res.strategy) write_strategy(ss, *res.strategy);
        write_file(strategy_path, ss.str());
    }
    return 0;
}

int cmd_min_cops(const Common& common, const std::string& path, std::optional<std::size_t> cap)
{
    const auto inst = load_guard(path);
    std::cout << min_cops(inst.graph, cap, common.solve()) << '\n';
    return 0;
}

int cmd_compile(const std::string& in, const std::string& out, bool forced, const std::string& index_path,
                bool settle)
{
    FormulaGameInstance f;
    try {
        f = parse_formula_game(read_file(in));
    } catch (const ParseError& e) {
        throw InputError(in + ": " + e.what());
    }
    CompileOptions copts;
    copts.settle_initial_cop_win = settle;
    const auto cg = compile_psp(f, copts);
    const GuardInstance* inst = &cg.instance;
    const GadgetIndex* index = &cg.index;
    ForcedGame fg;
    if (forced) {
        fg = force_start(cg);
        inst = &fg.instance;
        index = &*fg.index;
        for (Vertex u : fg.border_outdegree)
            std::cerr << "warning: border source " << index->label(u) << " has out-degree "
                      << cg.instance.graph.out(u).size() << '\n';
    }
    write_file(out, serialize(*inst));
    if (!index_path.empty()) {
        std::ostringstream ss;
        index->write(ss);
        write_file(index_path, ss.str());
    }
    return 0;
}

int emit_report(const VerificationReport& report, const std::string& cex_dir)
{
    std::vector<std::string> files;
    for (const auto& c : report.checks) {
        if (c.pass || c.counterexample.empty()) {
            files.emplace_back();
            continue;
        }
        std::filesystem::create_directories(cex_dir);
        const auto file = (std::filesystem::path(cex_dir) / (c.name + ".cex")).string();
        write_file(file, c.counterexample);
        files.push_back(file);
    }
    write_report(std::cout, report, files);
    return 0;
}

int cmd_stats(const std::string& path)
{
    const auto inst = load_guard(path);
    const RankSpace space(inst.graph, inst.cops);
    std::cout << "n " << inst.graph.size() << '\n'
              << "cop_region " << inst.graph.cop_region_size() << '\n'
              << "cops " << inst.cops << '\n'
              << "border " << border_targets(inst.graph).size() << '\n'
              << "rank_space " << space.size() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Guarding game solver and formula-game reduction toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--workers", common.workers, "Expansion threads")->check(CLI::Range(1u, 256u));
    app.add_flag("--trace", common.trace, "Print solver statistics on stderr");

    std::string input, output, index_path, strategy_path, lemma_index, cex_dir = "counterexamples";
    std::optional<std::size_t> cap;
    bool forced = false, no_settle = false, exhaustive = false;
    std::size_t random_count = 0;
    std::uint64_t seed = 1;

    auto* solve = app.add_subcommand("solve", "Decide the winner of a guarding game");
    solve->add_option("file", input, "Guard instance")->required();
    solve->add_option("--strategy", strategy_path, "Write the winner's strategy");

    auto* mincops = app.add_subcommand("min-cops", "Minimum number of cops that guard the region");
    mincops->add_option("file", input, "Guard instance")->required();
    mincops->add_option("--cap", cap, "Give up above this many cops");

    auto* compile = app.add_subcommand("compile", "Compile a formula game into a guarding game");
    compile->add_option("file", input, "Formula game")->required();
    compile->add_option("-o,--output", output, "Guard instance to write")->required();
    compile->add_flag("--force-start", forced, "Replace the prescribed start by structure");
    compile->add_option("--index", index_path, "Write the gadget label index");
    compile->add_flag("--no-settle", no_settle, "Keep every gate cop on its own gate at the start");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    auto* ex = verify->add_flag("--exhaustive-1x1", exhaustive, "Sixteen one-plus-one variable games");
    auto* rnd = verify->add_option("--random", random_count, "Solver vs forward oracle on N random instances");
    verify->add_option("--seed", seed, "Seed for --random")->needs(rnd);
    auto* lem = verify->add_option("--lemmas", input, "Gadget lemma checks on a compiled instance");
    verify->add_option("--index", lemma_index, "Label index for --lemmas (default <file>.index)")->needs(lem);
    verify->add_flag("--force-start", forced, "Also check the forced-start game")->needs(ex);
    verify->add_flag("--no-settle", no_settle, "Compile without settling initial cop wins")->needs(ex);
    verify->add_option("--cex-dir", cex_dir, "Directory for counterexample files");
    ex->excludes(rnd)->excludes(lem);
    rnd->excludes(lem);

    auto* stats = app.add_subcommand("stats", "Instance statistics");
    stats->add_option("file", input, "Guard instance")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve) return cmd_solve(common, input, strategy_path);
        if (*mincops) return cmd_min_cops(common, input, cap);
        if (*compile) return cmd_compile(input, output, forced, index_path, !no_settle);
        if (*stats) return cmd_stats(input);
        if (*verify) {
            if (exhaustive) {
                EquivalenceOptions o;
                o.check_forced = forced;
                o.compile.settle_initial_cop_win = !no_settle;
                o.solve = common.solve();
                return emit_report(check_exhaustive_1x1(o), cex_dir);
            }
            if (*rnd) return emit_report(check_oracle_agreement(random_count, seed), cex_dir);
            if (*lem) {
                const auto inst = load_guard(input);
                const auto index = GadgetIndex::parse(read_file(lemma_index.empty() ? input + ".index" : lemma_index));
                return emit_report(check_gadget_lemmas(inst, index, common.solve()), cex_dir);
            }
            std::cerr << "verify: choose --exhaustive-1x1, --random or --lemmas\n";
            return 1;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
