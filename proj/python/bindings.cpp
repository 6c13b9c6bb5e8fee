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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "guardlab/compiler.hpp"
#include "guardlab/error.hpp"
#include "guardlab/formula.hpp"
#include "guardlab/graph.hpp"
#include "guardlab/solver.hpp"
#include "guardlab/verifier.hpp"

namespace py = pybind11;
using namespace guardlab;

namespace {

SolveOptions options(unsigned workers, std::optional<std::uint64_t> max_states)
{
    SolveOptions o;
    o.workers = workers;
    if (max_states) o.max_states = *max_states;
    return o;
}

py::list report_rows(const VerificationReport& r)
{
    py::list out;
    for (const auto& c : r.checks) out.append(py::make_tuple(c.name, c.pass, c.detail));
    return out;
}

std::string index_text(const GadgetIndex& index)
{
    std::ostringstream os;
    index.write(os);
    return os.str();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Guarding game solver and formula-game reduction";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

    py::class_<GuardInstance>(m, "GuardInstance")
        .def_static("parse", &parse_guard_instance, py::arg("text"))
        .def("serialize", [](const GuardInstance& g) { return serialize(g); })
        .def("validate", [](const GuardInstance& g) { return validate(g); })
        .def_property_readonly("vertices", [](const GuardInstance& g) { return g.graph.size(); })
        .def_property_readonly("edges", [](const GuardInstance& g) {
            std::vector<std::pair<Vertex, Vertex>> out;
            for (Vertex u = 0; u < g.graph.size(); ++u)
                for (Vertex v : g.graph.out(u)) out.emplace_back(u, v);
            return out;
        })
        .def_property_readonly("cop_region", [](const GuardInstance& g) { return g.graph.cop_region(); })
        .def_readwrite("cops", &GuardInstance::cops)
        .def_property_readonly("start", [](const GuardInstance& g) -> py::object {
            if (!g.start) return py::none();
            return py::make_tuple(g.start->robber, g.start->cops);
        })
        .def_property_readonly("border_targets", [](const GuardInstance& g) { return border_targets(g.graph); })
        .def("__eq__", [](const GuardInstance& a, const GuardInstance& b) { return a == b; })
        .def("__repr__", [](const GuardInstance& g) {
            return "<GuardInstance n=" + std::to_string(g.graph.size()) + " c=" + std::to_string(g.cops) + ">";
        });

    m.def(
        "solve",
        [](const GuardInstance& inst, unsigned workers, std::optional<std::uint64_t> max_states) {
            const auto o = options(workers, max_states);
            py::dict d;
            if (inst.start) {
                const auto r = solve_psp(inst, o);
                d["winner"] = to_string(r.winner);
                d["reachable"] = r.stats.reachable;
                d["iterations"] = r.stats.iterations;
            } else {
                const auto r = solve_full(inst, o);
                d["winner"] = to_string(r.result.winner);
                d["reachable"] = r.result.stats.reachable;
                d["iterations"] = r.result.stats.iterations;
                d["robber_placement"] = r.robber_placement ? py::cast(*r.robber_placement) : py::none();
            }
            return d;
        },
        py::arg("instance"), py::arg("workers") = 1, py::arg("max_states") = py::none(),
        "Winner of the game: prescribed start if present, otherwise with placement turns.");

    m.def(
        "min_cops",
        [](const GuardInstance& inst, std::optional<std::size_t> cap) { return min_cops(inst.graph, cap); },
        py::arg("instance"), py::arg("cap") = py::none());

    m.def(
        "forward_oracle",
        [](const GuardInstance& inst, std::optional<std::uint64_t> ply_bound) {
            return to_string(forward_oracle(inst, ply_bound.value_or(default_ply_bound(inst))));
        },
        py::arg("instance"), py::arg("ply_bound") = py::none());

    py::class_<FormulaGameInstance>(m, "FormulaGame")
        .def_static("parse", &parse_formula_game, py::arg("text"))
        .def("serialize", [](const FormulaGameInstance& f) { return serialize(f); })
        .def_readonly("rvars", &FormulaGameInstance::rvars)
        .def_readonly("cvars", &FormulaGameInstance::cvars)
        .def_property_readonly("first", [](const FormulaGameInstance& f) { return static_cast<int>(f.first); });

    m.def(
        "solve_formula_game",
        [](const FormulaGameInstance& f) { return static_cast<int>(solve_formula_game(f)); }, py::arg("game"),
        "1 if player I wins, 2 otherwise.");

    m.def(
        "compile",
        [](const FormulaGameInstance& f, bool force, bool settle) {
            CompileOptions copts;
            copts.settle_initial_cop_win = settle;
            const auto cg = compile_psp(f, copts);
            py::dict counters;
            counters["vertices"] = cg.counters.vertices;
            counters["edges"] = cg.counters.edges;
            counters["cops"] = cg.counters.cops;
            if (!force) return py::make_tuple(cg.instance, index_text(cg.index), counters);
            const auto fg = force_start(cg);
            counters["border"] = fg.border;
            return py::make_tuple(fg.instance, index_text(*fg.index), counters);
        },
        py::arg("game"), py::arg("force_start") = false, py::arg("settle") = true,
        "Returns (instance, index text, counters).");

    m.def(
        "check_exhaustive_1x1",
        [](bool force, bool settle) {
            EquivalenceOptions o;
            o.check_forced = force;
            o.compile.settle_initial_cop_win = settle;
            return report_rows(check_exhaustive_1x1(o));
        },
        py::arg("force_start") = false, py::arg("settle") = true);

    m.def(
        "check_oracle_agreement",
        [](std::size_t count, std::uint64_t seed) { return report_rows(check_oracle_agreement(count, seed)); },
        py::arg("count"), py::arg("seed"));

    m.def(
        "check_gadget_lemmas",
        [](const GuardInstance& inst, const std::string& index) {
            return report_rows(check_gadget_lemmas(inst, GadgetIndex::parse(index)));
        },
        py::arg("instance"), py::arg("index"));
}
