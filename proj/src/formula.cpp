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

#include "guardlab/formula.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "guardlab/error.hpp"
#include "text_util.hpp"

namespace guardlab {

std::string to_string(Player p) { return p == Player::I ? "I" : "II"; }

bool eval_formula(const Formula& f, const Assignment& alpha)
{
    return std::any_of(f.begin(), f.end(), [&](const Clause& clause) {
        return std::all_of(clause.begin(), clause.end(),
                           [&](const Literal& l) { return alpha.at(l.var) == l.positive; });
    });
}

std::vector<FormulaGameState> legal_moves(const FormulaGameState& s, const FormulaGameInstance& inst)
{
    const bool first = s.to_move == Player::I;
    const Formula& opponent = first ? inst.cop_formula : inst.robber_formula;
    if (eval_formula(opponent, s.alpha)) return {};

    const Player next = first ? Player::II : Player::I;
    const std::size_t lo = first ? 0 : inst.rvars.size();
    const std::size_t hi = first ? inst.rvars.size() : inst.variable_count();
    std::vector<FormulaGameState> moves;
    moves.push_back(FormulaGameState{s.alpha, next, s.to_move});
    for (std::size_t v = lo; v < hi; ++v) {
        FormulaGameState m{s.alpha, next, s.to_move};
        m.alpha[v] = !m.alpha[v];
        moves.push_back(std::move(m));
    }
    return moves;
}

namespace {

struct ClauseMask {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
};

std::vector<std::uint8_t> truth_table(const Formula& f, std::size_t vars)
{
    std::vector<ClauseMask> masks;
    for (const auto& clause : f) {
        ClauseMask m;
        for (const auto& l : clause) (l.positive ? m.pos : m.neg) |= std::uint32_t{1} << l.var;
        masks.push_back(m);
    }
    std::vector<std::uint8_t> table(std::size_t{1} << vars, 0);
    for (std::uint32_t a = 0; a < table.size(); ++a)
        table[a] = std::any_of(masks.begin(), masks.end(),
                               [a](const ClauseMask& m) { return (a & m.pos) == m.pos && (a & m.neg) == 0; });
    return table;
}

} // namespace

Player solve_formula_game(const FormulaGameInstance& inst, std::size_t max_variables)
{
    if (auto v = validate(inst); !v.empty()) throw InputError(v.front());
    const std::size_t p = inst.variable_count();
    if (p > max_variables || p > 31)
        throw ResourceError("formula game has " + std::to_string(p) + " variables, limit is " +
                            std::to_string(std::min<std::size_t>(max_variables, 31)));

    const std::uint32_t assignments = std::uint32_t{1} << p;
    const std::size_t nr = inst.rvars.size();
    const auto fr = truth_table(inst.robber_formula, p);
    const auto fc = truth_table(inst.cop_formula, p);

    // State a         : player I to move under assignment a (terminal II-win if F_C(a)).
    // State a + 2^p   : player II to move under a (terminal I-win if F_R(a)).
    std::vector<std::uint8_t> win(std::size_t{2} * assignments, 0);
    std::vector<std::uint8_t> remaining(assignments, static_cast<std::uint8_t>(1 + inst.cvars.size()));
    std::deque<std::uint32_t> queue;
    for (std::uint32_t a = 0; a < assignments; ++a) {
        if (fr[a]) {
            win[assignments + a] = 1;
            queue.push_back(assignments + a);
        }
    }

    while (!queue.empty()) {
        const std::uint32_t s = queue.front();
        queue.pop_front();
        if (s >= assignments) {
            // Won II-to-move state; player I reaches it from a or a with one R bit flipped.
            const std::uint32_t a = s - assignments;
            for (std::size_t v = 0; v <= nr; ++v) {
                const std::uint32_t b = v == nr ? a : a ^ (std::uint32_t{1} << v);
                if (fc[b] || win[b]) continue;
                win[b] = 1;
                queue.push_back(b);
            }
        } else {
            for (std::size_t v = nr; v <= p; ++v) {
                const std::uint32_t b = v == p ? s : s ^ (std::uint32_t{1} << v);
                if (fr[b] || win[assignments + b]) continue;
                if (--remaining[b] == 0) {
                    win[assignments + b] = 1;
                    queue.push_back(assignments + b);
                }
            }
        }
    }

    std::uint32_t a0 = 0;
    for (std::size_t v = 0; v < p; ++v)
        if (inst.initial[v]) a0 |= std::uint32_t{1} << v;
    const std::uint32_t start = inst.first == Player::I ? a0 : assignments + a0;
    return win[start] ? Player::I : Player::II;
}

namespace {

bool valid_name(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
    });
}

} // namespace

std::vector<std::string> validate(const FormulaGameInstance& inst)
{
    std::vector<std::string> out;
    std::unordered_map<std::string, int> seen;
    for (std::size_t v = 0; v < inst.variable_count(); ++v) {
        const auto& name = inst.name(v);
        if (!valid_name(name)) out.push_back("invalid variable name '" + name + "'");
        if (seen[name]++ == 1) out.push_back("variable '" + name + "' declared twice");
    }
    if (inst.initial.size() != inst.variable_count())
        out.push_back("initial assignment covers " + std::to_string(inst.initial.size()) + " of " +
                      std::to_string(inst.variable_count()) + " variables");
    auto check = [&](const Formula& f, const char* which) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i].empty() || f[i].size() > kMaxClauseLength)
                out.push_back(std::string(which) + " clause " + std::to_string(i) + " has " +
                              std::to_string(f[i].size()) + " literals (allowed 1.." +
                              std::to_string(kMaxClauseLength) + ")");
            for (const auto& l : f[i])
                if (l.var >= inst.variable_count())
                    out.push_back(std::string(which) + " clause " + std::to_string(i) + " references variable " +
                                  std::to_string(l.var) + " out of range");
        }
    };
    check(inst.robber_formula, "rclause");
    check(inst.cop_formula, "cclause");
    return out;
}

FormulaGameInstance parse_formula_game(std::string_view text)
{
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines.front().tokens.size() != 2 || lines.front().tokens[0] != "%formulagame" ||
        lines.front().tokens[1] != "1")
        throw ParseError(lines.empty() ? 1 : lines.front().number, "expected header '%formulagame 1'");

    FormulaGameInstance inst;
    std::vector<std::pair<std::string, bool>> rnames, cnames; // collected before indices are fixed
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::optional<bool>> assigned;
    std::optional<std::size_t> turn_line;
    bool frozen = false; // variable lists are closed once assign/clauses appear

    auto freeze = [&] {
        if (frozen) return;
        frozen = true;
        for (std::size_t v = 0; v < inst.variable_count(); ++v) index.emplace(inst.name(v), v);
        assigned.assign(inst.variable_count(), std::nullopt);
    };
    auto declare = [&](std::vector<std::string>& into, std::string_view name, std::size_t line) {
        if (frozen) throw ParseError(line, "variables must be declared before assignments and clauses");
        if (!valid_name(name)) throw ParseError(line, "invalid variable name '" + std::string(name) + "'");
        const std::string s(name);
        if (std::find(inst.rvars.begin(), inst.rvars.end(), s) != inst.rvars.end() ||
            std::find(inst.cvars.begin(), inst.cvars.end(), s) != inst.cvars.end())
            throw ParseError(line, "variable '" + s + "' declared twice");
        into.push_back(s);
    };
    auto lookup = [&](std::string_view name, std::size_t line) {
        auto it = index.find(std::string(name));
        if (it == index.end()) throw ParseError(line, "undeclared variable '" + std::string(name) + "'");
        return it->second;
    };
    auto clause = [&](const detail::Line& l) {
        freeze();
        if (l.tokens.size() < 2) throw ParseError(l.number, "empty clause");
        if (l.tokens.size() - 1 > kMaxClauseLength)
            throw ParseError(l.number, "clause has " + std::to_string(l.tokens.size() - 1) +
                                           " literals, at most " + std::to_string(kMaxClauseLength) + " allowed");
        Clause c;
        for (std::size_t j = 1; j < l.tokens.size(); ++j) {
            auto tok = l.tokens[j];
            const bool negated = tok.starts_with('!');
            if (negated) tok.remove_prefix(1);
            c.push_back(Literal{lookup(tok, l.number), !negated});
        }
        return c;
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto& kw = l.tokens[0];
        if (kw == "turn") {
            if (turn_line) throw ParseError(l.number, "duplicate 'turn' directive");
            turn_line = l.number;
            if (l.tokens.size() != 2 || (l.tokens[1] != "1" && l.tokens[1] != "2"))
                throw ParseError(l.number, "usage: turn <1|2>");
            inst.first = l.tokens[1] == "1" ? Player::I : Player::II;
        } else if (kw == "rvars") {
            for (std::size_t j = 1; j < l.tokens.size(); ++j) declare(inst.rvars, l.tokens[j], l.number);
        } else if (kw == "cvars") {
            for (std::size_t j = 1; j < l.tokens.size(); ++j) declare(inst.cvars, l.tokens[j], l.number);
        } else if (kw == "assign") {
            freeze();
            for (std::size_t j = 1; j < l.tokens.size(); ++j) {
                const auto tok = l.tokens[j];
                const auto eq = tok.find('=');
                if (eq == std::string_view::npos || eq + 2 != tok.size() || (tok[eq + 1] != '0' && tok[eq + 1] != '1'))
                    throw ParseError(l.number, "expected <name>=<0|1>, got '" + std::string(tok) + "'");
                const auto v = lookup(tok.substr(0, eq), l.number);
                if (assigned[v]) throw ParseError(l.number, "variable '" + inst.name(v) + "' assigned twice");
                assigned[v] = tok[eq + 1] == '1';
            }
        } else if (kw == "rclause") {
            inst.robber_formula.push_back(clause(l));
        } else if (kw == "cclause") {
            inst.cop_formula.push_back(clause(l));
        } else {
            throw ParseError(l.number, "unknown directive '" + std::string(kw) + "'");
        }
    }

    const std::size_t last = lines.back().number;
    if (!turn_line) throw ParseError(last, "missing 'turn' directive");
    freeze();
    for (std::size_t v = 0; v < inst.variable_count(); ++v) {
        if (!assigned[v]) throw ParseError(last, "variable '" + inst.name(v) + "' has no initial value");
        inst.initial.push_back(*assigned[v]);
    }
    return inst;
}

std::string serialize(const FormulaGameInstance& inst)
{
    std::ostringstream os;
    os << "%formulagame 1\n";
    os << "turn " << (inst.first == Player::I ? 1 : 2) << '\n';
    os << "rvars";
    for (const auto& v : inst.rvars) os << ' ' << v;
    os << "\ncvars";
    for (const auto& v : inst.cvars) os << ' ' << v;
    os << "\nassign";
    for (std::size_t v = 0; v < inst.variable_count(); ++v) os << ' ' << inst.name(v) << '=' << (inst.initial[v] ? 1 : 0);
    os << '\n';
    auto clauses = [&](const Formula& f, const char* kw) {
        for (const auto& c : f) {
            os << kw;
            for (const auto& l : c) os << ' ' << (l.positive ? "" : "!") << inst.name(l.var);
            os << '\n';
        }
    };
    clauses(inst.robber_formula, "rclause");
    clauses(inst.cop_formula, "cclause");
    return os.str();
}

} // namespace guardlab
