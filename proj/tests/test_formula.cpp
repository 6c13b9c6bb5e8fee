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

#include <gtest/gtest.h>

#include <random>

#include "guardlab/error.hpp"
#include "guardlab/formula.hpp"

using namespace guardlab;

namespace {

FormulaGameInstance game(std::vector<std::string> r, std::vector<std::string> c, Formula fr, Formula fc,
                         Assignment a, Player first = Player::I)
{
    return FormulaGameInstance{std::move(r), std::move(c), std::move(fr), std::move(fc), std::move(a), first};
}

// Value iteration over (player to move, assignment): the player to move loses
// at once if the opponent's formula holds; I wins the least fixpoint.
Player oracle(const FormulaGameInstance& f)
{
    const std::size_t p = f.variable_count();
    const std::size_t states = std::size_t{1} << p;
    std::vector<bool> win_i(2 * states, false), done(2 * states, false); // [side*states + bits]
    auto assignment = [&](std::size_t bits) {
        Assignment a(p);
        for (std::size_t v = 0; v < p; ++v) a[v] = (bits >> v) & 1;
        return a;
    };
    for (std::size_t bits = 0; bits < states; ++bits) {
        const auto a = assignment(bits);
        if (eval_formula(f.cop_formula, a)) done[bits] = true;                  // I to move, II has won
        if (eval_formula(f.robber_formula, a)) done[states + bits] = win_i[states + bits] = true;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t side = 0; side < 2; ++side)
            for (std::size_t bits = 0; bits < states; ++bits) {
                const std::size_t s = side * states + bits;
                if (done[s]) continue;
                std::vector<std::size_t> next{bits};
                for (std::size_t v = 0; v < p; ++v)
                    if (f.is_robber_variable(v) == (side == 0)) next.push_back(bits ^ (std::size_t{1} << v));
                const std::size_t other = (1 - side) * states;
                bool value = side != 0;
                for (auto nb : next) {
                    if (side == 0) value = value || win_i[other + nb];
                    else value = value && win_i[other + nb];
                }
                if (value) {
                    win_i[s] = done[s] = changed = true;
                }
            }
    }
    std::size_t start = 0;
    for (std::size_t v = 0; v < p; ++v) start |= std::size_t{f.initial[v]} << v;
    return win_i[(f.first == Player::I ? 0 : states) + start] ? Player::I : Player::II;
}

FormulaGameInstance random_game(std::mt19937_64& rng, std::size_t max_vars)
{
    std::uniform_int_distribution<std::size_t> nv(1, max_vars);
    FormulaGameInstance f;
    const std::size_t p = nv(rng);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, p)(rng);
    for (std::size_t i = 0; i < r; ++i) f.rvars.push_back("y" + std::to_string(i));
    for (std::size_t i = r; i < p; ++i) f.cvars.push_back("x" + std::to_string(i));
    auto formula = [&] {
        Formula out(std::uniform_int_distribution<std::size_t>(0, 3)(rng));
        for (auto& c : out) {
            c.resize(std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(p, 3))(rng));
            for (auto& l : c) l = Literal{std::uniform_int_distribution<std::size_t>(0, p - 1)(rng), rng() % 2 == 0};
        }
        return out;
    };
    f.robber_formula = formula();
    f.cop_formula = formula();
    for (std::size_t v = 0; v < p; ++v) f.initial.push_back(rng() % 2 == 0);
    f.first = rng() % 2 ? Player::I : Player::II;
    return f;
}

} // namespace

TEST(Eval, Examples)
{
    EXPECT_TRUE(eval_formula({{Literal{0, true}}}, {true}));
    EXPECT_FALSE(eval_formula({{Literal{0, true}, Literal{0, false}}}, {true}));
    EXPECT_FALSE(eval_formula({{Literal{0, true}, Literal{0, false}}}, {false}));
    EXPECT_FALSE(eval_formula({}, {true}));
    // (!x1 & x3 & x4 & !x6 & !x7) over x1..x7 at indices 0..6
    const Clause c{{0, false}, {2, true}, {3, true}, {5, false}, {6, false}};
    EXPECT_TRUE(eval_formula({c}, {false, true, true, true, false, false, false}));
    EXPECT_FALSE(eval_formula({c}, {true, true, true, true, false, false, false}));
}

TEST(LegalMoves, Examples)
{
    const auto f = game({"y"}, {"x"}, {{Literal{0, true}}}, {{Literal{1, true}}}, {false, false});
    FormulaGameState s{f.initial, Player::I, std::nullopt};
    EXPECT_EQ(legal_moves(s, f).size(), 2u);

    const auto stuck = game({"y"}, {"x"}, {{Literal{0, true}}}, {{Literal{1, false}}}, {false, false});
    EXPECT_TRUE(legal_moves(FormulaGameState{stuck.initial, Player::I, std::nullopt}, stuck).empty());

    const auto three = game({"y"}, {"a", "b", "c"}, {{Literal{0, true}}}, {}, {false, false, false, false}, Player::II);
    const auto moves = legal_moves(FormulaGameState{three.initial, Player::II, std::nullopt}, three);
    ASSERT_EQ(moves.size(), 4u);
    EXPECT_EQ(moves[0].alpha, three.initial); // pass first
    for (const auto& m : moves) {
        EXPECT_EQ(m.to_move, Player::I);
        EXPECT_EQ(m.last_mover, Player::II);
    }
}

TEST(Solve, OneMoveWin)
{
    EXPECT_EQ(solve_formula_game(game({"y"}, {"x"}, {{Literal{0, true}}}, {{Literal{1, true}}}, {false, false})),
              Player::I);
}

TEST(Solve, StuckPlayerLoses)
{
    EXPECT_EQ(solve_formula_game(game({"y"}, {"x"}, {{Literal{0, true}}}, {{Literal{1, false}}}, {false, false})),
              Player::II);
}

TEST(Solve, EightStateGame)
{
    const auto f = game({"y"}, {"x"}, {{Literal{0, true}, Literal{1, true}}}, {{Literal{1, true}, Literal{0, false}}},
                        {false, false});
    EXPECT_EQ(solve_formula_game(f), oracle(f));
}

TEST(Solve, EmptyFormulasDrawToPlayerII)
{
    EXPECT_EQ(solve_formula_game(game({"y"}, {"x"}, {}, {}, {false, false})), Player::II);
}

TEST(Solve, MatchesValueIterationProperty)
{
    std::mt19937_64 rng(31);
    std::size_t wins_i = 0;
    for (int i = 0; i < 1500; ++i) {
        const auto f = random_game(rng, 5);
        const auto got = solve_formula_game(f);
        EXPECT_EQ(got, oracle(f)) << serialize(f);
        wins_i += got == Player::I;
    }
    EXPECT_GT(wins_i, 100u);
    EXPECT_LT(wins_i, 1400u);
}

TEST(Solve, VariableLimit)
{
    FormulaGameInstance f;
    for (int i = 0; i < 5; ++i) f.cvars.push_back("x" + std::to_string(i));
    f.initial.assign(5, false);
    EXPECT_THROW(solve_formula_game(f, 4), ResourceError);
    EXPECT_NO_THROW(solve_formula_game(f, 5));
}

TEST(Validate, Violations)
{
    auto f = game({"y"}, {"y"}, {}, {}, {false, false});
    EXPECT_FALSE(validate(f).empty());
    f = game({"y"}, {"x"}, {{Literal{5, true}}}, {}, {false, false});
    EXPECT_FALSE(validate(f).empty());
    f = game({"y"}, {"x"}, {{}}, {}, {false, false});
    EXPECT_FALSE(validate(f).empty());
    f = game({"y"}, {"x"}, {Clause(13, Literal{0, true})}, {}, {false, false});
    EXPECT_FALSE(validate(f).empty());
    f = game({"y"}, {"x"}, {}, {}, {false});
    EXPECT_FALSE(validate(f).empty());
    f = game({"y"}, {"x"}, {Clause(12, Literal{0, true})}, {}, {false, false});
    EXPECT_TRUE(validate(f).empty());
}

TEST(Parse, Example)
{
    const auto f = parse_formula_game("%formulagame 1\nturn 1\nrvars y\ncvars x\nassign y=0 x=1\n"
                                      "rclause y !x\ncclause x\n");
    EXPECT_EQ(f.rvars, std::vector<std::string>{"y"});
    EXPECT_EQ(f.cvars, std::vector<std::string>{"x"});
    EXPECT_EQ(f.initial, (Assignment{false, true}));
    ASSERT_EQ(f.robber_formula.size(), 1u);
    EXPECT_EQ(f.robber_formula[0], (Clause{{0, true}, {1, false}}));
    EXPECT_EQ(f.cop_formula[0], (Clause{{1, true}}));
    EXPECT_EQ(f.first, Player::I);
}

TEST(Parse, ErrorLines)
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_formula_game(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    const std::string head = "%formulagame 1\nturn 1\nrvars y\ncvars x\n";
    EXPECT_EQ(line_of("turn 1\n"), 1u);
    EXPECT_EQ(line_of(head + "assign y=0 x=2\n"), 5u);
    EXPECT_EQ(line_of(head + "assign y=0 x=0\nrclause z\n"), 6u);
    EXPECT_EQ(line_of(head + "assign y=0 x=0\nrclause\n"), 6u);
    EXPECT_EQ(line_of(head + "assign y=0\n"), 5u);
    EXPECT_EQ(line_of(head + "assign y=0 x=0\ncvars w\n"), 6u);
    EXPECT_EQ(line_of(head + "assign y=0 x=0\nrclause y y y y y y y y y y y y y\n"), 6u);
    EXPECT_EQ(line_of("%formulagame 1\nturn 3\n"), 2u);
    EXPECT_EQ(line_of("%formulagame 1\nturn 1\nrvars y\ncvars y\n"), 4u);
    EXPECT_EQ(line_of("%formulagame 1\nturn 1\nrvars y-1\n"), 3u);
}

TEST(Serialize, RoundTripProperty)
{
    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        const auto f = random_game(rng, 6);
        const auto text = serialize(f);
        EXPECT_EQ(parse_formula_game(text), f) << text;
    }
}
