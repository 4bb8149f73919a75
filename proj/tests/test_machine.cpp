#include <doctest.h>

#include <set>

#include "dode/errors.hpp"
#include "dode/machine.hpp"
#include "dode/selftest.hpp"

using namespace dode;

namespace {

std::vector<Word> words_up_to(std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int d : {1, 3}) {
                Word w = out[i];
                w.push_back(d);
                out.push_back(w);
            }
        begin = end;
    }
    return out;
}

// steps whose selected rule stays on the paper's guaranteed zone
void check_clean_run(const TMSpec& spec, const Word& input, long long steps) {
    Configuration c = initial_config(spec, input);
    for (long long t = 0; t < steps; ++t) {
        CHECK((c.right.empty() || c.right.front() != 0));
        int r0 = c.right.empty() ? 0 : c.right.front();
        TMRule rule = spec.rule(c.state, r0);
        if (rule.move == Move::L)
            CHECK((c.left.empty() ? (r0 == 0 && rule.write == 0 && c.right.empty())
                                  : c.left.front() != 0));
        c = tm_step_direct(spec, c);
    }
}

} // namespace

TEST_CASE("word encodings") {
    CHECK(gamma_word(word_from_string("1")) == Dyadic(Int(1), 2));
    CHECK(gamma_word(word_from_string("13")) == Dyadic(Int(7), 4));
    CHECK(gamma_word({}) == Dyadic(0));
    CHECK_THROWS_AS(word_from_string("12"), BadSymbol);
    CHECK_THROWS_AS(gamma_word({2}), BadSymbol);

    CHECK(gamma_word_inv(Dyadic(Int(1), 2)) == word_from_string("1"));
    CHECK(gamma_word_inv(Dyadic(Int(7), 4)) == word_from_string("13"));
    CHECK_THROWS_AS(gamma_word_inv(Dyadic(Int(1), 1)), NotInImage); // digit 2
    CHECK_THROWS_AS(gamma_word_inv(Dyadic(2)), NotInImage);

    // injective over all words up to length 6, and inverted exactly
    std::set<std::string> seen;
    for (const auto& w : words_up_to(6)) {
        Dyadic enc = gamma_word(w);
        CHECK(seen.insert(enc.str()).second);
        CHECK(gamma_word_inv(enc) == w);
    }
}

TEST_CASE("direct step semantics") {
    TMSpec one(2, 0);
    one.set_rule(0, 1, {1, 3, Move::R});
    Configuration c{0, {}, word_from_string("1")};
    Configuration next = tm_step_direct(one, c);
    CHECK(next == Configuration{1, word_from_string("3"), {}});

    // blank-reading walk on an empty tape stays put modulo trimming
    TMSpec walker(1, 0);
    walker.set_rule(0, 0, {0, 0, Move::R});
    Configuration empty{0, {}, {}};
    CHECK(tm_step_direct(walker, empty) == empty);

    // default rules park period-2 on the content boundary
    TMSpec bare(1, 0);
    Configuration parked{0, word_from_string("31"), {}};
    CHECK(tm_step_direct(bare, tm_step_direct(bare, parked)) == parked);
}

TEST_CASE("compiled step on the single-rule example") {
    TMSpec one(2, 0);
    one.set_rule(0, 1, {1, 3, Move::R});
    std::vector<Expr> next = compile_next(one);
    Env env{{"q", Dyadic(0)}, {"l", Dyadic(0)}, {"r", Dyadic(Int(1), 2)}};
    std::vector<Dyadic> out = eval_exprs(next, env);
    CHECK(out[0] == Dyadic(1));
    CHECK(out[1] == Dyadic(Int(3), 2)); // l' = 0/4 + 3/4
    CHECK(out[2] == Dyadic(0));

    // rhs of the exec system is essentially linear by construction
    LLODESystem exec = compile_exec(one);
    for (const auto& row : exec.decomposition().A)
        for (const auto& entry : row)
            CHECK(is_essentially_constant(entry, {"f0", "f1", "f2"}));
}

TEST_CASE("compiled step equals the simulator exhaustively") {
    auto words = words_up_to(3);
    for (const TMSpec& spec : {fixture_identity(), fixture_successor(), fixture_scanner(),
                               fixture_const_half()}) {
        std::vector<Expr> next = compile_next(spec);
        for (int q = 0; q < spec.num_states(); ++q)
            for (const auto& l : words)
                for (const auto& r : words) {
                    Configuration c{q, l, r};
                    EncodedConfig enc = gamma_config(c);
                    Env env{{"q", enc.q}, {"l", enc.lbar}, {"r", enc.rbar}};
                    auto stepped = eval_exprs(next, env);
                    EncodedConfig want = gamma_config(tm_step_direct(spec, c));
                    REQUIRE(stepped[0] == want.q);
                    REQUIRE(stepped[1] == want.lbar);
                    REQUIRE(stepped[2] == want.rbar);
                }
    }
}

TEST_CASE("exec runs match direct runs") {
    for (const TMSpec& spec :
         {fixture_identity(), fixture_successor(), fixture_scanner(), fixture_const_half(),
          fixture_const_five_half()}) {
        LLODESystem exec = compile_exec(spec);
        for (const auto& w : words_up_to(3)) {
            check_clean_run(spec, w, 24);
            EncodedConfig c0 = gamma_config(initial_config(spec, w));
            Configuration direct = initial_config(spec, w);
            for (long long t = 0; t <= 8; ++t) {
                auto got = solve_iterative(exec, pow2(t), {c0.q, c0.lbar, c0.rbar});
                EncodedConfig want = gamma_config(direct);
                REQUIRE(got[0] == want.q);
                REQUIRE(got[1] == want.lbar);
                REQUIRE(got[2] == want.rbar);
                direct = tm_step_direct(spec, direct);
            }
        }
    }
}

TEST_CASE("exec at clock zero returns the configuration") {
    TMSpec spec = fixture_successor();
    LLODESystem exec = compile_exec(spec);
    EncodedConfig c0 = gamma_config(initial_config(spec, word_from_string("31")));
    auto got = solve_iterative(exec, 0, {c0.q, c0.lbar, c0.rbar});
    CHECK(got == std::vector<Dyadic>{c0.q, c0.lbar, c0.rbar});
}

TEST_CASE("run_compiled and the direct oracle") {
    // the identity machine preserves its input at every even clock
    TMSpec id = fixture_identity();
    for (const auto& w : words_up_to(6)) {
        RunResult r = run_compiled(id, w, 4);
        REQUIRE(r.output.has_value());
        CHECK(*r.output == w);
    }
    RunResult zero = run_compiled(id, word_from_string("13"), 0);
    CHECK(zero.config == gamma_config(initial_config(id, word_from_string("13"))));

    // successor: 13 codes 2, halting tape reads 33 which codes 3
    TMSpec succ = fixture_successor();
    Configuration c = tm_run_direct(succ, word_from_string("13"), 2);
    CHECK(tape_word(c) == word_from_string("33"));
    for (long long t = 2; t <= 10; t += 2) // stable once parked
        CHECK(tape_word(tm_run_direct(succ, word_from_string("13"), t)) ==
              word_from_string("33"));
    CHECK(tape_word(tm_run_direct(succ, word_from_string("33"), 20)) ==
          word_from_string("113"));
    CHECK(tape_word(tm_run_direct(succ, {}, 20)) == word_from_string("3"));
    CHECK(tm_run_direct(succ, word_from_string("13"), 0) ==
          initial_config(succ, word_from_string("13")));

    // encoded components stay inside their ranges along compiled runs
    LLODESystem exec = compile_exec(succ);
    EncodedConfig c0 = gamma_config(initial_config(succ, word_from_string("1313")));
    for (long long t = 0; t <= 10; ++t) {
        auto got = solve_iterative(exec, pow2(t), {c0.q, c0.lbar, c0.rbar});
        CHECK(!got[0].is_negative());
        CHECK(got[0] <= Dyadic(succ.num_states() - 1));
        for (int i : {1, 2}) {
            CHECK(!got[i].is_negative());
            CHECK(got[i] < Dyadic(1));
        }
    }
}

TEST_CASE("spec files parse and print") {
    TMSpec succ = fixture_successor();
    TMSpec reparsed = TMSpec::parse(succ.str());
    CHECK(reparsed.str() == succ.str());
    CHECK(reparsed.accepting() == succ.accepting());

    CHECK_THROWS_WITH_AS(TMSpec::parse("states 2\ninitial 0\n0 1 -> 1 3\n"),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_AS(TMSpec::parse("initial 0\n"), ParseError);
    CHECK_THROWS_AS(TMSpec::parse("states 1\ninitial 0\n0 2 -> 0 1 R\n"), ParseError);

    // the shipped fixture files stay in sync with the builders
    auto path = [](const char* name) { return std::string(DODE_FIXTURE_DIR) + "/" + name; };
    CHECK(TMSpec::parse_file(path("identity.tm")).str() == fixture_identity().str());
    CHECK(TMSpec::parse_file(path("successor.tm")).str() == fixture_successor().str());
    CHECK(TMSpec::parse_file(path("scanner.tm")).str() == fixture_scanner().str());
    CHECK(TMSpec::parse_file(path("const_half.tm")).str() == fixture_const_half().str());
    CHECK(TMSpec::parse_file(path("const_five_half.tm")).str() == fixture_const_five_half().str());

    // a machine with an unreachable state still compiles (default halt)
    TMSpec holes(3, 0);
    holes.set_rule(0, 1, {2, 3, Move::R});
    CHECK(compile_next(holes).size() == 3);
}

TEST_CASE("scanner flips its word") {
    TMSpec scan = fixture_scanner();
    CHECK(tape_word(tm_run_direct(scan, word_from_string("13"), 10)) == word_from_string("31"));
    CHECK(tape_word(tm_run_direct(scan, word_from_string("1133"), 12)) ==
          word_from_string("3311"));
}
