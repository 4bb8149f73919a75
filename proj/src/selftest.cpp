#include "dode/selftest.hpp"

#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "dode/algebra.hpp"
#include "dode/calculus.hpp"
#include "dode/codec.hpp"
#include "dode/errors.hpp"

namespace dode {

namespace {

using Rng = std::mt19937_64;

Dyadic random_dyadic(Rng& rng, long mant_bound, std::int64_t max_exp) {
    std::uniform_int_distribution<long> m(-mant_bound, mant_bound);
    std::uniform_int_distribution<std::int64_t> e(0, max_exp);
    return Dyadic(Int(m(rng)), e(rng));
}

Expr dyadic_const_expr(const Dyadic& d) {
    Expr e = Expr::integer(d.mantissa());
    for (std::int64_t k = 0; k < d.exponent(); ++k) e = Expr::div2(e);
    return e;
}

/// Random system with essentially-linear rhs over constant dyadic
/// coefficients (exponent <= 4, |mantissa| <= 15).
LLODESystem random_linear_system(Rng& rng, std::size_t dim) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::vector<Expr> init, rhs;
    for (std::size_t i = 0; i < dim; ++i) {
        init.push_back(dyadic_const_expr(random_dyadic(rng, 15, 4)));
        Expr acc = dyadic_const_expr(random_dyadic(rng, 15, 4));
        for (std::size_t j = 0; j < dim; ++j) {
            if (coin(rng) == 0) continue; // sparse
            Expr c = dyadic_const_expr(random_dyadic(rng, 15, 4));
            acc = acc + Expr::mul(c, Expr::var("f" + std::to_string(j)));
        }
        rhs.push_back(acc);
    }
    return LLODESystem(std::move(init), std::move(rhs), {});
}

std::string show(const std::vector<Dyadic>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

// ------------------------------------------------------------- criteria

SuiteResult suite_closed_form(Rng& rng) {
    SuiteResult res{"closed-form-vs-iterative", true, ""};
    std::uniform_int_distribution<std::size_t> dim_d(1, 3);
    std::uniform_int_distribution<long> x_d(0, 31);
    for (int trial = 0; trial < 100 && res.pass; ++trial) {
        LLODESystem sys = random_linear_system(rng, dim_d(rng));
        Int x(x_d(rng));
        auto a = solve_iterative(sys, x);
        auto b = solve_explicit(sys, x);
        if (a != b) {
            res.pass = false;
            res.detail = "trial " + std::to_string(trial) + " at x=" + x.str() + ": iterative " +
                         show(a) + " != explicit " + show(b);
        }
    }
    if (res.pass) res.detail = "100 systems, exact equality";
    return res;
}

SuiteResult suite_calculus(Rng& rng) {
    SuiteResult res{"discrete-calculus-identities", true, ""};
    auto fail = [&](const std::string& d) {
        res.pass = false;
        if (res.detail.empty()) res.detail = d;
    };

    // fundamental theorem of finite calculus on random tabulated F
    {
        std::map<long long, Dyadic> table;
        for (long long x = -10; x <= 10; ++x) table[x] = random_dyadic(rng, 63, 4);
        TabFn F = [&](long long x, const std::vector<Dyadic>&) {
            return DyMat::scalar(table.at(x));
        };
        TabFn dF = [&](long long x, const std::vector<Dyadic>& p) { return delta(F, x, p); };
        std::uniform_int_distribution<long long> ab(-8, 8);
        for (int i = 0; i < 120; ++i) {
            long long a = ab(rng), b = ab(rng);
            DyMat lhs = discrete_integral(dF, a, b);
            Dyadic rhs = table.at(b) - table.at(a);
            if (lhs.at(0, 0) != rhs) fail("fundamental theorem failed at a=" +
                                          std::to_string(a) + " b=" + std::to_string(b));
        }
    }

    // falling power derivative
    for (unsigned m = 1; m <= 6; ++m)
        for (long x = 0; x <= 20; ++x) {
            Int lhs = falling_power(Int(x + 1), m) - falling_power(Int(x), m);
            Int rhs = Int(m) * falling_power(Int(x), m - 1);
            if (lhs != rhs) fail("falling power derivative failed at m=" + std::to_string(m));
        }

    // falling exponential derivative, random integer matrix U
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<std::size_t> nd(1, 3);
        std::size_t n = nd(rng);
        std::uniform_int_distribution<long> entry(-3, 3);
        std::vector<DyMat> table;
        for (int t = 0; t <= 12; ++t) {
            DyMat u(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) u.at(i, j) = Dyadic(Int(entry(rng)));
            table.push_back(u);
        }
        TabFn U = [&](long long x, const std::vector<Dyadic>&) {
            return table.at(static_cast<std::size_t>(x));
        };
        for (long long x = 0; x <= 10; ++x) {
            DyMat lhs = falling_exp(U, x + 1) - falling_exp(U, x);
            DyMat rhs = delta(U, x) * falling_exp(U, x);
            if (lhs != rhs) fail("falling exponential derivative failed");
        }
    }

    // derivation of an integral with parameters (three-term formula)
    for (int trial = 0; trial < 15; ++trial) {
        std::map<long long, std::map<long long, Dyadic>> f;
        for (long long x = 0; x <= 9; ++x)
            for (long long t = -12; t <= 12; ++t) f[x][t] = random_dyadic(rng, 31, 3);
        std::uniform_int_distribution<long long> step(0, 1);
        std::uniform_int_distribution<long long> start(-4, 4);
        std::uniform_int_distribution<int> dir(0, 1);
        std::vector<long long> a(10), b(10);
        a[0] = start(rng);
        b[0] = start(rng);
        bool a_up = dir(rng), b_up = dir(rng);
        auto clamp8 = [](long long v) { return std::max<long long>(-8, std::min<long long>(8, v)); };
        for (int x = 1; x <= 9; ++x) {
            a[static_cast<std::size_t>(x)] =
                clamp8(a[static_cast<std::size_t>(x - 1)] + (a_up ? step(rng) : -step(rng)));
            b[static_cast<std::size_t>(x)] =
                clamp8(b[static_cast<std::size_t>(x - 1)] + (b_up ? step(rng) : -step(rng)));
        }
        auto F = [&](long long x) {
            TabFn ft = [&](long long t, const std::vector<Dyadic>&) {
                return DyMat::scalar(f.at(x).at(t));
            };
            return discrete_integral(ft, a[static_cast<std::size_t>(x)],
                                     b[static_cast<std::size_t>(x)]);
        };
        for (long long x = 0; x <= 8; ++x) {
            DyMat lhs = F(x + 1) - F(x);
            TabFn dfdx = [&](long long t, const std::vector<Dyadic>&) {
                return DyMat::scalar(f.at(x + 1).at(t) - f.at(x).at(t));
            };
            auto ax = a[static_cast<std::size_t>(x)], ax1 = a[static_cast<std::size_t>(x + 1)];
            auto bx = b[static_cast<std::size_t>(x)], bx1 = b[static_cast<std::size_t>(x + 1)];
            TabFn shift_a = [&](long long t, const std::vector<Dyadic>&) {
                return DyMat::scalar(f.at(x + 1).at(ax1 + t));
            };
            TabFn shift_b = [&](long long t, const std::vector<Dyadic>&) {
                return DyMat::scalar(f.at(x + 1).at(bx + t));
            };
            DyMat rhs = discrete_integral(dfdx, ax, bx) +
                        discrete_integral(shift_a, 0, ax - ax1) +
                        discrete_integral(shift_b, 0, bx1 - bx);
            if (lhs != rhs) fail("derivation-of-integral formula failed");
        }
    }

    if (res.pass) res.detail = "fundamental theorem, falling power/exponential, integral derivation";
    return res;
}

SuiteResult suite_tm(bool corrupt_unused) {
    (void)corrupt_unused;
    SuiteResult res{"tm-compilation", true, ""};
    auto fail = [&](const std::string& d) {
        res.pass = false;
        if (res.detail.empty()) res.detail = d;
    };

    std::vector<Word> words{{}};
    for (std::size_t len = 1; len <= 4; ++len) {
        std::vector<Word> next;
        for (const auto& w : words)
            if (w.size() == len - 1)
                for (int d : {1, 3}) {
                    Word e = w;
                    e.push_back(d);
                    next.push_back(e);
                }
        words.insert(words.end(), next.begin(), next.end());
    }

    for (const TMSpec& spec : {fixture_identity(), fixture_successor(), fixture_scanner()}) {
        std::vector<Expr> next = compile_next(spec);
        // one compiled step equals one direct step on every configuration
        for (int q = 0; q < spec.num_states() && res.pass; ++q)
            for (const auto& l : words)
                for (const auto& r : words) {
                    Configuration c{q, l, r};
                    EncodedConfig enc = gamma_config(c);
                    Env env{{"q", enc.q}, {"l", enc.lbar}, {"r", enc.rbar}};
                    std::vector<Dyadic> stepped = eval_exprs(next, env);
                    EncodedConfig expect = gamma_config(tm_step_direct(spec, c));
                    if (stepped[0] != expect.q || stepped[1] != expect.lbar ||
                        stepped[2] != expect.rbar) {
                        fail("compiled Next mismatch at state " + std::to_string(q) + ", l=" +
                             word_to_string(l) + ", r=" + word_to_string(r));
                        break;
                    }
                }
        if (!res.pass) break;

        // Exec at clock 2^t equals t direct steps from initial configurations
        LLODESystem exec = compile_exec(spec);
        for (const auto& w : words) {
            Configuration c = initial_config(spec, w);
            for (long long t = 0; t <= 6; ++t) {
                EncodedConfig expect = gamma_config(c);
                std::vector<Dyadic> got =
                    solve_iterative(exec, pow2(t), {Dyadic(spec.initial()),
                                                    Dyadic(0), gamma_word(w)});
                if (got[0] != expect.q || got[1] != expect.lbar || got[2] != expect.rbar) {
                    fail("Exec(2^" + std::to_string(t) + ") mismatch on input " +
                         word_to_string(w));
                    break;
                }
                // component bounds along the run
                if (expect.q.is_negative() || Dyadic(spec.num_states() - 1) < expect.q ||
                    expect.lbar.is_negative() || expect.lbar >= Dyadic(1) ||
                    expect.rbar.is_negative() || expect.rbar >= Dyadic(1))
                    fail("encoded configuration left its bounds");
                c = tm_step_direct(spec, c);
            }
            if (!res.pass) break;
        }
        if (!res.pass) break;
    }
    if (res.pass) res.detail = "3 fixtures: exhaustive step equivalence, Exec(2^t) = Next^t, t <= 6";
    return res;
}

SuiteResult suite_codec(Rng& rng, bool corrupt) {
    SuiteResult res{"codec-round-trip", true, ""};
    auto fail = [&](const std::string& d) {
        res.pass = false;
        if (res.detail.empty()) res.detail = d;
    };

    // paper worked example
    Word worked = word_from_string("13111333");
    Dyadic expect_worked(Int(corrupt ? 21 : 11), 1); // corrupt hook: pretend 10.5
    if (encode(pow2(8), gamma_word(worked)) != expect_worked)
        fail("worked example 13111333 did not encode to 5.5");
    if (word_of(Dyadic(Int(11), 1)) != worked) fail("word_of(5.5) != 13111333");

    // independent pair-scheme oracle: positional arithmetic on the word
    auto pair_oracle = [](const Word& w) {
        Dyadic int_part(0), frac_part(0), weight = Dyadic(1).half();
        for (std::size_t i = 0; i + 1 < w.size(); i += 2) {
            int bit = w[i + 1] == 3 ? 1 : 0;
            if (w[i] == 1) {
                int_part = int_part + int_part + Dyadic(bit);
            } else {
                if (bit) frac_part = frac_part + weight;
                weight = weight.half();
            }
        }
        return int_part + frac_part;
    };

    std::uniform_int_distribution<long> mant(0, 255);
    std::uniform_int_distribution<std::int64_t> expo(0, 6);
    for (int i = 0; i < 100 && res.pass; ++i) {
        Dyadic d(Int(mant(rng)), expo(rng));
        Word w = word_of(d);
        Dyadic back = encode(pow2(static_cast<std::int64_t>(w.size())), gamma_word(w));
        if (back != d) fail("encode(word_of(" + d.str() + ")) = " + back.str());
        if (pair_oracle(w) != d) fail("pair oracle disagrees at " + d.str());
    }

    std::set<std::string> seen;
    for (long n = 0; n < 1024 && res.pass; ++n) {
        Dyadic enc = decode(Int(n));
        if (!seen.insert(enc.str()).second) fail("decode not injective at " + std::to_string(n));
        Word w = gamma_word_inv(enc); // throws NotInImage off the image
        if (w != decode_word(Int(n))) fail("decode word mismatch at " + std::to_string(n));
    }

    if (res.pass) res.detail = "worked example 5.5, 100 round trips, decode injective on [0, 2^10)";
    return res;
}

SuiteResult suite_elim() {
    SuiteResult res{"effective-limits", true, ""};
    auto fail = [&](const std::string& d) {
        res.pass = false;
        if (res.detail.empty()) res.detail = d;
    };

    // geometric sum sums 4^-j up to len(x) terms; its limit is 1/3
    auto geo = std::make_shared<LLODESystem>(
        std::vector<Expr>{Expr::integer(0), Expr::div2(Expr::div2(Expr::integer(1)))},
        std::vector<Expr>{Expr::var("f1"),
                          Expr::integer(0) -
                              Expr::integer(3) * Expr::div2(Expr::div2(Expr::var("f1")))},
        std::vector<std::string>{});
    TermPtr third_inner = make_compose(make_proj(1, {Sort::R, Sort::R}), {make_llode(geo, {})});
    TermPtr third = make_elim(third_inner);

    auto close_to_third = [](const Dyadic& v, std::int64_t n) {
        Int diff = 3 * v.mantissa() - pow2(v.exponent());
        if (diff < 0) diff = -diff;
        return (diff << static_cast<unsigned>(n)) <= 3 * pow2(v.exponent());
    };

    for (std::int64_t n = 0; n <= 40; ++n) {
        Dyadic v = eval_approx(third, {}, n)[0];
        if (!close_to_third(v, n)) fail("elim missed 1/3 at n=" + std::to_string(n));
    }

    // the same construction through elimstar with the identity witness
    TermPtr third_star = make_elimstar(third_inner, {Int(0), Int(1)});
    for (std::int64_t n = 0; n <= 40; ++n) {
        Dyadic v = eval_elimstar(third_star, {}, n)[0];
        if (!close_to_third(v, n)) fail("elimstar(p=n) missed 1/3 at n=" + std::to_string(n));
    }

    // inner with error exactly 2*2^-k and witness p(n) = n+1
    auto decay = std::make_shared<LLODESystem>(
        std::vector<Expr>{Expr::integer(4)},
        std::vector<Expr>{Expr::integer(0) - Expr::div2(Expr::var("f0"))},
        std::vector<std::string>{});
    TermPtr decay_star = make_elimstar(make_llode(decay, {}), {Int(1), Int(1)});
    for (std::int64_t n = 0; n <= 40; ++n) {
        Dyadic v = eval_elimstar(decay_star, {}, n)[0];
        if (v.abs() > dy_pow2(n)) fail("elimstar missed limit 0 at n=" + std::to_string(n));
    }

    // cauchy necessary-condition check stays silent on the good inner
    if (!cauchy_check(third, {}, 20).ok()) fail("cauchy_check flagged the 1/3 construction");

    if (res.pass) res.detail = "1/3 within 2^-n for n <= 40; elimstar witness bound realized";
    return res;
}

SuiteResult suite_rounded(Rng& rng) {
    SuiteResult res{"rounded-mode", true, ""};
    auto fail = [&](const std::string& d) {
        res.pass = false;
        if (res.detail.empty()) res.detail = d;
    };
    std::uniform_int_distribution<std::size_t> dim_d(1, 3);
    std::uniform_int_distribution<long> x_d(0, 31);
    const std::int64_t precisions[] = {0, 7, 18, 30};
    for (int trial = 0; trial < 50 && res.pass; ++trial) {
        LLODESystem sys = random_linear_system(rng, dim_d(rng));
        Int x(x_d(rng));
        std::int64_t l = bit_length(x);

        // inspected modulus: the step map is z + A z + B with constant A,
        // so its Lipschitz bound is 1 + max row sum of |A|
        const LinearDecomposition& d = sys.decomposition();
        Dyadic lip(1);
        for (std::size_t i = 0; i < sys.dim(); ++i) {
            Dyadic row(1);
            for (std::size_t j = 0; j < sys.dim(); ++j)
                row = row + eval_expr(d.A[i][j], {}).abs();
            if (row > lip) lip = row;
        }
        std::int64_t ph = bit_length(lip.ceil()) + 2;

        std::vector<Dyadic> exact = solve_iterative(sys, x);
        for (std::int64_t n : precisions) {
            PrecisionSchedule sched = plan_precision(
                1, [&](const auto&, std::int64_t, const auto&) { return ph; },
                std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(l)), {}, l, n);
            if (sched.levels.back() != n) fail("schedule target is not n");
            for (std::size_t i = 0; i + 1 < sched.levels.size(); ++i)
                if (sched.levels[i] != sched.levels[i + 1] + ph)
                    fail("schedule recurrence violated");
            std::vector<Dyadic> rounded = solve_rounded(sys, x, {}, n, sched);
            for (std::size_t i = 0; i < exact.size(); ++i)
                if ((rounded[i] - exact[i]).abs() > dy_pow2(n))
                    fail("rounded value off by more than 2^-" + std::to_string(n) + " at trial " +
                         std::to_string(trial));
        }
    }
    if (res.pass) res.detail = "50 systems, n in {0,7,18,30}, schedule recurrence exact";
    return res;
}

SuiteResult suite_sorts() {
    SuiteResult res{"sort-safety", true, ""};
    TermPtr f = make_base(BaseOp::Half, {Sort::N});   // N -> R
    TermPtr g = make_base(BaseOp::SgnBar, {Sort::R}); // R -> R
    TermPtr h = make_base(BaseOp::Length, {Sort::N}); // N -> N
    try {
        Signature s = typecheck(make_compose(g, {f}));
        if (s.in != std::vector<Sort>{Sort::N} || s.out != std::vector<Sort>{Sort::R}) {
            res.pass = false;
            res.detail = "compose g . f inferred " + s.str();
        }
    } catch (const SortMismatch& e) {
        res.pass = false;
        res.detail = std::string("compose g . f rejected: ") + e.what();
    }
    try {
        typecheck(make_compose(h, {f}));
        res.pass = false;
        res.detail = "compose h . f was not rejected";
    } catch (const SortMismatch&) {
        // expected: R does not feed N
    }
    if (res.pass) res.detail = "R->R after N->R accepted; N->N after N->R rejected";
    return res;
}

} // namespace

std::vector<SuiteResult> run_suites(std::uint64_t seed, bool corrupt) {
    std::vector<SuiteResult> out;
    {
        Rng rng(seed);
        out.push_back(suite_closed_form(rng));
    }
    {
        Rng rng(seed + 1);
        out.push_back(suite_calculus(rng));
    }
    out.push_back(suite_tm(false));
    {
        Rng rng(seed + 2);
        out.push_back(suite_codec(rng, corrupt));
    }
    out.push_back(suite_elim());
    {
        Rng rng(seed + 3);
        out.push_back(suite_rounded(rng));
    }
    out.push_back(suite_sorts());
    return out;
}

std::string format_report(const std::vector<SuiteResult>& results, std::uint64_t seed) {
    std::ostringstream os;
    os << "selftest seed " << seed << "\n";
    std::size_t passed = 0;
    for (const auto& r : results) {
        os << "suite " << r.name << ": " << (r.pass ? "PASS" : "FAIL");
        if (!r.detail.empty()) os << " (" << r.detail << ")";
        os << "\n";
        if (r.pass) ++passed;
    }
    os << passed << "/" << results.size() << " suites passed\n";
    return os.str();
}

bool all_pass(const std::vector<SuiteResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

// --------------------------------------------------------------- fixtures

TMSpec fixture_identity() {
    TMSpec m(2, 0, {0});
    for (int v : {0, 1, 3}) {
        m.set_rule(0, v, {1, v, Move::R});
        m.set_rule(1, v, {0, v, Move::L});
    }
    return m;
}

TMSpec fixture_successor() {
    // least-significant digit first; 1 codes bit 0 and 3 codes bit 1
    TMSpec m(3, 0, {1, 2});
    m.set_rule(0, 3, {0, 1, Move::R}); // carry through a set bit
    m.set_rule(0, 1, {1, 3, Move::R}); // absorb the carry
    m.set_rule(0, 0, {1, 3, Move::R}); // carry past the top bit
    for (int v : {0, 1, 3}) {
        m.set_rule(1, v, {2, v, Move::L});
        m.set_rule(2, v, {1, v, Move::R});
    }
    return m;
}

TMSpec fixture_scanner() {
    // flips every digit, then parks at the right boundary
    TMSpec m(3, 0, {1, 2});
    m.set_rule(0, 1, {0, 3, Move::R});
    m.set_rule(0, 3, {0, 1, Move::R});
    m.set_rule(0, 0, {1, 0, Move::L});
    for (int v : {0, 1, 3}) {
        m.set_rule(1, v, {2, v, Move::R});
        m.set_rule(2, v, {1, v, Move::L});
    }
    return m;
}

TMSpec fixture_const_half() {
    // writes the encoding of 1/2 after the input and parks on it
    TMSpec m(4, 0, {2});
    m.set_rule(0, 1, {0, 1, Move::R});
    m.set_rule(0, 3, {0, 3, Move::R});
    m.set_rule(0, 0, {1, 3, Move::R});
    m.set_rule(1, 0, {2, 3, Move::L});
    m.set_rule(2, 3, {3, 3, Move::R});
    m.set_rule(3, 3, {2, 3, Move::L});
    return m;
}

TMSpec fixture_const_five_half() {
    // writes the encoding of 5.5 after the input and parks on it
    const int digits[8] = {1, 3, 1, 1, 1, 3, 3, 3};
    TMSpec m(18, 0, {16});
    m.set_rule(0, 1, {0, 1, Move::R});
    m.set_rule(0, 3, {0, 3, Move::R});
    m.set_rule(0, 0, {1, digits[0], Move::R});
    for (int i = 1; i < 8; ++i) m.set_rule(i, 0, {i + 1, digits[i], Move::R});
    m.set_rule(8, 0, {9, 0, Move::L});
    for (int s = 9; s <= 14; ++s)
        for (int v : {1, 3}) m.set_rule(s, v, {s + 1, v, Move::L});
    for (int v : {1, 3}) m.set_rule(15, v, {16, v, Move::L});
    for (int v : {1, 3}) {
        m.set_rule(16, v, {17, v, Move::R});
        m.set_rule(17, v, {16, v, Move::L});
    }
    return m;
}

} // namespace dode
