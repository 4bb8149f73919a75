#include <doctest.h>

#include <random>

#include "dode/algebra.hpp"
#include "dode/errors.hpp"
#include "dode/llode.hpp"

using namespace dode;

namespace {

Expr v(const char* n) { return Expr::var(n); }
Expr n(long k) { return Expr::integer(k); }

LLODESystem doubling() {
    return LLODESystem({n(1)}, {v("f0")}, {});
}

Dyadic dyc(long m, std::int64_t e) { return Dyadic(Int(m), e); }

Expr const_expr(const Dyadic& d) {
    Expr e = Expr::integer(d.mantissa());
    for (std::int64_t k = 0; k < d.exponent(); ++k) e = Expr::div2(e);
    return e;
}

// hand unrolling: apply the update at every length jump up to x
std::vector<Dyadic> unroll(const LLODESystem& sys, long long x, const std::vector<Dyadic>& y) {
    Env base;
    for (std::size_t i = 0; i < y.size(); ++i) base[sys.y_names()[i]] = y[i];
    std::vector<Dyadic> f = eval_exprs(sys.init(), base);
    for (long long u = 0; u < x; ++u) {
        long long jump = bit_length(Int(u + 1)) - bit_length(Int(u));
        if (jump == 0) continue;
        Env env = base;
        env[sys.x_name()] = Dyadic(Int(u));
        for (std::size_t i = 0; i < f.size(); ++i) env[sys.f_names()[i]] = f[i];
        if (sys.h()) {
            std::vector<Dyadic> hargs{Dyadic(Int(u))};
            hargs.insert(hargs.end(), y.begin(), y.end());
            auto hv = eval_exact(sys.h(), hargs);
            for (std::size_t j = 0; j < hv.size(); ++j) env["h" + std::to_string(j)] = hv[j];
        }
        std::vector<Dyadic> u_val = eval_exprs(sys.rhs(), env);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += u_val[i];
    }
    return f;
}

} // namespace

TEST_CASE("length-driven iteration") {
    LLODESystem sys = doubling();
    // f(x) = 2^len(x), with jump steps at x = 1, 2, 4
    CHECK(solve_iterative(sys, 3) == std::vector<Dyadic>{Dyadic(4)});
    CHECK(solve_iterative(sys, 7) == std::vector<Dyadic>{Dyadic(8)});
    CHECK(solve_iterative(sys, 0) == std::vector<Dyadic>{Dyadic(1)});

    for (long long x = 0; x <= 40; ++x)
        CHECK(solve_iterative(sys, Int(x)) == unroll(sys, x, {}));

    // len itself is a length-ODE: f(0) = 0, f' = 1
    LLODESystem len_sys({n(0)}, {n(1)}, {});
    CHECK(solve_iterative(len_sys, 5) == std::vector<Dyadic>{Dyadic(3)});
    for (long long x = 0; x <= 33; ++x)
        CHECK(solve_iterative(len_sys, Int(x))[0] == Dyadic(Int(bit_length(Int(x)))));
}

TEST_CASE("solves depend on x only through its length") {
    LLODESystem sys({n(1), n(0)}, {v("f0") + v("f1"), v("f0") - n(2) * v("f1")}, {});
    for (long long x = 1; x <= 64; x *= 2)
        for (long long other = x; other < 2 * x && other <= 64; ++other)
            CHECK(solve_iterative(sys, Int(x * 2 - 1)) == solve_iterative(sys, Int(other * 2 - 1)));
}

TEST_CASE("explicit closed form equals the iteration") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> m(-15, 15);
    std::uniform_int_distribution<std::int64_t> e(0, 4);
    std::uniform_int_distribution<std::size_t> dims(1, 3);
    std::uniform_int_distribution<long> xs(0, 31);
    std::uniform_int_distribution<int> flavor(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t dim = dims(rng);
        std::vector<Expr> init, rhs;
        for (std::size_t i = 0; i < dim; ++i) {
            init.push_back(const_expr(dyc(m(rng), e(rng))));
            Expr acc = const_expr(dyc(m(rng), e(rng)));
            for (std::size_t j = 0; j < dim; ++j) {
                Expr coeff = const_expr(dyc(m(rng), e(rng)));
                if (flavor(rng) == 0) // coefficients may watch the state through sg-bar
                    coeff = coeff * Expr::sgnbar(v("f" + std::to_string(j)) - n(m(rng)));
                acc = acc + coeff * v("f" + std::to_string(j));
            }
            rhs.push_back(acc);
        }
        LLODESystem sys(std::move(init), std::move(rhs), {});
        Int x(xs(rng));
        CHECK(solve_explicit(sys, x) == solve_iterative(sys, x));
    }
}

TEST_CASE("system construction rejects bad shapes") {
    CHECK_THROWS_AS(LLODESystem({n(0)}, {v("f0") * v("f0")}, {}), NotEssentiallyLinear);
    CHECK_THROWS_AS(LLODESystem({n(0)}, {v("h0")}, {}), UnboundVariable);
    CHECK_THROWS_AS(LLODESystem({v("y")}, {v("f0")}, {}), UnboundVariable);
    CHECK_THROWS_AS(LLODESystem({n(0)}, {v("zzz")}, {}), UnboundVariable);
}

TEST_CASE("precision schedules") {
    auto const_tail = [](std::int64_t c) {
        return [c](const std::vector<std::int64_t>&, std::int64_t,
                   const std::vector<std::int64_t>&) { return c; };
    };
    std::vector<std::vector<std::int64_t>> zs(3);

    PrecisionSchedule s1 = plan_precision(1, const_tail(5), zs, {}, 3, 4);
    CHECK(s1.levels == std::vector<std::int64_t>{19, 14, 9, 4});

    PrecisionSchedule s2 = plan_precision(2, const_tail(0), zs, {}, 3, 4);
    CHECK(s2.levels == std::vector<std::int64_t>{32, 16, 8, 4});

    PrecisionSchedule s0 = plan_precision(3, const_tail(7), {}, {}, 0, 9);
    CHECK(s0.levels == std::vector<std::int64_t>{9});

    // levels satisfy the recurrence p(i) = alpha p(i+1) + p_h and the
    // closed form alpha^(l-i) n + sum alpha^(k-i) p_h
    PrecisionSchedule s3 = plan_precision(2, const_tail(3), std::vector<std::vector<std::int64_t>>(5),
                                          {}, 5, 6);
    for (std::size_t i = 0; i + 1 < s3.levels.size(); ++i)
        CHECK(s3.levels[i] == 2 * s3.levels[i + 1] + 3);
    for (std::size_t i = 0; i < s3.levels.size(); ++i) {
        std::int64_t expect = 0, p = 1;
        for (std::size_t k = i; k < 5; ++k) {
            expect += p * 3;
            p *= 2;
        }
        expect += p * 6;
        CHECK(s3.levels[i] == expect);
    }
}

TEST_CASE("rounded mode stays within the contract") {
    LLODESystem sys = doubling();
    auto tail2 = [](const std::vector<std::int64_t>&, std::int64_t,
                    const std::vector<std::int64_t>&) { return std::int64_t{2}; };

    for (std::int64_t nbits : {0, 10, 20}) {
        Int x(7);
        std::int64_t l = bit_length(x);
        PrecisionSchedule sched =
            plan_precision(1, tail2, std::vector<std::vector<std::int64_t>>(l), {}, l, nbits);
        auto exact = solve_iterative(sys, x);
        auto rounded = solve_rounded(sys, x, {}, nbits, sched);
        CHECK((rounded[0] - exact[0]).abs() <= dy_pow2(nbits));
    }

    PrecisionSchedule tiny;
    tiny.levels = {4};
    CHECK_THROWS_AS(solve_rounded(sys, 7, {}, 4, tiny), ScheduleTooShort);
}

TEST_CASE("growth reports") {
    GrowthReport rep = growth_report(doubling(), 7);
    CHECK(rep.sup == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(rep.serialize() == "step 0: 1\nstep 1: 2\nstep 2: 3\nstep 3: 4\n");

    LLODESystem constant({n(5)}, {n(0)}, {});
    GrowthReport c = growth_report(constant, 12);
    for (auto s : c.sup) CHECK(s == 3);
}

TEST_CASE("h feeds stage values of an attached term") {
    // h(x) = 4^len(x) lets the system square its base each stage:
    // f(2^t - 1) = 2^(t^2)
    TermPtr b = builtin_B();
    CHECK(eval_exact(b, {Dyadic(3)}) == std::vector<Dyadic>{Dyadic(16)});
    CHECK(eval_exact(b, {Dyadic(1)}) == std::vector<Dyadic>{Dyadic(2)});
    CHECK(eval_exact(b, {Dyadic(0)}) == std::vector<Dyadic>{Dyadic(1)});
}
