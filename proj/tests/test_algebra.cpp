#include <doctest.h>

#include "dode/algebra.hpp"
#include "dode/errors.hpp"

using namespace dode;

namespace {

TermPtr third_inner() {
    auto geo = std::make_shared<LLODESystem>(
        std::vector<Expr>{Expr::integer(0), Expr::div2(Expr::div2(Expr::integer(1)))},
        std::vector<Expr>{Expr::var("f1"),
                          Expr::integer(0) -
                              Expr::integer(3) * Expr::div2(Expr::div2(Expr::var("f1")))},
        std::vector<std::string>{});
    return make_compose(make_proj(1, {Sort::R, Sort::R}), {make_llode(geo, {})});
}

bool close_to_third(const Dyadic& v, std::int64_t n) {
    Int diff = 3 * v.mantissa() - pow2(v.exponent());
    if (diff < 0) diff = -diff;
    return (diff << static_cast<unsigned>(n)) <= 3 * pow2(v.exponent());
}

} // namespace

TEST_CASE("sorts and composition") {
    CHECK(subsort(Sort::N, Sort::R));
    CHECK_FALSE(subsort(Sort::R, Sort::Q));
    CHECK(join(Sort::Z, Sort::Q) == Sort::Q);

    TermPtr f = make_base(BaseOp::Half, {Sort::N});   // N -> R
    TermPtr g = make_base(BaseOp::SgnBar, {Sort::R}); // R -> R
    TermPtr h = make_base(BaseOp::Length, {Sort::N}); // N -> N

    Signature gf = typecheck(make_compose(g, {f}));
    CHECK(gf.in == std::vector<Sort>{Sort::N});
    CHECK(gf.out == std::vector<Sort>{Sort::R});

    CHECK_THROWS_AS(typecheck(make_compose(h, {f})), SortMismatch);

    Signature pr = typecheck(make_proj(2, {Sort::N, Sort::R, Sort::Q}));
    CHECK(pr.out == std::vector<Sort>{Sort::R});

    CHECK_THROWS_AS(typecheck(make_base(BaseOp::Length, {Sort::R})), SortMismatch);
    CHECK_THROWS_AS(typecheck(make_proj(4, {Sort::N})), SortMismatch);

    // no evaluation on a rejected term
    CHECK_THROWS_AS(eval_exact(make_compose(h, {f}), {Dyadic(2)}), SortMismatch);
}

TEST_CASE("exact evaluation of base terms") {
    CHECK(eval_exact(make_base(BaseOp::Length, {Sort::N}), {Dyadic(13)})[0] == Dyadic(4));
    CHECK(eval_exact(make_base(BaseOp::Half, {Sort::N}), {Dyadic(5)})[0] == Dyadic(Int(5), 1));
    CHECK(eval_exact(make_base(BaseOp::Sub, {Sort::R, Sort::R}),
                     {Dyadic(Int(1), 2), Dyadic(1)})[0] == -Dyadic(Int(3), 2));
    CHECK(eval_exact(make_base(BaseOp::Zero, {Sort::R}), {Dyadic(9)})[0] == Dyadic(0));

    // integer-sorted arguments must be integers
    CHECK_THROWS_AS(eval_exact(make_base(BaseOp::Length, {Sort::N}), {Dyadic(Int(1), 1)}),
                    SortMismatch);
    CHECK_THROWS_AS(eval_exact(make_base(BaseOp::Length, {Sort::N}), {Dyadic(-2)}), SortMismatch);

    TermPtr elim = make_elim(third_inner());
    CHECK_THROWS_AS(eval_exact(elim, {}), LimitNodePresent);
}

TEST_CASE("limit-free approx delegates to exact evaluation") {
    TermPtr half5 = make_base(BaseOp::Half, {Sort::N});
    CHECK(eval_approx(half5, {Dyadic(5)}, 10)[0] == Dyadic(Int(5), 1));
    CHECK(eval_approx(half5, {Dyadic(5)}, 0)[0] == Dyadic(Int(5), 1).round(0));
    // rounding at any n >= exponent reproduces the exact value
    for (std::int64_t n = 1; n <= 40; ++n)
        CHECK(eval_approx(half5, {Dyadic(5)}, n)[0] == Dyadic(Int(5), 1));
}

TEST_CASE("effective limit over the geometric sum") {
    TermPtr elim = make_elim(third_inner());
    Signature sig = typecheck(elim);
    CHECK(sig.in.empty());
    CHECK(sig.out == std::vector<Sort>{Sort::R});
    for (std::int64_t n = 0; n <= 40; ++n)
        CHECK(close_to_third(eval_approx(elim, {}, n)[0], n));

    // a limit of a constant family is the constant itself
    // inner ignores its precision argument: m |-> 5
    TermPtr five = make_compose(
        make_base(BaseOp::Add, {Sort::N, Sort::N}),
        {make_compose(make_base(BaseOp::Add, {Sort::N, Sort::N}),
                      {make_compose(make_base(BaseOp::Add, {Sort::N, Sort::N}),
                                    {make_base(BaseOp::One, {Sort::N}),
                                     make_base(BaseOp::One, {Sort::N})}),
                       make_base(BaseOp::One, {Sort::N})}),
         make_compose(make_base(BaseOp::Add, {Sort::N, Sort::N}),
                      {make_base(BaseOp::One, {Sort::N}), make_base(BaseOp::One, {Sort::N})})});
    TermPtr elim_const = make_elim(five);
    for (std::int64_t n : {0, 3, 17}) CHECK(eval_approx(elim_const, {}, n)[0] == Dyadic(5));
}

TEST_CASE("elimstar with an explicit modulus witness") {
    // p(n) = n reduces to the plain effective limit
    TermPtr star_id = make_elimstar(third_inner(), {Int(0), Int(1)});
    TermPtr plain = make_elim(third_inner());
    for (std::int64_t n = 0; n <= 20; ++n) {
        CHECK(eval_elimstar(star_id, {}, n) == eval_approx(plain, {}, n));
        CHECK(close_to_third(eval_elimstar(star_id, {}, n)[0], n));
    }

    // error exactly 2 * 2^-k with witness p(n) = n + 1
    auto decay = std::make_shared<LLODESystem>(
        std::vector<Expr>{Expr::integer(4)},
        std::vector<Expr>{Expr::integer(0) - Expr::div2(Expr::var("f0"))},
        std::vector<std::string>{});
    TermPtr star = make_elimstar(make_llode(decay, {}), {Int(1), Int(1)});
    for (std::int64_t n = 0; n <= 40; ++n)
        CHECK(eval_elimstar(star, {}, n)[0].abs() <= dy_pow2(n));

    CHECK_THROWS_AS(typecheck(make_elimstar(third_inner(), {})), SortMismatch);
    CHECK_THROWS_AS(typecheck(make_elimstar(third_inner(), {Int(-1)})), SortMismatch);
    CHECK(eval_witness({Int(2), Int(0), Int(3)}, Int(5)) == 77);
}

TEST_CASE("cauchy necessary-condition check") {
    CHECK(cauchy_check(make_elim(third_inner()), {}, 20).ok());

    // divergent inner: f(2^k) = k
    TermPtr len = make_base(BaseOp::Length, {Sort::N});
    TermPtr one = make_base(BaseOp::One, {Sort::N});
    TermPtr diverge = make_compose(make_base(BaseOp::Sub, {Sort::N, Sort::N}), {len, one});
    CauchyReport bad = cauchy_check(make_elim(diverge), {}, 6);
    CHECK_FALSE(bad.ok());
    CHECK(bad.violations.front().k <= 2);

    TermPtr constant = make_base(BaseOp::One, {Sort::N});
    CHECK(cauchy_check(make_elim(constant), {}, 10).ok());
}

TEST_CASE("normal form recognition") {
    TermPtr inner = third_inner();
    CHECK(is_normal_form(make_elim(inner)));
    CHECK(is_normal_form(inner)); // no limit node at all
    CHECK_FALSE(is_normal_form(make_elim(make_elim(inner))));
    TermPtr g = make_base(BaseOp::SgnBar, {Sort::R});
    CHECK_FALSE(is_normal_form(make_compose(g, {make_elim(inner)})));
    CHECK_THROWS_AS(eval_approx(make_compose(g, {make_elim(inner)}), {}, 4), NotNormalForm);
}

TEST_CASE("trusted integer primitives") {
    TermPtr d2 = builtin_div2();
    TermPtr m2 = builtin_mod2();
    CHECK(eval_exact(d2, {Dyadic(13)})[0] == Dyadic(6));
    CHECK(eval_exact(m2, {Dyadic(13)})[0] == Dyadic(1));
    CHECK(eval_exact(d2, {Dyadic(0)})[0] == Dyadic(0));
    CHECK(eval_exact(m2, {Dyadic(0)})[0] == Dyadic(0));
    for (long n = 0; n < 1024; ++n) {
        Dyadic q = eval_exact(d2, {Dyadic(Int(n))})[0];
        Dyadic r = eval_exact(m2, {Dyadic(Int(n))})[0];
        CHECK(Dyadic(2) * q + r == Dyadic(Int(n)));
    }
}

TEST_CASE("clock function and its iterates") {
    TermPtr b = builtin_B();
    Signature sig = typecheck(b);
    CHECK(sig.in == std::vector<Sort>{Sort::N});
    CHECK(sig.out == std::vector<Sort>{Sort::N});
    CHECK(eval_exact(b, {Dyadic(3)})[0] == Dyadic(16));
    CHECK(eval_exact(b, {Dyadic(1)})[0] == Dyadic(2));
    CHECK(eval_exact(builtin_B_iterate(2), {Dyadic(1)})[0] == Dyadic(16)); // B(B(1)) = B(2)
    // len(x)^c <= B^(c)(len(x)) spot checks
    for (long x : {1L, 5L, 12L, 100L}) {
        Dyadic len(Int(bit_length(Int(x))));
        Dyadic b2 = eval_exact(builtin_B_iterate(2), {len})[0];
        CHECK(Dyadic(Int(bit_length(Int(x)))) * Dyadic(Int(bit_length(Int(x)))) <= b2);
    }
}
