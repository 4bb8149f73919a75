#include <doctest.h>

#include <random>

#include "dode/dyadic.hpp"

using namespace dode;

namespace {

Dyadic rnd_dyadic(std::mt19937_64& rng, long bound = 4096, std::int64_t max_exp = 12) {
    std::uniform_int_distribution<long> m(-bound, bound);
    std::uniform_int_distribution<std::int64_t> e(0, max_exp);
    return Dyadic(Int(m(rng)), e(rng));
}

} // namespace

TEST_CASE("dyadic arithmetic basics") {
    Dyadic half(Int(1), 1), quarter(Int(1), 2);
    CHECK(half + quarter == Dyadic(Int(3), 2));

    CHECK(Dyadic(Int(3), 3) * Dyadic(Int(5), 2) == Dyadic(Int(15), 5)); // 3/8 * 5/4

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Dyadic a = rnd_dyadic(rng);
        CHECK(a + Dyadic(0) == a);
    }
}

TEST_CASE("dyadic halving") {
    CHECK(Dyadic(1).half() == Dyadic(Int(1), 1));
    CHECK(Dyadic(0).half() == Dyadic(0));
    CHECK(Dyadic(Int(3), 2).half() == Dyadic(Int(3), 3));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 500; ++i) {
        Dyadic a = rnd_dyadic(rng);
        CHECK(a.half() + a.half() == a);
    }
}

TEST_CASE("dyadic rounding") {
    // 5/8 at one bit: candidates 1/2 and 1 are 1/8 vs 3/8 away
    CHECK(Dyadic(Int(5), 3).round(1) == Dyadic(Int(1), 1));
    CHECK(Dyadic(Int(7), 3).round(0) == Dyadic(1));
    // ties to even mantissa
    CHECK(Dyadic(Int(1), 1).round(0) == Dyadic(0));
    CHECK(Dyadic(Int(3), 1).round(0) == Dyadic(2));
    CHECK(Dyadic(Int(-1), 1).round(0) == Dyadic(0));
    CHECK(Dyadic(Int(-3), 1).round(0) == Dyadic(-2));

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::int64_t> nn(0, 64);
    for (int i = 0; i < 2000; ++i) {
        Dyadic a = rnd_dyadic(rng, 1 << 20, 80);
        std::int64_t n = nn(rng);
        Dyadic r = a.round(n);
        CHECK(r.exponent() <= n);
        CHECK((r - a).abs() <= dy_pow2(n));
        if (a.exponent() <= n) CHECK(r == a);
    }
}

TEST_CASE("dyadic comparison") {
    CHECK(dy_cmp(Dyadic(Int(1), 2), Dyadic(Int(3), 2)) == Cmp::LT);
    CHECK(dy_cmp(Dyadic(Int(5), 3), Dyadic(Int(5), 3)) == Cmp::EQ);
    CHECK(dy_cmp(Dyadic(Int(5), 3), Dyadic(Int(9), 4)) == Cmp::GT);
    std::mt19937_64 rng(10);
    for (int i = 0; i < 500; ++i) {
        Dyadic a = rnd_dyadic(rng), b = rnd_dyadic(rng);
        // order agrees with integer cross-multiplication
        std::int64_t e = std::max(a.exponent(), b.exponent());
        Int ma = a.mantissa() << static_cast<unsigned>(e - a.exponent());
        Int mb = b.mantissa() << static_cast<unsigned>(e - b.exponent());
        CHECK((a < b) == (ma < mb));
    }
}

TEST_CASE("canonical form is unique and value-preserving") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> m(-5000, 5000);
    std::uniform_int_distribution<std::int64_t> e(0, 10), pad(0, 10);
    for (int i = 0; i < 10000; ++i) {
        Int mant(m(rng));
        std::int64_t ex = e(rng), k = pad(rng);
        Dyadic a(mant, ex);
        Dyadic padded(mant << static_cast<unsigned>(k), ex + k);
        CHECK(a == padded);
        CHECK((a.exponent() == 0 || (a.mantissa() & 1) == 1));
    }
}

TEST_CASE("ring laws hold exactly") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        Dyadic a = rnd_dyadic(rng), b = rnd_dyadic(rng), c = rnd_dyadic(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - b == -(b - a));
    }
}

TEST_CASE("dyadic literals") {
    CHECK(Dyadic::parse("13/2^3") == Dyadic(Int(13), 3));
    CHECK(Dyadic::parse("-13/2^3") == -Dyadic(Int(13), 3));
    CHECK(Dyadic::parse("7") == Dyadic(7));
    CHECK(Dyadic::parse("5.5") == Dyadic(Int(11), 1));
    CHECK(Dyadic::parse("-0.375") == -Dyadic(Int(3), 3));
    CHECK(Dyadic::parse("2.0") == Dyadic(2));
    CHECK_THROWS_AS(Dyadic::parse("0.1"), ParseError);
    CHECK_THROWS_AS(Dyadic::parse("1/3"), ParseError);
    CHECK_THROWS_AS(Dyadic::parse("abc"), ParseError);
    CHECK_THROWS_AS(Dyadic::parse("5.5x"), ParseError);

    CHECK(Dyadic(Int(11), 1).str() == "11/2^1");
    CHECK(Dyadic(Int(11), 1).decimal() == "5.5");
    CHECK(Dyadic(Int(-3), 3).decimal() == "-0.375");
    CHECK(Dyadic(8).str() == "8");

    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        Dyadic a = rnd_dyadic(rng);
        CHECK(Dyadic::parse(a.str()) == a);
        CHECK(Dyadic::parse(a.decimal()) == a);
    }
}

TEST_CASE("floor and ceil") {
    CHECK(Dyadic(Int(5), 1).floor() == 2);
    CHECK(Dyadic(Int(5), 1).ceil() == 3);
    CHECK(Dyadic(Int(-5), 1).floor() == -3);
    CHECK(Dyadic(Int(-5), 1).ceil() == -2);
    CHECK(Dyadic(4).floor() == 4);
    CHECK(Dyadic(4).ceil() == 4);
}

TEST_CASE("length function") {
    CHECK(dy_length(Dyadic(0)) == 0);
    CHECK(dy_length(Dyadic(1)) == 1);
    CHECK(dy_length(Dyadic(13)) == 4);
    CHECK_THROWS_AS(dy_length(Dyadic(Int(1), 1)), Error);
    CHECK_THROWS_AS(dy_length(Dyadic(-2)), Error);
}
