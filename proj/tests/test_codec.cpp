#include <doctest.h>

#include <random>
#include <set>

#include "dode/codec.hpp"
#include "dode/errors.hpp"
#include "dode/selftest.hpp"

using namespace dode;

TEST_CASE("paired digit words") {
    CHECK(word_of(Dyadic(Int(11), 1)) == word_from_string("13111333")); // 5.5
    CHECK(word_of(Dyadic(0)) == Word{});
    CHECK(word_of(Dyadic(Int(3), 2)) == word_from_string("3333")); // 0.11 in binary
    CHECK(word_of(Dyadic(2)) == word_from_string("1311"));
    CHECK_THROWS_AS(word_of(Dyadic(-1)), Error);
}

TEST_CASE("encode recovers the encoded dyadic") {
    Word worked = word_from_string("13111333");
    CHECK(encode(pow2(8), gamma_word(worked)) == Dyadic(Int(11), 1));
    CHECK(encode(pow2(0), Dyadic(0)) == Dyadic(0));

    std::mt19937_64 rng(51);
    std::uniform_int_distribution<long> m(0, 255);
    std::uniform_int_distribution<std::int64_t> e(0, 6);
    for (int i = 0; i < 100; ++i) {
        Dyadic d(Int(m(rng)), e(rng));
        Word w = word_of(d);
        CHECK(encode(pow2(static_cast<std::int64_t>(w.size())), gamma_word(w)) == d);
    }

    CHECK_THROWS_AS(encode(pow2(4), Dyadic(Int(1), 1)), NotInImage);
    CHECK_THROWS_AS(encode(pow2(4), gamma_word(word_from_string("131"))), OddLengthWord);
    CHECK_THROWS_AS(encode(Int(1), gamma_word(word_from_string("1313"))), BudgetExceeded);
}

TEST_CASE("encode transition is an essentially linear system") {
    LLODESystem sys = encode_system();
    for (const auto& row : sys.decomposition().A)
        for (const auto& entry : row)
            CHECK(is_essentially_constant(entry, sys.f_names()));
    for (const auto& b : sys.decomposition().B)
        CHECK(is_essentially_constant(b, sys.f_names()));
}

TEST_CASE("decode embeds the naturals in the image") {
    CHECK(decode(0) == Dyadic(0));
    CHECK(decode(1) == Dyadic(Int(3), 2));   // gamma("3")
    CHECK(decode(5) == Dyadic(Int(55), 6));  // gamma("313")
    CHECK(decode_word(5) == word_from_string("313"));

    std::set<std::string> seen;
    for (long n = 0; n < 1024; ++n) {
        Dyadic d = decode(Int(n));
        CHECK(seen.insert(d.str()).second);
        CHECK(gamma_word_inv(d) == decode_word(Int(n))); // every digit in {1, 3}
    }
}

TEST_CASE("bit interleaving pairs arguments") {
    CHECK(pair_interleave(Int(0), Int(0)) == 0);
    // distinct pairs map to distinct codes
    std::set<std::string> seen;
    for (long a = 0; a < 16; ++a)
        for (long b = 0; b < 16; ++b) CHECK(seen.insert(pair_interleave(a, b).str()).second);
}

TEST_CASE("pipeline runs a machine between the codecs") {
    // constant machine: 1/2 whatever the arguments
    TMSpec half = fixture_const_half();
    for (long m : {0L, 5L, 12L})
        for (long n : {0L, 3L, 9L})
            CHECK(direct_pipeline(half, 1, {Int(m)}, Int(n)) == Dyadic(Int(1), 1));

    // constant machine for 5.5
    TMSpec c55 = fixture_const_five_half();
    CHECK(direct_pipeline(c55, 1, {Int(7)}, Int(4)) == Dyadic(Int(11), 1));

    // identity machine: result is exactly what its output word denotes
    TMSpec id = fixture_identity();
    auto pair_oracle = [](const Word& w) {
        Dyadic int_part(0), frac(0), weight = Dyadic(1).half();
        for (std::size_t i = 0; i + 1 < w.size(); i += 2) {
            int bit = w[i + 1] == 3 ? 1 : 0;
            if (w[i] == 1) {
                int_part = int_part + int_part + Dyadic(bit);
            } else {
                if (bit) frac = frac + weight;
                weight = weight.half();
            }
        }
        return int_part + frac;
    };
    for (long m : {10L, 11L, 14L, 15L, 42L})
        CHECK(direct_pipeline(id, 1, {Int(m)}, Int(6)) == pair_oracle(decode_word(Int(m))));

    // a machine with no accepting state exhausts its budget
    TMSpec never(1, 0); // default rules park, but nothing accepts
    CHECK_THROWS_AS(direct_pipeline(never, 1, {Int(3)}, Int(2)), BudgetExceeded);
}
