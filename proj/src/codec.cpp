#include "dode/codec.hpp"

#include "dode/algebra.hpp"
#include "dode/errors.hpp"

namespace dode {

Word word_of(const Dyadic& d) {
    if (d.is_negative()) throw Error("word_of: the digit scheme carries no sign, got " + d.str());
    Word w;
    Int ip = d.floor();
    for (std::int64_t k = bit_length(ip); k-- > 0;) {
        bool bit = ((ip >> static_cast<unsigned>(k)) & 1) != 0;
        w.push_back(1);
        w.push_back(bit ? 3 : 1);
    }
    Dyadic frac = d - Dyadic(ip);
    // canonical form: exactly exponent() fraction bits, last one set
    const Int& m = frac.mantissa();
    for (std::int64_t k = frac.exponent(); k-- > 0;) {
        bool bit = ((m >> static_cast<unsigned>(k)) & 1) != 0;
        w.push_back(3);
        w.push_back(bit ? 3 : 1);
    }
    return w;
}

LLODESystem encode_system() {
    Expr rest = Expr::var("f0");
    Expr acc_int = Expr::var("f1");
    Expr acc_frac = Expr::var("f2");
    Expr weight = Expr::var("f3");

    Expr sixteen_rest = Expr::integer(16) * rest;
    Expr pair = build_selector(sixteen_rest, {5, 7, 13, 15});
    Expr tail = Expr::sub(sixteen_rest, pair);

    struct Case {
        Expr i, f, w;
    };
    Case c5{Expr::integer(2) * acc_int, acc_frac, weight};                    // int bit 0
    Case c7{Expr::integer(2) * acc_int + Expr::integer(1), acc_frac, weight}; // int bit 1
    Case c13{acc_int, acc_frac, Expr::div2(weight)};                          // frac bit 0
    Case c15{acc_int, acc_frac + weight, Expr::div2(weight)};                 // frac bit 1

    auto dispatch = [&](auto pick) {
        return build_if(pair - Expr::integer(5),
                        build_if(pair - Expr::integer(7),
                                 build_if(pair - Expr::integer(13), pick(c15), pick(c13)),
                                 pick(c7)),
                        pick(c5));
    };

    Expr guard = Expr::sgnbar(pair); // no pair left: hold the state
    auto component = [&](Expr target, Expr current) {
        return Expr::mul(guard, Expr::sub(std::move(target), std::move(current)));
    };

    std::vector<Expr> rhs{
        component(tail, rest),
        component(dispatch([](const Case& c) { return c.i; }), acc_int),
        component(dispatch([](const Case& c) { return c.f; }), acc_frac),
        component(dispatch([](const Case& c) { return c.w; }), weight),
    };
    std::vector<Expr> init{Expr::var("d"), Expr::integer(0), Expr::integer(0),
                           Expr::div2(Expr::integer(1))};
    return LLODESystem(std::move(init), std::move(rhs), {"d"});
}

Dyadic encode(const Int& x_clock, const Dyadic& dbar) {
    Word w = gamma_word_inv(dbar); // NotInImage off the image
    if (w.size() % 2 != 0)
        throw OddLengthWord("encoded word has odd length " + std::to_string(w.size()));
    if (x_clock < 0) throw Error("encode: negative clock");
    if (static_cast<std::size_t>(bit_length(x_clock)) < w.size() / 2)
        throw BudgetExceeded("clock covers " + std::to_string(bit_length(x_clock)) +
                             " pairs, word has " + std::to_string(w.size() / 2));
    std::vector<Dyadic> out = solve_iterative(encode_system(), x_clock, {dbar});
    return out[1] + out[2];
}

Word decode_word(const Int& n) {
    if (n < 0) throw Error("decode: negative argument");
    Word w;
    for (std::int64_t k = bit_length(n); k-- > 0;) {
        bool bit = ((n >> static_cast<unsigned>(k)) & 1) != 0;
        w.push_back(bit ? 3 : 1);
    }
    return w;
}

Dyadic decode(const Int& n) {
    if (n < 0) throw Error("decode: negative argument");
    static const TermPtr div2 = builtin_div2();
    static const TermPtr mod2 = builtin_mod2();
    Dyadic rest(n);
    Dyadic acc(0);
    std::int64_t bits = bit_length(n);
    for (std::int64_t t = 0; t < bits; ++t) {
        Dyadic b = eval_exact(mod2, {rest})[0];
        acc = (acc + b + b + Dyadic(1)).half().half(); // push digit 2b+1
        rest = eval_exact(div2, {rest})[0];
    }
    return acc;
}

Int pair_interleave(const Int& a, const Int& b) {
    if (a < 0 || b < 0) throw Error("pair_interleave: negative argument");
    Int out = 0;
    std::int64_t n = std::max(bit_length(a), bit_length(b));
    for (std::int64_t k = n; k-- > 0;) {
        out <<= 1;
        out |= (a >> static_cast<unsigned>(k)) & 1;
        out <<= 1;
        out |= (b >> static_cast<unsigned>(k)) & 1;
    }
    return out;
}

namespace {

Int clock_budget(unsigned c, const Int& seed) {
    Int b = seed;
    for (unsigned i = 0; i < c; ++i) {
        std::int64_t len = bit_length(b);
        if (len > 4000) throw BudgetExceeded("clock budget out of range");
        b = pow2(len * len);
    }
    return b;
}

} // namespace

Dyadic direct_pipeline(const TMSpec& machine, unsigned c, const std::vector<Int>& args,
                       const Int& precision) {
    if (args.empty()) throw Error("direct_pipeline: need at least one argument");
    Int packed = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) packed = pair_interleave(packed, args[i]);
    Word input = decode_word(packed);

    Int seed = precision;
    for (const auto& a : args)
        if (a > seed) seed = a;
    Int budget = clock_budget(c == 0 ? 1 : c, seed);

    // Probe for the halt time: accepting state, period-2 stable, right
    // tape decodable.  The compiled run below recomputes the result.
    const long long probe_cap = 200000;
    Configuration cur = initial_config(machine, input);
    std::optional<long long> halt;
    for (long long t = 0; t <= probe_cap; ++t) {
        if (machine.accepting().count(cur.state) &&
            (cur.right.empty() || cur.right.front() != 0)) {
            Configuration two = tm_step_direct(machine, tm_step_direct(machine, cur));
            if (two == cur) {
                halt = t;
                break;
            }
        }
        cur = tm_step_direct(machine, cur);
        if (Int(t) > budget) break;
    }
    if (!halt) throw BudgetExceeded("machine did not reach a stable accepting state");
    if (Int(*halt) > budget)
        throw BudgetExceeded("halt time " + std::to_string(*halt) + " exceeds the clock budget");

    RunResult run = run_compiled(machine, input, Int(*halt));
    if (!run.output) throw NotInImage("machine output: " + run.decode_error);
    const Word& out = *run.output;
    return encode(pow2(static_cast<std::int64_t>(out.size())), gamma_word(out));
}

} // namespace dode
