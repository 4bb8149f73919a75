#include "dode/machine.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "dode/errors.hpp"

namespace dode {

TMSpec::TMSpec(int num_states, int initial, std::set<int> accepting)
    : num_states_(num_states), initial_(initial), accepting_(std::move(accepting)),
      delta_(static_cast<std::size_t>(num_states)) {
    if (num_states < 1) throw Error("TMSpec: need at least one state");
    if (initial < 0 || initial >= num_states) throw Error("TMSpec: initial state out of range");
    for (int q : accepting_)
        if (q < 0 || q >= num_states) throw Error("TMSpec: accepting state out of range");
}

int TMSpec::symbol_index(int symbol) {
    switch (symbol) {
    case 0: return 0;
    case 1: return 1;
    case 3: return 2;
    default: throw BadSymbol("tape symbol must be 0, 1 or 3, got " + std::to_string(symbol));
    }
}

void TMSpec::set_rule(int state, int symbol, TMRule rule) {
    if (state < 0 || state >= num_states_) throw Error("TMSpec: state out of range");
    if (rule.next < 0 || rule.next >= num_states_) throw Error("TMSpec: next state out of range");
    symbol_index(rule.write);
    delta_[static_cast<std::size_t>(state)][static_cast<std::size_t>(symbol_index(symbol))] = rule;
}

bool TMSpec::has_rule(int state, int symbol) const {
    return delta_[static_cast<std::size_t>(state)][static_cast<std::size_t>(symbol_index(symbol))]
        .has_value();
}

TMRule TMSpec::rule(int state, int symbol) const {
    const auto& slot =
        delta_[static_cast<std::size_t>(state)][static_cast<std::size_t>(symbol_index(symbol))];
    if (slot) return *slot;
    // default halt: walk right to the content boundary, then park there
    if (symbol == 0) return TMRule{state, 0, Move::L};
    return TMRule{state, symbol, Move::R};
}

TMSpec TMSpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<int> states, initial;
    std::set<int> accepting;
    struct Pending {
        int q, s, q2, s2;
        Move m;
        int lineno;
    };
    std::vector<Pending> rules;
    auto fail = [&](const std::string& why) -> void {
        throw ParseError("tm spec line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "states") {
            int k;
            if (!(ls >> k)) fail("expected state count");
            states = k;
        } else if (tok == "initial") {
            int q;
            if (!(ls >> q)) fail("expected initial state");
            initial = q;
        } else if (tok == "accepting") {
            int q;
            while (ls >> q) accepting.insert(q);
        } else {
            int q, s, q2, s2;
            std::string arrow, move;
            std::istringstream rs(line);
            if (!(rs >> q >> s >> arrow >> q2 >> s2 >> move) || arrow != "->")
                fail("expected `q s -> q' s' L|R`");
            if (move != "L" && move != "R") fail("move must be L or R");
            std::string extra;
            if (rs >> extra) fail("trailing tokens");
            rules.push_back({q, s, q2, s2, move == "L" ? Move::L : Move::R, lineno});
        }
    }
    if (!states) throw ParseError("tm spec: missing `states` header");
    if (!initial) throw ParseError("tm spec: missing `initial` header");
    TMSpec spec(*states, *initial, accepting);
    for (const auto& r : rules) {
        lineno = r.lineno;
        try {
            spec.set_rule(r.q, r.s, TMRule{r.q2, r.s2, r.m});
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    return spec;
}

TMSpec TMSpec::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tm spec '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string TMSpec::str() const {
    std::ostringstream os;
    os << "states " << num_states_ << "\n";
    os << "initial " << initial_ << "\n";
    if (!accepting_.empty()) {
        os << "accepting";
        for (int q : accepting_) os << ' ' << q;
        os << "\n";
    }
    const int symbols[3] = {0, 1, 3};
    for (int q = 0; q < num_states_; ++q)
        for (int s : symbols)
            if (has_rule(q, s)) {
                TMRule r = rule(q, s);
                os << q << ' ' << s << " -> " << r.next << ' ' << r.write << ' '
                   << (r.move == Move::L ? 'L' : 'R') << "\n";
            }
    return os.str();
}

Word word_from_string(const std::string& s) {
    Word w;
    for (char c : s) {
        if (c == '1')
            w.push_back(1);
        else if (c == '3')
            w.push_back(3);
        else
            throw BadSymbol(std::string("word digit must be 1 or 3, got '") + c + "'");
    }
    return w;
}

std::string word_to_string(const Word& w) {
    std::string s;
    for (int d : w) s += static_cast<char>('0' + d);
    return s;
}

Word trim_word(Word w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
    return w;
}

Configuration initial_config(const TMSpec& spec, const Word& input) {
    return Configuration{spec.initial(), {}, trim_word(input)};
}

Configuration tm_step_direct(const TMSpec& spec, const Configuration& c) {
    int r0 = c.right.empty() ? 0 : c.right.front();
    TMRule rule = spec.rule(c.state, r0);
    Configuration out;
    out.state = rule.next;
    if (rule.move == Move::R) {
        out.left = c.left;
        out.left.insert(out.left.begin(), rule.write);
        out.right = Word(c.right.begin() + (c.right.empty() ? 0 : 1), c.right.end());
    } else {
        int l0 = c.left.empty() ? 0 : c.left.front();
        out.left = Word(c.left.begin() + (c.left.empty() ? 0 : 1), c.left.end());
        out.right = Word(c.right.begin() + (c.right.empty() ? 0 : 1), c.right.end());
        out.right.insert(out.right.begin(), rule.write);
        out.right.insert(out.right.begin(), l0);
    }
    out.left = trim_word(std::move(out.left));
    out.right = trim_word(std::move(out.right));
    return out;
}

Configuration tm_run_direct(const TMSpec& spec, const Word& input, long long steps) {
    Configuration c = initial_config(spec, input);
    for (long long t = 0; t < steps; ++t) c = tm_step_direct(spec, c);
    return c;
}

Word tape_word(const Configuration& c) {
    Word w(c.left.rbegin(), c.left.rend());
    w.insert(w.end(), c.right.begin(), c.right.end());
    // leading blanks left of the content are not part of the tape word
    std::size_t lead = 0;
    while (lead < w.size() && w[lead] == 0) ++lead;
    w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lead));
    return trim_word(std::move(w));
}

Dyadic gamma_word_raw(const Word& w) {
    Dyadic acc(0);
    for (std::size_t k = w.size(); k-- > 0;) {
        if (w[k] != 0 && w[k] != 1 && w[k] != 3)
            throw BadSymbol("word digit must be 0, 1 or 3");
        acc = (acc + Dyadic(w[k])).half().half();
    }
    return acc;
}

Dyadic gamma_word(const Word& w) {
    for (int d : w)
        if (d != 1 && d != 3) throw BadSymbol("word digit must be 1 or 3");
    return gamma_word_raw(w);
}

Word gamma_word_inv(const Dyadic& d) {
    if (d.is_negative() || d >= Dyadic(1)) throw NotInImage("value outside [0, 1): " + d.str());
    Word w;
    Dyadic rest = d;
    while (!rest.is_zero()) {
        Dyadic scaled = rest + rest + rest + rest;
        Int digit = scaled.floor();
        if (digit != 1 && digit != 3)
            throw NotInImage("radix-4 digit " + digit.str() + " in " + d.str());
        w.push_back(static_cast<int>(digit));
        rest = scaled - Dyadic(digit);
    }
    return w;
}

EncodedConfig gamma_config(const Configuration& c) {
    return EncodedConfig{Dyadic(c.state), gamma_word_raw(c.left), gamma_word_raw(c.right)};
}

namespace {

const std::vector<Int> kHeadSentinels{0, 1, 3};

Expr quarter_of(Expr e) { return Expr::div2(Expr::div2(std::move(e))); }
Expr sixteenth_of(Expr e) { return quarter_of(quarter_of(std::move(e))); }

struct CaseExprs {
    Expr q, l, r;
};

} // namespace

std::vector<Expr> compile_next(const TMSpec& spec) {
    Expr qv = Expr::var("q");
    Expr lv = Expr::var("l");
    Expr rv = Expr::var("r");
    Expr four_r = Expr::integer(4) * rv;
    Expr four_l = Expr::integer(4) * lv;
    Expr head = build_selector(four_r, kHeadSentinels);   // the symbol under the head
    Expr sigma_r = Expr::sub(four_r, head);               // right tail
    Expr l0 = build_selector(four_l, kHeadSentinels);     // the symbol left of the head
    Expr sigma_l = Expr::sub(four_l, l0);                 // left tail

    auto case_for = [&](int state, int symbol) {
        TMRule rule = spec.rule(state, symbol);
        CaseExprs c{Expr::integer(rule.next), Expr::integer(0), Expr::integer(0)};
        if (rule.move == Move::R) {
            Expr pushed = rule.write == 0 ? lv : Expr::add(lv, Expr::integer(rule.write));
            c.l = quarter_of(pushed);
            c.r = sigma_r;
        } else {
            c.l = sigma_l;
            c.r = quarter_of(l0) + sixteenth_of(sigma_r);
            if (rule.write != 0) c.r = c.r + sixteenth_of(Expr::integer(rule.write));
        }
        return c;
    };

    auto dispatch_symbols = [&](int state, auto pick) {
        // head == 0 -> blank case; 1 -> else-branch of the inner If; 3 -> then
        return build_if(head, build_if(head - Expr::integer(1), pick(case_for(state, 3)),
                                       pick(case_for(state, 1))),
                        pick(case_for(state, 0)));
    };

    auto dispatch_states = [&](auto pick) {
        Expr acc = dispatch_symbols(spec.num_states() - 1, pick);
        for (int u = spec.num_states() - 2; u >= 0; --u) {
            Expr guard = u == 0 ? qv : Expr::sub(qv, Expr::integer(u));
            acc = build_if(guard, acc, dispatch_symbols(u, pick));
        }
        return acc;
    };

    return {dispatch_states([](const CaseExprs& c) { return c.q; }),
            dispatch_states([](const CaseExprs& c) { return c.l; }),
            dispatch_states([](const CaseExprs& c) { return c.r; })};
}

LLODESystem compile_exec(const TMSpec& spec) {
    std::vector<Expr> next = compile_next(spec);
    std::map<std::string, Expr> to_state{{"q", Expr::var("f0")},
                                         {"l", Expr::var("f1")},
                                         {"r", Expr::var("f2")}};
    Expr guard = Expr::sgnbar(Expr::var("x")); // skip the stage with x-argument 0
    std::vector<Expr> rhs;
    for (std::size_t i = 0; i < 3; ++i) {
        Expr delta = Expr::sub(substitute(next[i], to_state), Expr::var("f" + std::to_string(i)));
        rhs.push_back(Expr::mul(guard, delta));
    }
    return LLODESystem({Expr::var("q"), Expr::var("l"), Expr::var("r")}, std::move(rhs),
                       {"q", "l", "r"});
}

RunResult run_compiled(const TMSpec& spec, const Word& input, const Int& steps) {
    if (steps < 0) throw Error("run_compiled: negative step count");
    gamma_word(input); // reject inputs off the image
    EncodedConfig c0 = gamma_config(initial_config(spec, input));
    LLODESystem exec = compile_exec(spec);
    if (steps > 1000000) throw BudgetExceeded("step count too large to run: " + steps.str());
    Int clock = pow2(steps.convert_to<std::int64_t>());
    std::vector<Dyadic> out = solve_iterative(exec, clock, {c0.q, c0.lbar, c0.rbar});
    RunResult res;
    res.config = EncodedConfig{out[0], out[1], out[2]};
    try {
        res.output = gamma_word_inv(res.config.rbar);
    } catch (const NotInImage& e) {
        res.decode_error = e.what();
    }
    return res;
}

} // namespace dode
