#include "dode/expr.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dode/errors.hpp"

namespace dode {

struct Expr::Node {
    Kind kind;
    std::string name;
    Int value;
    std::shared_ptr<const Node> a, b;
};

Expr Expr::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::integer(Int value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Int;
    n->value = std::move(value);
    return Expr(std::move(n));
}

static std::shared_ptr<const Expr::Node> binary_node(Expr::Kind k,
                                                     std::shared_ptr<const Expr::Node> a,
                                                     std::shared_ptr<const Expr::Node> b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Expr Expr::add(Expr a, Expr b) { return Expr(binary_node(Kind::Add, a.n_, b.n_)); }
Expr Expr::sub(Expr a, Expr b) { return Expr(binary_node(Kind::Sub, a.n_, b.n_)); }
Expr Expr::mul(Expr a, Expr b) { return Expr(binary_node(Kind::Mul, a.n_, b.n_)); }
Expr Expr::sgnbar(Expr a) { return Expr(binary_node(Kind::SgnBar, a.n_, nullptr)); }
Expr Expr::div2(Expr a) { return Expr(binary_node(Kind::Div2, a.n_, nullptr)); }

Expr::Kind Expr::kind() const { return n_->kind; }
const std::string& Expr::name() const { return n_->name; }
const Int& Expr::value() const { return n_->value; }
Expr Expr::lhs() const { return Expr(n_->a); }
Expr Expr::rhs() const { return Expr(n_->b); }
Expr Expr::arg() const { return Expr(n_->a); }

Dyadic sgnbar_value(const Dyadic& x) {
    static const Dyadic quarter(Int(1), 2);
    static const Dyadic three_quarters(Int(3), 2);
    if (x <= quarter) return Dyadic(0);
    if (x >= three_quarters) return Dyadic(1);
    return (x - quarter) * Dyadic(2);
}

Dyadic eval_expr(const Expr& e, const Env& env) {
    switch (e.kind()) {
    case Expr::Kind::Var: {
        auto it = env.find(e.name());
        if (it == env.end()) throw UnboundVariable("unbound variable '" + e.name() + "'");
        return it->second;
    }
    case Expr::Kind::Int:
        return Dyadic(e.value());
    case Expr::Kind::Add:
        return eval_expr(e.lhs(), env) + eval_expr(e.rhs(), env);
    case Expr::Kind::Sub:
        return eval_expr(e.lhs(), env) - eval_expr(e.rhs(), env);
    case Expr::Kind::Mul:
        return eval_expr(e.lhs(), env) * eval_expr(e.rhs(), env);
    case Expr::Kind::SgnBar:
        return sgnbar_value(eval_expr(e.arg(), env));
    case Expr::Kind::Div2:
        return eval_expr(e.arg(), env).half();
    }
    throw Error("unreachable");
}

std::vector<Dyadic> eval_exprs(const std::vector<Expr>& es, const Env& env) {
    std::vector<Dyadic> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(eval_expr(e, env));
    return out;
}

long degree(const Expr& e, const std::string& x) {
    switch (e.kind()) {
    case Expr::Kind::Var:
        return e.name() == x ? 1 : 0;
    case Expr::Kind::Int:
        return 0;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return std::max(degree(e.lhs(), x), degree(e.rhs(), x));
    case Expr::Kind::Mul:
        return degree(e.lhs(), x) + degree(e.rhs(), x);
    case Expr::Kind::SgnBar:
        return 0;
    case Expr::Kind::Div2:
        return degree(e.arg(), x);
    }
    throw Error("unreachable");
}

bool is_essentially_constant(const Expr& e, const std::vector<std::string>& vars) {
    return std::all_of(vars.begin(), vars.end(),
                       [&](const std::string& v) { return degree(e, v) == 0; });
}

static void collect_vars(const Expr& e, std::vector<std::string>& out, std::set<std::string>& seen) {
    switch (e.kind()) {
    case Expr::Kind::Var:
        if (seen.insert(e.name()).second) out.push_back(e.name());
        return;
    case Expr::Kind::Int:
        return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
        collect_vars(e.lhs(), out, seen);
        collect_vars(e.rhs(), out, seen);
        return;
    case Expr::Kind::SgnBar:
    case Expr::Kind::Div2:
        collect_vars(e.arg(), out, seen);
        return;
    }
}

std::vector<std::string> free_vars(const Expr& e) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_vars(e, out, seen);
    return out;
}

namespace {

// Linear form over the target variables: sum of coeff[v] * v plus a
// constant part; absent entries mean zero.
struct LinForm {
    std::map<std::string, Expr> coeff;
    std::optional<Expr> constant;

    bool has_targets() const { return !coeff.empty(); }
};

bool is_int_const(const Expr& e, long v) {
    return e.kind() == Expr::Kind::Int && e.value() == v;
}

std::optional<Expr> add_opt(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (!a) return b;
    if (!b) return a;
    if (a->kind() == Expr::Kind::Int && b->kind() == Expr::Kind::Int)
        return Expr::integer(a->value() + b->value());
    return Expr::add(*a, *b);
}

std::optional<Expr> sub_opt(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (!b) return a;
    if (a && a->kind() == Expr::Kind::Int && b->kind() == Expr::Kind::Int)
        return Expr::integer(a->value() - b->value());
    if (!a) {
        if (b->kind() == Expr::Kind::Int) return Expr::integer(-b->value());
        return Expr::sub(Expr::integer(0), *b);
    }
    return Expr::sub(*a, *b);
}

std::optional<Expr> mul_opt(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (!a || !b) return std::nullopt;
    if (is_int_const(*a, 0) || is_int_const(*b, 0)) return std::nullopt;
    if (is_int_const(*a, 1)) return b;
    if (is_int_const(*b, 1)) return a;
    if (a->kind() == Expr::Kind::Int && b->kind() == Expr::Kind::Int)
        return Expr::integer(a->value() * b->value());
    return Expr::mul(*a, *b);
}

std::optional<Expr> div2_opt(const std::optional<Expr>& a) {
    if (!a) return std::nullopt;
    return Expr::div2(*a);
}

LinForm collect(const Expr& e, const std::set<std::string>& targets) {
    LinForm out;
    switch (e.kind()) {
    case Expr::Kind::Var:
        if (targets.count(e.name()))
            out.coeff.emplace(e.name(), Expr::integer(1));
        else
            out.constant = e;
        return out;
    case Expr::Kind::Int:
        if (e.value() != 0) out.constant = e;
        return out;
    case Expr::Kind::SgnBar:
        // sg-bar scopes contribute degree 0 regardless of content
        out.constant = e;
        return out;
    case Expr::Kind::Div2: {
        LinForm inner = collect(e.arg(), targets);
        for (auto& [v, c] : inner.coeff) out.coeff.emplace(v, *div2_opt(c));
        out.constant = div2_opt(inner.constant);
        return out;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        bool sub = e.kind() == Expr::Kind::Sub;
        LinForm l = collect(e.lhs(), targets);
        LinForm r = collect(e.rhs(), targets);
        out = std::move(l);
        for (auto& [v, c] : r.coeff) {
            std::optional<Expr> cur;
            auto it = out.coeff.find(v);
            if (it != out.coeff.end()) cur = it->second;
            auto merged = sub ? sub_opt(cur, c) : add_opt(cur, c);
            if (merged)
                out.coeff.insert_or_assign(v, *merged);
            else
                out.coeff.erase(v);
        }
        out.constant = sub ? sub_opt(out.constant, r.constant) : add_opt(out.constant, r.constant);
        return out;
    }
    case Expr::Kind::Mul: {
        LinForm l = collect(e.lhs(), targets);
        LinForm r = collect(e.rhs(), targets);
        if (l.has_targets() && r.has_targets())
            throw NotEssentiallyLinear("target variables multiply each other in " + to_string(e));
        if (l.has_targets()) {
            for (auto& [v, c] : l.coeff) {
                auto merged = mul_opt(c, r.constant);
                if (merged) out.coeff.emplace(v, *merged);
            }
            out.constant = mul_opt(l.constant, r.constant);
        } else {
            for (auto& [v, c] : r.coeff) {
                auto merged = mul_opt(l.constant, c);
                if (merged) out.coeff.emplace(v, *merged);
            }
            out.constant = mul_opt(l.constant, r.constant);
        }
        return out;
    }
    }
    throw Error("unreachable");
}

} // namespace

LinearDecomposition decompose_linear(const std::vector<Expr>& components,
                                     const std::vector<std::string>& targets) {
    std::set<std::string> tset(targets.begin(), targets.end());
    LinearDecomposition out;
    out.targets = targets;
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (const auto& t : targets) {
            long d = degree(components[i], t);
            if (d > 1)
                throw NotEssentiallyLinear("component " + std::to_string(i) + " has degree " +
                                           std::to_string(d) + " in " + t);
        }
        LinForm form = collect(components[i], tset);
        std::vector<Expr> row;
        row.reserve(targets.size());
        for (const auto& t : targets) {
            auto it = form.coeff.find(t);
            row.push_back(it == form.coeff.end() ? Expr::integer(0) : it->second);
        }
        out.A.push_back(std::move(row));
        out.B.push_back(form.constant ? *form.constant : Expr::integer(0));
    }
    return out;
}

Expr build_if(Expr b, Expr t, Expr e) {
    Expr s = Expr::sgnbar(std::move(b));
    return Expr::mul(s, std::move(t)) +
           Expr::mul(Expr::integer(1) - s, std::move(e));
}

Expr build_selector(const Expr& input, const std::vector<Int>& sentinels, const Dyadic& width) {
    // Threshold for sentinel s sits at s - 1: sgb(x - (s-1)) is exactly 1
    // on [s, inf) and exactly 0 up to s - 3/4.  The previous range must
    // end at or below that point.
    std::vector<Int> nonzero;
    Int prev = -1;
    for (const auto& s : sentinels) {
        if (s < 0) throw RangesOverlap("negative sentinel");
        if (s <= prev) throw RangesOverlap("sentinels must be strictly increasing");
        prev = s;
        if (s != 0) nonzero.push_back(s);
    }
    Dyadic three_quarters(Int(3), 2);
    for (std::size_t j = 0; j < nonzero.size(); ++j) {
        // 0's guaranteed range is the single point 0, all others [s, s+width)
        Dyadic prev_end = j == 0 ? Dyadic(0) : Dyadic(nonzero[j - 1]) + width;
        if (Dyadic(nonzero[j]) - three_quarters < prev_end)
            throw RangesOverlap("sentinel ranges too close at " + Dyadic(nonzero[j]).str());
    }
    std::optional<Expr> acc;
    Int base = 0;
    for (const auto& s : nonzero) {
        Int step = s - base;
        Expr shifted = s == 1 ? input : Expr::sub(input, Expr::integer(s - 1));
        Expr term = Expr::sgnbar(shifted);
        if (step != 1) term = Expr::mul(Expr::integer(step), term);
        acc = acc ? Expr::add(*acc, term) : term;
        base = s;
    }
    return acc ? *acc : Expr::integer(0);
}

Expr build_sigma(const Expr& input, const std::vector<Int>& sentinels, const Dyadic& width) {
    return Expr::sub(input, build_selector(input, sentinels, width));
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl) {
    switch (e.kind()) {
    case Expr::Kind::Var: {
        auto it = repl.find(e.name());
        return it == repl.end() ? e : it->second;
    }
    case Expr::Kind::Int:
        return e;
    case Expr::Kind::Add:
        return Expr::add(substitute(e.lhs(), repl), substitute(e.rhs(), repl));
    case Expr::Kind::Sub:
        return Expr::sub(substitute(e.lhs(), repl), substitute(e.rhs(), repl));
    case Expr::Kind::Mul:
        return Expr::mul(substitute(e.lhs(), repl), substitute(e.rhs(), repl));
    case Expr::Kind::SgnBar:
        return Expr::sgnbar(substitute(e.arg(), repl));
    case Expr::Kind::Div2:
        return Expr::div2(substitute(e.arg(), repl));
    }
    throw Error("unreachable");
}

namespace {

int precedence(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
        return 2;
    default:
        return 3;
    }
}

void print(std::ostringstream& os, const Expr& e, int parent_prec, bool right_operand) {
    int prec = precedence(e);
    bool need_parens = prec < parent_prec ||
                       (prec == parent_prec && right_operand && prec <= 2);
    if (need_parens) os << '(';
    switch (e.kind()) {
    case Expr::Kind::Var:
        os << e.name();
        break;
    case Expr::Kind::Int:
        os << e.value();
        break;
    case Expr::Kind::Add:
        print(os, e.lhs(), prec, false);
        os << " + ";
        print(os, e.rhs(), prec, true);
        break;
    case Expr::Kind::Sub:
        print(os, e.lhs(), prec, false);
        os << " - ";
        print(os, e.rhs(), prec, true);
        break;
    case Expr::Kind::Mul:
        print(os, e.lhs(), prec, false);
        os << " * ";
        print(os, e.rhs(), prec, true);
        break;
    case Expr::Kind::SgnBar:
        os << "sgb(";
        print(os, e.arg(), 0, false);
        os << ')';
        break;
    case Expr::Kind::Div2:
        os << "half(";
        print(os, e.arg(), 0, false);
        os << ')';
        break;
    }
    if (need_parens) os << ')';
}

} // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print(os, e, 0, false);
    return os.str();
}

} // namespace dode
