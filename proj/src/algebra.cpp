#include "dode/algebra.hpp"

#include <sstream>

#include "dode/errors.hpp"

namespace dode {

bool subsort(Sort a, Sort b) { return static_cast<int>(a) <= static_cast<int>(b); }

Sort join(Sort a, Sort b) { return subsort(a, b) ? b : a; }

const char* sort_name(Sort s) {
    switch (s) {
    case Sort::N: return "N";
    case Sort::Z: return "Z";
    case Sort::Q: return "Q";
    case Sort::R: return "R";
    }
    return "?";
}

Sort parse_sort(const std::string& s) {
    if (s == "N") return Sort::N;
    if (s == "Z") return Sort::Z;
    if (s == "Q") return Sort::Q;
    if (s == "R") return Sort::R;
    throw ParseError("unknown sort '" + s + "'");
}

std::string Signature::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < in.size(); ++i) os << (i ? "," : "") << sort_name(in[i]);
    os << ") -> (";
    for (std::size_t i = 0; i < out.size(); ++i) os << (i ? "," : "") << sort_name(out[i]);
    os << ')';
    return os.str();
}

TermPtr make_base(BaseOp op, std::vector<Sort> in) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Base;
    t->op = op;
    t->base_in = std::move(in);
    return t;
}

TermPtr make_proj(std::size_t i, std::vector<Sort> in) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Base;
    t->op = BaseOp::Proj;
    t->proj_index = i;
    t->base_in = std::move(in);
    return t;
}

TermPtr make_compose(TermPtr outer, std::vector<TermPtr> inners) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Compose;
    t->outer = std::move(outer);
    t->inners = std::move(inners);
    return t;
}

TermPtr make_llode(std::shared_ptr<const LLODESystem> sys, std::vector<Sort> y_sorts,
                   std::vector<Sort> declared_out) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Llode;
    t->sys = std::move(sys);
    t->y_sorts = std::move(y_sorts);
    if (declared_out.empty()) declared_out.assign(t->sys->dim(), Sort::R);
    t->declared_out = std::move(declared_out);
    return t;
}

TermPtr make_elim(TermPtr inner) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Elim;
    t->inner = std::move(inner);
    return t;
}

TermPtr make_elimstar(TermPtr inner, std::vector<Int> witness) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::ElimStar;
    t->inner = std::move(inner);
    t->witness = std::move(witness);
    return t;
}

namespace {

Signature base_signature(const Term& t) {
    switch (t.op) {
    case BaseOp::Zero:
    case BaseOp::One:
        return {t.base_in, {Sort::N}};
    case BaseOp::Proj:
        if (t.proj_index < 1 || t.proj_index > t.base_in.size())
            throw SortMismatch("proj index out of range");
        return {t.base_in, {t.base_in[t.proj_index - 1]}};
    case BaseOp::Length:
        if (t.base_in != std::vector<Sort>{Sort::N})
            throw SortMismatch("length accepts sort N only");
        return {t.base_in, {Sort::N}};
    case BaseOp::Add:
    case BaseOp::Sub:
    case BaseOp::Mul:
        if (t.base_in.size() != 2) throw SortMismatch("arithmetic base functions take 2 arguments");
        return {t.base_in, {join(t.base_in[0], t.base_in[1])}};
    case BaseOp::SgnBar:
    case BaseOp::Half:
        if (t.base_in.size() != 1) throw SortMismatch("unary base function");
        return {t.base_in, {Sort::R}};
    case BaseOp::IDiv2:
    case BaseOp::IMod2:
        if (t.base_in != std::vector<Sort>{Sort::N})
            throw SortMismatch("integer division primitives accept sort N only");
        return {t.base_in, {Sort::N}};
    }
    throw Error("unreachable");
}

} // namespace

Signature typecheck(const TermPtr& t) {
    if (!t) throw Error("typecheck: null term");
    switch (t->kind) {
    case Term::Kind::Base:
        return base_signature(*t);
    case Term::Kind::Compose: {
        if (t->inners.empty()) throw SortMismatch("compose needs at least one inner function");
        Signature outer = typecheck(t->outer);
        Signature first = typecheck(t->inners.front());
        std::vector<Sort> produced;
        for (const auto& g : t->inners) {
            Signature gs = typecheck(g);
            if (gs.in != first.in)
                throw SortMismatch("compose: inner functions disagree on the input signature");
            produced.insert(produced.end(), gs.out.begin(), gs.out.end());
        }
        if (produced.size() != outer.in.size())
            throw SortMismatch("compose: outer expects " + std::to_string(outer.in.size()) +
                               " values, inners produce " + std::to_string(produced.size()));
        for (std::size_t i = 0; i < produced.size(); ++i)
            if (!subsort(produced[i], outer.in[i]))
                throw SortMismatch("compose: position " + std::to_string(i + 1) + " has sort " +
                                   sort_name(produced[i]) + ", outer needs " +
                                   sort_name(outer.in[i]));
        return {first.in, outer.out};
    }
    case Term::Kind::Llode: {
        if (t->y_sorts.size() != t->sys->y_names().size())
            throw SortMismatch("llode: parameter sort list does not match the system");
        if (t->declared_out.size() != t->sys->dim())
            throw SortMismatch("llode: output sort list does not match the dimension");
        std::vector<Sort> in{Sort::N};
        in.insert(in.end(), t->y_sorts.begin(), t->y_sorts.end());
        if (t->sys->h()) {
            Signature hs = typecheck(t->sys->h());
            if (hs.in.size() != in.size())
                throw SortMismatch("llode: h arity does not match (x, y)");
            for (std::size_t i = 0; i < in.size(); ++i)
                if (!subsort(in[i], hs.in[i]))
                    throw SortMismatch("llode: h cannot accept the (x, y) sorts");
        }
        return {in, t->declared_out};
    }
    case Term::Kind::Elim:
    case Term::Kind::ElimStar: {
        Signature is = typecheck(t->inner);
        if (is.in.empty())
            throw SortMismatch("limit operator: inner needs a precision argument");
        for (Sort s : is.in)
            if (s != Sort::N)
                throw SortMismatch("limit operator: inner must have signature N^d x N -> R^d'");
        if (t->kind == Term::Kind::ElimStar) {
            if (t->witness.empty())
                throw SortMismatch("elimstar: missing modulus witness polynomial");
            for (const auto& c : t->witness)
                if (c < 0) throw SortMismatch("elimstar: witness coefficients must be >= 0");
        }
        std::vector<Sort> in(is.in.begin(), is.in.end() - 1);
        std::vector<Sort> out(is.out.size(), Sort::R);
        return {in, out};
    }
    }
    throw Error("unreachable");
}

bool has_limit_node(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Base:
        return false;
    case Term::Kind::Compose: {
        if (has_limit_node(t->outer)) return true;
        for (const auto& g : t->inners)
            if (has_limit_node(g)) return true;
        return false;
    }
    case Term::Kind::Llode:
        return t->sys->h() && has_limit_node(t->sys->h());
    case Term::Kind::Elim:
    case Term::Kind::ElimStar:
        return true;
    }
    return false;
}

bool is_normal_form(const TermPtr& t) {
    if (t->kind == Term::Kind::Elim || t->kind == Term::Kind::ElimStar)
        return !has_limit_node(t->inner);
    return !has_limit_node(t);
}

namespace {

void check_integer_args(const Signature& sig, const std::vector<Dyadic>& args) {
    if (sig.in.size() != args.size())
        throw SortMismatch("expected " + std::to_string(sig.in.size()) + " arguments, got " +
                           std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (sig.in[i] == Sort::N && (!args[i].is_integer() || args[i].is_negative()))
            throw SortMismatch("argument " + std::to_string(i + 1) + " must be in N, got " +
                               args[i].str());
        if (sig.in[i] == Sort::Z && !args[i].is_integer())
            throw SortMismatch("argument " + std::to_string(i + 1) + " must be in Z, got " +
                               args[i].str());
    }
}

std::vector<Dyadic> eval_base(const Term& t, const std::vector<Dyadic>& args) {
    switch (t.op) {
    case BaseOp::Zero:
        return {Dyadic(0)};
    case BaseOp::One:
        return {Dyadic(1)};
    case BaseOp::Proj:
        return {args[t.proj_index - 1]};
    case BaseOp::Length:
        return {Dyadic(Int(dy_length(args[0])))};
    case BaseOp::Add:
        return {args[0] + args[1]};
    case BaseOp::Sub:
        return {args[0] - args[1]};
    case BaseOp::Mul:
        return {args[0] * args[1]};
    case BaseOp::SgnBar:
        return {sgnbar_value(args[0])};
    case BaseOp::Half:
        return {args[0].half()};
    case BaseOp::IDiv2:
        return {Dyadic(args[0].mantissa() >> 1)};
    case BaseOp::IMod2:
        return {Dyadic(args[0].mantissa() & 1)};
    }
    throw Error("unreachable");
}

} // namespace

std::vector<Dyadic> eval_exact(const TermPtr& t, const std::vector<Dyadic>& args) {
    Signature sig = typecheck(t);
    if (has_limit_node(t))
        throw LimitNodePresent("term contains a limit node; use eval_approx");
    check_integer_args(sig, args);
    switch (t->kind) {
    case Term::Kind::Base:
        return eval_base(*t, args);
    case Term::Kind::Compose: {
        std::vector<Dyadic> mid;
        for (const auto& g : t->inners) {
            std::vector<Dyadic> gv = eval_exact(g, args);
            mid.insert(mid.end(), gv.begin(), gv.end());
        }
        return eval_exact(t->outer, mid);
    }
    case Term::Kind::Llode: {
        std::vector<Dyadic> y(args.begin() + 1, args.end());
        return solve_iterative(*t->sys, args[0].mantissa(), y);
    }
    default:
        throw LimitNodePresent("term contains a limit node; use eval_approx");
    }
}

Int eval_witness(const std::vector<Int>& coeffs, const Int& n) {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
    return acc;
}

std::vector<Dyadic> eval_approx(const TermPtr& t, const std::vector<Dyadic>& args,
                                std::int64_t n) {
    if (n < 0) throw Error("eval_approx: negative precision");
    Signature sig = typecheck(t);
    check_integer_args(sig, args);
    if (!has_limit_node(t)) {
        std::vector<Dyadic> v = eval_exact(t, args);
        for (auto& c : v) c = c.round(n);
        return v;
    }
    if (!is_normal_form(t))
        throw NotNormalForm("limit node below a non-limit constructor; hoist it first");
    if (t->kind == Term::Kind::Elim) {
        std::vector<Dyadic> inner_args = args;
        inner_args.push_back(Dyadic(pow2(n + 1)));
        std::vector<Dyadic> v = eval_approx(t->inner, inner_args, n + 1);
        for (auto& c : v) c = c.round(n + 1);
        return v;
    }
    if (t->kind == Term::Kind::ElimStar) return eval_elimstar(t, args, n);
    throw NotNormalForm("limit node below a non-limit constructor; hoist it first");
}

std::vector<Dyadic> eval_elimstar(const TermPtr& t, const std::vector<Dyadic>& args,
                                  std::int64_t n) {
    if (t->kind != Term::Kind::ElimStar) throw Error("eval_elimstar: not an elimstar node");
    typecheck(t);
    Int m = eval_witness(t->witness, Int(n + 1));
    std::vector<Dyadic> inner_args = args;
    inner_args.push_back(Dyadic(pow2(m.convert_to<std::int64_t>())));
    std::vector<Dyadic> v = eval_approx(t->inner, inner_args, n + 1);
    for (auto& c : v) c = c.round(n + 1);
    return v;
}

CauchyReport cauchy_check(const TermPtr& t, const std::vector<Dyadic>& args,
                          std::int64_t n_max) {
    if (t->kind != Term::Kind::Elim && t->kind != Term::Kind::ElimStar)
        throw Error("cauchy_check: term is not a limit node");
    typecheck(t);
    CauchyReport rep;
    auto approximant = [&](std::int64_t k) {
        Int idx = t->kind == Term::Kind::ElimStar ? eval_witness(t->witness, Int(k)) : Int(k);
        std::vector<Dyadic> inner_args = args;
        inner_args.push_back(Dyadic(pow2(idx.convert_to<std::int64_t>())));
        return eval_exact(t->inner, inner_args);
    };
    std::vector<Dyadic> prev = approximant(0);
    for (std::int64_t k = 0; k < n_max; ++k) {
        std::vector<Dyadic> next = approximant(k + 1);
        Dyadic bound = dy_pow2(k) + dy_pow2(k + 1);
        Dyadic gap(0);
        for (std::size_t i = 0; i < next.size(); ++i) {
            Dyadic g = (next[i] - prev[i]).abs();
            if (g > gap) gap = g;
        }
        if (gap > bound) rep.violations.push_back({k, gap.str(), bound.str()});
        ++rep.checked;
        prev = std::move(next);
    }
    return rep;
}

TermPtr builtin_div2() { return make_base(BaseOp::IDiv2, {Sort::N}); }
TermPtr builtin_mod2() { return make_base(BaseOp::IMod2, {Sort::N}); }

TermPtr builtin_B() {
    // Stage t of the outer system multiplies by 2 * 4^t; the inner system
    // supplies 4^len(x) as the h input.
    auto four_pow = std::make_shared<LLODESystem>(
        std::vector<Expr>{Expr::integer(1)},
        std::vector<Expr>{Expr::integer(3) * Expr::var("f0")}, std::vector<std::string>{});
    TermPtr h = make_llode(four_pow, {}, {Sort::N});
    auto sys = std::make_shared<LLODESystem>(
        std::vector<Expr>{Expr::integer(1)},
        std::vector<Expr>{Expr::var("f0") *
                          (Expr::integer(2) * Expr::var("h0") - Expr::integer(1))},
        std::vector<std::string>{}, "x", h);
    return make_llode(sys, {}, {Sort::N});
}

TermPtr builtin_B_iterate(unsigned c) {
    if (c == 0) throw Error("builtin_B_iterate: c must be >= 1");
    TermPtr b = builtin_B();
    TermPtr acc = b;
    for (unsigned i = 1; i < c; ++i) acc = make_compose(b, {acc});
    return acc;
}

} // namespace dode
