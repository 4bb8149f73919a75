#include "dode/llode.hpp"

#include <set>
#include <sstream>

#include "dode/algebra.hpp"
#include "dode/calculus.hpp"
#include "dode/errors.hpp"

namespace dode {

LLODESystem::LLODESystem(std::vector<Expr> init, std::vector<Expr> rhs,
                         std::vector<std::string> y_names, std::string x_name, TermPtr h)
    : init_(std::move(init)), rhs_(std::move(rhs)), y_names_(std::move(y_names)),
      x_name_(std::move(x_name)), h_(std::move(h)) {
    if (init_.empty() || init_.size() != rhs_.size())
        throw Error("LLODESystem: init and rhs must have equal positive dimension");
    for (std::size_t i = 0; i < init_.size(); ++i)
        f_names_.push_back("f" + std::to_string(i));
    if (h_) {
        h_outputs_ = typecheck(h_).out.size();
        if (typecheck(h_).in.size() != 1 + y_names_.size())
            throw Error("LLODESystem: h arity must match (x, y)");
        if (has_limit_node(h_))
            throw LimitNodePresent("LLODESystem: h must be limit-free");
    }

    std::set<std::string> init_ok(y_names_.begin(), y_names_.end());
    for (const auto& e : init_)
        for (const auto& v : free_vars(e))
            if (!init_ok.count(v))
                throw UnboundVariable("init references '" + v + "' outside the parameters");

    std::set<std::string> rhs_ok = init_ok;
    rhs_ok.insert(x_name_);
    rhs_ok.insert(f_names_.begin(), f_names_.end());
    for (std::size_t j = 0; j < h_outputs_; ++j) rhs_ok.insert("h" + std::to_string(j));
    for (const auto& e : rhs_)
        for (const auto& v : free_vars(e))
            if (!rhs_ok.count(v))
                throw UnboundVariable("rhs references '" + v + "'" +
                                      (v.size() > 1 && v[0] == 'h' ? " (no h is attached)" : ""));

    decomp_ = decompose_linear(rhs_, f_names_);
}

namespace {

Env stage_env(const LLODESystem& sys, std::int64_t t, const std::vector<Dyadic>& f,
              const std::vector<Dyadic>& y) {
    Env env;
    for (std::size_t i = 0; i < sys.dim(); ++i) env[sys.f_names()[i]] = f[i];
    for (std::size_t i = 0; i < y.size(); ++i) env[sys.y_names()[i]] = y[i];
    Dyadic xarg(pow2(t) - 1); // the fundamental-observation stage argument 2^t - 1
    env[sys.x_name()] = xarg;
    if (sys.h()) {
        std::vector<Dyadic> hargs{xarg};
        hargs.insert(hargs.end(), y.begin(), y.end());
        std::vector<Dyadic> hv = eval_exact(sys.h(), hargs);
        for (std::size_t j = 0; j < hv.size(); ++j) env["h" + std::to_string(j)] = hv[j];
    }
    return env;
}

std::vector<Dyadic> initial_state(const LLODESystem& sys, const std::vector<Dyadic>& y) {
    if (y.size() != sys.y_names().size())
        throw Error("llode solve: expected " + std::to_string(sys.y_names().size()) +
                    " parameters, got " + std::to_string(y.size()));
    Env env;
    for (std::size_t i = 0; i < y.size(); ++i) env[sys.y_names()[i]] = y[i];
    return eval_exprs(sys.init(), env);
}

} // namespace

std::vector<Dyadic> solve_iterative(const LLODESystem& sys, const Int& x,
                                    const std::vector<Dyadic>& y) {
    if (x < 0) throw Error("llode solve: x must be non-negative");
    std::int64_t l = bit_length(x);
    std::vector<Dyadic> f = initial_state(sys, y);
    for (std::int64_t t = 0; t < l; ++t) {
        Env env = stage_env(sys, t, f, y);
        std::vector<Dyadic> u = eval_exprs(sys.rhs(), env);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += u[i];
    }
    return f;
}

std::vector<Dyadic> solve_explicit(const LLODESystem& sys, const Int& x,
                                   const std::vector<Dyadic>& y) {
    if (x < 0) throw Error("llode solve: x must be non-negative");
    std::int64_t l = bit_length(x);
    std::size_t n = sys.dim();
    std::vector<Dyadic> g = initial_state(sys, y);
    if (l == 0) return g;

    const LinearDecomposition& d = sys.decomposition();
    // Stage matrices A(t), B(t) are evaluated along the trajectory (their
    // entries may mention f inside sg-bar scopes), so fill them in step
    // order; each prefix value still comes from the full closed-form sum.
    std::vector<DyMat> a_vals, b_vals;
    std::vector<Dyadic> f = g;
    for (std::int64_t k = 1; k <= l; ++k) {
        Env env = stage_env(sys, k - 1, f, y);
        DyMat ak(n, n), bk(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) ak.at(i, j) = eval_expr(d.A[i][j], env);
            bk.at(i, 0) = eval_expr(d.B[i], env);
        }
        a_vals.push_back(std::move(ak));
        b_vals.push_back(std::move(bk));
        TabFn a_cb = [&](long long t, const std::vector<Dyadic>&) { return a_vals.at(t); };
        TabFn b_cb = [&](long long t, const std::vector<Dyadic>&) { return b_vals.at(t); };
        DyMat fk = closed_form_solution(a_cb, b_cb, DyMat::column(g), k);
        for (std::size_t i = 0; i < n; ++i) f[i] = fk.at(i, 0);
    }
    return f;
}

PrecisionSchedule plan_precision(std::int64_t alpha, const ModulusTail& p_h,
                                 const std::vector<std::vector<std::int64_t>>& z_bounds,
                                 const std::vector<std::int64_t>& y_bounds,
                                 std::int64_t l, std::int64_t n) {
    if (alpha < 1) throw Error("plan_precision: alpha must be >= 1");
    if (l < 0 || n < 0) throw Error("plan_precision: l and n must be >= 0");
    PrecisionSchedule sched;
    sched.alpha = alpha;
    sched.levels.assign(static_cast<std::size_t>(l) + 1, 0);
    sched.levels[static_cast<std::size_t>(l)] = n;
    for (std::int64_t i = l - 1; i >= 0; --i) {
        const auto& z = z_bounds.at(static_cast<std::size_t>(i));
        std::int64_t tail = p_h(z, bit_length(Int(i)), y_bounds);
        if (tail < 0) throw Error("plan_precision: p_h must be non-negative");
        sched.levels[static_cast<std::size_t>(i)] =
            alpha * sched.levels[static_cast<std::size_t>(i) + 1] + tail;
    }
    return sched;
}

std::vector<Dyadic> solve_rounded(const LLODESystem& sys, const Int& x,
                                  const std::vector<Dyadic>& y, std::int64_t n,
                                  const PrecisionSchedule& sched) {
    if (x < 0) throw Error("llode solve: x must be non-negative");
    std::int64_t l = bit_length(x);
    if (static_cast<std::int64_t>(sched.levels.size()) < l + 1)
        throw ScheduleTooShort("schedule has " + std::to_string(sched.levels.size()) +
                               " levels, need " + std::to_string(l + 1));
    if (sched.levels.back() > n) throw Error("schedule target below requested precision");
    std::vector<Dyadic> z = initial_state(sys, y);
    for (auto& zi : z) zi = zi.round(sched.levels[0]);
    for (std::int64_t t = 0; t < l; ++t) {
        Env env = stage_env(sys, t, z, y);
        std::vector<Dyadic> u = eval_exprs(sys.rhs(), env);
        std::int64_t level = sched.levels[static_cast<std::size_t>(t) + 1];
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = (z[i] + u[i]).round(level);
    }
    return z;
}

GrowthReport growth_report(const LLODESystem& sys, const Int& x, const std::vector<Dyadic>& y) {
    if (x < 0) throw Error("llode solve: x must be non-negative");
    std::int64_t l = bit_length(x);
    GrowthReport rep;
    std::vector<Dyadic> f = initial_state(sys, y);
    auto record = [&](const std::vector<Dyadic>& state) {
        std::vector<std::int64_t> row;
        std::int64_t sup = 0;
        for (const auto& v : state) {
            std::int64_t len = bit_length(v.abs().ceil());
            row.push_back(len);
            sup = std::max(sup, len);
        }
        rep.per_component.push_back(std::move(row));
        rep.sup.push_back(sup);
    };
    record(f);
    for (std::int64_t t = 0; t < l; ++t) {
        Env env = stage_env(sys, t, f, y);
        std::vector<Dyadic> u = eval_exprs(sys.rhs(), env);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += u[i];
        record(f);
    }
    return rep;
}

std::string GrowthReport::serialize() const {
    std::ostringstream os;
    for (std::size_t t = 0; t < per_component.size(); ++t) {
        os << "step " << t << ":";
        for (auto e : per_component[t]) os << ' ' << e;
        os << '\n';
    }
    return os.str();
}

} // namespace dode
