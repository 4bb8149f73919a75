#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dode/expr.hpp"

namespace dode {

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// A linear length-ODE system
///   f(0, y) = init(y)
///   f(x+1, y) = f(x, y) + (len(x+1) - len(x)) * rhs(f, h(x, y), x, y)
/// with rhs essentially linear in the f components (checked at
/// construction).  The state advances only at length jumps, so a solve at
/// x walks len(x) stages with the stage-t x argument fixed to 2^t - 1.
class LLODESystem {
public:
    /// Throws NotEssentiallyLinear / UnboundVariable on a malformed rhs.
    LLODESystem(std::vector<Expr> init, std::vector<Expr> rhs,
                std::vector<std::string> y_names, std::string x_name = "x",
                TermPtr h = nullptr);

    std::size_t dim() const { return init_.size(); }
    const std::vector<Expr>& init() const { return init_; }
    const std::vector<Expr>& rhs() const { return rhs_; }
    const std::vector<std::string>& y_names() const { return y_names_; }
    const std::string& x_name() const { return x_name_; }
    const std::vector<std::string>& f_names() const { return f_names_; }
    const TermPtr& h() const { return h_; }
    std::size_t h_outputs() const { return h_outputs_; }
    const LinearDecomposition& decomposition() const { return decomp_; }

private:
    std::vector<Expr> init_;
    std::vector<Expr> rhs_;
    std::vector<std::string> y_names_;
    std::string x_name_;
    std::vector<std::string> f_names_;
    TermPtr h_;
    std::size_t h_outputs_ = 0;
    LinearDecomposition decomp_;
};

/// Exact value of f(x, y) via the length change of variable (len(x)
/// update steps, not x).
std::vector<Dyadic> solve_iterative(const LLODESystem& sys, const Int& x,
                                    const std::vector<Dyadic>& y = {});

/// Same value through the explicit sum-of-ordered-products closed form;
/// cross-validates solve_iterative.
std::vector<Dyadic> solve_explicit(const LLODESystem& sys, const Int& x,
                                   const std::vector<Dyadic>& y = {});

/// Per-stage precision levels p(0..l) with p(l) = n and
/// p(i) = alpha * p(i+1) + p_h(Z_i, len(i), Y).
struct PrecisionSchedule {
    std::int64_t alpha = 1;
    std::vector<std::int64_t> levels;
};

using ModulusTail = std::function<std::int64_t(const std::vector<std::int64_t>& z_bounds,
                                               std::int64_t len_step,
                                               const std::vector<std::int64_t>& y_bounds)>;

PrecisionSchedule plan_precision(std::int64_t alpha, const ModulusTail& p_h,
                                 const std::vector<std::vector<std::int64_t>>& z_bounds,
                                 const std::vector<std::int64_t>& y_bounds,
                                 std::int64_t l, std::int64_t n);

/// Staged approximation: the stage-t state is rounded to levels[t].
/// Throws ScheduleTooShort when the schedule covers fewer than len(x)
/// stages.
std::vector<Dyadic> solve_rounded(const LLODESystem& sys, const Int& x,
                                  const std::vector<Dyadic>& y, std::int64_t n,
                                  const PrecisionSchedule& sched);

/// Trace of bit lengths of the sup norm of the integer part, one entry
/// per stage (initial state included).
struct GrowthReport {
    std::vector<std::vector<std::int64_t>> per_component; // [stage][component]
    std::vector<std::int64_t> sup;                        // [stage]
    std::string serialize() const;                        // "step t: e0 e1 ..."
};

GrowthReport growth_report(const LLODESystem& sys, const Int& x,
                           const std::vector<Dyadic>& y = {});

} // namespace dode
