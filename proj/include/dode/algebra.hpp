#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dode/llode.hpp"

namespace dode {

/// Argument/result sorts with the inclusion chain N < Z < Q < R.
enum class Sort { N, Z, Q, R };

bool subsort(Sort a, Sort b);
Sort join(Sort a, Sort b);
const char* sort_name(Sort s);
Sort parse_sort(const std::string& s);

enum class BaseOp { Zero, One, Proj, Length, Add, Sub, Mul, SgnBar, Half, IDiv2, IMod2 };

struct Signature {
    std::vector<Sort> in;
    std::vector<Sort> out;
    std::string str() const;
};

/// A program of the function algebra: base functions, partial
/// composition, linear length-ODE nodes and the effective-limit
/// operators.  Immutable.
class Term {
public:
    enum class Kind { Base, Compose, Llode, Elim, ElimStar };

    Kind kind;

    // Base
    BaseOp op = BaseOp::Zero;
    std::size_t proj_index = 0; // 1-based
    std::vector<Sort> base_in;

    // Compose
    TermPtr outer;
    std::vector<TermPtr> inners;

    // Llode
    std::shared_ptr<const LLODESystem> sys;
    std::vector<Sort> y_sorts;
    std::vector<Sort> declared_out; // LLODE components; defaults to R^dim

    // Elim / ElimStar
    TermPtr inner;
    std::vector<Int> witness; // polynomial coefficients, constant first
};

TermPtr make_base(BaseOp op, std::vector<Sort> in);
TermPtr make_proj(std::size_t i, std::vector<Sort> in);
TermPtr make_compose(TermPtr outer, std::vector<TermPtr> inners);
TermPtr make_llode(std::shared_ptr<const LLODESystem> sys, std::vector<Sort> y_sorts,
                   std::vector<Sort> declared_out = {});
TermPtr make_elim(TermPtr inner);
TermPtr make_elimstar(TermPtr inner, std::vector<Int> witness);

/// Full signature inference; throws SortMismatch on ill-formed
/// composition (composition is a partial operator).
Signature typecheck(const TermPtr& t);

bool has_limit_node(const TermPtr& t);

/// True iff at most one limit node appears and it is the outermost
/// constructor.
bool is_normal_form(const TermPtr& t);

/// Exact evaluation of a limit-free term.  Integer-sorted argument
/// positions must hold integers.  Throws LimitNodePresent / SortMismatch.
std::vector<Dyadic> eval_exact(const TermPtr& t, const std::vector<Dyadic>& args);

/// Evaluation with the 2^-n output guarantee.  Limit nodes are evaluated
/// per the effective-limit contract (inner at second argument 2^(n+1),
/// rounded to n+1 bits; ElimStar at 2^(p(n+1))).  Terms with a limit node
/// below a non-limit constructor are not in normal form and are rejected.
std::vector<Dyadic> eval_approx(const TermPtr& t, const std::vector<Dyadic>& args,
                                std::int64_t n);

/// ElimStar evaluation; p(n) = n recovers the plain ELim behaviour.
std::vector<Dyadic> eval_elimstar(const TermPtr& t, const std::vector<Dyadic>& args,
                                  std::int64_t n);

/// Witness polynomial evaluation, coefficients constant-first.
Int eval_witness(const std::vector<Int>& coeffs, const Int& n);

/// Necessary-condition check for the effective-limit premise:
/// consecutive approximants must stay within 2^-k + 2^-(k+1).
struct CauchyReport {
    struct Violation {
        std::int64_t k;
        std::string gap;
        std::string bound;
    };
    std::vector<Violation> violations;
    std::int64_t checked = 0;
    bool ok() const { return violations.empty(); }
};

CauchyReport cauchy_check(const TermPtr& t, const std::vector<Dyadic>& args,
                          std::int64_t n_max);

/// Trusted integer primitives floor(n/2) and n mod 2 on N.
TermPtr builtin_div2();
TermPtr builtin_mod2();

/// The clock function 2^(len(x)^2) as a length-ODE term (N -> N).
TermPtr builtin_B();

/// c-fold composition of the clock with itself.
TermPtr builtin_B_iterate(unsigned c);

} // namespace dode
