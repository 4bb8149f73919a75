#pragma once

#include <stdexcept>
#include <string>

namespace dode {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sgpoly / expression analysis
struct UnboundVariable : Error { using Error::Error; };
struct NotEssentiallyLinear : Error { using Error::Error; };
struct RangesOverlap : Error { using Error::Error; };

// calculus / linear algebra
struct DimensionMismatch : Error { using Error::Error; };

// llode
struct ScheduleTooShort : Error { using Error::Error; };

// algebra
struct SortMismatch : Error { using Error::Error; };
struct LimitNodePresent : Error { using Error::Error; };
struct NotNormalForm : Error { using Error::Error; };

// machine / codec
struct NotInImage : Error { using Error::Error; };
struct BadSymbol : Error { using Error::Error; };
struct OddLengthWord : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// parsing (dyadic literals, DSL, TM spec files)
struct ParseError : Error { using Error::Error; };

} // namespace dode
