#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dode/dyadic.hpp"

namespace dode {

/// Dense matrix over exact dyadics.  Vectors are n x 1, scalars 1 x 1.
class DyMat {
public:
    DyMat() : rows_(0), cols_(0) {}
    DyMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static DyMat identity(std::size_t n);
    static DyMat scalar(Dyadic v);
    static DyMat column(std::vector<Dyadic> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Dyadic& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Dyadic& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<Dyadic>& flat() const { return a_; }

    friend DyMat operator+(const DyMat& a, const DyMat& b);
    friend DyMat operator-(const DyMat& a, const DyMat& b);
    friend DyMat operator*(const DyMat& a, const DyMat& b);
    friend bool operator==(const DyMat& a, const DyMat& b) = default;

private:
    std::size_t rows_, cols_;
    std::vector<Dyadic> a_;
};

/// A function tabulated by a deterministic callback on an integer step
/// index plus dyadic parameters.
using TabFn = std::function<DyMat(long long x, const std::vector<Dyadic>& params)>;

/// Discrete derivative f(x+1) - f(x).
DyMat delta(const TabFn& f, long long x, const std::vector<Dyadic>& params = {});

/// Sum_{x=a}^{b-1} f(x) for a < b, 0 for a == b, negated swap for a > b.
DyMat discrete_integral(const TabFn& f, long long a, long long b,
                        const std::vector<Dyadic>& params = {});

/// x(x-1)...(x-m+1); the empty product (m == 0) is 1.
Int falling_power(const Int& x, unsigned m);

/// Ordered product (1 + U'(x-1)) ... (1 + U'(0)); identity for x == 0.
/// Newest factor multiplies from the left.
DyMat falling_exp(const TabFn& u, long long x, const std::vector<Dyadic>& params = {});

/// Solution at x of f(t+1) = f(t) + A(t) f(t) + B(t), f(0) = g, computed
/// by the explicit sum of ordered products
///   f(x) = sum_{u=-1}^{x-1} (prod_{t=u+1}^{x-1} (1 + A(t))) B(u)
/// with B(-1) = g.
DyMat closed_form_solution(const TabFn& a, const TabFn& b, const DyMat& g, long long x,
                           const std::vector<Dyadic>& params = {});

} // namespace dode
