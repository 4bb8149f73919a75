#include "dode/calculus.hpp"

#include "dode/errors.hpp"

namespace dode {

DyMat DyMat::identity(std::size_t n) {
    DyMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Dyadic(1);
    return m;
}

DyMat DyMat::scalar(Dyadic v) {
    DyMat m(1, 1);
    m.at(0, 0) = std::move(v);
    return m;
}

DyMat DyMat::column(std::vector<Dyadic> v) {
    DyMat m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = std::move(v[i]);
    return m;
}

DyMat operator+(const DyMat& a, const DyMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionMismatch("matrix addition shape mismatch");
    DyMat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
}

DyMat operator-(const DyMat& a, const DyMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionMismatch("matrix subtraction shape mismatch");
    DyMat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

DyMat operator*(const DyMat& a, const DyMat& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    DyMat r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Dyadic& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

DyMat delta(const TabFn& f, long long x, const std::vector<Dyadic>& params) {
    return f(x + 1, params) - f(x, params);
}

DyMat discrete_integral(const TabFn& f, long long a, long long b,
                        const std::vector<Dyadic>& params) {
    if (a == b) {
        DyMat shape = f(a, params);
        return DyMat(shape.rows(), shape.cols());
    }
    if (a > b) {
        DyMat v = discrete_integral(f, b, a, params);
        return DyMat(v.rows(), v.cols()) - v;
    }
    DyMat acc = f(a, params);
    for (long long x = a + 1; x < b; ++x) acc = acc + f(x, params);
    return acc;
}

Int falling_power(const Int& x, unsigned m) {
    Int r = 1;
    for (unsigned k = 0; k < m; ++k) r *= x - k;
    return r;
}

DyMat falling_exp(const TabFn& u, long long x, const std::vector<Dyadic>& params) {
    DyMat probe = u(0, params);
    if (probe.rows() != probe.cols()) throw DimensionMismatch("falling_exp: factors must be square");
    DyMat acc = DyMat::identity(probe.rows());
    for (long long t = 0; t < x; ++t) {
        DyMat factor = DyMat::identity(probe.rows()) + delta(u, t, params);
        acc = factor * acc; // newest factor on the left
    }
    return acc;
}

DyMat closed_form_solution(const TabFn& a, const TabFn& b, const DyMat& g, long long x,
                           const std::vector<Dyadic>& params) {
    if (g.cols() != 1) throw DimensionMismatch("closed_form_solution: g must be a column");
    std::size_t n = g.rows();
    DyMat acc(n, 1);
    for (long long u = -1; u < x; ++u) {
        DyMat prod = DyMat::identity(n);
        for (long long t = x - 1; t > u; --t) {
            DyMat at = a(t, params);
            if (at.rows() != n || at.cols() != n)
                throw DimensionMismatch("closed_form_solution: A must be square of matching size");
            prod = prod * (DyMat::identity(n) + at);
        }
        DyMat bu = u == -1 ? g : b(u, params);
        if (bu.rows() != n || bu.cols() != 1)
            throw DimensionMismatch("closed_form_solution: B must be a matching column");
        acc = acc + prod * bu;
    }
    return acc;
}

} // namespace dode
