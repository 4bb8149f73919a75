#include "dode/dyadic.hpp"

#include <sstream>

namespace dode {

Int pow2(std::int64_t k) {
    Int one = 1;
    return one << static_cast<unsigned>(k);
}

std::int64_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(n)) + 1;
}

Dyadic::Dyadic(Int mantissa, std::int64_t exponent) : mant_(std::move(mantissa)), exp_(exponent) {
    if (exponent < 0) throw Error("Dyadic: negative exponent");
    canonicalize();
}

void Dyadic::canonicalize() {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && (mant_ & 1) == 0) {
        mant_ >>= 1; // mant_ even, exact for either sign
        --exp_;
    }
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.mant_ = -mant_;
    r.exp_ = exp_;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    std::int64_t e = std::max(a.exp_, b.exp_);
    Int m = (a.mant_ << static_cast<unsigned>(e - a.exp_)) +
            (b.mant_ << static_cast<unsigned>(e - b.exp_));
    return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

Dyadic Dyadic::half() const { return Dyadic(mant_, exp_ + 1); }

Dyadic Dyadic::round(std::int64_t n) const {
    if (n < 0) throw Error("Dyadic::round: negative precision");
    if (exp_ <= n) return *this;
    std::int64_t shift = exp_ - n;
    bool neg = mant_ < 0;
    Int a = neg ? Int(-mant_) : mant_;
    Int q = a >> static_cast<unsigned>(shift);
    Int rem = a - (q << static_cast<unsigned>(shift));
    Int half_ulp = pow2(shift - 1);
    if (rem > half_ulp || (rem == half_ulp && (q & 1) == 1)) ++q;
    if (neg) q = -q;
    return Dyadic(std::move(q), n);
}

Int Dyadic::floor() const {
    if (exp_ == 0) return mant_;
    if (mant_ >= 0) return mant_ >> static_cast<unsigned>(exp_);
    Int a = -mant_;
    Int q = a >> static_cast<unsigned>(exp_);
    if ((q << static_cast<unsigned>(exp_)) != a) ++q;
    return -q;
}

Int Dyadic::ceil() const { return -((-*this).floor()); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    std::int64_t e = std::max(a.exp_, b.exp_);
    Int ma = a.mant_ << static_cast<unsigned>(e - a.exp_);
    Int mb = b.mant_ << static_cast<unsigned>(e - b.exp_);
    if (ma < mb) return std::strong_ordering::less;
    if (ma > mb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Dyadic Dyadic::parse(const std::string& text) {
    std::size_t i = 0;
    auto fail = [&](const std::string& why) -> void {
        throw ParseError("bad dyadic literal '" + text + "': " + why);
    };
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    auto digits = [&]() {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected digits");
        return text.substr(start, i - start);
    };
    Int ipart(digits());
    Dyadic result;
    if (i < text.size() && text[i] == '/') {
        if (text.compare(i, 3, "/2^") != 0) fail("expected /2^e");
        i += 3;
        Int e(digits());
        if (e > 1000000000) fail("exponent too large");
        result = Dyadic(ipart, e.convert_to<std::int64_t>());
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        std::string frac = digits();
        // I.F = (I*10^k + F) / 10^k; dyadic iff numerator divisible by 5^k
        Int num = ipart;
        Int five = 1;
        for (char c : frac) {
            num = num * 10 + (c - '0');
            five *= 5;
        }
        if (num % five != 0) fail("not a dyadic rational");
        result = Dyadic(num / five, static_cast<std::int64_t>(frac.size()));
    } else {
        result = Dyadic(ipart);
    }
    if (i != text.size()) fail("trailing characters");
    return neg ? -result : result;
}

std::string Dyadic::str() const {
    std::ostringstream os;
    os << mant_;
    if (exp_ > 0) os << "/2^" << exp_;
    return os.str();
}

std::string Dyadic::decimal() const {
    // m / 2^e == m * 5^e / 10^e: exactly e decimal fraction digits.
    Int a = mant_ < 0 ? Int(-mant_) : mant_;
    Int five = 1;
    for (std::int64_t k = 0; k < exp_; ++k) five *= 5;
    Int scaled = a * five;
    Int ten = 1;
    for (std::int64_t k = 0; k < exp_; ++k) ten *= 10;
    Int ip = scaled / ten;
    Int fp = scaled % ten;
    std::ostringstream os;
    if (mant_ < 0) os << '-';
    os << ip;
    if (exp_ > 0) {
        std::string fs = fp.str();
        fs.insert(fs.begin(), static_cast<std::size_t>(exp_) - fs.size(), '0');
        while (!fs.empty() && fs.back() == '0') fs.pop_back();
        if (!fs.empty()) os << '.' << fs;
    }
    return os.str();
}

Dyadic dy_pow2(std::int64_t n) {
    if (n >= 0) return Dyadic(Int(1), n);
    return Dyadic(pow2(-n));
}

std::int64_t dy_length(const Dyadic& a) {
    if (!a.is_integer() || a.is_negative())
        throw Error("length: argument must be a non-negative integer, got " + a.str());
    return bit_length(a.mantissa());
}

} // namespace dode
