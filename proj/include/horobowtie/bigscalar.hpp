#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace horobowtie {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact rational scalar used for every paper constant and certified
/// comparison. Arithmetic never rounds; log2_approx is the only lossy view.
class BigScalar {
  public:
    BigScalar() : v_(0) {}
    BigScalar(long long v) : v_(v) {}
    BigScalar(long long num, long long den) : v_(BigRat(num, den)) {
        if (den == 0) throw std::invalid_argument("BigScalar: zero denominator");
    }
    explicit BigScalar(BigRat v) : v_(std::move(v)) {}

    // Exact: doubles are dyadic rationals.
    static BigScalar from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("BigScalar: non-finite double");
        return BigScalar(BigRat(v));
    }

    /// 2^k for any integer k (negative k gives 1/2^|k|).
    static BigScalar pow2(long k) {
        BigInt one = 1;
        if (k >= 0) return BigScalar(BigRat(one << static_cast<unsigned>(k)));
        return BigScalar(BigRat(one, one << static_cast<unsigned>(-k)));
    }

    /// Smallest convenient exact value >= v; gap is 2^-30 < 1e-6.
    static BigScalar upper_bound_of(double v) { return from_double(v) + pow2(-30); }

    BigScalar pow(unsigned e) const {
        BigScalar r(1), b(*this);
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    friend BigScalar operator+(const BigScalar& a, const BigScalar& b) { return BigScalar(a.v_ + b.v_); }
    friend BigScalar operator-(const BigScalar& a, const BigScalar& b) { return BigScalar(a.v_ - b.v_); }
    friend BigScalar operator*(const BigScalar& a, const BigScalar& b) { return BigScalar(a.v_ * b.v_); }
    friend BigScalar operator/(const BigScalar& a, const BigScalar& b) {
        if (b.v_ == 0) throw std::domain_error("BigScalar: division by zero");
        return BigScalar(a.v_ / b.v_);
    }
    friend bool operator==(const BigScalar& a, const BigScalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigScalar& a, const BigScalar& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigScalar& a, const BigScalar& b) { return a.v_ < b.v_; }
    friend bool operator<=(const BigScalar& a, const BigScalar& b) { return a.v_ <= b.v_; }
    friend bool operator>(const BigScalar& a, const BigScalar& b) { return a.v_ > b.v_; }
    friend bool operator>=(const BigScalar& a, const BigScalar& b) { return a.v_ >= b.v_; }

    bool is_negative() const { return v_ < 0; }
    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return boost::multiprecision::denominator(v_) == 1; }

    BigInt floor() const {
        BigInt n = boost::multiprecision::numerator(v_);
        BigInt d = boost::multiprecision::denominator(v_);
        BigInt q = n / d;
        if (n < 0 && q * d != n) --q;
        return q;
    }

    /// log2(value); error < 1e-9 for values up to ~4096 bits.
    double log2_approx() const {
        if (v_ <= 0) throw std::domain_error("BigScalar: log2 of non-positive value");
        return log2_int(boost::multiprecision::numerator(v_)) -
               log2_int(boost::multiprecision::denominator(v_));
    }

    double to_double() const { return static_cast<double>(v_); }

    std::string to_fraction_string() const {
        return boost::multiprecision::numerator(v_).str() + "/" +
               boost::multiprecision::denominator(v_).str();
    }

    const BigRat& value() const { return v_; }

  private:
    static double log2_int(const BigInt& n) {
        // Top 53 bits into a double, remainder as an exponent shift.
        const long bits = static_cast<long>(boost::multiprecision::msb(n)) + 1;
        if (bits <= 62) return std::log2(static_cast<double>(n.convert_to<std::int64_t>()));
        const long shift = bits - 62;
        BigInt top = n >> static_cast<unsigned>(shift);
        return static_cast<double>(shift) + std::log2(static_cast<double>(top.convert_to<std::int64_t>()));
    }

    BigRat v_;
};

/// Certified lower bound on 2^x for rational x; exact when x is an integer.
/// The fractional part is bounded below through double arithmetic minus a
/// 1e-9 safety margin, which only weakens derived lower bounds.
inline BigScalar pow2_lower(const BigScalar& x) {
    BigInt fl = x.floor();
    if (fl < -1100000 || fl > 1100000)
        throw std::domain_error("pow2_lower: exponent out of supported range");
    const long i = fl.convert_to<long>();
    BigScalar base = BigScalar::pow2(i);
    BigScalar frac = x - BigScalar(BigRat(fl));
    if (frac.is_zero()) return base;
    double f = frac.to_double();  // in [0,1)
    double lo = std::exp2(f) - 1e-9;
    if (lo < 1.0) lo = 1.0;
    return base * BigScalar::from_double(lo);
}

}  // namespace horobowtie
