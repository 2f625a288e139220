#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace sched {

/// Exact rational number. Every quantity in the library (times, lengths,
/// weights, probabilities) is a Rat; nothing ever rounds. Values are kept
/// canonical: gcd(num, den) = 1 and den > 0.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den);
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    /// Parses "num/den" or a bare integer. Throws SchedError(ParseError)
    /// on malformed input or a non-positive denominator.
    static Rat parse(const std::string& s);

    /// Canonical serialization, always "num/den" (e.g. "3/1", "-1/2").
    std::string str() const;
    /// Decimal approximation for display columns only; never compared.
    double approx() const { return v_.get_d(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    /// Largest integer <= value, as a long. Throws if out of range.
    long floor_long() const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// min/max by exact comparison.
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Smallest integer k with k >= a/b for positive rationals, as a Rat helper
/// used when chopping weight ranges into equal steps.
long ceil_div_long(const Rat& num, const Rat& den);

}  // namespace sched
