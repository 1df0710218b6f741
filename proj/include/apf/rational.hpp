#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals with a formal +infinity.
 *
 * Every valuation in this library is a v_K-normalized rational, and the
 * valuation of zero is +infinity.  Rational is therefore the union of
 * Q and {+inf}, with +inf absorbing addition and dominating comparison.
 * Arithmetic that has no consistent ultrametric meaning (inf - inf,
 * division by inf, ...) throws instead of inventing a value.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Rational {
public:
    Rational() = default;
    Rational(long long n) : q_(n) {}
    Rational(const BigInt& n) : q_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        q_ = BigRat(num, den);  // cpp_rational normalizes sign and gcd
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational infinity() {
        Rational r;
        r.inf_ = true;
        return r;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    bool is_zero() const { return !inf_ && q_ == 0; }
    bool is_positive() const { return inf_ || q_ > 0; }
    bool is_negative() const { return !inf_ && q_ < 0; }

    BigInt numerator() const {
        require_finite("numerator");
        return boost::multiprecision::numerator(q_);
    }
    BigInt denominator() const {
        require_finite("denominator");
        return boost::multiprecision::denominator(q_);
    }

    Rational operator-() const {
        require_finite("negate");
        Rational r;
        r.q_ = -q_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (o.inf_) inf_ = true;
        if (!inf_) q_ += o.q_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        if (o.inf_) throw std::domain_error("cannot subtract +inf");
        if (!inf_) q_ -= o.q_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        if (inf_ || o.inf_) {
            // only positive-scaling of +inf is meaningful here
            const Rational& fin = inf_ ? o : *this;
            if (!fin.inf_ && !fin.is_positive())
                throw std::domain_error("cannot scale +inf by a non-positive factor");
            inf_ = true;
            return *this;
        }
        q_ *= o.q_;
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.inf_) throw std::domain_error("cannot divide by +inf");
        if (o.q_ == 0) throw std::domain_error("division by zero");
        if (!inf_) {
            q_ /= o.q_;
        } else if (o.q_ < 0) {
            throw std::domain_error("cannot scale +inf by a non-positive factor");
        }
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.q_ == b.q_);
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) {
            if (a.inf_ && b.inf_) return std::strong_ordering::equal;
            return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (a.q_ < b.q_) return std::strong_ordering::less;
        if (a.q_ > b.q_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational reciprocal() const {
        require_finite("reciprocal");
        if (q_ == 0) throw std::domain_error("reciprocal of zero");
        Rational r;
        r.q_ = 1 / q_;
        return r;
    }

    /// Serialized form: "num/den" in lowest terms, or "inf".
    std::string str() const {
        if (inf_) return "inf";
        return boost::multiprecision::numerator(q_).str() + "/" +
               boost::multiprecision::denominator(q_).str();
    }

    /// Decimal rendering for plots, rounded half-up to `places` digits.
    std::string decimal(unsigned places = 12) const {
        if (inf_) return "inf";
        BigInt num = boost::multiprecision::numerator(q_);
        BigInt den = boost::multiprecision::denominator(q_);
        bool neg = num < 0;
        if (neg) num = -num;
        BigInt scale = 1;
        for (unsigned i = 0; i < places; ++i) scale *= 10;
        BigInt scaled = num * scale;
        BigInt quo = scaled / den;
        BigInt rem = scaled % den;
        if (2 * rem >= den) ++quo;
        BigInt ip = quo / scale;
        std::string frac = (quo % scale).str();
        frac.insert(frac.begin(), places - frac.size(), '0');
        std::string out = (neg ? "-" : "") + ip.str();
        if (places > 0) out += "." + frac;
        return out;
    }

    /// Parses "a/b", a bare integer, or "inf".
    static Rational parse(std::string_view s) {
        if (s == "inf" || s == "+inf") return infinity();
        auto slash = s.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(BigInt(std::string(s)));
            BigInt num{std::string(s.substr(0, slash))};
            BigInt den{std::string(s.substr(slash + 1))};
            return Rational(num, den);
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
        }
    }

private:
    void require_finite(const char* op) const {
        if (inf_) throw std::domain_error(std::string(op) + " of +inf");
    }

    BigRat q_{};
    bool inf_ = false;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace apf

#include <ostream>

namespace apf {
inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
}  // namespace apf
