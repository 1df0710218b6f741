#pragma once

/**
 * @file valuation.hpp
 * @brief p-adic valuations of integers and binomial coefficients, and
 *        ultrametric sums of valuation bounds.
 *
 * A ValBound is a valuation that is either known exactly or known only
 * from below.  Adding field elements can cancel leading terms, so the
 * valuation of a sum is exact only when a unique summand attains the
 * minimum; ties degrade to a lower bound.
 */

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "apf/rational.hpp"

namespace apf {

/// Base local field: a finite extension of Q_p, or an equicharacteristic
/// local field with residue characteristic p.  Only p and the absolute
/// ramification index e(K/Q_p) enter any computation.
struct BaseField {
    std::uint32_t p = 2;
    bool equal_char = false;
    std::uint32_t e_abs = 1;  // ignored when equal_char

    void validate() const {
        if (!is_prime(p)) throw std::invalid_argument("base residue characteristic must be prime");
        if (!equal_char && e_abs < 1)
            throw std::invalid_argument("absolute ramification index must be >= 1");
    }

    /// v_K(p): e_abs in mixed characteristic, +inf in characteristic p.
    Rational v_of_p() const {
        return equal_char ? Rational::infinity() : Rational(static_cast<long long>(e_abs));
    }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
};

inline bool operator==(const BaseField& a, const BaseField& b) {
    return a.p == b.p && a.equal_char == b.equal_char &&
           (a.equal_char || a.e_abs == b.e_abs);
}

/// A valuation bound: the valuation equals `lower` when `exact`, and is
/// only known to be >= `lower` otherwise.  lower = +inf forces exact
/// (the element is zero).
struct ValBound {
    Rational lower;
    bool exact = true;

    ValBound() : lower(Rational::infinity()), exact(true) {}
    ValBound(Rational v, bool ex = true) : lower(std::move(v)), exact(ex) {
        if (lower.is_infinite()) exact = true;
    }

    static ValBound at_least(Rational v) { return ValBound(std::move(v), false); }

    bool is_infinite() const { return lower.is_infinite(); }

    /// Shifting by an exactly known amount preserves exactness.
    friend ValBound operator+(const ValBound& b, const Rational& r) {
        if (r.is_infinite()) return ValBound();
        return ValBound(b.lower + r, b.exact);
    }

    friend bool operator==(const ValBound& a, const ValBound& b) {
        return a.lower == b.lower && a.exact == b.exact;
    }
};

/// Largest k with p^k | m.  Callers must map m = 0 to +inf themselves.
inline std::uint64_t vp_int(const BigInt& m, std::uint32_t p) {
    if (m == 0) throw std::invalid_argument("valuation of zero integer requested");
    BigInt n = m < 0 ? BigInt(-m) : m;
    std::uint64_t k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// v_p of the binomial coefficient C(j, i), by Kummer's theorem: the
/// number of carries when adding i and j-i in base p.
inline std::uint64_t vp_binomial(std::uint64_t j, std::uint64_t i, std::uint32_t p) {
    if (i > j) throw std::invalid_argument("vp_binomial requires i <= j");
    std::uint64_t a = i, b = j - i;
    std::uint64_t carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        std::uint64_t digit = a % p + b % p + carry;
        carry = digit >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return carries;
}

/// v_K of an ordinary integer.  Mixed characteristic: e_abs * v_p(m).
/// Equal characteristic: integers are residue-field constants, so the
/// valuation is 0 unless p | m, in which case the image is 0 itself.
inline Rational v_of_integer_in_K(const BigInt& m, const BaseField& base) {
    if (m == 0) return Rational::infinity();
    std::uint64_t v = vp_int(m, base.p);
    if (base.equal_char) return v > 0 ? Rational::infinity() : Rational(0);
    return Rational(static_cast<long long>(base.e_abs)) * Rational(static_cast<long long>(v));
}

/// v_K(C(j, i)) without forming the binomial coefficient.
inline Rational v_binomial_in_K(std::uint64_t j, std::uint64_t i, const BaseField& base) {
    std::uint64_t v = vp_binomial(j, i, base.p);
    if (base.equal_char) return v > 0 ? Rational::infinity() : Rational(0);
    return Rational(static_cast<long long>(base.e_abs)) * Rational(static_cast<long long>(v));
}

/// Valuation bound of a sum of terms.  Infinite terms are zero summands
/// and are ignored; a tied minimum may cancel, so the result is exact
/// only when a single exact term attains it.
inline ValBound val_sum(std::span<const ValBound> terms) {
    if (terms.empty()) throw std::invalid_argument("val_sum of empty term list");
    Rational m = Rational::infinity();
    for (const auto& t : terms) m = min(m, t.lower);
    if (m.is_infinite()) return ValBound();  // sum of zeros
    int attained = 0;
    bool attained_exact = false;
    for (const auto& t : terms) {
        if (t.lower == m) {
            ++attained;
            attained_exact = t.exact;
        }
    }
    return ValBound(m, attained == 1 && attained_exact);
}

inline ValBound val_sum(std::initializer_list<ValBound> terms) {
    return val_sum(std::span<const ValBound>(terms.begin(), terms.size()));
}

inline ValBound val_sum(const std::vector<ValBound>& terms) {
    return val_sum(std::span<const ValBound>(terms.data(), terms.size()));
}

}  // namespace apf
