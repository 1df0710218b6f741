#pragma once

/**
 * @file pl_function.hpp
 * @brief Exact algebra of continuous, strictly increasing piecewise-linear
 *        functions on [0, inf).
 *
 * A PLFunction is stored as its value at 0, the strictly increasing list
 * of vertex abscissae, and one slope per piece (the last slope rules the
 * unbounded piece).  Adjacent pieces with equal slope are merged on
 * construction, so equality of functions is equality of representations.
 *
 * The operations here are the computational content of Herbrand
 * transition functions: composition (transitivity of towers), inversion
 * (phi <-> psi), lower envelopes of line families (Newton copolygon
 * boundaries), axis rescaling, agreement prefixes, and the shift between
 * the Lubin and Serre normalizations.
 */

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apf/rational.hpp"
#include "apf/valuation.hpp"

namespace apf {

class PLFunction {
public:
    /// slopes.size() must equal vertex_xs.size() + 1; slope j applies
    /// between vertex j-1 and vertex j.
    PLFunction(Rational value_at_0, std::vector<Rational> slopes, std::vector<Rational> vertex_xs)
        : value_at_0_(std::move(value_at_0)), slopes_(std::move(slopes)), xs_(std::move(vertex_xs)) {
        if (slopes_.size() != xs_.size() + 1)
            throw std::invalid_argument("piece count must exceed vertex count by one");
        if (value_at_0_.is_infinite())
            throw std::invalid_argument("value at 0 must be finite");
        for (const auto& s : slopes_)
            if (s.is_infinite() || !s.is_positive())
                throw std::invalid_argument("slopes must be finite and positive");
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            if (xs_[j].is_infinite() || !xs_[j].is_positive())
                throw std::invalid_argument("vertex abscissae must be finite and positive");
            if (j > 0 && !(xs_[j - 1] < xs_[j]))
                throw std::invalid_argument("vertex abscissae must be strictly increasing");
        }
        merge_collinear();
        recompute_ys();
    }

    static PLFunction identity() { return PLFunction(Rational(0), {Rational(1)}, {}); }

    const Rational& value_at_0() const { return value_at_0_; }
    const std::vector<Rational>& slopes() const { return slopes_; }
    const std::vector<Rational>& vertex_xs() const { return xs_; }
    const std::vector<Rational>& vertex_ys() const { return ys_; }
    std::size_t vertex_count() const { return xs_.size(); }
    const Rational& initial_slope() const { return slopes_.front(); }
    const Rational& final_slope() const { return slopes_.back(); }

    bool is_concave() const { return strictly_ordered(std::greater<>()); }
    bool is_convex() const { return strictly_ordered(std::less<>()); }

    Rational eval(const Rational& x) const {
        if (x.is_infinite() || x.is_negative())
            throw std::invalid_argument("PLFunction evaluated outside [0, inf)");
        Rational y = value_at_0_;
        Rational prev(0);
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            if (x <= xs_[j]) return y + slopes_[j] * (x - prev);
            y = ys_[j];
            prev = xs_[j];
        }
        return y + slopes_.back() * (x - prev);
    }

    /// Unique x with f(x) = y; requires y >= f(0).
    Rational preimage(const Rational& y) const {
        if (y.is_infinite() || y < value_at_0_)
            throw std::invalid_argument("preimage below the range of the function");
        Rational x(0);
        Rational prev_y = value_at_0_;
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            if (y <= ys_[j]) return x + (y - prev_y) / slopes_[j];
            x = xs_[j];
            prev_y = ys_[j];
        }
        return x + (y - prev_y) / slopes_.back();
    }

    /// Slope of the piece immediately to the right of x.
    const Rational& slope_right_of(const Rational& x) const {
        std::size_t idx = 0;
        while (idx < xs_.size() && xs_[idx] <= x) ++idx;
        return slopes_[idx];
    }

    friend bool operator==(const PLFunction& a, const PLFunction& b) {
        return a.value_at_0_ == b.value_at_0_ && a.slopes_ == b.slopes_ && a.xs_ == b.xs_;
    }

private:
    template <class Cmp>
    bool strictly_ordered(Cmp cmp) const {
        for (std::size_t j = 0; j + 1 < slopes_.size(); ++j)
            if (!cmp(slopes_[j], slopes_[j + 1])) return false;
        return true;
    }

    void merge_collinear() {
        std::vector<Rational> slopes{slopes_.front()};
        std::vector<Rational> xs;
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            if (slopes_[j + 1] == slopes.back()) continue;  // not a real corner
            xs.push_back(xs_[j]);
            slopes.push_back(slopes_[j + 1]);
        }
        slopes_ = std::move(slopes);
        xs_ = std::move(xs);
    }

    void recompute_ys() {
        ys_.clear();
        Rational y = value_at_0_;
        Rational prev(0);
        for (std::size_t j = 0; j < xs_.size(); ++j) {
            y += slopes_[j] * (xs_[j] - prev);
            prev = xs_[j];
            ys_.push_back(y);
        }
    }

    Rational value_at_0_;
    std::vector<Rational> slopes_;
    std::vector<Rational> xs_;
    std::vector<Rational> ys_;
};

/// Functional inverse; requires f to be a bijection of [0, inf), i.e. f(0) = 0.
inline PLFunction inverse(const PLFunction& f) {
    if (!f.value_at_0().is_zero())
        throw std::domain_error("not a bijection of [0, inf)");
    std::vector<Rational> slopes;
    slopes.reserve(f.slopes().size());
    for (const auto& s : f.slopes()) slopes.push_back(s.reciprocal());
    return PLFunction(Rational(0), std::move(slopes), f.vertex_ys());
}

/// Exact composition x -> outer(inner(x)).
inline PLFunction compose(const PLFunction& outer, const PLFunction& inner) {
    if (inner.value_at_0().is_negative())
        throw std::invalid_argument("inner range escapes [0, inf)");
    std::vector<Rational> xs = inner.vertex_xs();
    for (const auto& u : outer.vertex_xs())
        if (inner.value_at_0() < u) xs.push_back(inner.preimage(u));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Rational> slopes;
    slopes.reserve(xs.size() + 1);
    Rational pos(0);
    for (std::size_t j = 0; j <= xs.size(); ++j) {
        if (j > 0) pos = xs[j - 1];
        slopes.push_back(outer.slope_right_of(inner.eval(pos)) * inner.slope_right_of(pos));
    }
    return PLFunction(outer.eval(inner.value_at_0()), std::move(slopes), std::move(xs));
}

/// Exact sup of the initial interval on which f and g coincide:
/// +inf when identical, 0 when they already differ at/near 0.
inline Rational agreement_prefix(const PLFunction& f, const PLFunction& g) {
    if (f.value_at_0() != g.value_at_0()) return Rational(0);
    Rational pos(0);
    std::size_t i = 0, j = 0;
    const auto& fx = f.vertex_xs();
    const auto& gx = g.vertex_xs();
    while (true) {
        if (f.slopes()[i] != g.slopes()[j]) return pos;
        Rational next_f = i < fx.size() ? fx[i] : Rational::infinity();
        Rational next_g = j < gx.size() ? gx[j] : Rational::infinity();
        Rational next = min(next_f, next_g);
        if (next.is_infinite()) return Rational::infinity();
        pos = next;
        if (next == next_f) ++i;
        if (next == next_g) ++j;
    }
}

/// A half-plane constraint y <= slope * x + intercept.
struct Line {
    Rational slope;
    ValBound intercept;

    Line(Rational s, ValBound c) : slope(std::move(s)), intercept(std::move(c)) {
        if (slope.is_infinite() || slope.is_negative())
            throw std::invalid_argument("line slope must be finite and >= 0");
    }
    Line(Rational s, Rational c) : Line(std::move(s), ValBound(std::move(c))) {}

    Rational at(const Rational& x) const { return slope * x + intercept.lower; }
};

struct Envelope {
    PLFunction fn;
    /// True when a line that is active on a set of positive length has an
    /// inexact intercept, i.e. the envelope is only a pointwise lower bound.
    bool uncertain = false;
};

/// Pointwise minimum of a finite family of lines over [0, inf), as a
/// concave PLFunction.  Lines with intercept +inf are absent constraints.
inline Envelope lower_envelope(std::span<const Line> lines) {
    struct Cand {
        Rational slope;
        Rational c;
        bool exact;
    };
    std::vector<Cand> cands;
    for (const auto& l : lines) {
        if (l.intercept.is_infinite()) continue;
        cands.push_back({l.slope, l.intercept.lower, l.intercept.exact});
    }
    if (cands.empty()) throw std::invalid_argument("zero polynomial");
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.slope != b.slope) return a.slope > b.slope;
        if (a.c != b.c) return a.c < b.c;
        return a.exact && !b.exact;
    });
    // keep only the lowest line per slope (exact preferred on ties)
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const Cand& a, const Cand& b) { return a.slope == b.slope; }),
                cands.end());

    // monotone chain over slopes in decreasing order; start[k] is where
    // stack line k takes over from line k-1 (line 0 active from -inf)
    std::vector<Cand> stack;
    std::vector<Rational> start;
    for (const auto& l : cands) {
        while (!stack.empty()) {
            Rational x = (l.c - stack.back().c) / (stack.back().slope - l.slope);
            if (!start.empty() && x <= start.back()) {
                stack.pop_back();
                start.pop_back();
                continue;
            }
            stack.push_back(l);
            start.push_back(x);
            break;
        }
        if (stack.empty()) stack.push_back(l);
    }

    // restrict to [0, inf): the piece containing 0 is the last with start <= 0
    std::size_t k0 = 0;
    for (std::size_t k = 0; k < start.size(); ++k)
        if (start[k] <= Rational(0)) k0 = k + 1;

    std::vector<Rational> slopes, xs;
    bool uncertain = false;
    for (std::size_t k = k0; k < stack.size(); ++k) {
        slopes.push_back(stack[k].slope);
        if (k > k0) xs.push_back(start[k - 1]);
        uncertain = uncertain || !stack[k].exact;
    }
    if (!slopes.back().is_positive())
        throw std::domain_error("envelope is not strictly increasing");
    Rational v0 = stack[k0].c;  // line value at x = 0
    return Envelope{PLFunction(v0, std::move(slopes), std::move(xs)), uncertain};
}

inline Envelope lower_envelope(const std::vector<Line>& lines) {
    return lower_envelope(std::span<const Line>(lines.data(), lines.size()));
}

/// x -> out_scale * f(x / in_scale).
inline PLFunction conjugate_scale(const PLFunction& f, const Rational& out_scale,
                                  const Rational& in_scale) {
    if (!out_scale.is_positive() || !in_scale.is_positive() || out_scale.is_infinite() ||
        in_scale.is_infinite())
        throw std::invalid_argument("scales must be finite and positive");
    std::vector<Rational> slopes, xs;
    for (const auto& s : f.slopes()) slopes.push_back(s * out_scale / in_scale);
    for (const auto& x : f.vertex_xs()) xs.push_back(x * in_scale);
    return PLFunction(f.value_at_0() * out_scale, std::move(slopes), std::move(xs));
}

inline bool is_lubin_normalized(const PLFunction& f) {
    return f.value_at_0().is_zero() && f.initial_slope() == Rational(1) &&
           (f.vertex_count() == 0 || Rational(1) <= f.vertex_xs().front());
}

/// Lubin-convention transition function (identity on [0,1]) to the Serre
/// convention: x -> f(x + 1) - 1.
inline PLFunction serre_shift(const PLFunction& f) {
    if (!is_lubin_normalized(f))
        throw std::domain_error("not a totally ramified transition function");
    std::vector<Rational> slopes = f.slopes();
    std::vector<Rational> xs;
    bool drop_unit_piece = !f.vertex_xs().empty() && f.vertex_xs().front() == Rational(1);
    if (drop_unit_piece) slopes.erase(slopes.begin());
    for (const auto& x : f.vertex_xs())
        if (Rational(1) < x) xs.push_back(x - Rational(1));
    return PLFunction(Rational(0), std::move(slopes), std::move(xs));
}

/// Inverse of serre_shift: prepend the identity piece on [0,1].
inline PLFunction serre_unshift(const PLFunction& g) {
    if (!g.value_at_0().is_zero())
        throw std::domain_error("Serre transition function must vanish at 0");
    std::vector<Rational> slopes{Rational(1)};
    std::vector<Rational> xs{Rational(1)};
    for (const auto& s : g.slopes()) slopes.push_back(s);
    for (const auto& x : g.vertex_xs()) xs.push_back(x + Rational(1));
    return PLFunction(Rational(0), std::move(slopes), std::move(xs));
}

}  // namespace apf
