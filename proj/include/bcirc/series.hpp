#pragma once

#include <span>
#include <vector>

#include "bcirc/common.hpp"

namespace bcirc {

/// A complex power series at the origin, truncated at a fixed order N.
/// Coefficients c_0..c_N are stored; everything beyond N is unknown, not zero.
/// Values are immutable after construction and all operations below are pure,
/// so series can be shared freely between threads.
class TruncatedSeries {
public:
    /// coeffs = (c_0, ..., c_N); must be non-empty with finite entries.
    explicit TruncatedSeries(std::vector<cplx> coeffs);

    static TruncatedSeries zero(int order);
    static TruncatedSeries one(int order);
    static TruncatedSeries constant(cplx c, int order);
    static TruncatedSeries monomial(int k, int order);  // z^k, requires k <= order

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    cplx coeff(int k) const { return k >= 0 && k <= order() ? coeffs_[k] : cplx{}; }

    /// Copy truncated to a lower (or equal) order.
    TruncatedSeries truncated(int order) const;

private:
    std::vector<cplx> coeffs_;
};

// Arithmetic truncates to the minimum order of its inputs; coefficients the
// inputs do not carry are unknowable, so no operation ever invents them.

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, cplx factor);

/// Cauchy product truncated at the common order.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Power-series quotient q with mul(q, b) == a up to the common order.
/// Throws DivisionByNonUnit when |b(0)| <= kDivisionTol.
TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b);

/// exp of a series, via the recurrence from (exp a)' = a' (exp a).
TruncatedSeries exp_series(const TruncatedSeries& a);

/// Principal logarithm: l_0 = Log(a_0), higher terms by integrating a'/a.
/// Throws LogOfZeroConstantTerm when |a(0)| <= kDivisionTol.
TruncatedSeries log_series(const TruncatedSeries& a);

/// Divide by z: drops c_0 (which must vanish within kShiftDownTol), order
/// decreases by one. Throws NonVanishingConstantTerm otherwise.
TruncatedSeries shift_down(const TruncatedSeries& a);

/// Multiply by z: order increases by one, no information lost.
TruncatedSeries shift_up(const TruncatedSeries& a);

/// Termwise derivative; order decreases by one.
TruncatedSeries derivative(const TruncatedSeries& a);

/// Horner evaluation of the truncated polynomial at z.
cplx eval(const TruncatedSeries& a, cplx z);

}  // namespace bcirc
