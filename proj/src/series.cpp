#include "bcirc/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "bcirc/errors.hpp"

namespace bcirc {

namespace {

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: empty coefficient list");
    for (const cplx& c : coeffs_)
        if (!finite(c)) throw std::invalid_argument("TruncatedSeries: non-finite coefficient");
}

TruncatedSeries TruncatedSeries::zero(int order) {
    return TruncatedSeries(std::vector<cplx>(static_cast<size_t>(order) + 1));
}

TruncatedSeries TruncatedSeries::one(int order) { return constant(1.0, order); }

TruncatedSeries TruncatedSeries::constant(cplx c, int order) {
    std::vector<cplx> v(static_cast<size_t>(order) + 1);
    v[0] = c;
    return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::monomial(int k, int order) {
    if (k < 0 || k > order) throw std::invalid_argument("monomial: exponent outside order");
    std::vector<cplx> v(static_cast<size_t>(order) + 1);
    v[static_cast<size_t>(k)] = 1.0;
    return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    if (order < 0 || order > this->order())
        throw std::invalid_argument("truncated: order outside stored range");
    return TruncatedSeries(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) + b.coeff(k);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) - b.coeff(k);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries scale(const TruncatedSeries& a, cplx factor) {
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (cplx& x : c) x *= factor;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) c[i + j] += a.coeff(i) * b.coeff(j);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (std::abs(b.coeff(0)) <= kDivisionTol)
        throw DivisionByNonUnit("series division: constant term of divisor below tolerance");
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> q(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        cplx s = a.coeff(k);
        for (int j = 1; j <= k; ++j) s -= b.coeff(j) * q[k - j];
        q[k] = s / b.coeff(0);
    }
    return TruncatedSeries(std::move(q));
}

TruncatedSeries exp_series(const TruncatedSeries& a) {
    const int n = a.order();
    std::vector<cplx> e(static_cast<size_t>(n) + 1);
    e[0] = std::exp(a.coeff(0));
    // n e_n = sum_{k=1..n} k a_k e_{n-k}
    for (int m = 1; m <= n; ++m) {
        cplx s = 0.0;
        for (int k = 1; k <= m; ++k) s += static_cast<double>(k) * a.coeff(k) * e[m - k];
        e[m] = s / static_cast<double>(m);
    }
    return TruncatedSeries(std::move(e));
}

TruncatedSeries log_series(const TruncatedSeries& a) {
    if (std::abs(a.coeff(0)) <= kDivisionTol)
        throw LogOfZeroConstantTerm("series log: constant term below tolerance");
    const int n = a.order();
    std::vector<cplx> l(static_cast<size_t>(n) + 1);
    l[0] = std::log(a.coeff(0));
    if (n >= 1) {
        // l' = a'/a, integrated termwise
        const TruncatedSeries q = div(derivative(a), a.truncated(n - 1));
        for (int k = 1; k <= n; ++k) l[k] = q.coeff(k - 1) / static_cast<double>(k);
    }
    return TruncatedSeries(std::move(l));
}

TruncatedSeries shift_down(const TruncatedSeries& a) {
    if (a.order() < 1) throw std::invalid_argument("shift_down: order-0 series");
    if (std::abs(a.coeff(0)) > kShiftDownTol)
        throw NonVanishingConstantTerm("shift_down: constant term exceeds tolerance");
    return TruncatedSeries(std::vector<cplx>(a.coeffs().begin() + 1, a.coeffs().end()));
}

TruncatedSeries shift_up(const TruncatedSeries& a) {
    std::vector<cplx> c(static_cast<size_t>(a.order()) + 2);
    std::copy(a.coeffs().begin(), a.coeffs().end(), c.begin() + 1);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries derivative(const TruncatedSeries& a) {
    if (a.order() == 0) return TruncatedSeries::zero(0);
    std::vector<cplx> d(static_cast<size_t>(a.order()));
    for (int k = 1; k <= a.order(); ++k) d[k - 1] = static_cast<double>(k) * a.coeff(k);
    return TruncatedSeries(std::move(d));
}

cplx eval(const TruncatedSeries& a, cplx z) {
    cplx acc = 0.0;
    for (int k = a.order(); k >= 0; --k) acc = acc * z + a.coeff(k);
    return acc;
}

}  // namespace bcirc
