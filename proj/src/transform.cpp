#include "bcirc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcirc/errors.hpp"

namespace bcirc {

namespace {

constexpr double kHerglotzSampleTol = 1e-9;
constexpr int kSampleAngles = 256;
constexpr double kSampleRadii[] = {0.3, 0.6, 0.9};

TruncatedSeries blaschke_factor_series(cplx alpha, int order) {
    const double m = std::abs(alpha);
    if (m <= 0.0 || m >= 1.0)
        throw ParameterOutOfRange("blaschke factor: |alpha| must lie in (0,1)");
    if (m > 0.95)
        throw ConditioningWarning("blaschke factor: |alpha| > 0.95 is too close to the boundary");
    // (conj(a)/|a|) (a-z)/(1-conj(a) z) = |a| + sum_k conj(a)^k (|a|^2-1)/|a| z^k
    const cplx ac = std::conj(alpha);
    std::vector<cplx> c(static_cast<size_t>(order) + 1);
    c[0] = m;
    cplx ak = 1.0;
    for (int k = 1; k <= order; ++k) {
        ak *= ac;
        c[k] = ak * (m * m - 1.0) / m;
    }
    return TruncatedSeries(std::move(c));
}

}  // namespace

TruncatedSeries psi_from_moments(std::span<const cplx> m) {
    std::vector<cplx> c(m.size() + 1);
    std::copy(m.begin(), m.end(), c.begin() + 1);
    return TruncatedSeries(std::move(c));
}

std::vector<cplx> moments_from_psi(const TruncatedSeries& psi) {
    std::vector<cplx> m(static_cast<size_t>(psi.order()));
    for (int k = 1; k <= psi.order(); ++k) m[k - 1] = psi.coeff(k);
    return m;
}

TruncatedSeries F_from_psi(const TruncatedSeries& psi) {
    if (psi.order() < 1)
        throw std::invalid_argument("F_from_psi: psi must carry at least one moment");
    const TruncatedSeries one_plus = add(TruncatedSeries::one(psi.order()), psi);
    return shift_down(div(psi, one_plus));
}

TruncatedSeries psi_from_F(const TruncatedSeries& f) {
    const TruncatedSeries zf = shift_up(f);
    const TruncatedSeries denom = sub(TruncatedSeries::one(zf.order()), zf);
    return div(zf, denom);
}

StructuredF F_from_measure(const CircleMeasure& mu, int order) {
    if (order < 0) throw std::invalid_argument("F_from_measure: negative order");
    if (const auto* s = std::get_if<CircleMeasure::Structured>(&mu.rep)) return s->f;
    if (const auto* a = std::get_if<CircleMeasure::Atomic>(&mu.rep)) {
        if (a->atoms.angles.empty())
            throw std::invalid_argument("F_from_measure: atomic measure without atoms");
        if (a->atoms.angles.size() == 1)
            return StructuredF::constant(std::polar(1.0, a->atoms.angles[0]));
    }
    const std::vector<cplx> m = moments_of(mu, order + 1);
    if (m.empty()) throw std::invalid_argument("F_from_measure: measure carries no moments");
    return StructuredF::series(F_from_psi(psi_from_moments(m)));
}

TruncatedSeries expand_F(const StructuredF& f, int order) {
    if (order < 0) throw std::invalid_argument("expand_F: negative order");
    struct Visitor {
        int order;
        TruncatedSeries operator()(const StructuredF::Zero&) const {
            return TruncatedSeries::zero(order);
        }
        TruncatedSeries operator()(const StructuredF::Constant& c) const {
            return TruncatedSeries::constant(c.c, order);
        }
        TruncatedSeries operator()(const StructuredF::Blaschke& b) const {
            TruncatedSeries s = TruncatedSeries::constant(b.phase, order);
            for (const BlaschkeFactor& f : b.factors) {
                if (f.mult < 1) throw ParameterOutOfRange("blaschke factor: multiplicity < 1");
                const TruncatedSeries factor = blaschke_factor_series(f.alpha, order);
                for (int i = 0; i < f.mult; ++i) s = mul(s, factor);
            }
            if (b.p < 0) throw ParameterOutOfRange("blaschke: negative order at the origin");
            if (b.p > 0) {
                if (b.p > order) return TruncatedSeries::zero(order);
                s = mul(s, TruncatedSeries::monomial(b.p, order));
            }
            return s;
        }
        TruncatedSeries operator()(const StructuredF::ExpHerglotz& e) const {
            return exp_series(herglotz_synthesize(HerglotzData{e.b, e.rho}, order));
        }
        TruncatedSeries operator()(const StructuredF::Series& s) const {
            return s.s.order() <= order ? s.s : s.s.truncated(order);
        }
    };
    return std::visit(Visitor{order}, f.rep);
}

cplx eval_F(const StructuredF& f, cplx z) {
    struct Visitor {
        cplx z;
        cplx operator()(const StructuredF::Zero&) const { return 0.0; }
        cplx operator()(const StructuredF::Constant& c) const { return c.c; }
        cplx operator()(const StructuredF::Blaschke& b) const {
            cplx v = b.phase;
            for (const BlaschkeFactor& f : b.factors) {
                const double m = std::abs(f.alpha);
                if (m <= 0.0 || m >= 1.0)
                    throw ParameterOutOfRange("blaschke factor: |alpha| must lie in (0,1)");
                const cplx base =
                    (std::conj(f.alpha) / m) * (f.alpha - z) / (1.0 - std::conj(f.alpha) * z);
                for (int i = 0; i < f.mult; ++i) v *= base;
            }
            for (int i = 0; i < b.p; ++i) v *= z;
            return v;
        }
        cplx operator()(const StructuredF::ExpHerglotz& e) const {
            return std::exp(cplx{0.0, e.b} - e.rho.herglotz_eval(z));
        }
        cplx operator()(const StructuredF::Series& s) const { return eval(s.s, z); }
    };
    return std::visit(Visitor{z}, f.rep);
}

std::vector<cplx> moments_from_F(const StructuredF& f, int K) {
    if (K < 1) throw std::invalid_argument("moments_from_F: K must be positive");
    const TruncatedSeries fs = expand_F(f, K);
    std::vector<cplx> m = moments_from_psi(psi_from_F(fs));
    if (static_cast<int>(m.size()) > K) m.resize(static_cast<size_t>(K));
    return m;
}

cplx cauchy_eval(const StructuredF& f, cplx w) {
    if (std::abs(w) <= 1.0)
        throw EvaluationOutsideDomain("cauchy_eval: |w| must exceed 1");
    return 1.0 / (w - eval_F(f, 1.0 / w));
}

HerglotzData herglotz_analyze(const TruncatedSeries& u) {
    if (u.coeff(0).real() > kHerglotzSampleTol)
        throw NotAHerglotzLogarithm("herglotz_analyze: positive real part at the origin");
    for (double r : kSampleRadii)
        for (int j = 0; j < kSampleAngles; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / kSampleAngles);
            if (eval(u, z).real() > kHerglotzSampleTol)
                throw NotAHerglotzLogarithm("herglotz_analyze: positive real part on sample grid");
        }
    HerglotzData h;
    h.b = canonical_angle(u.coeff(0).imag());
    h.rho.mass = std::max(0.0, -u.coeff(0).real());
    h.rho.r.resize(static_cast<size_t>(u.order()));
    for (int k = 1; k <= u.order(); ++k) h.rho.r[k - 1] = -0.5 * u.coeff(k);
    return h;
}

TruncatedSeries herglotz_synthesize(const HerglotzData& h, int order) {
    if (order < 0) throw std::invalid_argument("herglotz_synthesize: negative order");
    std::vector<cplx> c(static_cast<size_t>(order) + 1);
    c[0] = cplx{-h.rho.mass, h.b};
    for (int k = 1; k <= order; ++k) c[k] = -2.0 * h.rho.conj_moment(k);
    return TruncatedSeries(std::move(c));
}

}  // namespace bcirc
