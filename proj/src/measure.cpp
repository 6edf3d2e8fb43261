#include "bcirc/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcirc/errors.hpp"
#include "bcirc/transform.hpp"

namespace bcirc {

namespace {

constexpr int kSampleAngles = 256;
constexpr double kSampleRadii[] = {0.3, 0.6, 0.9};

/// F of an atomic measure in closed form: the quotient of
/// sum w_j x_j/(1 - x_j z) by sum w_j/(1 - x_j z).
cplx atomic_F(const CircleAtoms& a, cplx z) {
    cplx num = 0.0;
    cplx den = 0.0;
    for (size_t j = 0; j < a.angles.size(); ++j) {
        const cplx x = std::polar(1.0, a.angles[j]);
        const cplx g = a.weights[j] / (1.0 - x * z);
        num += g * x;
        den += g;
    }
    return num / den;
}

double min_toeplitz_eigenvalue(std::span<const cplx> m) {
    const int K = static_cast<int>(m.size());
    Eigen::MatrixXcd T(K + 1, K + 1);
    for (int j = 0; j <= K; ++j)
        for (int l = 0; l <= K; ++l) {
            const int d = j - l;
            if (d == 0)
                T(j, l) = 1.0;
            else if (d > 0)
                T(j, l) = m[d - 1];
            else
                T(j, l) = std::conj(m[-d - 1]);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(T, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

ValidationReport fail(std::string why) { return {false, std::move(why), std::nullopt}; }

}  // namespace

CircleMeasure CircleMeasure::atomic(std::vector<double> angles, std::vector<double> weights) {
    if (angles.size() != weights.size())
        throw std::invalid_argument("CircleMeasure::atomic: angle/weight length mismatch");
    for (double& t : angles) t = canonical_angle(t);
    return {Atomic{CircleAtoms{std::move(angles), std::move(weights)}}};
}

std::vector<cplx> moments_of(const CircleMeasure& mu, int K) {
    if (K < 0) throw std::invalid_argument("moments_of: negative order");
    struct Visitor {
        int K;
        std::vector<cplx> operator()(const CircleMeasure::Atomic& a) const {
            std::vector<cplx> m(static_cast<size_t>(K));
            for (int k = 1; k <= K; ++k) m[k - 1] = std::conj(a.atoms.conj_moment(k));
            return m;
        }
        std::vector<cplx> operator()(const CircleMeasure::Moments& mo) const {
            const size_t n = std::min(mo.m.size(), static_cast<size_t>(K));
            return {mo.m.begin(), mo.m.begin() + static_cast<std::ptrdiff_t>(n)};
        }
        std::vector<cplx> operator()(const CircleMeasure::Structured& s) const {
            return K == 0 ? std::vector<cplx>{} : moments_from_F(s.f, K);
        }
    };
    return std::visit(Visitor{K}, mu.rep);
}

cplx psi_eval(const CircleMeasure& mu, cplx z) {
    struct Visitor {
        cplx z;
        cplx operator()(const CircleMeasure::Atomic& a) const {
            cplx s = 0.0;
            for (size_t j = 0; j < a.atoms.angles.size(); ++j) {
                const cplx x = std::polar(1.0, a.atoms.angles[j]);
                s += a.atoms.weights[j] * x * z / (1.0 - x * z);
            }
            return s;
        }
        cplx operator()(const CircleMeasure::Moments& mo) const {
            cplx acc = 0.0;
            for (size_t k = mo.m.size(); k > 0; --k) acc = acc * z + mo.m[k - 1];
            return acc * z;
        }
        cplx operator()(const CircleMeasure::Structured& s) const {
            const cplx f = eval_F(s.f, z);
            return z * f / (1.0 - z * f);
        }
    };
    return std::visit(Visitor{z}, mu.rep);
}

ValidationReport validate(const CircleMeasure& mu) {
    if (const auto* a = std::get_if<CircleMeasure::Atomic>(&mu.rep)) {
        const CircleAtoms& at = a->atoms;
        if (at.angles.empty()) return fail("atomic: no atoms");
        if (at.angles.size() != at.weights.size())
            return fail("atomic: angle/weight length mismatch");
        for (double t : at.angles)
            if (!std::isfinite(t)) return fail("atomic: non-finite angle");
        for (double w : at.weights)
            if (!(w >= 0.0) || !std::isfinite(w)) return fail("atomic: negative or non-finite weight");
        if (std::fabs(at.total_weight() - 1.0) > 1e-12)
            return fail("atomic: weights do not sum to 1");
        for (size_t i = 0; i < at.angles.size(); ++i)
            for (size_t j = i + 1; j < at.angles.size(); ++j)
                if (angle_distance(at.angles[i], at.angles[j]) <= 1e-12)
                    return fail("atomic: coincident atoms");
        return {};
    }
    if (const auto* mo = std::get_if<CircleMeasure::Moments>(&mu.rep)) {
        if (mo->m.empty()) return fail("moments: empty sequence");
        for (const cplx& mk : mo->m) {
            if (!std::isfinite(mk.real()) || !std::isfinite(mk.imag()))
                return fail("moments: non-finite entry");
            if (std::abs(mk) > 1.0 + 1e-12) return fail("moments: |m_k| exceeds 1");
        }
        const double eig = min_toeplitz_eigenvalue(mo->m);
        ValidationReport rep;
        rep.min_toeplitz_eig = eig;
        if (eig < -1e-9) {
            rep.ok = false;
            rep.violation = "moments: Toeplitz form not positive semidefinite";
        }
        return rep;
    }
    const auto& f = std::get<CircleMeasure::Structured>(mu.rep).f;
    if (const auto* c = std::get_if<StructuredF::Constant>(&f.rep)) {
        if (std::abs(c->c) > 1.0 + 1e-12) return fail("structured: |constant| exceeds 1");
    } else if (const auto* b = std::get_if<StructuredF::Blaschke>(&f.rep)) {
        if (b->p < 0) return fail("structured: negative zero order at origin");
        if (std::fabs(std::abs(b->phase) - 1.0) > 1e-12)
            return fail("structured: blaschke phase not unimodular");
        for (const BlaschkeFactor& fac : b->factors) {
            const double m = std::abs(fac.alpha);
            if (m <= 0.0 || m >= 1.0) return fail("structured: blaschke |alpha| outside (0,1)");
            if (fac.mult < 1) return fail("structured: blaschke multiplicity < 1");
        }
    } else if (const auto* e = std::get_if<StructuredF::ExpHerglotz>(&f.rep)) {
        if (!(e->b >= 0.0) || e->b >= kTwoPi) return fail("structured: b outside [0,2pi)");
        if (auto why = e->rho.violation()) return fail("structured: " + *why);
    }
    if (f_disk_bound(mu) > 1.0 + 1e-10)
        return fail("structured: |F| exceeds 1 on the sample grid");
    return {};
}

DensitySample density_approx(const CircleMeasure& mu, double radius, int grid_size) {
    if (!(radius > 0.0) || !(radius < 1.0))
        throw RadiusOutOfRange("density_approx: radius must lie in (0,1)");
    if (grid_size < 1) throw std::invalid_argument("density_approx: empty grid");
    DensitySample out;
    out.radius = radius;
    out.angles.resize(static_cast<size_t>(grid_size));
    out.values.resize(static_cast<size_t>(grid_size));
    for (int j = 0; j < grid_size; ++j) {
        const double theta = kTwoPi * j / grid_size;
        const cplx z = std::polar(radius, -theta);
        out.angles[j] = theta;
        out.values[j] = (1.0 + 2.0 * psi_eval(mu, z).real()) / kTwoPi;
    }
    return out;
}

double atom_mass_estimate(const CircleMeasure& mu, double angle, std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("atom_mass_estimate: no radii");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !(radii[i] < 1.0))
            throw RadiusOutOfRange("atom_mass_estimate: radii must lie in (0,1)");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw std::invalid_argument("atom_mass_estimate: radii must increase");
    }
    // mu({e^{i angle}}) = lim_{r->1} (1-r)/2 * Re[1 + 2 psi(r e^{-i angle})];
    // extrapolate the limit polynomially in eps = 1-r.
    const size_t n = radii.size();
    std::vector<double> eps(n);
    std::vector<double> val(n);
    for (size_t i = 0; i < n; ++i) {
        const double r = radii[i];
        eps[i] = 1.0 - r;
        const cplx z = std::polar(r, -angle);
        val[i] = 0.5 * (1.0 - r) * (1.0 + 2.0 * psi_eval(mu, z).real());
    }
    // Neville tableau evaluated at eps = 0
    for (size_t level = 1; level < n; ++level)
        for (size_t i = 0; i + level < n; ++i)
            val[i] = (eps[i + level] * val[i] - eps[i] * val[i + 1]) / (eps[i + level] - eps[i]);
    return val[0];
}

double moments_deviation(std::span<const cplx> a, std::span<const cplx> b) {
    const size_t n = std::min(a.size(), b.size());
    double d = 0.0;
    for (size_t k = 0; k < n; ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

double f_disk_bound(const CircleMeasure& mu) {
    struct Evaluator {
        const CircleMeasure& mu;
        std::optional<TruncatedSeries> series;
        explicit Evaluator(const CircleMeasure& m) : mu(m) {
            if (std::holds_alternative<CircleMeasure::Moments>(m.rep)) {
                const StructuredF f = F_from_measure(m, kDefaultOrder);
                series = expand_F(f, kDefaultOrder);
            }
        }
        cplx operator()(cplx z) const {
            if (series) return eval(*series, z);
            if (const auto* a = std::get_if<CircleMeasure::Atomic>(&mu.rep))
                return atomic_F(a->atoms, z);
            return eval_F(std::get<CircleMeasure::Structured>(mu.rep).f, z);
        }
    };
    const Evaluator f(mu);
    double bound = 0.0;
    for (double r : kSampleRadii)
        for (int j = 0; j < kSampleAngles; ++j)
            bound = std::max(bound, std::abs(f(std::polar(r, kTwoPi * j / kSampleAngles))));
    return bound;
}

}  // namespace bcirc
