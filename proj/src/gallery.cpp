#include "bcirc/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bcirc/convolution.hpp"
#include "bcirc/errors.hpp"
#include "bcirc/transform.hpp"

namespace bcirc {

namespace {

/// Left side of the phase equation on branch k, monotone decreasing from
/// +inf to -inf on theta in (beta - 2*pi, beta).
double phase_equation(double beta, double theta, int k) {
    return -1.0 / std::tan(0.5 * (beta - theta)) - theta - kTwoPi * k;
}

double solve_branch(double beta, int k) {
    const double lo_end = beta - kTwoPi;
    double eps_lo = 1e-3;
    while (phase_equation(beta, lo_end + eps_lo, k) <= 0.0) {
        eps_lo /= 10.0;
        if (eps_lo < 1e-18)
            throw RootBracketingFailure("singular_example: no sign change near the lower end");
    }
    double eps_hi = 1e-3;
    while (phase_equation(beta, beta - eps_hi, k) >= 0.0) {
        eps_hi /= 10.0;
        if (eps_hi < 1e-18)
            throw RootBracketingFailure("singular_example: no sign change near the upper end");
    }
    double lo = lo_end + eps_lo;   // h(lo) > 0
    double hi = beta - eps_hi;     // h(hi) < 0
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phase_equation(beta, mid, k) > 0.0 ? lo : hi) = mid;
    }
    // Newton polish; the steep branches near the pole need it to push the
    // residual down to the floor set by the slope
    double theta = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double u = 0.5 * (beta - theta);
        const double s = std::sin(u);
        const double h = -std::cos(u) / s - theta - kTwoPi * k;
        const double dh = -0.5 / (s * s) - 1.0;
        const double next = theta - h / dh;
        if (!(next > lo_end) || !(next < beta)) break;
        theta = next;
    }
    return theta;
}

}  // namespace

CircleMeasure dirac(double b) {
    return CircleMeasure::structured(StructuredF::constant(std::polar(1.0, b)));
}

CircleMeasure two_point(double p, double b1, double b2, int order) {
    if (!(p > 0.0) || !(p < 1.0))
        throw ParameterOutOfRange("two_point: p must lie strictly between 0 and 1");
    if (order < 1) throw std::invalid_argument("two_point: order must be positive");
    // note the cross pairing: the weight p goes with e^{-i b2}
    const cplx alpha = p * std::polar(1.0, -b2) + (1.0 - p) * std::polar(1.0, -b1);
    const cplx phase = std::polar(1.0, b1 + b2);
    const cplx ac = std::conj(alpha);
    std::vector<cplx> c(static_cast<size_t>(order) + 1);
    c[0] = phase * alpha;
    cplx ak = 1.0;  // conj(alpha)^{k-1}
    const cplx top = -phase * (1.0 - std::norm(alpha));
    for (int k = 1; k <= order; ++k) {
        c[k] = top * ak;
        ak *= ac;
    }
    return CircleMeasure::structured(StructuredF::series(TruncatedSeries(std::move(c))));
}

CircleMeasure haar() { return CircleMeasure::structured(StructuredF::zero()); }

CircleMeasure cyclic_haar(int n, int order) {
    if (n < 1) throw ParameterOutOfRange("cyclic_haar: n must be at least 1");
    const int ord = std::max(order, n - 1);
    return CircleMeasure::structured(
        StructuredF::series(TruncatedSeries::monomial(n - 1, ord)));
}

CircleMeasure poisson(double r, double b) {
    if (!(r >= 0.0) || !(r < 1.0))
        throw ParameterOutOfRange("poisson: r must lie in [0,1)");
    if (r == 0.0) return haar();
    return CircleMeasure::structured(StructuredF::constant(std::polar(r, b)));
}

SingularExampleResult singular_example(double beta, int count) {
    if (count < 1 || count > 200)
        throw ParameterOutOfRange("singular_example: count must lie in 1..200");
    SingularExampleResult out;
    out.beta = beta;
    struct Zero {
        double theta;
        double dist;
    };
    std::vector<Zero> zeros;
    zeros.reserve(static_cast<size_t>(2 * count) + 1);
    for (int k = -count; k <= count; ++k) {
        const double theta = solve_branch(beta, k);
        zeros.push_back({canonical_angle(theta), angle_distance(theta, beta)});
    }
    // the farthest zero from beta carries the largest atom; report it first
    std::sort(zeros.begin(), zeros.end(), [](const Zero& a, const Zero& b) {
        if (a.dist != b.dist) return a.dist > b.dist;
        return a.theta < b.theta;
    });
    for (const Zero& z : zeros) {
        out.zeros.push_back(z.theta);
        out.atom_angles.push_back(canonical_angle(-z.theta));
        const double cosd = std::cos(beta - z.theta);
        out.atom_masses.push_back((1.0 - cosd) / (2.0 - cosd));
    }
    return out;
}

CircleMeasure singular_measure(double beta, int order) {
    if (order < 1) throw std::invalid_argument("singular_measure: order must be positive");
    const FiniteCircleMeasure rho =
        FiniteCircleMeasure::from_atoms(CircleAtoms{{canonical_angle(beta)}, {1.0}}, order);
    return CircleMeasure::structured(StructuredF::exp_herglotz(0.0, rho));
}

BsoResult bso_compose(const StructuredF::Blaschke& blaschke, const FiniteCircleMeasure& tau,
                      std::span<const double> q_grid, cplx c, int order) {
    if (order < 1) throw std::invalid_argument("bso_compose: order must be positive");
    if (std::fabs(std::abs(c) - 1.0) > 1e-12)
        throw ParameterOutOfRange("bso_compose: c must be unimodular");
    if (q_grid.size() < 256)
        throw ParameterOutOfRange("bso_compose: outer density grid needs at least 256 samples");
    for (double q : q_grid)
        if (!(q >= 0.0) || !std::isfinite(q))
            throw ParameterOutOfRange("bso_compose: outer density must be non-negative");
    for (const BlaschkeFactor& f : blaschke.factors)
        if (std::abs(f.alpha) > 0.95)
            throw ConditioningWarning("bso_compose: |alpha| > 0.95 is too ill-conditioned");
    if (auto why = tau.violation()) throw std::invalid_argument("bso_compose: tau: " + *why);
    if (tau.mass > 0.0 && !tau.atoms)
        throw std::invalid_argument("bso_compose: tau must be atomic");

    const CircleMeasure mu_b = CircleMeasure::structured(StructuredF::blaschke(blaschke));
    const CircleMeasure mu_s = CircleMeasure::structured(StructuredF::exp_herglotz(0.0, tau));

    // trapezoid quadrature on the periodic grid: the outer factor becomes
    // exp(i arg c - \int (w+z)/(w-z) q dlambda) with conjugate moments of
    // the sampled density q
    const int G = static_cast<int>(q_grid.size());
    FiniteCircleMeasure rho_o;
    rho_o.mass = std::accumulate(q_grid.begin(), q_grid.end(), 0.0) / G;
    rho_o.r.resize(static_cast<size_t>(order));
    for (int k = 1; k <= order; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < G; ++j) s += q_grid[j] * std::polar(1.0, -k * kTwoPi * j / G);
        rho_o.r[k - 1] = s / static_cast<double>(G);
    }
    const CircleMeasure mu_o =
        CircleMeasure::structured(StructuredF::exp_herglotz(canonical_angle(std::arg(c)), rho_o));

    const TruncatedSeries product =
        mul(mul(expand_F(F_from_measure(mu_b, order), order),
                expand_F(F_from_measure(mu_s, order), order)),
            expand_F(F_from_measure(mu_o, order), order));
    const CircleMeasure mu = CircleMeasure::structured(StructuredF::series(product));

    const CircleMeasure recomposed = convolve(convolve(mu_b, mu_s, order), mu_o, order);
    const double defect =
        moments_deviation(moments_of(recomposed, order), moments_of(mu, order));
    if (defect > 1e-8)
        throw VerificationFailure("bso_compose: factor convolution does not reproduce mu");
    return {mu, mu_b, mu_s, mu_o, defect};
}

}  // namespace bcirc
