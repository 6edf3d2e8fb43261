#include "bcirc/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bcirc/errors.hpp"
#include "bcirc/transform.hpp"

namespace bcirc {

namespace {

constexpr double kZeroCoeffTol = 1e-12;
constexpr double kOriginTol = 1e-9;
constexpr double kWitnessTol = 1e-6;

TruncatedSeries with_canonical_branch(TruncatedSeries u) {
    std::vector<cplx> c(u.coeffs().begin(), u.coeffs().end());
    c[0] = cplx{c[0].real(), canonical_angle(c[0].imag())};
    return TruncatedSeries(std::move(c));
}

bool all_below(const TruncatedSeries& s, double tol) {
    for (const cplx& c : s.coeffs())
        if (std::abs(c) > tol) return false;
    return true;
}

/// Hunt down a zero of the truncated F inside |z| <= r: coarse modulus scan,
/// then Newton started from the minimizer. Witnesses are diagnostics, so the
/// best point found is returned even if Newton stalls.
cplx locate_zero(const TruncatedSeries& s, double r) {
    const TruncatedSeries ds = derivative(s);
    cplx best;
    double best_mod = std::abs(s.coeff(0));
    const auto scan = [&](int radii, int angles) {
        for (int ir = 1; ir <= radii; ++ir) {
            const double rr = r * ir / radii;
            for (int ia = 0; ia < angles; ++ia) {
                const cplx z = std::polar(rr, kTwoPi * ia / angles);
                const double m = std::abs(eval(s, z));
                if (m < best_mod) {
                    best_mod = m;
                    best = z;
                }
            }
        }
    };
    const auto polish = [&]() {
        cplx z = best;
        for (int it = 0; it < 60; ++it) {
            const cplx fz = eval(s, z);
            if (std::abs(fz) < best_mod) {
                best_mod = std::abs(fz);
                best = z;
            }
            if (best_mod < 1e-13) return;
            const cplx dfz = eval(ds, z);
            if (std::abs(dfz) < 1e-300) return;
            z -= fz / dfz;
            if (std::abs(z) >= 1.0) return;
        }
    };
    scan(64, 256);
    polish();
    if (best_mod >= kWitnessTol) {
        scan(128, 1024);
        polish();
    }
    return best;
}

struct WindingEvaluator {
    const StructuredF& f;
    cplx operator()(cplx z) const { return eval_F(f, z); }
};

}  // namespace

TruncatedSeries log_F(const StructuredF& f, int order) {
    if (order < 0) throw std::invalid_argument("log_F: negative order");
    if (std::holds_alternative<StructuredF::Zero>(f.rep))
        throw ZeroFunction("log_F: F is identically zero");
    if (const auto* e = std::get_if<StructuredF::ExpHerglotz>(&f.rep))
        return herglotz_synthesize(HerglotzData{e->b, e->rho}, order);
    if (const auto* c = std::get_if<StructuredF::Constant>(&f.rep)) {
        if (std::abs(c->c) <= kZeroCoeffTol) throw ZeroFunction("log_F: F is identically zero");
        return with_canonical_branch(TruncatedSeries::constant(std::log(c->c), order));
    }
    if (const auto* b = std::get_if<StructuredF::Blaschke>(&f.rep))
        if (b->p > 0) throw ZeroAtOrigin("log_F: F vanishes at the origin");
    if (const auto* s = std::get_if<StructuredF::Series>(&f.rep)) {
        if (all_below(s->s, kZeroCoeffTol)) throw ZeroFunction("log_F: F is identically zero");
        if (std::abs(s->s.coeff(0)) <= kZeroCoeffTol)
            throw ZeroAtOrigin("log_F: F vanishes at the origin");
    }
    return with_canonical_branch(log_series(expand_F(f, order)));
}

int winding_number(const StructuredF& f, double r) {
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("winding_number: radius must lie in (0,1)");
    const WindingEvaluator F{f};
    for (int grid = 512; grid <= 65536; grid *= 2) {
        std::vector<cplx> vals(static_cast<size_t>(grid));
        double min_mod = 1e300;
        for (int j = 0; j < grid; ++j) {
            vals[j] = F(std::polar(r, kTwoPi * j / grid));
            min_mod = std::min(min_mod, std::abs(vals[j]));
        }
        if (min_mod < 1e-10)
            throw ZeroOnContour("winding_number: F vanishes on the sampling circle");
        double total = 0.0;
        double max_step = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double d = std::arg(vals[(j + 1) % grid] / vals[j]);
            max_step = std::max(max_step, std::fabs(d));
            total += d;
        }
        if (max_step < std::numbers::pi / 2.0)
            return static_cast<int>(std::llround(total / kTwoPi));
    }
    throw ZeroOnContour("winding_number: phase steps stay too large under refinement");
}

DivisibilityVerdict is_infinitely_divisible(const CircleMeasure& mu, double r_max, int order) {
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw std::invalid_argument("is_infinitely_divisible: r_max must lie in (0,1)");
    if (order < 1) throw std::invalid_argument("is_infinitely_divisible: order must be positive");
    const StructuredF f = F_from_measure(mu, order);

    if (std::holds_alternative<StructuredF::Zero>(f.rep)) return HaarDivisible{};
    if (const auto* c = std::get_if<StructuredF::Constant>(&f.rep)) {
        if (std::abs(c->c) <= kZeroCoeffTol) return HaarDivisible{};
        const double mass = std::max(0.0, -std::log(std::abs(c->c)));
        return Divisible{{canonical_angle(std::arg(c->c)),
                          FiniteCircleMeasure::uniform(mass, order)}};
    }
    if (const auto* b = std::get_if<StructuredF::Blaschke>(&f.rep)) {
        if (b->p > 0) return NotDivisible{{ZeroWitness::Kind::ZeroAtOrigin, 0.0, 0.0}};
        if (!b->factors.empty()) {
            const cplx alpha = b->factors.front().alpha;
            return NotDivisible{{ZeroWitness::Kind::InteriorZero, alpha, std::abs(alpha)}};
        }
        return Divisible{{canonical_angle(std::arg(b->phase)),
                          FiniteCircleMeasure::uniform(0.0, order)}};
    }
    if (const auto* e = std::get_if<StructuredF::ExpHerglotz>(&f.rep))
        return Divisible{{e->b, e->rho}};

    const TruncatedSeries s = std::get<StructuredF::Series>(f.rep).s;
    if (all_below(s, kZeroCoeffTol)) return HaarDivisible{};
    if (std::abs(s.coeff(0)) <= kOriginTol)
        return NotDivisible{{ZeroWitness::Kind::ZeroAtOrigin, 0.0, 0.0}};

    std::vector<double> radii;
    for (double r : {0.5, 0.9, 0.99})
        if (r < r_max) radii.push_back(r);
    radii.push_back(r_max);
    for (double r : radii) {
        int w = 0;
        try {
            w = winding_number(f, r);
        } catch (const ZeroOnContour&) {
            w = 1;  // a zero close enough to the contour to matter is a zero
        }
        if (w > 0) {
            const cplx z0 = locate_zero(s, r);
            return NotDivisible{{ZeroWitness::Kind::InteriorZero, z0, std::abs(z0)}};
        }
    }
    return DivisibleUpToRadius{r_max, herglotz_analyze(log_F(f, order))};
}

CharacteristicPair char_pair(const CircleMeasure& mu, int order) {
    const DivisibilityVerdict v = is_infinitely_divisible(mu, 0.999, order);
    if (const auto* d = std::get_if<Divisible>(&v)) return d->pair;
    if (const auto* d = std::get_if<DivisibleUpToRadius>(&v)) return d->pair;
    if (std::holds_alternative<HaarDivisible>(v))
        throw NotDivisibleError("char_pair: the Haar measure has no Herglotz logarithm");
    throw NotDivisibleError("char_pair: measure is not infinitely divisible");
}

CircleMeasure measure_from_char_pair(const CharacteristicPair& pair, int order) {
    (void)order;  // the closed form carries every order
    return CircleMeasure::structured(StructuredF::exp_herglotz(pair.b, pair.rho));
}

CircleMeasure nth_root(const CircleMeasure& mu, int n, int order) {
    if (n < 1) throw std::invalid_argument("nth_root: n must be positive");
    const DivisibilityVerdict v = is_infinitely_divisible(mu, 0.999, order);
    if (std::holds_alternative<HaarDivisible>(v))
        return CircleMeasure::structured(StructuredF::zero());
    const CharacteristicPair* pair = nullptr;
    if (const auto* d = std::get_if<Divisible>(&v)) pair = &d->pair;
    if (const auto* d = std::get_if<DivisibleUpToRadius>(&v)) pair = &d->pair;
    if (!pair) throw NotDivisibleError("nth_root: measure is not infinitely divisible");
    return CircleMeasure::structured(
        StructuredF::exp_herglotz(pair->b / n, pair->rho.scaled(1.0 / n)));
}

CircleMeasure semigroup_measure(const CharacteristicPair& pair, double t, int order) {
    (void)order;
    if (!(t >= 0.0)) throw ParameterOutOfRange("semigroup_measure: t must be non-negative");
    return CircleMeasure::structured(
        StructuredF::exp_herglotz(canonical_angle(t * pair.b), pair.rho.scaled(t)));
}

bool is_idempotent(const CircleMeasure& mu, int order) {
    const TruncatedSeries s = expand_F(F_from_measure(mu, order), order);
    if (all_below(s, 1e-10)) return true;
    if (std::abs(s.coeff(0) - 1.0) > 1e-10) return false;
    for (int k = 1; k <= s.order(); ++k)
        if (std::abs(s.coeff(k)) > 1e-10) return false;
    return true;
}

}  // namespace bcirc
