#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/finite_measure.hpp"
#include "bcirc/structured_f.hpp"

namespace bcirc {

/// A probability measure on the unit circle, in one of three representations:
///   Atomic     - finitely many point masses
///   Moments    - a finite list of moments m_1..m_K (m_k = \int x^k d mu)
///   Structured - known through its F transform in closed form
struct CircleMeasure {
    struct Atomic {
        CircleAtoms atoms;
    };
    struct Moments {
        std::vector<cplx> m;  // m[k-1] = m_k; m_0 = 1 is implicit
    };
    struct Structured {
        StructuredF f;
    };

    using Rep = std::variant<Atomic, Moments, Structured>;
    Rep rep;

    static CircleMeasure atomic(CircleAtoms a) { return {Atomic{std::move(a)}}; }
    static CircleMeasure atomic(std::vector<double> angles, std::vector<double> weights);
    static CircleMeasure from_moments(std::vector<cplx> m) { return {Moments{std::move(m)}}; }
    static CircleMeasure structured(StructuredF f) { return {Structured{std::move(f)}}; }

    bool is_atomic() const { return std::holds_alternative<Atomic>(rep); }
    bool is_structured() const { return std::holds_alternative<Structured>(rep); }
};

/// Moments m_1..m_K of the measure. For a Moments representation holding
/// fewer than K entries, returns what is stored (no zero padding).
std::vector<cplx> moments_of(const CircleMeasure& mu, int K);

/// psi_mu(z) = sum_{k>=1} m_k z^k evaluated inside the disk, by the closed
/// form where one exists and by the stored moments otherwise.
cplx psi_eval(const CircleMeasure& mu, cplx z);

struct ValidationReport {
    bool ok = true;
    std::string violation;  // empty when ok
    std::optional<double> min_toeplitz_eig;
};

/// Checks the representation invariants: atomic weights form a probability
/// vector with distinct angles; moment sequences are bounded by 1 and
/// positive semidefinite as a Toeplitz form; structured transforms map the
/// disk into itself on a sample grid.
ValidationReport validate(const CircleMeasure& mu);

struct DensitySample {
    std::vector<double> angles;
    std::vector<double> values;
    double radius = 0.0;
};

/// Poisson-kernel smoothing of mu at the given radius: the density of the
/// harmonic extension (1/2pi) Re[1 + 2 psi(r e^{-i theta})] sampled on a
/// uniform angular grid. Throws RadiusOutOfRange unless 0 < radius < 1.
DensitySample density_approx(const CircleMeasure& mu, double radius, int grid_size);

/// Estimate of mu({e^{i angle}}) by polynomial extrapolation of
/// h(r) = (1-r)/2 * Re[1 + 2 psi(r e^{-i angle})] at the given radii
/// toward r = 1.
double atom_mass_estimate(const CircleMeasure& mu, double angle, std::span<const double> radii);

/// Max absolute componentwise deviation between two moment lists, compared
/// up to the shorter length.
double moments_deviation(std::span<const cplx> a, std::span<const cplx> b);

/// Max modulus of the F transform over 256 angles on each of the radii
/// 0.3, 0.6, 0.9. Any valid measure stays within 1 + 1e-10; exceeding that
/// flags a broken construction.
double f_disk_bound(const CircleMeasure& mu);

}  // namespace bcirc
