#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcirc/common.hpp"

namespace bcirc {

/// A finite list of point masses on the unit circle.
struct CircleAtoms {
    std::vector<double> angles;   // radians, canonical in [0, 2*pi)
    std::vector<double> weights;  // non-negative

    double total_weight() const;
    /// sum_j w_j e^{-ik theta_j}
    cplx conj_moment(int k) const;
};

/// A finite (not necessarily probability) measure rho on the unit circle,
/// stored as total mass plus the conjugate moments r_k = \int x^{-k} d rho.
/// When the measure is purely atomic the atoms may be carried along, in which
/// case all moments are exact at any order.
struct FiniteCircleMeasure {
    double mass = 0.0;
    std::vector<cplx> r;  // r[k-1] = \int x^{-k} d rho, k = 1..K
    std::optional<CircleAtoms> atoms;

    static FiniteCircleMeasure zero(int K);
    static FiniteCircleMeasure from_atoms(CircleAtoms a, int K);
    /// mass * (normalized uniform measure): all conjugate moments vanish.
    static FiniteCircleMeasure uniform(double mass, int K);

    FiniteCircleMeasure scaled(double t) const;

    /// r_k, exact from atoms when present, else the stored value (0 beyond K).
    cplx conj_moment(int k) const;

    /// \int (x+z)/(x-z) d rho(x) for |z| < 1. Exact for atomic rho; otherwise
    /// evaluated through the expansion mass + 2 sum_k r_k z^k.
    cplx herglotz_eval(cplx z) const;

    /// Invariant check; returns a description of the first violation, if any.
    std::optional<std::string> violation() const;
};

}  // namespace bcirc
