#pragma once

#include <span>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/finite_measure.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/structured_f.hpp"

namespace bcirc {

/// Point mass at e^{ib}; F is the constant e^{ib}.
CircleMeasure dirac(double b);

/// p delta_{e^{i b1}} + (1-p) delta_{e^{i b2}} for p in (0,1). F is the
/// Moebius form e^{i(b1+b2)} (alpha - z)/(1 - conj(alpha) z) with
/// alpha = p e^{-i b2} + (1-p) e^{-i b1}, stored expanded.
CircleMeasure two_point(double p, double b1, double b2, int order = kDefaultOrder);

/// Haar (uniform) measure; F is identically zero and absorbs convolution.
CircleMeasure haar();

/// Uniform measure on the n-th roots of unity; F(z) = z^{n-1}.
CircleMeasure cyclic_haar(int n, int order = kDefaultOrder);

/// The measure with constant F = r e^{ib}, r in [0,1): its density against
/// the uniform measure is the Poisson kernel at radius r centered at angle b.
CircleMeasure poisson(double r, double b);

/// The zeros and atom data of the measure with F(z) = exp((z+x)/(z-x)),
/// x = e^{i beta}: F(z) = z has one solution on the circle per branch of
/// the phase equation -cot((beta-theta)/2) = theta (mod 2*pi), and the
/// measure has the atom a_n at the conjugate point of each zero.
struct SingularExampleResult {
    double beta = 0.0;
    std::vector<double> zeros;        // angles beta_n of the circle zeros
    std::vector<double> atom_angles;  // -beta_n mod 2*pi
    std::vector<double> atom_masses;  // (1-cos(beta-beta_n))/(2-cos(beta-beta_n))
};

/// Zeros for branches -count..count (so 2*count+1 of them), sorted from the
/// farthest from beta (the largest atom) inward; they accumulate at beta.
SingularExampleResult singular_example(double beta, int count);

/// The measure itself: characteristic pair (0, unit point mass at e^{i beta}).
CircleMeasure singular_measure(double beta, int order = kDefaultOrder);

/// mu with F = B*S*O from Blaschke data, an atomic singular measure tau and
/// sampled outer density q >= 0: S = exp(-\int (w+z)/(w-z) d tau),
/// O = c exp(-\int (w+z)/(w-z) q dlambda). The three factor measures are
/// returned alongside, and their double convolution is checked against mu.
struct BsoResult {
    CircleMeasure mu;
    CircleMeasure mu_b;
    CircleMeasure mu_s;
    CircleMeasure mu_o;
    double recomposition_defect = 0.0;
};

BsoResult bso_compose(const StructuredF::Blaschke& blaschke, const FiniteCircleMeasure& tau,
                      std::span<const double> q_grid, cplx c, int order = kDefaultOrder);

}  // namespace bcirc
