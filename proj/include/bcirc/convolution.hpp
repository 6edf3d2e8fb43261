#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/measure.hpp"

namespace bcirc {

/// Boolean convolution of mu and nu: the measure whose F transform is the
/// product F_mu * F_nu. Returns a Moments measure carrying up to `order`
/// moments; convolving with the Haar measure returns the structured zero
/// transform, and two single-point (constant-F) inputs multiply exactly.
CircleMeasure convolve(const CircleMeasure& mu, const CircleMeasure& nu, int order);

/// n-fold convolution of mu with itself, via F^n.
CircleMeasure convolve_power(const CircleMeasure& mu, int n, int order);

/// One block of an alternating word in two letters.
struct WordBlock {
    enum class Letter { X, Y };
    Letter letter;
    int exponent = 1;
};

/// The factorized expectation of an alternating word: the product over
/// blocks of the single-letter moments, phi(X^{n_1}) phi(Y^{m_1}) ... .
/// x_moms[k] must hold phi(X^k) with x_moms[0] = 1. Throws
/// WordNotAlternating when adjacent blocks share a letter or an exponent
/// is below 1.
cplx boolean_word_moment(std::span<const cplx> x_moms, std::span<const cplx> y_moms,
                         std::span<const WordBlock> word);

/// n-th moment of the product UV computed straight from the definition of
/// boolean independence: phi((UV)^n) expanded over all 4^n presence
/// patterns of the letters X = U-1, Y = V-1, each pattern reduced by
/// merging adjacent equal letters and factorized by boolean_word_moment.
/// Costs O(4^n n); n is capped at 10.
cplx product_moments_combinatorial(const CircleMeasure& mu, const CircleMeasure& nu, int n);

/// Concrete unitaries realizing boolean independence of U-1 and V-1 in the
/// vector state xi_u (x) xi_v:
///   Utilde = U (x) P + I (x) (I-P),   P the projection onto xi_v,
///   Vtilde = Q (x) V + (I-Q) (x) I,   Q the projection onto xi_u.
/// Alternating words in Utilde-1, Vtilde-1 then factorize exactly, so the
/// distribution of Utilde Vtilde in the state is the boolean convolution.
struct OperatorPairModel {
    Eigen::VectorXcd u_diag;  // unit-modulus spectrum of U
    Eigen::VectorXcd v_diag;
    Eigen::VectorXd xi_u;  // square roots of the weights; unit vectors
    Eigen::VectorXd xi_v;
    Eigen::MatrixXcd utilde;
    Eigen::MatrixXcd vtilde;
    Eigen::VectorXcd state;  // xi_u (x) xi_v

    int dim_u() const { return static_cast<int>(u_diag.size()); }
    int dim_v() const { return static_cast<int>(v_diag.size()); }
    int dim() const { return static_cast<int>(state.size()); }

    /// max-norm of Utilde* Utilde - I and Vtilde* Vtilde - I, whichever is
    /// larger; computed from the dense matrices.
    double unitarity_defect() const;

    /// Same defect restricted to the given columns; for large models where
    /// the full Gram product is too expensive.
    double unitarity_defect_on_columns(std::span<const int> columns) const;

    /// Largest deviation of <state, Utilde^k state> from the k-th moment of
    /// the U marginal (and likewise for V), over k = 1..K.
    double marginal_defect(int K) const;
};

/// Builds the model for two atomic measures. The product dimension is
/// capped at 4096.
OperatorPairModel operator_model_build(const CircleMeasure& mu, const CircleMeasure& nu);

/// m_k = <state, (Utilde Vtilde)^k state>, k = 1..K, by matrix-vector
/// products only.
std::vector<cplx> operator_model_moments(const OperatorPairModel& model, int K);

struct SweepReport {
    std::uint64_t seed = 0;
    int pairs = 0;
    int max_moment = 0;
    double tolerance = 0.0;
    double max_deviation_combinatorial = 0.0;
    double max_deviation_operator = 0.0;
    double max_unitarity_defect = 0.0;
    double max_marginal_defect = 0.0;
    double max_f_modulus = 0.0;  // over every measure built during the sweep
    bool passed = false;
};

/// Seeded random sweep checking that convolve agrees with both oracles on
/// `pairs` random atomic pairs (up to 5 atoms each, uniform angles,
/// Dirichlet(1) weights) for moments 1..max_moment.
SweepReport verify_multiplicativity(std::uint64_t seed, int pairs, int max_moment = 8,
                                    double tolerance = 1e-9);

}  // namespace bcirc
