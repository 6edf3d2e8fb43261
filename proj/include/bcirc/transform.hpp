#pragma once

#include <span>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/series.hpp"
#include "bcirc/structured_f.hpp"

namespace bcirc {

/// psi(z) = sum m_k z^k: the k-th Taylor coefficient of psi is the k-th
/// moment, so this is just a reindexing.
TruncatedSeries psi_from_moments(std::span<const cplx> m);

/// Moments m_1..m_N read back off a psi series of order N.
std::vector<cplx> moments_from_psi(const TruncatedSeries& psi);

/// F(z) = (1/z) psi(z)/(1 + psi(z)). Requires psi(0) = 0 up to the
/// removable-singularity tolerance; the constant term of the result is m_1.
TruncatedSeries F_from_psi(const TruncatedSeries& psi);

/// psi(z) = z F(z)/(1 - z F(z)); the order increases by one, so F of order
/// N determines m_1..m_{N+1}.
TruncatedSeries psi_from_F(const TruncatedSeries& f);

/// F transform of a measure to the given order. Single atoms give an exact
/// Constant, structured measures pass through unchanged, everything else
/// goes through the moment series.
StructuredF F_from_measure(const CircleMeasure& mu, int order);

/// Taylor coefficients c_0..c_order of a structured F. A Series variant is
/// truncated to what it stores; closed forms expand to the full order.
TruncatedSeries expand_F(const StructuredF& f, int order);

/// Pointwise evaluation of F inside the disk, exact for closed forms.
cplx eval_F(const StructuredF& f, cplx z);

/// Moments m_1..m_K of the measure determined by F.
std::vector<cplx> moments_from_F(const StructuredF& f, int K);

/// Cauchy transform G(w) = 1/(w - F(1/w)) for |w| > 1. For an atomic
/// measure this equals sum_j w_j/(w - e^{i theta_j}).
cplx cauchy_eval(const StructuredF& f, cplx w);

/// Reads (b, rho) off a Herglotz logarithm u(z) = ib - integral of
/// (x+z)/(x-z) d rho: the expansion (x+z)/(x-z) = 1 + 2 sum (z/x)^k gives
/// u_0 = ib - rho(S^1) and u_k = -2 r_k. Throws NotAHerglotzLogarithm when
/// Re u > 1e-9 at any of 256 sample points on |z| in {0.3, 0.6, 0.9}.
HerglotzData herglotz_analyze(const TruncatedSeries& u);

/// Inverse of herglotz_analyze: u_0 = ib - mass, u_k = -2 r_k.
TruncatedSeries herglotz_synthesize(const HerglotzData& h, int order);

}  // namespace bcirc
