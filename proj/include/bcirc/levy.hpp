#pragma once

#include <variant>

#include "bcirc/common.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/series.hpp"
#include "bcirc/structured_f.hpp"

namespace bcirc {

/// The (b, rho) of the Levy-Khintchine formula u(z) = ib - \int (x+z)/(x-z)
/// d rho(x) with b in [0, 2*pi); it determines the divisible measure with
/// F = exp(u) uniquely.
using CharacteristicPair = HerglotzData;

struct ZeroWitness {
    enum class Kind { ZeroAtOrigin, InteriorZero };
    Kind kind = Kind::ZeroAtOrigin;
    cplx location;        // where |F| < 1e-6 was observed (InteriorZero only)
    double radius = 0.0;  // |location|
};

struct Divisible {
    CharacteristicPair pair;
};
struct HaarDivisible {};
struct NotDivisible {
    ZeroWitness witness;
};
/// A series-backed F can only be certified zero-free up to a radius; this
/// verdict records how far the certificate reaches instead of overclaiming.
struct DivisibleUpToRadius {
    double r = 0.0;
    CharacteristicPair pair;
};

using DivisibilityVerdict =
    std::variant<Divisible, HaarDivisible, NotDivisible, DivisibleUpToRadius>;

/// u = log F with the imaginary part of u(0) shifted into [0, 2*pi).
/// Exact (no exp/log round trip) for constant and exp-Herglotz forms.
/// Throws ZeroFunction for F identically zero and ZeroAtOrigin when
/// |F(0)| <= 1e-12.
TruncatedSeries log_F(const StructuredF& f, int order = kDefaultOrder);

/// Zeros of F in |z| < r counted with multiplicity, as the winding of
/// F(r e^{i theta}) around 0; the phase is unwrapped on a grid refined
/// until every step is below pi/2. Throws ZeroOnContour when |F| dips
/// under 1e-10 on the circle itself.
int winding_number(const StructuredF& f, double r);

/// Decides infinite divisibility at truncated-data scale: F identically
/// zero is the Haar case, F(0) = 0 obstructs, exp-Herglotz forms are
/// divisible by construction, a Blaschke factor is an explicit interior
/// zero, and series are scanned by winding number up to r_max.
DivisibilityVerdict is_infinitely_divisible(const CircleMeasure& mu, double r_max = 0.999,
                                            int order = kDefaultOrder);

/// The characteristic pair of a divisible measure. Throws NotDivisibleError
/// when the verdict is NotDivisible or Haar (Haar is divisible but has no
/// F = exp(u) representation).
CharacteristicPair char_pair(const CircleMeasure& mu, int order = kDefaultOrder);

/// The divisible measure with F = exp(ib - \int (x+z)/(x-z) d rho).
CircleMeasure measure_from_char_pair(const CharacteristicPair& pair, int order = kDefaultOrder);

/// Convolution n-th root via F_n = exp(u/n); Haar is its own root.
CircleMeasure nth_root(const CircleMeasure& mu, int n, int order = kDefaultOrder);

/// The semigroup member mu_t with F = exp(t u); mu_s convolved with mu_t
/// equals mu_{s+t}. The stored drift is t*b reduced mod 2*pi.
CircleMeasure semigroup_measure(const CharacteristicPair& pair, double t,
                                int order = kDefaultOrder);

/// mu convolved with itself equals mu: true exactly for F identically 1
/// (the point mass at 1) and F identically 0 (Haar), within 1e-10
/// coefficient-wise.
bool is_idempotent(const CircleMeasure& mu, int order = kDefaultOrder);

}  // namespace bcirc
