#include "bcirc/finite_measure.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bcirc {

double CircleAtoms::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

cplx CircleAtoms::conj_moment(int k) const {
    cplx s = 0.0;
    for (size_t j = 0; j < angles.size(); ++j)
        s += weights[j] * std::polar(1.0, -k * angles[j]);
    return s;
}

FiniteCircleMeasure FiniteCircleMeasure::zero(int K) {
    FiniteCircleMeasure rho;
    rho.mass = 0.0;
    rho.r.assign(static_cast<size_t>(K), cplx{});
    return rho;
}

FiniteCircleMeasure FiniteCircleMeasure::from_atoms(CircleAtoms a, int K) {
    if (a.angles.size() != a.weights.size())
        throw std::invalid_argument("FiniteCircleMeasure: angle/weight length mismatch");
    for (double& t : a.angles) t = canonical_angle(t);
    FiniteCircleMeasure rho;
    rho.mass = a.total_weight();
    rho.r.resize(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) rho.r[k - 1] = a.conj_moment(k);
    rho.atoms = std::move(a);
    return rho;
}

FiniteCircleMeasure FiniteCircleMeasure::uniform(double mass, int K) {
    FiniteCircleMeasure rho = zero(K);
    rho.mass = mass;
    return rho;
}

FiniteCircleMeasure FiniteCircleMeasure::scaled(double t) const {
    FiniteCircleMeasure out;
    out.mass = t * mass;
    out.r.reserve(r.size());
    for (const cplx& x : r) out.r.push_back(t * x);
    if (atoms) {
        CircleAtoms a = *atoms;
        for (double& w : a.weights) w *= t;
        out.atoms = std::move(a);
    }
    return out;
}

cplx FiniteCircleMeasure::conj_moment(int k) const {
    if (k == 0) return mass;
    if (atoms) return atoms->conj_moment(k);
    return k >= 1 && k <= static_cast<int>(r.size()) ? r[k - 1] : cplx{};
}

cplx FiniteCircleMeasure::herglotz_eval(cplx z) const {
    if (atoms) {
        cplx s = 0.0;
        for (size_t j = 0; j < atoms->angles.size(); ++j) {
            const cplx x = std::polar(1.0, atoms->angles[j]);
            s += atoms->weights[j] * (x + z) / (x - z);
        }
        return s;
    }
    cplx s = mass;
    cplx zk = 1.0;
    for (const cplx& rk : r) {
        zk *= z;
        s += 2.0 * rk * zk;
    }
    return s;
}

std::optional<std::string> FiniteCircleMeasure::violation() const {
    if (!(mass >= 0.0) || !std::isfinite(mass)) return "finite measure: negative or non-finite mass";
    for (size_t k = 0; k < r.size(); ++k)
        if (std::abs(r[k]) > mass + 1e-12) return "finite measure: |r_k| exceeds total mass";
    if (atoms) {
        if (atoms->angles.size() != atoms->weights.size())
            return "finite measure: angle/weight length mismatch";
        for (double w : atoms->weights)
            if (!(w >= 0.0)) return "finite measure: negative atom weight";
        if (std::fabs(atoms->total_weight() - mass) > 1e-10)
            return "finite measure: atom weights do not sum to the stored mass";
        for (size_t k = 1; k <= r.size(); ++k)
            if (std::abs(atoms->conj_moment(static_cast<int>(k)) - r[k - 1]) > 1e-10)
                return "finite measure: stored r_k disagrees with atoms";
    }
    return std::nullopt;
}

}  // namespace bcirc
