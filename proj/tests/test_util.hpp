#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/finite_measure.hpp"
#include "bcirc/measure.hpp"

namespace bcirc::test {

/// Deterministic generator shared by the test suite. Uniforms come from the
/// top 53 bits of mt19937_64 so the stream is identical on every platform.
struct TestRng {
    std::mt19937_64 gen;

    explicit TestRng(std::uint64_t seed) : gen(seed) {}

    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double angle() { return uniform() * kTwoPi; }

    /// 1..max_atoms atoms, angles separated by at least 1e-6, Dirichlet(1)
    /// weights.
    CircleMeasure random_atomic(int max_atoms) {
        const int n = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_atoms));
        std::vector<double> angles;
        std::vector<double> weights;
        while (static_cast<int>(angles.size()) < n) {
            const double a = angle();
            bool clash = false;
            for (double b : angles) clash = clash || angle_distance(a, b) < 1e-6;
            if (!clash) angles.push_back(a);
        }
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            weights.push_back(-std::log(1.0 - uniform()));
            total += weights.back();
        }
        for (double& w : weights) w /= total;
        return CircleMeasure::atomic(std::move(angles), std::move(weights));
    }

    /// Atomic finite measure with 1..max_atoms atoms and total mass in
    /// (0, max_mass].
    FiniteCircleMeasure random_rho(int max_atoms, double max_mass, int order) {
        const int n = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_atoms));
        CircleAtoms atoms;
        while (static_cast<int>(atoms.angles.size()) < n) {
            const double a = angle();
            bool clash = false;
            for (double b : atoms.angles) clash = clash || angle_distance(a, b) < 1e-6;
            if (!clash) atoms.angles.push_back(a);
        }
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            atoms.weights.push_back(-std::log(1.0 - uniform()));
            total += atoms.weights.back();
        }
        const double mass = (0.05 + 0.95 * uniform()) * max_mass;
        for (double& w : atoms.weights) w *= mass / total;
        return FiniteCircleMeasure::from_atoms(std::move(atoms), order);
    }
};

inline double cdist(cplx a, cplx b) { return std::abs(a - b); }

inline double max_dev(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace bcirc::test
