#pragma once

#include <variant>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/finite_measure.hpp"
#include "bcirc/series.hpp"

namespace bcirc {

/// One Blaschke factor (conj(alpha)/|alpha|) (alpha - z)/(1 - conj(alpha) z),
/// repeated `mult` times. Requires 0 < |alpha| < 1.
struct BlaschkeFactor {
    cplx alpha;
    int mult = 1;
};

/// A holomorphic self-map of the closed unit disk in closed form where one is
/// known, with a truncated series as the general fallback. Closed forms keep
/// information a truncation would lose (a constant, a Blaschke product, or
/// exp(ib - \int (x+z)/(x-z) d rho) for a finite measure rho).
struct StructuredF {
    struct Zero {};
    struct Constant {
        cplx c;  // |c| <= 1
    };
    struct Blaschke {
        int p = 0;  // order of the zero at the origin
        std::vector<BlaschkeFactor> factors;
        cplx phase{1.0, 0.0};  // unimodular
    };
    struct ExpHerglotz {
        double b = 0.0;  // in [0, 2*pi)
        FiniteCircleMeasure rho;
    };
    struct Series {
        TruncatedSeries s;
    };

    using Rep = std::variant<Zero, Constant, Blaschke, ExpHerglotz, Series>;
    Rep rep;

    static StructuredF zero() { return {Zero{}}; }
    static StructuredF constant(cplx c) { return {Constant{c}}; }
    static StructuredF blaschke(Blaschke b) { return {std::move(b)}; }
    static StructuredF exp_herglotz(double b, FiniteCircleMeasure rho) {
        return {ExpHerglotz{canonical_angle(b), std::move(rho)}};
    }
    static StructuredF series(TruncatedSeries s) { return {Series{std::move(s)}}; }
};

/// The data of a Herglotz-logarithm representation
/// u(z) = ib - \int (x+z)/(x-z) d rho(x), b in [0, 2*pi).
struct HerglotzData {
    double b = 0.0;
    FiniteCircleMeasure rho;
};

}  // namespace bcirc
