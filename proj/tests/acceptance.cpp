// Acceptance gate: one check per shipped guarantee, one PASS/FAIL line each.
// Exits nonzero if any line fails. Tolerances are stated inline; they are
// contract values, not tuning knobs.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <initializer_list>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/convolution.hpp"
#include "bcirc/errors.hpp"
#include "bcirc/finite_measure.hpp"
#include "bcirc/gallery.hpp"
#include "bcirc/levy.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/series.hpp"
#include "bcirc/structured_f.hpp"
#include "bcirc/transform.hpp"
#include "test_util.hpp"

using namespace bcirc;
using test::max_dev;
using test::TestRng;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// ---- global |F| <= 1 tracking (criterion 11) -------------------------------
//
// Every measure any criterion constructs feeds this bound. Measures with an
// exact representation (atomic or closed-form F) go through f_disk_bound.
// A convolution result only stores truncated moments, and evaluating that
// polynomial near |z| = 0.9 reports truncation tail, not the transform; its
// true F is the product of the factors' transforms, so the product is what
// gets sampled.

double g_max_f = 0.0;

cplx f_point(const CircleMeasure& mu, cplx z) {
    const cplx psi = psi_eval(mu, z);
    return psi / (z * (1.0 + psi));
}

void track(const CircleMeasure& mu) { g_max_f = std::max(g_max_f, f_disk_bound(mu)); }

void track_product(std::initializer_list<const CircleMeasure*> factors) {
    for (const double r : {0.3, 0.6, 0.9})
        for (int j = 0; j < 256; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / 256.0);
            double mod = 1.0;
            for (const CircleMeasure* mu : factors) mod *= std::abs(f_point(*mu, z));
            g_max_f = std::max(g_max_f, mod);
        }
}

void track_power(const CircleMeasure& mu, int n) {
    for (const double r : {0.3, 0.6, 0.9})
        for (int j = 0; j < 256; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / 256.0);
            g_max_f = std::max(g_max_f, std::pow(std::abs(f_point(mu, z)), n));
        }
}

// ---- criteria ---------------------------------------------------------------

// 200 seeded random atomic pairs: moments 1..8 of the convolution against
// both brute-force oracles, inside 60 s.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepReport r = verify_multiplicativity(42, 200, 8, 1e-9);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g_max_f = std::max(g_max_f, r.max_f_modulus);
    const bool ok = r.passed && r.max_deviation_combinatorial <= 1e-9 &&
                    r.max_deviation_operator <= 1e-9 && secs < 60.0;
    report(1, ok,
           "200 random pairs vs both oracles: comb dev " + num(r.max_deviation_combinatorial) +
               ", operator dev " + num(r.max_deviation_operator) + ", " + num(secs) + " s");
}

// Closed forms of the F transform for the four basic families, coefficient-wise.
void criterion_2() {
    double worst = 0.0;

    for (const double b : {0.0, 1.1, 4.0}) {
        const CircleMeasure mu = dirac(b);
        track(mu);
        const TruncatedSeries f = expand_F(F_from_measure(mu, 16), 16);
        worst = std::max(worst, std::abs(f.coeff(0) - std::polar(1.0, b)));
        for (int k = 1; k <= 16; ++k) worst = std::max(worst, std::abs(f.coeff(k)));
    }

    // two atoms: F is the Moebius form e^{i(b1+b2)} (alpha - z)/(1 - conj(alpha) z),
    // alpha = p e^{-i b2} + (1-p) e^{-i b1}; expanded here independently by
    // series division.
    struct { double p, b1, b2; } tp_cases[] = {{0.3, 0.4, 2.0}, {0.72, 5.1, 1.3}};
    for (const auto& c : tp_cases) {
        const CircleMeasure mu = two_point(c.p, c.b1, c.b2, 16);
        track(mu);
        const TruncatedSeries f = expand_F(F_from_measure(mu, 16), 16);
        const cplx alpha =
            c.p * std::polar(1.0, -c.b2) + (1.0 - c.p) * std::polar(1.0, -c.b1);
        const cplx phase = std::polar(1.0, c.b1 + c.b2);
        std::vector<cplx> numer(17, cplx{});
        numer[0] = phase * alpha;
        numer[1] = -phase;
        std::vector<cplx> denom(17, cplx{});
        denom[0] = 1.0;
        denom[1] = -std::conj(alpha);
        const TruncatedSeries expected =
            div(TruncatedSeries(std::move(numer)), TruncatedSeries(std::move(denom)));
        for (int k = 0; k <= 16; ++k)
            worst = std::max(worst, std::abs(f.coeff(k) - expected.coeff(k)));
    }

    {
        const CircleMeasure mu = haar();
        track(mu);
        const TruncatedSeries f = expand_F(F_from_measure(mu, 16), 16);
        for (int k = 0; k <= 16; ++k) worst = std::max(worst, std::abs(f.coeff(k)));
    }

    for (const int n : {1, 2, 3, 4, 5}) {
        const CircleMeasure mu = cyclic_haar(n, 16);
        track(mu);
        const TruncatedSeries f = expand_F(F_from_measure(mu, 16), 16);
        for (int k = 0; k <= 16; ++k)
            worst = std::max(worst, std::abs(f.coeff(k) - (k == n - 1 ? 1.0 : 0.0)));
    }

    // the balanced two-point measure on {1, -1} is the 2nd cyclic measure
    double worst_match = 0.0;
    {
        const CircleMeasure tp = two_point(0.5, 0.0, std::numbers::pi, 16);
        track(tp);
        const TruncatedSeries a = expand_F(F_from_measure(tp, 16), 16);
        const TruncatedSeries b = expand_F(F_from_measure(cyclic_haar(2, 16), 16), 16);
        for (int k = 0; k <= 16; ++k)
            worst_match = std::max(worst_match, std::abs(a.coeff(k) - b.coeff(k)));
    }

    const bool ok = worst <= 1e-12 && worst_match <= 1e-12;
    report(2, ok,
           "closed-form F coefficients: dev " + num(worst) + ", two_point(1/2,0,pi) vs "
           "cyclic(2) dev " + num(worst_match));
}

// Point masses form a group: delta_a convolved with delta_c is delta_{a+c}.
void criterion_3() {
    TestRng rng(303);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.angle();
        const double c = rng.angle();
        const CircleMeasure conv = convolve(dirac(a), dirac(c), 8);
        track(conv);
        const std::vector<cplx> m = moments_of(conv, 8);
        for (int k = 1; k <= 8; ++k)
            worst = std::max(worst, std::abs(m[k - 1] - std::polar(1.0, k * (a + c))));
    }
    report(3, worst <= 1e-12, "50 random rotation pairs: moment dev " + num(worst));
}

// The uniform measure absorbs convolution, and is fixed by convolution powers.
void criterion_4() {
    TestRng rng(404);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const CircleMeasure mu = rng.random_atomic(5);
        track(mu);
        for (const CircleMeasure& conv : {convolve(haar(), mu, 8), convolve(mu, haar(), 8)}) {
            track(conv);
            for (const cplx m : moments_of(conv, 8)) worst = std::max(worst, std::abs(m));
        }
    }
    double worst_power = 0.0;
    for (int n = 1; n <= 5; ++n) {
        const CircleMeasure power = convolve_power(haar(), n, 8);
        track(power);
        for (const cplx m : moments_of(power, 8)) worst_power = std::max(worst_power, std::abs(m));
    }
    const bool ok = worst < 1e-12 && worst_power < 1e-12;
    report(4, ok,
           "absorption dev " + num(worst) + " over 20 atomic measures, power-fixed-point dev " +
               num(worst_power));
}

// Binary cyclic convolved with itself gives the ternary cyclic measure.
void criterion_5() {
    const CircleMeasure l2 = cyclic_haar(2, 16);
    const CircleMeasure l3 = cyclic_haar(3, 16);
    track(l2);
    track(l3);
    const CircleMeasure conv = convolve(l2, l2, 8);
    track_product({&l2, &l2});

    const std::vector<cplx> expected{cplx{}, cplx{}, cplx{1.0, 0.0}, cplx{},
                                     cplx{}, cplx{1.0, 0.0}, cplx{}, cplx{}};
    const double dev_expected = max_dev(moments_of(conv, 8), expected);
    const double dev_l3 = max_dev(moments_of(conv, 8), moments_of(l3, 8));

    // the operator oracle wants atoms, so use the explicit two-point form
    const CircleMeasure l2_atoms =
        CircleMeasure::atomic({0.0, std::numbers::pi}, {0.5, 0.5});
    track(l2_atoms);
    const OperatorPairModel model = operator_model_build(l2_atoms, l2_atoms);
    const double dev_op = max_dev(operator_model_moments(model, 8), expected);

    const bool ok = dev_expected <= 1e-10 && dev_l3 <= 1e-10 && dev_op <= 1e-10;
    report(5, ok,
           "cyclic(2) self-convolution: target dev " + num(dev_expected) + ", vs cyclic(3) " +
               num(dev_l3) + ", operator oracle " + num(dev_op));
}

// Characteristic pairs survive the synthesize -> series -> extract round trip.
void criterion_6() {
    TestRng rng(606);
    double worst_b = 0.0;
    double worst_rho = 0.0;
    int trials = 0;
    std::string failure;
    for (int trial = 0; trial < 100; ++trial) {
        const double b = rng.angle();
        const FiniteCircleMeasure rho = rng.random_rho(4, 2.0, 32);
        const CircleMeasure mu = measure_from_char_pair({b, rho}, 32);
        track(mu);
        try {
            // go through the expanded series so the extraction is numeric,
            // not a copy of the stored closed form
            const TruncatedSeries f = expand_F(F_from_measure(mu, 32), 32);
            const HerglotzData back = herglotz_analyze(log_F(StructuredF::series(f), 32));
            worst_b = std::max(worst_b, angle_distance(back.b, b));
            worst_rho = std::max(worst_rho, std::abs(back.rho.mass - rho.mass));
            for (int k = 1; k <= 16; ++k)
                worst_rho =
                    std::max(worst_rho, std::abs(back.rho.conj_moment(k) - rho.conj_moment(k)));
            ++trials;
        } catch (const Error& e) {
            failure = e.what();
        }
    }
    const bool ok = trials == 100 && worst_b <= 1e-9 && worst_rho <= 1e-9;
    std::string detail = std::to_string(trials) + "/100 round trips: drift dev " + num(worst_b) +
                         ", measure-moment dev " + num(worst_rho);
    if (!failure.empty()) detail += " (last error: " + failure + ")";
    report(6, ok, detail);
}

// n-th roots recompose under convolution powers, semigroups add in t, and the
// pair (0, uniform) gives the explicit moment flow e^{-tk}.
void criterion_7() {
    TestRng rng(707);
    double worst_root = 0.0;
    const CircleMeasure bases[] = {poisson(0.7, 1.1),
                                   measure_from_char_pair({rng.angle(), rng.random_rho(3, 1.0, 32)}, 32)};
    for (const CircleMeasure& base : bases) {
        track(base);
        for (const int n : {2, 3, 5}) {
            const CircleMeasure root = nth_root(base, n, 32);
            track(root);
            const CircleMeasure power = convolve_power(root, n, 12);
            track_power(root, n);
            worst_root = std::max(worst_root, max_dev(moments_of(power, 12), moments_of(base, 12)));
        }
    }

    const CharacteristicPair pair{0.9, rng.random_rho(4, 1.5, 32)};
    double worst_semi = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double s = 2.0 * rng.uniform();
        const double t = 2.0 * rng.uniform();
        const CircleMeasure mu_s = semigroup_measure(pair, s, 32);
        const CircleMeasure mu_t = semigroup_measure(pair, t, 32);
        const CircleMeasure mu_st = semigroup_measure(pair, s + t, 32);
        track(mu_s);
        track(mu_t);
        track(mu_st);
        const CircleMeasure conv = convolve(mu_s, mu_t, 12);
        track_product({&mu_s, &mu_t});
        worst_semi = std::max(worst_semi, max_dev(moments_of(conv, 12), moments_of(mu_st, 12)));
    }

    double worst_flow = 0.0;
    for (const double t : {0.25, 1.0, 3.0}) {
        const CircleMeasure mu_t =
            semigroup_measure({0.0, FiniteCircleMeasure::uniform(1.0, 32)}, t, 32);
        track(mu_t);
        const std::vector<cplx> m = moments_of(mu_t, 12);
        for (int k = 1; k <= 12; ++k)
            worst_flow = std::max(worst_flow, std::abs(m[k - 1] - std::exp(-t * k)));
    }

    const bool ok = worst_root <= 1e-9 && worst_semi <= 1e-9 && worst_flow <= 1e-10;
    report(7, ok,
           "root law dev " + num(worst_root) + ", semigroup additivity dev " + num(worst_semi) +
               ", uniform-pair flow dev " + num(worst_flow));
}

// Divisibility verdicts across the four decided families.
void criterion_8() {
    TestRng rng(808);
    bool ok = true;
    std::string what;

    for (const int n : {2, 3, 4, 5, 6}) {
        const CircleMeasure mu = cyclic_haar(n, 16);
        track(mu);
        const DivisibilityVerdict v = is_infinitely_divisible(mu);
        const auto* nd = std::get_if<NotDivisible>(&v);
        if (!nd || nd->witness.kind != ZeroWitness::Kind::ZeroAtOrigin) {
            ok = false;
            what = "cyclic(" + std::to_string(n) + ") not refused at the origin";
        }
    }

    // random atomic measures balanced to first moment zero: one compensating
    // atom kills the mean exactly
    for (int trial = 0; trial < 10; ++trial) {
        CircleMeasure base = rng.random_atomic(4);
        cplx v = moments_of(base, 1)[0];
        while (std::abs(v) < 0.05) {
            base = rng.random_atomic(4);
            v = moments_of(base, 1)[0];
        }
        const auto& atoms = std::get<CircleMeasure::Atomic>(base.rep).atoms;
        const double s = std::abs(v) / (1.0 + std::abs(v));
        std::vector<double> angles = atoms.angles;
        std::vector<double> weights = atoms.weights;
        for (double& w : weights) w *= 1.0 - s;
        angles.push_back(canonical_angle(std::arg(v) + std::numbers::pi));
        weights.push_back(s);
        bool clash = false;
        for (std::size_t j = 0; j + 1 < angles.size(); ++j)
            clash = clash || angle_distance(angles[j], angles.back()) < 1e-6;
        if (clash) {
            --trial;
            continue;
        }
        const CircleMeasure mu = CircleMeasure::atomic(std::move(angles), std::move(weights));
        track(mu);
        if (!std::holds_alternative<NotDivisible>(is_infinitely_divisible(mu))) {
            ok = false;
            what = "zero-mean atomic measure accepted";
        }
    }

    double worst_pair = 0.0;
    for (const double r : {0.3, 0.7, 0.95}) {
        const double b = rng.angle();
        const CircleMeasure mu = poisson(r, b);
        track(mu);
        const DivisibilityVerdict v = is_infinitely_divisible(mu);
        const auto* d = std::get_if<Divisible>(&v);
        if (!d) {
            ok = false;
            what = "poisson(" + num(r) + ") not recognized";
            continue;
        }
        worst_pair = std::max(worst_pair, angle_distance(d->pair.b, b));
        worst_pair = std::max(worst_pair, std::abs(d->pair.rho.mass + std::log(r)));
        for (int k = 1; k <= 8; ++k)
            worst_pair = std::max(worst_pair, std::abs(d->pair.rho.conj_moment(k)));
    }
    if (worst_pair > 1e-9) {
        ok = false;
        what = "poisson pair dev " + num(worst_pair);
    }

    double worst_witness = 0.0;
    const cplx alphas[] = {cplx{0.4, 0.3}, std::polar(0.25 + 0.5 * rng.uniform(), rng.angle())};
    for (const cplx alpha : alphas) {
        StructuredF::Blaschke bl;
        bl.p = 0;
        bl.factors = {BlaschkeFactor{alpha, 1}};
        bl.phase = std::polar(1.0, 0.2);
        const CircleMeasure mu = CircleMeasure::structured(StructuredF::blaschke(bl));
        track(mu);
        const DivisibilityVerdict v = is_infinitely_divisible(mu);
        const auto* nd = std::get_if<NotDivisible>(&v);
        if (!nd || nd->witness.kind != ZeroWitness::Kind::InteriorZero) {
            ok = false;
            what = "Blaschke factor not refused with an interior zero";
            continue;
        }
        worst_witness = std::max(worst_witness, std::abs(nd->witness.location - alpha));
    }
    if (worst_witness > 1e-6) {
        ok = false;
        what = "witness location dev " + num(worst_witness);
    }

    std::string detail = "verdicts on cyclic, zero-mean, poisson, Blaschke; pair dev " +
                         num(worst_pair) + ", witness dev " + num(worst_witness);
    if (!ok) detail += " (" + what + ")";
    report(8, ok, detail);
}

// The singular inner example at beta = pi: the zero at theta = 0, its mass
// 2/3 by formula and by Poisson extrapolation, and subprobability of the
// leading atoms.
void criterion_9() {
    const double beta = std::numbers::pi;
    const SingularExampleResult r = singular_example(beta, 50);

    const double theta0 = r.zeros.front();
    // residual of the phase equation -cot((beta-theta)/2) = theta + 2*pi*k
    const double lhs = -1.0 / std::tan(0.5 * (beta - theta0));
    const double k = std::round((lhs - theta0) / kTwoPi);
    const double residual = std::abs(lhs - theta0 - kTwoPi * k);

    const double mass_formula = r.atom_masses.front();
    const CircleMeasure mu = singular_measure(beta, 32);
    track(mu);
    const double radii[] = {0.9, 0.99, 0.999};
    const double mass_poisson = atom_mass_estimate(mu, 0.0, radii);

    double mass_sum = 0.0;
    for (int j = 0; j < 50; ++j) mass_sum += r.atom_masses[static_cast<std::size_t>(j)];

    const bool ok = residual < 1e-10 && std::abs(mass_formula - 2.0 / 3.0) <= 1e-10 &&
                    std::abs(mass_poisson - 2.0 / 3.0) <= 1e-4 && mass_sum <= 1.0;
    report(9, ok,
           "zero at " + num(theta0) + " residual " + num(residual) + ", mass 2/3 dev " +
               num(std::abs(mass_formula - 2.0 / 3.0)) + " (formula) / " +
               num(std::abs(mass_poisson - 2.0 / 3.0)) + " (Poisson), leading masses sum " +
               num(mass_sum));
}

// Operator models stay numerically unitary with faithful marginals up to the
// dimension cap. The full Gram matrix is checked through dimension 1024; at
// 4096 it costs minutes, so 64 evenly spaced columns stand in for it there
// (every column has the same algebraic structure).
void criterion_10() {
    TestRng rng(1010);
    double worst_unit = 0.0;
    double worst_marg = 0.0;

    const auto exact_atoms = [&rng](int n) {
        std::vector<double> angles;
        std::vector<double> weights;
        while (static_cast<int>(angles.size()) < n) {
            const double a = rng.angle();
            bool clash = false;
            for (const double b : angles) clash = clash || angle_distance(a, b) < 1e-6;
            if (!clash) angles.push_back(a);
        }
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            weights.push_back(-std::log(1.0 - rng.uniform()));
            total += weights.back();
        }
        for (double& w : weights) w /= total;
        return CircleMeasure::atomic(std::move(angles), std::move(weights));
    };

    int top_dim = 0;
    for (const int atoms : {2, 5, 16, 32, 64}) {
        const CircleMeasure mu = exact_atoms(atoms);
        const CircleMeasure nu = exact_atoms(atoms);
        track(mu);
        track(nu);
        const OperatorPairModel model = operator_model_build(mu, nu);
        top_dim = std::max(top_dim, model.dim());
        if (model.dim() <= 1024) {
            worst_unit = std::max(worst_unit, model.unitarity_defect());
        } else {
            std::vector<int> cols;
            for (int j = 0; j < model.dim(); j += 64) cols.push_back(j);
            worst_unit = std::max(worst_unit, model.unitarity_defect_on_columns(cols));
        }
        worst_marg = std::max(worst_marg, model.marginal_defect(8));
    }

    const bool ok = worst_unit < 1e-12 && worst_marg < 1e-12 && top_dim == 4096;
    report(10, ok,
           "models up to dim " + std::to_string(top_dim) + ": unitarity defect " +
               num(worst_unit) + ", marginal defect " + num(worst_marg));
}

void criterion_11() {
    report(11, g_max_f <= 1.0 + 1e-10,
           "max |F| over every constructed measure on the 3x256 grid: " + num(g_max_f));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures > 0) {
        std::printf("%d of 11 criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
