#include "bcirc/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bcirc/errors.hpp"
#include "bcirc/transform.hpp"

namespace bcirc {

namespace {

constexpr int kOracleMaxOrder = 10;
constexpr int kModelMaxDim = 4096;

const CircleAtoms& atoms_of(const CircleMeasure& mu, const char* who) {
    const auto* a = std::get_if<CircleMeasure::Atomic>(&mu.rep);
    if (!a) throw std::invalid_argument(std::string(who) + ": measure must be atomic");
    return a->atoms;
}

/// phi((U-1)^k) from the moments of U: sum_j C(k,j) (-1)^{k-j} m_j.
std::vector<cplx> centered_powers(std::span<const cplx> m, int n) {
    std::vector<cplx> phi(static_cast<size_t>(n) + 1);
    std::vector<double> binom(static_cast<size_t>(n) + 1);
    phi[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom[0] = 1.0;
        for (int j = k; j > 0; --j) binom[j] = (j <= k - 1 ? binom[j] : 0.0) + binom[j - 1];
        cplx s = 0.0;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int j = 0; j <= k; ++j) {
            const cplx mj = j == 0 ? cplx{1.0} : m[j - 1];
            s += binom[j] * sign * mj;
            sign = -sign;
        }
        phi[k] = s;
    }
    return phi;
}

}  // namespace

CircleMeasure convolve(const CircleMeasure& mu, const CircleMeasure& nu, int order) {
    if (order < 1) throw std::invalid_argument("convolve: order must be positive");
    const StructuredF fa = F_from_measure(mu, order);
    const StructuredF fb = F_from_measure(nu, order);
    if (std::holds_alternative<StructuredF::Zero>(fa.rep) ||
        std::holds_alternative<StructuredF::Zero>(fb.rep))
        return CircleMeasure::structured(StructuredF::zero());
    const auto* ca = std::get_if<StructuredF::Constant>(&fa.rep);
    const auto* cb = std::get_if<StructuredF::Constant>(&fb.rep);
    if (ca && cb) return CircleMeasure::structured(StructuredF::constant(ca->c * cb->c));
    const TruncatedSeries prod = mul(expand_F(fa, order), expand_F(fb, order));
    std::vector<cplx> m = moments_from_psi(psi_from_F(prod));
    if (static_cast<int>(m.size()) > order) m.resize(static_cast<size_t>(order));
    return CircleMeasure::from_moments(std::move(m));
}

CircleMeasure convolve_power(const CircleMeasure& mu, int n, int order) {
    if (n < 1) throw std::invalid_argument("convolve_power: n must be positive");
    if (order < 1) throw std::invalid_argument("convolve_power: order must be positive");
    if (n == 1) return mu;
    const StructuredF f = F_from_measure(mu, order);
    if (std::holds_alternative<StructuredF::Zero>(f.rep))
        return CircleMeasure::structured(StructuredF::zero());
    if (const auto* c = std::get_if<StructuredF::Constant>(&f.rep)) {
        cplx p = 1.0;
        for (int i = 0; i < n; ++i) p *= c->c;
        return CircleMeasure::structured(StructuredF::constant(p));
    }
    const TruncatedSeries base = expand_F(f, order);
    TruncatedSeries acc = base;
    for (int i = 1; i < n; ++i) acc = mul(acc, base);
    std::vector<cplx> m = moments_from_psi(psi_from_F(acc));
    if (static_cast<int>(m.size()) > order) m.resize(static_cast<size_t>(order));
    return CircleMeasure::from_moments(std::move(m));
}

cplx boolean_word_moment(std::span<const cplx> x_moms, std::span<const cplx> y_moms,
                         std::span<const WordBlock> word) {
    cplx prod = 1.0;
    for (size_t i = 0; i < word.size(); ++i) {
        const WordBlock& blk = word[i];
        if (blk.exponent < 1)
            throw WordNotAlternating("boolean_word_moment: block exponent below 1");
        if (i > 0 && word[i - 1].letter == blk.letter)
            throw WordNotAlternating("boolean_word_moment: adjacent blocks share a letter");
        const auto& moms = blk.letter == WordBlock::Letter::X ? x_moms : y_moms;
        if (blk.exponent >= static_cast<int>(moms.size()))
            throw std::invalid_argument("boolean_word_moment: moment list too short for word");
        prod *= moms[static_cast<size_t>(blk.exponent)];
    }
    return prod;
}

cplx product_moments_combinatorial(const CircleMeasure& mu, const CircleMeasure& nu, int n) {
    if (n < 1) throw std::invalid_argument("product_moments_combinatorial: n must be positive");
    if (n > kOracleMaxOrder)
        throw OrderTooLargeForOracle("product_moments_combinatorial: n exceeds the 4^n budget");
    const std::vector<cplx> mx = moments_of(mu, n);
    const std::vector<cplx> my = moments_of(nu, n);
    if (static_cast<int>(mx.size()) < n || static_cast<int>(my.size()) < n)
        throw std::invalid_argument("product_moments_combinatorial: not enough moments stored");
    const std::vector<cplx> phi_x = centered_powers(mx, n);
    const std::vector<cplx> phi_y = centered_powers(my, n);

    // (UV)^n = prod_i (1+X)(1+Y); expand over which of the 2n letters are
    // present, merge adjacent equal letters, factorize.
    const std::uint32_t slots = static_cast<std::uint32_t>(2 * n);
    const std::uint64_t masks = std::uint64_t{1} << slots;
    std::vector<WordBlock> word;
    word.reserve(slots);
    cplx total = 0.0;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        word.clear();
        for (std::uint32_t s = 0; s < slots; ++s) {
            if (!(mask >> s & 1)) continue;
            const auto letter = s % 2 == 0 ? WordBlock::Letter::X : WordBlock::Letter::Y;
            if (!word.empty() && word.back().letter == letter)
                ++word.back().exponent;
            else
                word.push_back({letter, 1});
        }
        total += boolean_word_moment(phi_x, phi_y, word);
    }
    return total;
}

double OperatorPairModel::unitarity_defect() const {
    const auto I = Eigen::MatrixXcd::Identity(dim(), dim());
    const double du = (utilde.adjoint() * utilde - I).cwiseAbs().maxCoeff();
    const double dv = (vtilde.adjoint() * vtilde - I).cwiseAbs().maxCoeff();
    return std::max(du, dv);
}

double OperatorPairModel::unitarity_defect_on_columns(std::span<const int> columns) const {
    double defect = 0.0;
    for (int j : columns) {
        if (j < 0 || j >= dim())
            throw std::invalid_argument("unitarity_defect_on_columns: column out of range");
        Eigen::VectorXcd cu = utilde.adjoint() * (utilde * Eigen::VectorXcd::Unit(dim(), j));
        Eigen::VectorXcd cv = vtilde.adjoint() * (vtilde * Eigen::VectorXcd::Unit(dim(), j));
        cu(j) -= 1.0;
        cv(j) -= 1.0;
        defect = std::max({defect, cu.cwiseAbs().maxCoeff(), cv.cwiseAbs().maxCoeff()});
    }
    return defect;
}

double OperatorPairModel::marginal_defect(int K) const {
    double defect = 0.0;
    Eigen::VectorXcd vu = state;
    Eigen::VectorXcd vv = state;
    Eigen::VectorXcd pu = Eigen::VectorXcd::Ones(dim_u());
    Eigen::VectorXcd pv = Eigen::VectorXcd::Ones(dim_v());
    for (int k = 1; k <= K; ++k) {
        vu = utilde * vu;
        vv = vtilde * vv;
        cplx target_u = 0.0;
        for (int j = 0; j < dim_u(); ++j) {
            pu(j) *= u_diag(j);
            target_u += xi_u(j) * xi_u(j) * pu(j);
        }
        cplx target_v = 0.0;
        for (int l = 0; l < dim_v(); ++l) {
            pv(l) *= v_diag(l);
            target_v += xi_v(l) * xi_v(l) * pv(l);
        }
        defect = std::max({defect, std::abs(state.dot(vu) - target_u),
                           std::abs(state.dot(vv) - target_v)});
    }
    return defect;
}

OperatorPairModel operator_model_build(const CircleMeasure& mu, const CircleMeasure& nu) {
    const CircleAtoms& au = atoms_of(mu, "operator_model_build");
    const CircleAtoms& av = atoms_of(nu, "operator_model_build");
    const int du = static_cast<int>(au.angles.size());
    const int dv = static_cast<int>(av.angles.size());
    if (du < 1 || dv < 1)
        throw std::invalid_argument("operator_model_build: empty atomic measure");
    if (static_cast<long long>(du) * dv > kModelMaxDim)
        throw DimensionTooLarge("operator_model_build: product dimension exceeds 4096");
    const int d = du * dv;

    OperatorPairModel m;
    m.u_diag.resize(du);
    m.v_diag.resize(dv);
    m.xi_u.resize(du);
    m.xi_v.resize(dv);
    for (int j = 0; j < du; ++j) {
        m.u_diag(j) = std::polar(1.0, au.angles[j]);
        m.xi_u(j) = std::sqrt(au.weights[j]);
    }
    for (int l = 0; l < dv; ++l) {
        m.v_diag(l) = std::polar(1.0, av.angles[l]);
        m.xi_v(l) = std::sqrt(av.weights[l]);
    }

    m.utilde = Eigen::MatrixXcd::Identity(d, d);
    m.vtilde = Eigen::MatrixXcd::Identity(d, d);
    // Utilde = I + (U-I) (x) P, block diagonal over the U index
    for (int j = 0; j < du; ++j)
        for (int l = 0; l < dv; ++l)
            for (int l2 = 0; l2 < dv; ++l2)
                m.utilde(j * dv + l, j * dv + l2) += (m.u_diag(j) - 1.0) * m.xi_v(l) * m.xi_v(l2);
    // Vtilde = I + Q (x) (V-I)
    for (int l = 0; l < dv; ++l)
        for (int j = 0; j < du; ++j)
            for (int j2 = 0; j2 < du; ++j2)
                m.vtilde(j * dv + l, j2 * dv + l) += m.xi_u(j) * m.xi_u(j2) * (m.v_diag(l) - 1.0);

    m.state.resize(d);
    for (int j = 0; j < du; ++j)
        for (int l = 0; l < dv; ++l) m.state(j * dv + l) = m.xi_u(j) * m.xi_v(l);
    return m;
}

std::vector<cplx> operator_model_moments(const OperatorPairModel& model, int K) {
    if (K < 0) throw std::invalid_argument("operator_model_moments: negative order");
    std::vector<cplx> m(static_cast<size_t>(K));
    Eigen::VectorXcd v = model.state;
    for (int k = 1; k <= K; ++k) {
        v = model.vtilde * v;
        v = model.utilde * v;
        m[k - 1] = model.state.dot(v);
    }
    return m;
}

namespace {

struct SweepRng {
    std::mt19937_64 gen;
    explicit SweepRng(std::uint64_t seed) : gen(seed) {}
    // own mapping to doubles: uniform_real_distribution is not portable
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double angle() { return uniform() * kTwoPi; }

    CircleMeasure random_atomic(int max_atoms) {
        const int n = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_atoms));
        std::vector<double> angles;
        while (static_cast<int>(angles.size()) < n) {
            const double a = angle();
            bool clash = false;
            for (double b : angles) clash = clash || angle_distance(a, b) < 1e-9;
            if (!clash) angles.push_back(a);
        }
        std::vector<double> weights(static_cast<size_t>(n));
        double sum = 0.0;
        for (double& w : weights) {
            w = -std::log(1.0 - uniform());
            sum += w;
        }
        for (double& w : weights) w /= sum;
        return CircleMeasure::atomic(std::move(angles), std::move(weights));
    }
};

cplx f_pointwise(const CircleMeasure& mu, cplx z) {
    const cplx psi = psi_eval(mu, z);
    return psi / (z * (1.0 + psi));
}

/// max |F_mu F_nu| over the standard sampling grid. The convolution's F is
/// this product exactly; evaluating the truncated moment series instead
/// would report tail error, not the transform's actual modulus.
double product_f_bound(const CircleMeasure& mu, const CircleMeasure& nu) {
    double bound = 0.0;
    for (double r : {0.3, 0.6, 0.9}) {
        for (int j = 0; j < 256; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / 256);
            bound = std::max(bound, std::abs(f_pointwise(mu, z) * f_pointwise(nu, z)));
        }
    }
    return bound;
}

}  // namespace

SweepReport verify_multiplicativity(std::uint64_t seed, int pairs, int max_moment,
                                    double tolerance) {
    if (pairs < 1) throw std::invalid_argument("verify_multiplicativity: pairs must be positive");
    if (max_moment < 1 || max_moment > kOracleMaxOrder)
        throw std::invalid_argument("verify_multiplicativity: max_moment outside 1..10");
    SweepRng rng(seed);
    SweepReport rep;
    rep.seed = seed;
    rep.pairs = pairs;
    rep.max_moment = max_moment;
    rep.tolerance = tolerance;
    for (int p = 0; p < pairs; ++p) {
        const CircleMeasure mu = rng.random_atomic(5);
        const CircleMeasure nu = rng.random_atomic(5);
        const CircleMeasure conv = convolve(mu, nu, max_moment);
        const std::vector<cplx> m = moments_of(conv, max_moment);

        for (int k = 1; k <= max_moment; ++k) {
            const cplx comb = product_moments_combinatorial(mu, nu, k);
            rep.max_deviation_combinatorial =
                std::max(rep.max_deviation_combinatorial, std::abs(comb - m[k - 1]));
        }

        const OperatorPairModel model = operator_model_build(mu, nu);
        const std::vector<cplx> om = operator_model_moments(model, max_moment);
        rep.max_deviation_operator =
            std::max(rep.max_deviation_operator, moments_deviation(om, m));
        rep.max_unitarity_defect = std::max(rep.max_unitarity_defect, model.unitarity_defect());
        rep.max_marginal_defect =
            std::max(rep.max_marginal_defect, model.marginal_defect(max_moment));

        rep.max_f_modulus = std::max({rep.max_f_modulus, f_disk_bound(mu), f_disk_bound(nu),
                                      product_f_bound(mu, nu)});
    }
    rep.passed = rep.max_deviation_combinatorial <= tolerance &&
                 rep.max_deviation_operator <= tolerance;
    return rep;
}

}  // namespace bcirc
