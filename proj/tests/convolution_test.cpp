#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bcirc/convolution.hpp"
#include "bcirc/errors.hpp"
#include "bcirc/gallery.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/structured_f.hpp"
#include "test_util.hpp"

using namespace bcirc;
using test::cdist;

TEST_SUITE("convolution") {

TEST_CASE("boolean words factor into single-letter moments") {
    const std::vector<cplx> x{cplx{1, 0}, cplx{0.3, 0.1}, cplx{-0.2, 0.4}};
    const std::vector<cplx> y{cplx{1, 0}, cplx{0.7, -0.2}, cplx{0.1, 0.0}};
    using L = WordBlock::Letter;

    // phi(X^2) is just the stored moment.
    CHECK(cdist(boolean_word_moment(x, y, std::vector<WordBlock>{{L::X, 2}}), x[2]) == 0.0);

    // phi(X Y) = phi(X) phi(Y); phi(X Y X^2) = phi(X) phi(Y) phi(X^2).
    CHECK(cdist(boolean_word_moment(x, y, std::vector<WordBlock>{{L::X, 1}, {L::Y, 1}}),
                x[1] * y[1]) < 1e-15);
    CHECK(cdist(boolean_word_moment(x, y,
                                    std::vector<WordBlock>{{L::X, 1}, {L::Y, 1}, {L::X, 2}}),
                x[1] * y[1] * x[2]) < 1e-15);

    CHECK_THROWS_AS(
        boolean_word_moment(x, y, std::vector<WordBlock>{{L::X, 1}, {L::X, 2}}),
        WordNotAlternating);
    CHECK_THROWS_AS(boolean_word_moment(x, y, std::vector<WordBlock>{{L::Y, 0}}),
                    WordNotAlternating);
}

TEST_CASE("combinatorial oracle on point masses") {
    // For delta measures the product is the rotation by a + c.
    const double a = 1.1;
    const double c = 2.3;
    const CircleMeasure mu = CircleMeasure::atomic({a}, {1.0});
    const CircleMeasure nu = CircleMeasure::atomic({c}, {1.0});
    // the 4^n-term sum accumulates rounding of order n*4^n*eps
    for (int n = 1; n <= 8; ++n)
        CHECK(cdist(product_moments_combinatorial(mu, nu, n), std::polar(1.0, n * (a + c))) <
              1e-10);

    CHECK_THROWS_AS(product_moments_combinatorial(mu, nu, 11), OrderTooLargeForOracle);
    CHECK_THROWS_AS(product_moments_combinatorial(mu, nu, 0), std::invalid_argument);
}

TEST_CASE("first moments multiply") {
    test::TestRng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const CircleMeasure mu = rng.random_atomic(5);
        const CircleMeasure nu = rng.random_atomic(5);
        const cplx m1 = moments_of(mu, 1)[0] * moments_of(nu, 1)[0];
        CHECK(cdist(moments_of(convolve(mu, nu, 4), 1)[0], m1) < 1e-13);
        CHECK(cdist(product_moments_combinatorial(mu, nu, 1), m1) < 1e-13);
    }
}

TEST_CASE("convolution agrees with the combinatorial oracle") {
    test::TestRng rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        const CircleMeasure mu = rng.random_atomic(5);
        const CircleMeasure nu = rng.random_atomic(5);
        const CircleMeasure conv = convolve(mu, nu, 8);
        const std::vector<cplx> m = moments_of(conv, 8);
        REQUIRE(m.size() == 8);
        for (int k = 1; k <= 8; ++k)
            CHECK(cdist(m[k - 1], product_moments_combinatorial(mu, nu, k)) < 1e-9);
    }
}

TEST_CASE("convolution short circuits") {
    test::TestRng rng(63);
    const CircleMeasure mu = rng.random_atomic(4);

    // Haar absorbs from either side and stays structured zero.
    for (const CircleMeasure& conv : {convolve(haar(), mu, 8), convolve(mu, haar(), 8)}) {
        REQUIRE(conv.is_structured());
        CHECK(std::holds_alternative<StructuredF::Zero>(
            std::get<CircleMeasure::Structured>(conv.rep).f.rep));
    }

    // Two point masses multiply exactly into another point mass.
    const CircleMeasure d = convolve(dirac(1.0), dirac(2.5), 8);
    REQUIRE(d.is_structured());
    const auto& f = std::get<CircleMeasure::Structured>(d.rep).f;
    REQUIRE(std::holds_alternative<StructuredF::Constant>(f.rep));
    CHECK(cdist(std::get<StructuredF::Constant>(f.rep).c, std::polar(1.0, 3.5)) < 1e-14);

    // The general path returns a Moments measure of the requested length.
    const CircleMeasure general = convolve(mu, rng.random_atomic(4), 12);
    CHECK(std::holds_alternative<CircleMeasure::Moments>(general.rep));
    CHECK(moments_of(general, 12).size() == 12);
}

TEST_CASE("convolution powers") {
    const CircleMeasure mu = dirac(0.8);
    const std::vector<cplx> m = moments_of(convolve_power(mu, 4, 6), 6);
    for (int k = 1; k <= 6; ++k) CHECK(cdist(m[k - 1], std::polar(1.0, 3.2 * k)) < 1e-13);

    test::TestRng rng(64);
    const CircleMeasure nu = rng.random_atomic(3);
    // power 1 is the measure itself
    CHECK(test::max_dev(moments_of(convolve_power(nu, 1, 8), 8), moments_of(nu, 8)) < 1e-13);
    // power 2 equals explicit self-convolution
    CHECK(test::max_dev(moments_of(convolve_power(nu, 2, 8), 8),
                        moments_of(convolve(nu, nu, 8), 8)) < 1e-12);
}

TEST_CASE("operator model is unitary and reproduces marginals") {
    test::TestRng rng(65);
    for (int trial = 0; trial < 5; ++trial) {
        const CircleMeasure mu = rng.random_atomic(5);
        const CircleMeasure nu = rng.random_atomic(5);
        const OperatorPairModel model = operator_model_build(mu, nu);
        CHECK(model.dim() == model.dim_u() * model.dim_v());
        CHECK(model.unitarity_defect() < 1e-12);
        CHECK(model.marginal_defect(8) < 1e-12);

        const std::vector<int> cols{0, model.dim() - 1};
        CHECK(model.unitarity_defect_on_columns(cols) <= model.unitarity_defect() + 1e-15);
    }
}

TEST_CASE("operator model moments match the combinatorial oracle") {
    test::TestRng rng(66);
    const CircleMeasure mu = rng.random_atomic(4);
    const CircleMeasure nu = rng.random_atomic(4);
    const OperatorPairModel model = operator_model_build(mu, nu);
    const std::vector<cplx> om = operator_model_moments(model, 8);
    REQUIRE(om.size() == 8);
    for (int k = 1; k <= 8; ++k)
        CHECK(cdist(om[k - 1], product_moments_combinatorial(mu, nu, k)) < 1e-12);
}

TEST_CASE("operator model dimension cap") {
    std::vector<double> angles;
    std::vector<double> weights;
    for (int j = 0; j < 65; ++j) {
        angles.push_back(kTwoPi * j / 65.0);
        weights.push_back(1.0 / 65.0);
    }
    const CircleMeasure big = CircleMeasure::atomic(angles, weights);
    CHECK_THROWS_AS(operator_model_build(big, big), DimensionTooLarge);

    const CircleMeasure moments = CircleMeasure::from_moments({cplx{0.5, 0.0}});
    CHECK_THROWS_AS(operator_model_build(moments, moments), std::invalid_argument);
}

TEST_CASE("verification sweep is deterministic and passes") {
    const SweepReport a = verify_multiplicativity(123, 25);
    const SweepReport b = verify_multiplicativity(123, 25);
    CHECK(a.passed);
    CHECK(a.max_deviation_combinatorial == b.max_deviation_combinatorial);
    CHECK(a.max_deviation_operator == b.max_deviation_operator);
    CHECK(a.max_unitarity_defect == b.max_unitarity_defect);
    CHECK(a.max_marginal_defect == b.max_marginal_defect);
    CHECK(a.max_f_modulus == b.max_f_modulus);
    CHECK(a.max_deviation_combinatorial <= 1e-9);
    CHECK(a.max_deviation_operator <= 1e-9);
    CHECK(a.max_unitarity_defect < 1e-12);
    CHECK(a.max_marginal_defect < 1e-12);
    CHECK(a.max_f_modulus <= 1.0 + 1e-10);
}

}  // TEST_SUITE
