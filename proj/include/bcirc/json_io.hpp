#pragma once

#include <string>

#include "bcirc/convolution.hpp"
#include "bcirc/finite_measure.hpp"
#include "bcirc/gallery.hpp"
#include "bcirc/levy.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/structured_f.hpp"

namespace bcirc {

// Parsing. All of these throw InvalidInput with a diagnostic naming the
// offending field; the schemas are documented in the README.

CircleMeasure parse_measure_json(const std::string& text);
HerglotzData parse_char_pair_json(const std::string& text);

struct BsoParams {
    StructuredF::Blaschke blaschke;
    FiniteCircleMeasure tau;
    std::vector<double> q;
    cplx c{1.0, 0.0};
};
BsoParams parse_bso_params_json(const std::string& text);

// Emission. Numbers are printed with 17 significant digits so doubles round
// trip and identical values produce byte-identical output; complex scalars
// are [re, im] pairs. No whitespace, no trailing newline.

std::string format_double(double x);
std::string emit_complex(cplx z);
std::string emit_measure(const CircleMeasure& mu);
std::string emit_structured_f(const StructuredF& f);
std::string emit_finite_measure(const FiniteCircleMeasure& rho);
std::string emit_char_pair(const HerglotzData& pair);
std::string emit_verdict(const DivisibilityVerdict& v);
std::string emit_singular_result(const SingularExampleResult& r);
std::string emit_sweep_report(const SweepReport& r);

}  // namespace bcirc
