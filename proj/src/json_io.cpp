#include "bcirc/json_io.hpp"

#include <cstdio>
#include <utility>

#include <json.hpp>

#include "bcirc/errors.hpp"

namespace bcirc {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

double get_number(const json& j, const char* where) {
    if (!j.is_number()) throw InvalidInput(std::string(where) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InvalidInput(std::string(where) + ": non-finite number");
    return x;
}

double get_field_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key))
        throw InvalidInput(std::string(where) + ": missing field \"" + key + "\"");
    return get_number(j.at(key), where);
}

cplx get_complex(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidInput(std::string(where) + ": expected a [re, im] pair");
    return {get_number(j[0], where), get_number(j[1], where)};
}

std::vector<cplx> get_complex_list(const json& j, const char* where) {
    if (!j.is_array()) throw InvalidInput(std::string(where) + ": expected an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(get_complex(e, where));
    return out;
}

CircleAtoms get_atoms(const json& j, const char* where) {
    if (!j.is_array()) throw InvalidInput(std::string(where) + ": expected an atom array");
    CircleAtoms atoms;
    for (const json& e : j) {
        if (!e.is_object()) throw InvalidInput(std::string(where) + ": atom must be an object");
        atoms.angles.push_back(canonical_angle(get_field_number(e, "angle", where)));
        atoms.weights.push_back(get_field_number(e, "weight", where));
    }
    return atoms;
}

FiniteCircleMeasure get_finite_measure(const json& j, const char* where) {
    if (!j.is_object()) throw InvalidInput(std::string(where) + ": expected an object");
    FiniteCircleMeasure rho;
    rho.mass = get_field_number(j, "mass", where);
    if (j.contains("r")) rho.r = get_complex_list(j.at("r"), where);
    if (j.contains("atoms")) rho.atoms = get_atoms(j.at("atoms"), where);
    if (auto why = rho.violation()) throw InvalidInput(std::string(where) + ": " + *why);
    return rho;
}

StructuredF get_structured_f(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw InvalidInput("structured f: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return StructuredF::zero();
    if (kind == "constant") {
        if (!j.contains("c")) throw InvalidInput("constant f: missing \"c\"");
        return StructuredF::constant(get_complex(j.at("c"), "constant f"));
    }
    if (kind == "blaschke") {
        StructuredF::Blaschke b;
        if (j.contains("p")) {
            if (!j.at("p").is_number_integer() || j.at("p").get<int>() < 0)
                throw InvalidInput("blaschke f: \"p\" must be a non-negative integer");
            b.p = j.at("p").get<int>();
        }
        if (j.contains("factors")) {
            if (!j.at("factors").is_array())
                throw InvalidInput("blaschke f: \"factors\" must be an array");
            for (const json& e : j.at("factors")) {
                BlaschkeFactor f;
                if (!e.is_object() || !e.contains("alpha"))
                    throw InvalidInput("blaschke f: factor needs \"alpha\"");
                f.alpha = get_complex(e.at("alpha"), "blaschke factor");
                if (e.contains("mult")) {
                    if (!e.at("mult").is_number_integer() || e.at("mult").get<int>() < 1)
                        throw InvalidInput("blaschke f: \"mult\" must be a positive integer");
                    f.mult = e.at("mult").get<int>();
                }
                b.factors.push_back(f);
            }
        }
        if (j.contains("phase")) b.phase = get_complex(j.at("phase"), "blaschke f");
        return StructuredF::blaschke(std::move(b));
    }
    if (kind == "expherglotz") {
        const double b = get_field_number(j, "b", "expherglotz f");
        if (!j.contains("rho")) throw InvalidInput("expherglotz f: missing \"rho\"");
        return StructuredF::exp_herglotz(b, get_finite_measure(j.at("rho"), "expherglotz rho"));
    }
    if (kind == "series") {
        if (!j.contains("coeffs")) throw InvalidInput("series f: missing \"coeffs\"");
        std::vector<cplx> c = get_complex_list(j.at("coeffs"), "series f");
        if (c.empty()) throw InvalidInput("series f: empty coefficient list");
        return StructuredF::series(TruncatedSeries(std::move(c)));
    }
    throw InvalidInput("structured f: unknown kind \"" + kind + "\"");
}

}  // namespace

CircleMeasure parse_measure_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw InvalidInput("measure: missing \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "atomic") {
        if (!j.contains("atoms")) throw InvalidInput("atomic measure: missing \"atoms\"");
        CircleAtoms atoms = get_atoms(j.at("atoms"), "atomic measure");
        if (atoms.angles.empty()) throw InvalidInput("atomic measure: no atoms");
        return CircleMeasure::atomic(std::move(atoms.angles), std::move(atoms.weights));
    }
    if (type == "moments") {
        if (!j.contains("m")) throw InvalidInput("moments measure: missing \"m\"");
        std::vector<cplx> m = get_complex_list(j.at("m"), "moments measure");
        if (m.empty()) throw InvalidInput("moments measure: empty moment list");
        return CircleMeasure::from_moments(std::move(m));
    }
    if (type == "structured") {
        if (!j.contains("f")) throw InvalidInput("structured measure: missing \"f\"");
        return CircleMeasure::structured(get_structured_f(j.at("f")));
    }
    throw InvalidInput("measure: unknown type \"" + type + "\"");
}

HerglotzData parse_char_pair_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw InvalidInput("characteristic pair: expected an object");
    HerglotzData h;
    h.b = canonical_angle(get_field_number(j, "b", "characteristic pair"));
    if (!j.contains("rho")) throw InvalidInput("characteristic pair: missing \"rho\"");
    h.rho = get_finite_measure(j.at("rho"), "characteristic pair rho");
    return h;
}

BsoParams parse_bso_params_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw InvalidInput("bso params: expected an object");
    BsoParams p;
    if (j.contains("blaschke")) {
        json b = j.at("blaschke");
        b["kind"] = "blaschke";
        const StructuredF f = get_structured_f(b);
        p.blaschke = std::get<StructuredF::Blaschke>(f.rep);
    }
    if (j.contains("tau")) p.tau = get_finite_measure(j.at("tau"), "bso tau");
    if (j.contains("q")) {
        if (!j.at("q").is_array()) throw InvalidInput("bso params: \"q\" must be an array");
        for (const json& e : j.at("q")) p.q.push_back(get_number(e, "bso q"));
    }
    if (j.contains("c")) p.c = get_complex(j.at("c"), "bso c");
    return p;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string emit_complex(cplx z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

namespace {

std::string emit_complex_list(std::span<const cplx> v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += emit_complex(v[i]);
    }
    return out + "]";
}

std::string emit_atoms(const CircleAtoms& atoms) {
    std::string out = "[";
    for (size_t i = 0; i < atoms.angles.size(); ++i) {
        if (i) out += ",";
        out += "{\"angle\":" + format_double(atoms.angles[i]) +
               ",\"weight\":" + format_double(atoms.weights[i]) + "}";
    }
    return out + "]";
}

std::string emit_real_list(std::span<const double> v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out + "]";
}

}  // namespace

std::string emit_finite_measure(const FiniteCircleMeasure& rho) {
    std::string out = "{\"mass\":" + format_double(rho.mass) + ",\"r\":" + emit_complex_list(rho.r);
    if (rho.atoms) out += ",\"atoms\":" + emit_atoms(*rho.atoms);
    return out + "}";
}

std::string emit_structured_f(const StructuredF& f) {
    struct Visitor {
        std::string operator()(const StructuredF::Zero&) const { return "{\"kind\":\"zero\"}"; }
        std::string operator()(const StructuredF::Constant& c) const {
            return "{\"kind\":\"constant\",\"c\":" + emit_complex(c.c) + "}";
        }
        std::string operator()(const StructuredF::Blaschke& b) const {
            std::string out = "{\"kind\":\"blaschke\",\"p\":" + std::to_string(b.p) +
                              ",\"factors\":[";
            for (size_t i = 0; i < b.factors.size(); ++i) {
                if (i) out += ",";
                out += "{\"alpha\":" + emit_complex(b.factors[i].alpha) +
                       ",\"mult\":" + std::to_string(b.factors[i].mult) + "}";
            }
            return out + "],\"phase\":" + emit_complex(b.phase) + "}";
        }
        std::string operator()(const StructuredF::ExpHerglotz& e) const {
            return "{\"kind\":\"expherglotz\",\"b\":" + format_double(e.b) +
                   ",\"rho\":" + emit_finite_measure(e.rho) + "}";
        }
        std::string operator()(const StructuredF::Series& s) const {
            return "{\"kind\":\"series\",\"coeffs\":" + emit_complex_list(s.s.coeffs()) + "}";
        }
    };
    return std::visit(Visitor{}, f.rep);
}

std::string emit_measure(const CircleMeasure& mu) {
    struct Visitor {
        std::string operator()(const CircleMeasure::Atomic& a) const {
            return "{\"type\":\"atomic\",\"atoms\":" + emit_atoms(a.atoms) + "}";
        }
        std::string operator()(const CircleMeasure::Moments& m) const {
            return "{\"type\":\"moments\",\"m\":" + emit_complex_list(m.m) + "}";
        }
        std::string operator()(const CircleMeasure::Structured& s) const {
            return "{\"type\":\"structured\",\"f\":" + emit_structured_f(s.f) + "}";
        }
    };
    return std::visit(Visitor{}, mu.rep);
}

std::string emit_char_pair(const HerglotzData& pair) {
    return "{\"b\":" + format_double(pair.b) + ",\"rho\":" + emit_finite_measure(pair.rho) + "}";
}

std::string emit_verdict(const DivisibilityVerdict& v) {
    struct Visitor {
        std::string operator()(const Divisible& d) const {
            return "{\"verdict\":\"divisible\",\"pair\":" + emit_char_pair(d.pair) + "}";
        }
        std::string operator()(const HaarDivisible&) const {
            return "{\"verdict\":\"haar_divisible\"}";
        }
        std::string operator()(const NotDivisible& n) const {
            if (n.witness.kind == ZeroWitness::Kind::ZeroAtOrigin)
                return "{\"verdict\":\"not_divisible\",\"witness\":{\"kind\":\"zero_at_origin\"}}";
            return "{\"verdict\":\"not_divisible\",\"witness\":{\"kind\":\"interior_zero\","
                   "\"location\":" +
                   emit_complex(n.witness.location) +
                   ",\"radius\":" + format_double(n.witness.radius) + "}}";
        }
        std::string operator()(const DivisibleUpToRadius& d) const {
            return "{\"verdict\":\"divisible_up_to_radius\",\"r\":" + format_double(d.r) +
                   ",\"pair\":" + emit_char_pair(d.pair) + "}";
        }
    };
    return std::visit(Visitor{}, v);
}

std::string emit_singular_result(const SingularExampleResult& r) {
    return "{\"beta\":" + format_double(r.beta) + ",\"zeros\":" + emit_real_list(r.zeros) +
           ",\"atom_angles\":" + emit_real_list(r.atom_angles) +
           ",\"atom_masses\":" + emit_real_list(r.atom_masses) + "}";
}

std::string emit_sweep_report(const SweepReport& r) {
    return "{\"seed\":" + std::to_string(r.seed) + ",\"pairs\":" + std::to_string(r.pairs) +
           ",\"max_moment\":" + std::to_string(r.max_moment) +
           ",\"tolerance\":" + format_double(r.tolerance) +
           ",\"max_deviation_combinatorial\":" + format_double(r.max_deviation_combinatorial) +
           ",\"max_deviation_operator\":" + format_double(r.max_deviation_operator) +
           ",\"max_unitarity_defect\":" + format_double(r.max_unitarity_defect) +
           ",\"max_marginal_defect\":" + format_double(r.max_marginal_defect) +
           ",\"max_f_modulus\":" + format_double(r.max_f_modulus) +
           ",\"passed\":" + (r.passed ? "true" : "false") + "}";
}

}  // namespace bcirc
