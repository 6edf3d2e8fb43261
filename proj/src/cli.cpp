#include "bcirc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bcirc/common.hpp"
#include "bcirc/convolution.hpp"
#include "bcirc/errors.hpp"
#include "bcirc/gallery.hpp"
#include "bcirc/json_io.hpp"
#include "bcirc/levy.hpp"
#include "bcirc/measure.hpp"
#include "bcirc/series.hpp"
#include "bcirc/transform.hpp"

namespace bcirc {
namespace {

constexpr int kMaxOrder = 1024;
constexpr double kOracleTol = 1e-9;

struct Session {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool stdin_taken = false;
};

std::string slurp(const std::string& source, Session& s) {
    std::ostringstream buf;
    if (source == "-") {
        if (s.stdin_taken) throw InvalidInput("stdin (\"-\") can be read at most once");
        s.stdin_taken = true;
        buf << s.in.rdbuf();
    } else {
        std::ifstream file(source);
        if (!file) throw InvalidInput("cannot open " + source);
        buf << file.rdbuf();
    }
    return buf.str();
}

CircleMeasure load_measure(const std::string& source, Session& s) {
    return parse_measure_json(slurp(source, s));
}

CharacteristicPair load_pair(const std::string& source, Session& s) {
    return parse_char_pair_json(slurp(source, s));
}

int resolve_order(int flag_value) {
    if (flag_value != 0) {
        if (flag_value < 1 || flag_value > kMaxOrder)
            throw InvalidInput("--order must be between 1 and 1024");
        return flag_value;
    }
    if (const char* env = std::getenv("BCIRC_ORDER")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > kMaxOrder)
            throw InvalidInput("BCIRC_ORDER must be an integer between 1 and 1024");
        return static_cast<int>(v);
    }
    return kDefaultOrder;
}

void write_text(const std::string& text, const std::string& path, Session& s) {
    if (path.empty()) {
        s.out << text << '\n';
        return;
    }
    std::ofstream file(path);
    if (!file) throw InvalidInput("cannot open " + path + " for writing");
    file << text << '\n';
}

std::string coeff_table(const TruncatedSeries& series) {
    std::string text = "[";
    for (int k = 0; k <= series.order(); ++k) {
        if (k > 0) text += ',';
        text += emit_complex(series.coeff(k));
    }
    text += ']';
    return text;
}

std::string csv_text(const std::string& header, const std::vector<std::string>& rows) {
    std::string text = header;
    for (const auto& row : rows) {
        text += '\n';
        text += row;
    }
    return text;
}

std::string sample_row(double theta, cplx v) {
    std::string row = format_double(theta);
    row += ',';
    row += format_double(v.real());
    row += ',';
    row += format_double(v.imag());
    return row;
}

int run_convolve(Session& s, const std::string& a_src, const std::string& b_src, int order,
                 const std::string& oracle, const std::string& out_path) {
    const CircleMeasure mu = load_measure(a_src, s);
    const CircleMeasure nu = load_measure(b_src, s);
    const CircleMeasure conv = convolve(mu, nu, order);
    write_text(emit_measure(conv), out_path, s);
    if (oracle.empty()) return 0;

    const bool run_comb = oracle != "operator";
    const bool run_op = oracle != "combinatorial";
    const std::vector<cplx> got = moments_of(conv, std::min(order, 8));
    double dev_comb = 0.0;
    double dev_op = 0.0;
    if (run_comb) {
        for (int k = 1; k <= static_cast<int>(got.size()); ++k)
            dev_comb = std::max(
                dev_comb, std::abs(product_moments_combinatorial(mu, nu, k) - got[k - 1]));
    }
    if (run_op) {
        if (!mu.is_atomic() || !nu.is_atomic())
            throw Error("the operator oracle needs two atomic measures");
        const OperatorPairModel model = operator_model_build(mu, nu);
        const std::vector<cplx> om =
            operator_model_moments(model, static_cast<int>(got.size()));
        for (std::size_t k = 0; k < std::min(om.size(), got.size()); ++k)
            dev_op = std::max(dev_op, std::abs(om[k] - got[k]));
    }
    std::string report = "{\"oracle\":\"" + oracle + "\"";
    report += ",\"moments\":" + std::to_string(got.size());
    if (run_comb) report += ",\"max_deviation_combinatorial\":" + format_double(dev_comb);
    if (run_op) report += ",\"max_deviation_operator\":" + format_double(dev_op);
    report += ",\"tolerance\":" + format_double(kOracleTol) + "}";
    s.err << report << '\n';
    return std::max(dev_comb, dev_op) > kOracleTol ? 3 : 0;
}

int run_transform(Session& s, const std::string& m_src, const std::string& show, int order,
                  bool has_radius, double radius, int grid, const std::string& csv_path) {
    const CircleMeasure mu = load_measure(m_src, s);
    if (!has_radius) {
        if (show == "psi") {
            const TruncatedSeries psi = psi_from_moments(moments_of(mu, order));
            write_text("{\"transform\":\"psi\",\"coeffs\":" + coeff_table(psi) + "}", "", s);
        } else if (show == "F") {
            const StructuredF f = F_from_measure(mu, order);
            write_text("{\"transform\":\"F\",\"f\":" + emit_structured_f(f) +
                           ",\"coeffs\":" + coeff_table(expand_F(f, order)) + "}",
                       "", s);
        } else {
            throw InvalidInput("--show cauchy samples outside the disk; give --radius > 1");
        }
        return 0;
    }

    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(grid));
    if (show == "cauchy") {
        if (!(radius > 1.0))
            throw InvalidInput("the Cauchy transform lives on |w| > 1; --radius must exceed 1");
        const StructuredF f = F_from_measure(mu, order);
        for (int j = 0; j < grid; ++j) {
            const double theta = kTwoPi * j / grid;
            rows.push_back(sample_row(theta, cauchy_eval(f, std::polar(radius, theta))));
        }
    } else if (show == "psi") {
        if (!(radius > 0.0 && radius < 1.0))
            throw InvalidInput("--radius must lie in (0, 1) for psi");
        for (int j = 0; j < grid; ++j) {
            const double theta = kTwoPi * j / grid;
            rows.push_back(sample_row(theta, psi_eval(mu, std::polar(radius, theta))));
        }
    } else {
        if (!(radius > 0.0 && radius < 1.0))
            throw InvalidInput("--radius must lie in (0, 1) for F");
        const StructuredF f = F_from_measure(mu, order);
        for (int j = 0; j < grid; ++j) {
            const double theta = kTwoPi * j / grid;
            rows.push_back(sample_row(theta, eval_F(f, std::polar(radius, theta))));
        }
    }
    write_text(csv_text("angle,re,im", rows), csv_path, s);
    return 0;
}

int run_density(Session& s, const std::string& m_src, double radius, int grid,
                const std::string& csv_path) {
    const CircleMeasure mu = load_measure(m_src, s);
    const DensitySample sample = density_approx(mu, radius, grid);
    std::vector<std::string> rows;
    rows.reserve(sample.angles.size());
    for (std::size_t j = 0; j < sample.angles.size(); ++j) {
        std::string row = format_double(sample.angles[j]);
        row += ',';
        row += format_double(sample.values[j]);
        rows.push_back(std::move(row));
    }
    write_text(csv_text("angle,density", rows), csv_path, s);
    return 0;
}

int run_singular(Session& s, double beta, int count, int order, bool zeros, bool xbar,
                 const std::string& out_path) {
    if (zeros) {
        write_text(emit_singular_result(singular_example(beta, count)), out_path, s);
        return 0;
    }
    if (xbar) {
        // Whether this measure charges the conjugate point is open; the
        // extrapolated Poisson mass is reported as an estimate only.
        const double angle = canonical_angle(-beta);
        const double radii[] = {0.9, 0.99, 0.999};
        const double mass = atom_mass_estimate(singular_measure(beta, order), angle, radii);
        write_text("{\"angle\":" + format_double(angle) +
                       ",\"mass_estimate\":" + format_double(mass) + "}",
                   out_path, s);
        return 0;
    }
    write_text(emit_measure(singular_measure(beta, order)), out_path, s);
    return 0;
}

int run_bso(Session& s, const std::string& params_src, int order, const std::string& out_path) {
    const BsoParams params = parse_bso_params_json(slurp(params_src, s));
    const BsoResult result = bso_compose(params.blaschke, params.tau, params.q, params.c, order);
    write_text("{\"mu\":" + emit_measure(result.mu) + ",\"mu_b\":" + emit_measure(result.mu_b) +
                   ",\"mu_s\":" + emit_measure(result.mu_s) +
                   ",\"mu_o\":" + emit_measure(result.mu_o) + ",\"recomposition_defect\":" +
                   format_double(result.recomposition_defect) + "}",
               out_path, s);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    Session session{in, out, err};

    CLI::App app{"boolean multiplicative convolution on the unit circle"};
    app.name("bcirc");
    app.require_subcommand(1);

    auto* convolve_cmd =
        app.add_subcommand("convolve", "convolve two measures (their F transforms multiply)");
    std::string conv_a;
    std::string conv_b;
    std::string conv_out;
    std::string conv_oracle;
    int conv_order = 0;
    convolve_cmd->add_option("A", conv_a, "left measure JSON, \"-\" for stdin")->required();
    convolve_cmd->add_option("B", conv_b, "right measure JSON")->required();
    convolve_cmd->add_option("--order", conv_order, "truncation order (default 32, env BCIRC_ORDER)");
    convolve_cmd->add_option("--out", conv_out, "write the result here instead of stdout");
    convolve_cmd
        ->add_option("--oracle", conv_oracle, "cross-check against a brute-force oracle")
        ->check(CLI::IsMember({"combinatorial", "operator", "both"}));

    auto* transform_cmd =
        app.add_subcommand("transform", "print psi, F or Cauchy transform data");
    std::string tr_m = "-";
    std::string tr_show;
    std::string tr_csv;
    int tr_order = 0;
    int tr_grid = 256;
    double tr_radius = 0.0;
    transform_cmd->add_option("M", tr_m, "measure JSON (default stdin)");
    transform_cmd->add_option("--show", tr_show, "which transform")
        ->required()
        ->check(CLI::IsMember({"psi", "F", "cauchy"}));
    transform_cmd->add_option("--order", tr_order, "truncation order");
    auto* tr_radius_opt =
        transform_cmd->add_option("--radius", tr_radius, "sample on |z| = radius (CSV mode)");
    transform_cmd->add_option("--grid", tr_grid, "samples per circle")
        ->check(CLI::Range(1, 1 << 20));
    transform_cmd->add_option("--csv", tr_csv, "write CSV here instead of stdout");

    auto* divisible_cmd = app.add_subcommand("divisible", "decide infinite divisibility");
    std::string div_m = "-";
    double div_rmax = 0.999;
    int div_order = 0;
    divisible_cmd->add_option("M", div_m, "measure JSON (default stdin)");
    divisible_cmd->add_option("--rmax", div_rmax, "largest radius scanned for zeros of F");
    divisible_cmd->add_option("--order", div_order, "truncation order");

    auto* charpair_cmd =
        app.add_subcommand("charpair", "characteristic pair (b, rho) of a divisible measure");
    std::string cp_m = "-";
    int cp_order = 0;
    charpair_cmd->add_option("M", cp_m, "measure JSON (default stdin)");
    charpair_cmd->add_option("--order", cp_order, "truncation order");

    auto* synth_cmd = app.add_subcommand("synth", "measure with F = exp(ib - int (x+z)/(x-z) drho)");
    std::string sy_pair = "-";
    std::string sy_out;
    int sy_order = 0;
    synth_cmd->add_option("PAIR", sy_pair, "characteristic pair JSON (default stdin)");
    synth_cmd->add_option("--order", sy_order, "truncation order");
    synth_cmd->add_option("--out", sy_out, "write the measure here instead of stdout");

    auto* root_cmd = app.add_subcommand("root", "convolution n-th root of a divisible measure");
    std::string rt_m = "-";
    std::string rt_out;
    int rt_n = 0;
    int rt_order = 0;
    root_cmd->add_option("M", rt_m, "measure JSON (default stdin)");
    root_cmd->add_option("--n", rt_n, "root index")->required()->check(CLI::PositiveNumber);
    root_cmd->add_option("--order", rt_order, "truncation order");
    root_cmd->add_option("--out", rt_out, "write the measure here instead of stdout");

    auto* semigroup_cmd =
        app.add_subcommand("semigroup", "member mu_t of the semigroup of a characteristic pair");
    std::string sg_pair = "-";
    std::string sg_out;
    double sg_t = 0.0;
    int sg_order = 0;
    semigroup_cmd->add_option("PAIR", sg_pair, "characteristic pair JSON (default stdin)");
    semigroup_cmd->add_option("--t", sg_t, "semigroup time, t >= 0")
        ->required()
        ->check(CLI::NonNegativeNumber);
    semigroup_cmd->add_option("--order", sg_order, "truncation order");
    semigroup_cmd->add_option("--out", sg_out, "write the measure here instead of stdout");

    auto* density_cmd =
        app.add_subcommand("density", "Poisson-smoothed density on a uniform angle grid");
    std::string de_m = "-";
    std::string de_csv;
    double de_radius = 0.0;
    int de_grid = 1024;
    density_cmd->add_option("M", de_m, "measure JSON (default stdin)");
    density_cmd->add_option("--radius", de_radius, "smoothing radius in (0, 1)")->required();
    density_cmd->add_option("--grid", de_grid, "number of angle samples")
        ->check(CLI::Range(1, 1 << 20));
    density_cmd->add_option("--csv", de_csv, "write CSV here instead of stdout");

    auto* gallery_cmd = app.add_subcommand("gallery", "construct the example measures");
    gallery_cmd->require_subcommand(1);

    auto* dirac_cmd = gallery_cmd->add_subcommand("dirac", "point mass at e^{ib}");
    double ga_dirac_b = 0.0;
    std::string ga_dirac_out;
    dirac_cmd->add_option("--b", ga_dirac_b, "angle in radians")->required();
    dirac_cmd->add_option("--out", ga_dirac_out, "write the measure here instead of stdout");

    auto* twopoint_cmd = gallery_cmd->add_subcommand("twopoint", "two atoms, masses p and 1-p");
    double ga_tp_p = 0.0;
    double ga_tp_b1 = 0.0;
    double ga_tp_b2 = 0.0;
    int ga_tp_order = 0;
    std::string ga_tp_out;
    twopoint_cmd->add_option("--p", ga_tp_p, "mass of the first atom, in (0, 1)")->required();
    twopoint_cmd->add_option("--b1", ga_tp_b1, "angle of the first atom")->required();
    twopoint_cmd->add_option("--b2", ga_tp_b2, "angle of the second atom")->required();
    twopoint_cmd->add_option("--order", ga_tp_order, "truncation order");
    twopoint_cmd->add_option("--out", ga_tp_out, "write the measure here instead of stdout");

    auto* haar_cmd = gallery_cmd->add_subcommand("haar", "uniform measure on the circle");
    std::string ga_haar_out;
    haar_cmd->add_option("--out", ga_haar_out, "write the measure here instead of stdout");

    auto* cyclic_cmd =
        gallery_cmd->add_subcommand("cyclic", "uniform measure on the n-th roots of unity");
    int ga_cy_n = 0;
    int ga_cy_order = 0;
    std::string ga_cy_out;
    cyclic_cmd->add_option("--n", ga_cy_n, "number of roots")->required()->check(CLI::PositiveNumber);
    cyclic_cmd->add_option("--order", ga_cy_order, "truncation order");
    cyclic_cmd->add_option("--out", ga_cy_out, "write the measure here instead of stdout");

    auto* poisson_cmd =
        gallery_cmd->add_subcommand("poisson", "Poisson kernel density, F constant r e^{ib}");
    double ga_po_r = 0.0;
    double ga_po_b = 0.0;
    std::string ga_po_out;
    poisson_cmd->add_option("--r", ga_po_r, "radius in [0, 1)")->required();
    poisson_cmd->add_option("--b", ga_po_b, "center angle");
    poisson_cmd->add_option("--out", ga_po_out, "write the measure here instead of stdout");

    auto* singular_cmd =
        gallery_cmd->add_subcommand("singular", "the atomic measure with F = exp((z+x)/(z-x))");
    double ga_si_beta = 0.0;
    int ga_si_count = 50;
    int ga_si_order = 0;
    std::string ga_si_out;
    singular_cmd->add_option("--beta", ga_si_beta, "angle of the Herglotz atom x = e^{i beta}")
        ->required();
    singular_cmd->add_option("--count", ga_si_count, "branches solved on each side of beta")
        ->check(CLI::Range(1, 200));
    singular_cmd->add_option("--order", ga_si_order, "truncation order");
    auto* ga_si_zeros =
        singular_cmd->add_flag("--zeros", "print circle zeros and atom data instead");
    auto* ga_si_xbar = singular_cmd->add_flag(
        "--xbar-estimate", "print the extrapolated mass at the conjugate point instead");
    ga_si_zeros->excludes(ga_si_xbar);
    ga_si_xbar->excludes(ga_si_zeros);
    singular_cmd->add_option("--out", ga_si_out, "write the output here instead of stdout");

    auto* bso_cmd =
        gallery_cmd->add_subcommand("bso", "compose F = B*S*O and its three factor measures");
    std::string ga_bso_params = "-";
    int ga_bso_order = 0;
    std::string ga_bso_out;
    bso_cmd->add_option("PARAMS", ga_bso_params, "parameter JSON (default stdin)");
    bso_cmd->add_option("--order", ga_bso_order, "truncation order");
    bso_cmd->add_option("--out", ga_bso_out, "write the output here instead of stdout");

    auto* verify_cmd =
        app.add_subcommand("verify", "random sweep checking convolve against both oracles");
    std::uint64_t ve_seed = 42;
    int ve_pairs = 200;
    int ve_max_moment = 8;
    double ve_tol = 1e-9;
    verify_cmd->add_option("--seed", ve_seed, "RNG seed");
    verify_cmd->add_option("--pairs", ve_pairs, "number of random pairs")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-moment", ve_max_moment, "moments checked per pair")
        ->check(CLI::Range(1, 10));
    verify_cmd->add_option("--tol", ve_tol, "deviation tolerance")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(convolve_cmd))
            return run_convolve(session, conv_a, conv_b, resolve_order(conv_order), conv_oracle,
                                conv_out);
        if (app.got_subcommand(transform_cmd))
            return run_transform(session, tr_m, tr_show, resolve_order(tr_order),
                                 tr_radius_opt->count() > 0, tr_radius, tr_grid, tr_csv);
        if (app.got_subcommand(divisible_cmd)) {
            if (!(div_rmax > 0.0 && div_rmax < 1.0))
                throw InvalidInput("--rmax must lie in (0, 1)");
            const CircleMeasure mu = load_measure(div_m, session);
            write_text(emit_verdict(is_infinitely_divisible(mu, div_rmax, resolve_order(div_order))),
                       "", session);
            return 0;
        }
        if (app.got_subcommand(charpair_cmd)) {
            const CircleMeasure mu = load_measure(cp_m, session);
            write_text(emit_char_pair(char_pair(mu, resolve_order(cp_order))), "", session);
            return 0;
        }
        if (app.got_subcommand(synth_cmd)) {
            const CharacteristicPair pair = load_pair(sy_pair, session);
            write_text(emit_measure(measure_from_char_pair(pair, resolve_order(sy_order))), sy_out,
                       session);
            return 0;
        }
        if (app.got_subcommand(root_cmd)) {
            const CircleMeasure mu = load_measure(rt_m, session);
            write_text(emit_measure(nth_root(mu, rt_n, resolve_order(rt_order))), rt_out, session);
            return 0;
        }
        if (app.got_subcommand(semigroup_cmd)) {
            const CharacteristicPair pair = load_pair(sg_pair, session);
            write_text(emit_measure(semigroup_measure(pair, sg_t, resolve_order(sg_order))), sg_out,
                       session);
            return 0;
        }
        if (app.got_subcommand(density_cmd))
            return run_density(session, de_m, de_radius, de_grid, de_csv);
        if (app.got_subcommand(gallery_cmd)) {
            if (gallery_cmd->got_subcommand(dirac_cmd)) {
                write_text(emit_measure(dirac(ga_dirac_b)), ga_dirac_out, session);
                return 0;
            }
            if (gallery_cmd->got_subcommand(twopoint_cmd)) {
                write_text(emit_measure(two_point(ga_tp_p, ga_tp_b1, ga_tp_b2,
                                                  resolve_order(ga_tp_order))),
                           ga_tp_out, session);
                return 0;
            }
            if (gallery_cmd->got_subcommand(haar_cmd)) {
                write_text(emit_measure(haar()), ga_haar_out, session);
                return 0;
            }
            if (gallery_cmd->got_subcommand(cyclic_cmd)) {
                write_text(emit_measure(cyclic_haar(ga_cy_n, resolve_order(ga_cy_order))),
                           ga_cy_out, session);
                return 0;
            }
            if (gallery_cmd->got_subcommand(poisson_cmd)) {
                write_text(emit_measure(poisson(ga_po_r, ga_po_b)), ga_po_out, session);
                return 0;
            }
            if (gallery_cmd->got_subcommand(singular_cmd))
                return run_singular(session, ga_si_beta, ga_si_count, resolve_order(ga_si_order),
                                    ga_si_zeros->count() > 0, ga_si_xbar->count() > 0, ga_si_out);
            if (gallery_cmd->got_subcommand(bso_cmd))
                return run_bso(session, ga_bso_params, resolve_order(ga_bso_order), ga_bso_out);
        }
        if (app.got_subcommand(verify_cmd)) {
            const SweepReport report =
                verify_multiplicativity(ve_seed, ve_pairs, ve_max_moment, ve_tol);
            write_text(emit_sweep_report(report), "", session);
            return report.passed ? 0 : 3;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const ParameterOutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const RadiusOutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const VerificationFailure& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace bcirc
