#ifndef ZML_CLI_HPP
#define ZML_CLI_HPP

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zml/constants.hpp"
#include "zml/moments.hpp"
#include "zml/series.hpp"
#include "zml/version.hpp"
#include "zml/zeros.hpp"
#include "zml/zeta_eval.hpp"

namespace zml::cli {

struct GlobalConfig {
    std::size_t digits = 50; // ZML_DIGITS overrides the default
    unsigned threads = 0;    // 0 = auto
    std::string out_format = "text";

    void validate() const {
        if (digits < 10 || digits > 1000) throw Error("digits must lie in [10, 1000]");
        if (out_format != "text" && out_format != "csv") throw Error("format must be text or csv");
    }
};

namespace detail {

inline void print_constants(std::ostream& os, unsigned j_max, std::size_t digits) {
    auto table = constants::stieltjes_table(j_max, digits);
    constants::CoefficientSet cs = constants::coefficient_set(j_max, digits);
    os << "j,gamma_j,C_j,A_j\n";
    for (unsigned j = 0; j <= j_max; ++j) {
        os << j << "," << table->values[j].str(digits) << "," << cs.C[j].str(digits) << ","
           << cs.A[j].str(digits) << "\n";
    }
}

inline void print_residue(std::ostream& os, unsigned n, bool check, int* exit_code) {
    series::ResidueExpansion r = series::residue_at_1(n);
    for (std::size_t k = r.coeff_of_l_pow.size(); k-- > 0;) {
        os << "L^" << k << ": " << r.coeff_of_l_pow[k].str() << "\n";
    }
    if (check) {
        bool match = series::theorem_coeffs(n) == r;
        os << (match ? "MATCH" : "MISMATCH") << "\n";
        if (!match) *exit_code = 1;
    }
}

inline void print_eval(std::ostream& os, double sigma, double t, int n, std::size_t digits,
                       const std::string& format) {
    zeta::EvalConfig cfg = zeta::EvalConfig::for_digits(digits, n);
    auto d = zeta::zeta_derivs(BigComplex(sigma, t, cfg.precision_bits), n, cfg);
    if (format == "csv") {
        os << "k,re,im\n";
        for (int k = 0; k <= n; ++k)
            os << k << "," << d.values[k].re.str(digits) << "," << d.values[k].im.str(digits) << "\n";
        os << "error_bound," << d.error_bound.str(6) << ",\n";
    } else {
        for (int k = 0; k <= n; ++k)
            os << "zeta^(" << k << ") = " << d.values[k].re.str(digits) << " + "
               << d.values[k].im.str(digits) << "*i\n";
        os << "error_bound = " << d.error_bound.str(6) << "\n";
    }
    for (int k = 0; k <= n; ++k)
        if (auto warn = zeta::convexity_warning(d.point, k, d.values[k])) std::cerr << *warn << "\n";
}

inline zeros::ZeroList zeros_from_source(const std::string& source, double t_max, double precision) {
    if (source == "compute") {
        zeros::FindConfig fc;
        fc.ordinate_precision = precision;
        return zeros::find_zeros(t_max, fc);
    }
    if (source.rfind("file:", 0) == 0) return zeros::load_zeros(source.substr(5), t_max);
    throw Error("source must be 'compute' or 'file:PATH'");
}

} // namespace detail

/// Entry point behind the binary: argv without the program name.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
inline int run(std::vector<std::string> args) {
    CLI::App app{"discrete moments of zeta derivatives over the nontrivial zeros"};
    app.set_version_flag("--version", std::string("zml ") + kVersion);
    GlobalConfig g;
    app.add_option("--digits", g.digits, "working decimal digits (10..1000)")
        ->envname("ZML_DIGITS")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "evaluation fan-out width, 0 = auto")->capture_default_str();
    app.fallthrough(); // global flags may follow the subcommand
    app.require_subcommand(1);

    // constants
    auto* c_cmd = app.add_subcommand("constants", "table of gamma_j, C_j, A_j");
    unsigned j_max = 3;
    c_cmd->add_option("--j-max", j_max, "largest index j")->capture_default_str();

    // residue
    auto* r_cmd = app.add_subcommand("residue", "exact residue expansion at s=1");
    unsigned r_n = 1;
    bool r_check = false;
    r_cmd->add_option("--n", r_n, "derivative order")->required();
    r_cmd->add_flag("--check", r_check, "also compare against the closed form");

    // eval
    auto* e_cmd = app.add_subcommand("eval", "zeta derivatives at sigma + i t");
    double e_sigma = 0.5, e_t = 0.0;
    int e_n = 0;
    std::string e_format = "text";
    e_cmd->add_option("--sigma", e_sigma)->required();
    e_cmd->add_option("--t", e_t)->required();
    e_cmd->add_option("--n", e_n, "highest derivative order");
    e_cmd->add_option("--format", e_format, "text or csv");

    // zeros
    auto* z_cmd = app.add_subcommand("zeros", "zero ordinates up to a height");
    bool z_compute = false;
    std::string z_load, z_out;
    double z_tmax = 0.0, z_prec = 1e-12;
    z_cmd->add_flag("--compute", z_compute, "compute ordinates from scratch");
    z_cmd->add_option("--load", z_load, "load ordinates from a reference file");
    z_cmd->add_option("--t-max", z_tmax, "height bound")->required();
    z_cmd->add_option("--out", z_out, "write the list to this path");
    z_cmd->add_option("--precision", z_prec, "ordinate precision (compute mode)")->capture_default_str();

    // compare
    auto* m_cmd = app.add_subcommand("compare", "empirical vs asymptotic vs Lambda-sum");
    unsigned m_n = 1;
    double m_tmax = 0.0, m_prec = 1e-12;
    std::string m_source = "compute", m_csv;
    std::size_t m_grid = 0;
    m_cmd->add_option("--n", m_n, "derivative order")->required();
    m_cmd->add_option("--t-max", m_tmax, "height T")->required();
    m_cmd->add_option("--source", m_source, "compute or file:PATH")->capture_default_str();
    m_cmd->add_option("--csv", m_csv, "write rows to this file instead of stdout");
    m_cmd->add_option("--grid", m_grid, "emit K rows spaced equally in zero index");
    m_cmd->add_option("--zero-precision", m_prec, "ordinate precision for compute source")
        ->capture_default_str();

    try {
        std::reverse(args.begin(), args.end()); // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        std::cout << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    int exit_code = 0;
    try {
        g.validate();
        if (c_cmd->parsed()) {
            detail::print_constants(std::cout, j_max, g.digits);
        } else if (r_cmd->parsed()) {
            detail::print_residue(std::cout, r_n, r_check, &exit_code);
        } else if (e_cmd->parsed()) {
            detail::print_eval(std::cout, e_sigma, e_t, e_n, g.digits, e_format);
        } else if (z_cmd->parsed()) {
            if (z_compute && !z_load.empty()) throw Error("choose one of --compute / --load");
            if (!z_compute && z_load.empty()) throw Error("one of --compute / --load is required");
            zeros::ZeroList zl = z_compute ? detail::zeros_from_source("compute", z_tmax, z_prec)
                                           : zeros::load_zeros(z_load, z_tmax);
            if (!z_out.empty()) zeros::save_zeros(zl, z_out);
            std::ostringstream buf;
            {
                int frac = std::max(1, static_cast<int>(std::ceil(-std::log10(zl.precision.to_double()))) + 2);
                for (const auto& z : zl.ordinates) {
                    char line[128];
                    mpfr_snprintf(line, sizeof line, "%.*Rf", frac, z.gamma.raw());
                    buf << line << "\n";
                }
            }
            std::cout << buf.str();
            std::cerr << "count=" << zl.count() << " count_check=" << (zeros::count_check(zl) ? "ok" : "FAIL")
                      << "\n";
        } else if (m_cmd->parsed()) {
            zeros::ZeroList zl = detail::zeros_from_source(m_source, m_tmax, m_prec);
            BigReal T(m_tmax, 96);
            // digits set the precision of the reported values; the empirical
            // error budget is relative to the asymptotic scale
            BigReal asym_scale = abs(moments::asymptotic_sum(m_n, T, g.digits));
            // digits <= 12 routes through the double-precision kernel
            mpfr_prec_t bits = (g.digits <= 12) ? 64 : digits_to_bits(g.digits) + 16;
            BigReal target = pow_si(BigReal(10l, 96), -static_cast<long>(g.digits)) *
                             max(BigReal(1l, 96), asym_scale);
            zeta::EvalConfig cfg(bits, target, static_cast<int>(m_n));
            std::ostringstream buf;
            buf << moments::csv_header() << "\n";
            if (m_grid > 0) {
                auto rows = moments::grid_reports(m_n, T, zl, cfg, g.digits, m_grid, g.threads);
                for (const auto& r : rows) buf << moments::csv_row(r) << "\n";
            } else {
                buf << moments::csv_row(moments::compare(m_n, T, zl, cfg, g.digits, g.threads)) << "\n";
            }
            if (m_csv.empty()) {
                std::cout << buf.str();
            } else {
                std::ofstream f(m_csv, std::ios::binary);
                if (!f) throw Error("cannot open " + m_csv);
                f << buf.str();
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

} // namespace zml::cli

#endif
