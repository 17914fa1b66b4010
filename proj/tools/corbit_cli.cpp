#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corbit/bigint.hpp"
#include "corbit/clt.hpp"
#include "corbit/errors.hpp"
#include "corbit/oracle.hpp"
#include "corbit/orbit_series.hpp"
#include "corbit/saddle.hpp"
#include "corbit/zfun.hpp"

using nlohmann::ordered_json;
using namespace corbit;

namespace {

struct Output {
    std::string format = "json";
    std::string path = "-";

    void write(const std::string& text) const {
        if (path == "-") {
            std::cout << text << '\n';
            return;
        }
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << text << '\n';
    }
};

void add_output_options(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "Output file, - for stdout")
        ->capture_default_str();
}

ordered_json envelope(const std::string& command, ordered_json config,
                      ordered_json result) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["command"] = command;
    doc["config"] = std::move(config);
    doc["result"] = std::move(result);
    return doc;
}

// Grid spec "a:b:factor" (factor optional, default 2): a, a*factor, ...
// up to and including b if hit exactly, else the last point below b.
std::vector<int> parse_grid(const std::string& spec) {
    std::vector<long> parts;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t colon = spec.find(':', pos);
        const std::string piece =
            spec.substr(pos, colon == std::string::npos ? colon : colon - pos);
        parts.push_back(std::stol(piece));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("grid spec must be first:last[:factor]");
    const long a = parts[0], b = parts[1];
    const long factor = parts.size() == 3 ? parts[2] : 2;
    if (a < 1 || b < a || factor < 2)
        throw std::invalid_argument("grid spec must satisfy 1 <= first <= last, factor >= 2");
    std::vector<int> grid;
    for (long n = a; n <= b; n *= factor) grid.push_back(static_cast<int>(n));
    return grid;
}

std::string rat_string(const Rat& r) { return r.str(); }

std::string csv_scalar_row(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string head, row;
    for (const auto& [k, v] : kv) {
        if (!head.empty()) {
            head += ',';
            row += ',';
        }
        head += k;
        row += v;
    }
    return head + "\n" + row;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run_counts(int ell, int n, const std::string& x_str, bool whole_table,
               const Output& out) {
    ordered_json config{{"ell", ell}, {"n", n}};
    if (ell == 1) {
        const auto row = oracle::stirling_first_row(n);
        if (out.format == "csv") {
            std::string csv = std::to_string(n);
            for (const BigInt& v : row) csv += ',' + dec_string(v);
            out.write(csv);
            return 0;
        }
        ordered_json a = ordered_json::array();
        BigInt total = 0;
        for (const BigInt& v : row) {
            a.push_back(dec_string(v));
            total += v;
        }
        ordered_json result{{"a", std::move(a)}, {"total", dec_string(total)}};
        out.write(envelope("counts", std::move(config), std::move(result)).dump(2));
        return 0;
    }

    const auto table = orbits::build_orbit_table(ell, n, orbits::TableMode::exact);
    if (whole_table) {
        if (out.format == "csv") {
            std::string csv;
            for (int r = 0; r <= n; ++r) {
                if (r) csv += '\n';
                csv += orbits::row_to_csv(table, r);
            }
            out.write(csv);
        } else {
            out.write(orbits::table_to_json(table));
        }
        return 0;
    }
    if (out.format == "csv") {
        out.write(orbits::row_to_csv(table, n));
        return 0;
    }
    ordered_json a = ordered_json::array();
    BigInt total = 0;
    for (const BigInt& v : table.a[n]) {
        a.push_back(dec_string(v));
        total += v;
    }
    ordered_json result{{"a", std::move(a)}, {"total", dec_string(total)}};
    if (!x_str.empty()) {
        const Rat x = parse_rational(x_str);
        config["x"] = x_str;
        result["h_at_x"] = rat_string(orbits::h_value_exact(table, n, x));
    }
    out.write(envelope("counts", std::move(config), std::move(result)).dump(2));
    return 0;
}

int run_oracle(int ell, int n, const Output& out) {
    const auto bf = oracle::brute_force_counts(ell, n);
    bool matches = true;
    if (ell == 1) {
        const auto row = oracle::stirling_first_row(n);
        for (int k = 0; k <= n; ++k) matches = matches && bf.a[k] == row[k];
    } else {
        const auto table = orbits::build_orbit_table(ell, n, orbits::TableMode::exact);
        for (int k = 0; k <= n; ++k) matches = matches && bf.a[k] == table.a[n][k];
    }
    if (out.format == "csv") {
        std::string csv = std::to_string(n);
        for (const BigInt& v : bf.a) csv += ',' + dec_string(v);
        out.write(csv);
        return matches ? 0 : 1;
    }
    ordered_json a = ordered_json::array();
    for (const BigInt& v : bf.a) a.push_back(dec_string(v));
    ordered_json result{{"a", std::move(a)},
                        {"total", dec_string(bf.total)},
                        {"matches_recurrence", matches}};
    out.write(envelope("oracle", ordered_json{{"ell", ell}, {"n", n}}, std::move(result))
                  .dump(2));
    return matches ? 0 : 1;
}

int run_zeval(int ell, int m, double t, double tol, const std::string& alphas_str,
              const Output& out) {
    zfun::ZResult z;
    ordered_json config{{"t", t}, {"tol", tol}};
    if (!alphas_str.empty()) {
        std::vector<double> alphas;
        std::size_t pos = 0;
        while (pos <= alphas_str.size()) {
            const std::size_t comma = alphas_str.find(',', pos);
            alphas.push_back(std::stod(alphas_str.substr(
                pos, comma == std::string::npos ? comma : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        z = zfun::z_general(alphas, t, tol);
        config["alphas"] = alphas;
    } else {
        z = zfun::z_staircase(ell, m, t, tol);
        config["ell"] = ell;
        config["m"] = m;
    }
    if (out.format == "csv") {
        out.write(csv_scalar_row({{"value", fmt(z.value)},
                                  {"err_bound", fmt(z.err)},
                                  {"cutoff", std::to_string(z.cutoff)}}));
        return 0;
    }
    ordered_json result{{"value", z.value}, {"err_bound", z.err}, {"cutoff", z.cutoff}};
    out.write(envelope("zeval", std::move(config), std::move(result)).dump(2));
    return 0;
}

int run_saddle(int ell, const std::string& x_str, double n, double tol,
               const Output& out) {
    const double x = rat_to_double(parse_rational(x_str));
    const auto sp = saddle::solve_saddle(ell, x, n, tol);
    const double lnp = saddle::prefactor_log(ell, x, sp.t, n);
    if (out.format == "csv") {
        out.write(csv_scalar_row({{"t", fmt(sp.t)},
                                  {"residual", fmt(sp.residual)},
                                  {"lambda", fmt(sp.lambda)},
                                  {"z_cutoff", std::to_string(sp.z_cutoff)},
                                  {"ln_prefactor", fmt(lnp)}}));
        return 0;
    }
    ordered_json result{{"t", sp.t},
                        {"residual", sp.residual},
                        {"lambda", sp.lambda},
                        {"z_cutoff", sp.z_cutoff},
                        {"ln_prefactor", lnp}};
    out.write(envelope("saddle",
                       ordered_json{{"ell", ell}, {"x", x_str}, {"n", n}, {"tol", tol}},
                       std::move(result))
                  .dump(2));
    return 0;
}

int run_contour(int ell, const std::string& x_str, int n, int grid, const Output& out) {
    const double x = rat_to_double(parse_rational(x_str));
    const auto sp = saddle::solve_saddle(ell, x, n);
    const auto cj = saddle::contour_integral_J(ell, n, x, sp.t, grid);
    const double pred = saddle::j_gaussian_prediction(ell, x, n, 0.0);
    if (out.format == "csv") {
        out.write(csv_scalar_row({{"t", fmt(sp.t)},
                                  {"j", fmt(cj.j)},
                                  {"gaussian_prediction", fmt(pred)},
                                  {"ratio", fmt(cj.j / pred)},
                                  {"grid", std::to_string(cj.m_used)},
                                  {"k_cutoff", std::to_string(cj.k_cutoff)},
                                  {"imag_rel", fmt(cj.imag_rel)}}));
        return 0;
    }
    ordered_json result{{"t", sp.t},
                        {"j", cj.j},
                        {"gaussian_prediction", pred},
                        {"ratio", cj.j / pred},
                        {"grid", cj.m_used},
                        {"k_cutoff", cj.k_cutoff},
                        {"imag_rel", cj.imag_rel}};
    out.write(envelope("contour",
                       ordered_json{{"ell", ell}, {"x", x_str}, {"n", n}, {"grid", grid}},
                       std::move(result))
                  .dump(2));
    return 0;
}

int run_clt(int ell, const std::string& x_str, const std::string& grid_spec,
            const Output& out) {
    const double x = rat_to_double(parse_rational(x_str));
    const std::vector<int> grid = parse_grid(grid_spec);
    const auto pmfs = clt::pmf_float_targets(ell, x, grid);
    const std::vector<double> s_values{-1.0, -0.5, 0.5, 1.0};

    ordered_json rows = ordered_json::array();
    std::string csv =
        "n,mean,variance,asym_mean,asym_variance,a_refined,a_leading,b,"
        "ks_refined,ks_leading,psi_m1,psi_mh,psi_ph,psi_p1,mass_defect";
    for (const clt::Pmf& d : pmfs) {
        const auto mo = clt::asymptotic_moments(ell, x, d.n);
        const auto cr = clt::centering_refined(ell, x, d.n);
        const auto cl = clt::centering_leading(ell, x, d.n);
        const double ks_r = clt::kolmogorov_distance(d, cr.a, cr.b);
        const double ks_l = clt::kolmogorov_distance(d, cl.a, cl.b);
        std::vector<double> psi;
        for (double s : s_values) psi.push_back(clt::psi_mgf(d, s, cr.a, cr.b));
        ordered_json row{{"n", d.n},
                         {"mean", d.mean},
                         {"variance", d.variance},
                         {"asym_mean", mo.mean},
                         {"asym_variance", mo.variance},
                         {"a_refined", cr.a},
                         {"a_leading", cl.a},
                         {"b", cr.b},
                         {"ks_refined", ks_r},
                         {"ks_leading", ks_l},
                         {"psi", ordered_json{{"-1", psi[0]},
                                              {"-0.5", psi[1]},
                                              {"0.5", psi[2]},
                                              {"1", psi[3]}}},
                         {"mass_defect", d.mass_defect}};
        rows.push_back(std::move(row));
        csv += '\n' + std::to_string(d.n) + ',' + fmt(d.mean) + ',' + fmt(d.variance) +
               ',' + fmt(mo.mean) + ',' + fmt(mo.variance) + ',' + fmt(cr.a) + ',' +
               fmt(cl.a) + ',' + fmt(cr.b) + ',' + fmt(ks_r) + ',' + fmt(ks_l) + ',' +
               fmt(psi[0]) + ',' + fmt(psi[1]) + ',' + fmt(psi[2]) + ',' + fmt(psi[3]) +
               ',' + fmt(d.mass_defect);
    }
    if (out.format == "csv") {
        out.write(csv);
        return 0;
    }
    out.write(envelope("clt",
                       ordered_json{{"ell", ell}, {"x", x_str}, {"n_grid", grid_spec}},
                       std::move(rows))
                  .dump(2));
    return 0;
}

int run_sweep(int ell, const std::string& x_str, const std::string& grid_spec,
              const Output& out) {
    const double x = rat_to_double(parse_rational(x_str));
    const std::vector<int> grid = parse_grid(grid_spec);
    const int n_max = grid.back();
    const auto lh = orbits::log_h_float(ell, x, n_max);
    const double kappa = zfun::kappa_constant(ell);
    const double theta = (ell - 1.0) / ell;

    ordered_json rows = ordered_json::array();
    std::string csv = "n,ln_h,ln_h_pred,ln_h_ratio,t,t_leading,t_ratio";
    for (int n : grid) {
        const double pred =
            (ell / (ell - 1.0)) * std::pow(x * kappa, 1.0 / ell) * std::pow(n, theta);
        const auto sp = saddle::solve_saddle(ell, x, n);
        const double t0 = std::pow(n / (x * kappa), -1.0 / ell);
        ordered_json row{{"n", n},
                         {"ln_h", lh[n]},
                         {"ln_h_pred", pred},
                         {"ln_h_ratio", lh[n] / pred},
                         {"t", sp.t},
                         {"t_leading", t0},
                         {"t_ratio", sp.t / t0}};
        rows.push_back(std::move(row));
        csv += '\n' + std::to_string(n) + ',' + fmt(lh[n]) + ',' + fmt(pred) + ',' +
               fmt(lh[n] / pred) + ',' + fmt(sp.t) + ',' + fmt(t0) + ',' +
               fmt(sp.t / t0);
    }
    if (out.format == "csv") {
        out.write(csv);
        return 0;
    }
    out.write(envelope("sweep",
                       ordered_json{{"ell", ell}, {"x", x_str}, {"n_grid", grid_spec}},
                       std::move(rows))
                  .dump(2));
    return 0;
}

int run_sample(int n, const std::string& x_str, std::uint64_t seed, int count,
               const Output& out) {
    const double x = rat_to_double(parse_rational(x_str));
    const auto draws = oracle::feller_sample(n, x, seed, count);
    std::string text;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        if (i) text += '\n';
        text += std::to_string(draws[i]);
    }
    out.write(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Commuting-tuple orbit statistics"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads,
                   "Upper bound on worker threads (current kernels are single-threaded)")
        ->check(CLI::PositiveNumber);

    int ell = 2, n = 10, m = 2, grid = 0, count = 1;
    double t = 1.0, tol = 1e-9, nd = 0.0;
    std::uint64_t seed = 1;
    std::string x_str = "1", alphas, grid_spec;
    bool whole_table = false;

    Output o_counts, o_oracle, o_zeval, o_saddle, o_contour, o_clt, o_sweep, o_sample;

    CLI::App* c_counts = app.add_subcommand("counts", "Exact orbit-count row");
    c_counts->add_option("--ell", ell, "Tuple length")->check(CLI::Range(1, 16));
    c_counts->add_option("--n", n, "Row index")->required()->check(CLI::Range(0, 100000));
    c_counts->add_option("--x", x_str, "Also report H_n(x) at this rational x");
    c_counts->add_flag("--table", whole_table, "Emit all rows up to n");
    add_output_options(c_counts, o_counts);

    CLI::App* c_oracle =
        app.add_subcommand("oracle", "Brute-force counts checked against the recurrence");
    c_oracle->add_option("--ell", ell, "Tuple length")->check(CLI::Range(1, 16));
    c_oracle->add_option("--n", n, "Row index")->required()->check(CLI::Range(0, 16));
    add_output_options(c_oracle, o_oracle);

    CLI::App* c_zeval = app.add_subcommand("zeval", "Certified Z function value");
    c_zeval->add_option("--ell", ell, "Tuple length")->check(CLI::Range(1, 16));
    c_zeval->add_option("--m", m, "Staircase order");
    c_zeval->add_option("--t", t, "Evaluation point")->required();
    c_zeval->add_option("--tol", tol, "Absolute tolerance")->capture_default_str();
    c_zeval->add_option("--alphas", alphas, "General exponents a1,a2,... (overrides --ell/--m)");
    add_output_options(c_zeval, o_zeval);

    CLI::App* c_saddle = app.add_subcommand("saddle", "Saddle point of x Z_l(t) = n");
    c_saddle->add_option("--ell", ell, "Tuple length")->check(CLI::Range(2, 16));
    c_saddle->add_option("--x", x_str, "Weight, rational")->capture_default_str();
    c_saddle->add_option("--n", nd, "Target n")->required()->check(CLI::PositiveNumber);
    c_saddle->add_option("--tol", tol, "Relative residual tolerance")->capture_default_str();
    add_output_options(c_saddle, o_saddle);

    CLI::App* c_contour =
        app.add_subcommand("contour", "Contour correction factor J at the saddle");
    c_contour->add_option("--ell", ell, "Tuple length")->check(CLI::Range(2, 16));
    c_contour->add_option("--x", x_str, "Weight, rational")->capture_default_str();
    c_contour->add_option("--n", n, "Target n")->required()->check(CLI::PositiveNumber);
    c_contour->add_option("--grid", grid, "Fixed even grid size, 0 = automatic")
        ->capture_default_str();
    add_output_options(c_contour, o_contour);

    CLI::App* c_clt =
        app.add_subcommand("clt", "Distributional summary over a geometric n-grid");
    c_clt->add_option("--ell", ell, "Tuple length")->check(CLI::Range(2, 16));
    c_clt->add_option("--x", x_str, "Weight, rational")->capture_default_str();
    c_clt->add_option("--n-grid", grid_spec, "Grid first:last[:factor]")->required();
    add_output_options(c_clt, o_clt);

    CLI::App* c_sweep =
        app.add_subcommand("sweep", "Growth and saddle scaling over an n-grid");
    c_sweep->add_option("--ell", ell, "Tuple length")->check(CLI::Range(2, 16));
    c_sweep->add_option("--x", x_str, "Weight, rational")->capture_default_str();
    c_sweep->add_option("--n-grid", grid_spec, "Grid first:last[:factor]")->required();
    add_output_options(c_sweep, o_sweep);

    CLI::App* c_sample =
        app.add_subcommand("sample", "Cycle-count samples for l = 1, one per line");
    c_sample->add_option("--n", n, "Permutation size")->required()->check(CLI::Range(1, 100000000));
    c_sample->add_option("--x", x_str, "Weight, rational")->capture_default_str();
    c_sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
    c_sample->add_option("--count", count, "Number of samples")->required()->check(CLI::PositiveNumber);
    add_output_options(c_sample, o_sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_counts->parsed())
            return run_counts(ell, n, c_counts->count("--x") ? x_str : "", whole_table,
                              o_counts);
        if (c_oracle->parsed()) return run_oracle(ell, n, o_oracle);
        if (c_zeval->parsed()) return run_zeval(ell, m, t, tol, alphas, o_zeval);
        if (c_saddle->parsed()) return run_saddle(ell, x_str, nd, tol, o_saddle);
        if (c_contour->parsed()) return run_contour(ell, x_str, n, grid, o_contour);
        if (c_clt->parsed()) return run_clt(ell, x_str, grid_spec, o_clt);
        if (c_sweep->parsed()) return run_sweep(ell, x_str, grid_spec, o_sweep);
        if (c_sample->parsed()) return run_sample(n, x_str, seed, count, o_sample);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
