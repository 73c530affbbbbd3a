// Command-line surface: sequence values, summatory sums, approximant weights,
// transform values, distribution function, dilation curves, interval
// measures, decay diagnostics, figure data, and the verification battery.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "sternmu/acceptance.hpp"
#include "sternmu/dilation.hpp"
#include "sternmu/figures.hpp"
#include "sternmu/fourier.hpp"
#include "sternmu/numeric.hpp"
#include "sternmu/report.hpp"
#include "sternmu/stern.hpp"
#include "sternmu/wiener.hpp"

namespace {

using namespace sternmu;

struct global_options {
    double tol = 1e-10;
    int depth = 24;
    std::string format = "csv";
    std::string out;
    int threads = 0;
    int grid = 10000;

    fourier_settings settings() const { return fourier_settings::make(tol, depth); }
};

void emit(const report& rep, const global_options& g) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) throw std::runtime_error("cannot open output file: " + g.out);
        os = &file;
    }
    if (g.format == "json")
        rep.write_json(*os);
    else
        rep.write_csv(*os);
}

// Dyadic argument: exact "p/2^k" fractions stay exact; decimals snap to the
// nearest level-depth dyadic with a warning.
dyadic parse_dyadic_arg(const std::string& text, int depth) {
    if (auto d = dyadic::parse(text)) return *d;
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size() || v < 0.0 || v > 1.0)
        throw CLI::ValidationError("expected a dyadic p/2^k or a decimal in [0,1]");
    const unsigned level = static_cast<unsigned>(std::min(depth, 62));
    const double scaled = std::ldexp(v, static_cast<int>(level));
    dyadic snapped(bigint(static_cast<std::uint64_t>(std::llround(scaled))), level);
    std::cerr << "warning: snapped " << text << " to dyadic " << rat_str(snapped.value())
              << "\n";
    return snapped;
}

int run_verify(const global_options& g) {
    const auto results = acceptance::run_all(g.threads);
    report rep;
    rep.command = "verify";
    rep.columns = {"criterion", "name", "status", "seconds", "detail"};
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass &= r.pass;
        rep.rows.push_back({std::to_string(r.id), r.name, r.pass ? "PASS" : "FAIL",
                            real_str(r.seconds, 3), r.detail});
    }
    rep.pass = all_pass;
    emit(rep, g);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and floating-point toolkit for the Stern measure"};
    app.require_subcommand(1);

    global_options g;
    app.add_option("--tol", g.tol, "tail budget for the infinite product")
        ->check(CLI::PositiveNumber);
    app.add_option("--depth", g.depth, "minimum product depth / dyadic snap level");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "write output to a file instead of stdout");
    app.add_option("--threads", g.threads, "worker threads (0 = all)");
    app.add_option("--grid", g.grid, "grid points for scans and figure 1");

    std::uint64_t arg_n = 0;
    double arg_x = 1.0;
    std::string arg_text;
    std::uint64_t arg_m = 0;
    unsigned arg_k = 1;
    int arg_nmax = 12;
    int arg_fig = 1;
    bool fourier_real = false;

    auto* cmd_stern = app.add_subcommand("stern", "sequence value s(N)");
    cmd_stern->add_option("N", arg_n)->required();
    auto* cmd_sum = app.add_subcommand("sum", "summatory sum over n <= X");
    cmd_sum->add_option("X", arg_x)->required();
    auto* cmd_weights = app.add_subcommand("weights", "level-N approximant weights");
    cmd_weights->add_option("N", arg_nmax)->required();
    auto* cmd_fourier = app.add_subcommand("fourier", "transform value at K");
    cmd_fourier->add_option("K", arg_text)->required();
    cmd_fourier->add_flag("--real", fourier_real, "treat K as a real argument");
    auto* cmd_cdf = app.add_subcommand("cdf", "distribution function at a dyadic X");
    cmd_cdf->add_option("X", arg_text)->required();
    auto* cmd_dilation = app.add_subcommand("dilation", "dilation solution at a dyadic T");
    cmd_dilation->add_option("T", arg_text)->required();
    auto* cmd_interval = app.add_subcommand("interval", "measure of [2M/2^K, (2M+1)/2^K]");
    cmd_interval->add_option("M", arg_m)->required();
    cmd_interval->add_option("K", arg_k)->required();
    auto* cmd_wiener = app.add_subcommand("wiener", "averaged squared coefficients");
    cmd_wiener->add_option("NMAX", arg_nmax)->required();
    auto* cmd_scan = app.add_subcommand("scan", "profile extrema and ratio bound");
    auto* cmd_appendix = app.add_subcommand("appendix", "doubling ratios and inequalities");
    auto* cmd_moments = app.add_subcommand("moments", "convolution factor moments");
    auto* cmd_figure = app.add_subcommand("figure", "figure data (1, 2 or 3)");
    cmd_figure->add_option("ID", arg_fig)->check(CLI::Range(1, 3))->required();
    auto* cmd_verify = app.add_subcommand("verify", "run the acceptance battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    try {
        report rep;
        if (cmd_stern->parsed()) {
            rep.command = "stern";
            rep.params = {{"n", std::to_string(arg_n)}};
            rep.columns = {"s"};
            rep.rows = {{stern_recursive(arg_n).str()}};
        } else if (cmd_sum->parsed()) {
            rep.command = "sum";
            rep.params = {{"x", real_str(arg_x)}};
            rep.columns = {"sum"};
            rep.rows = {{summatory(arg_x).str()}};
        } else if (cmd_weights->parsed()) {
            rep.command = "weights";
            rep.params = {{"n", std::to_string(arg_nmax)}};
            rep.columns = {"m", "point", "weight"};
            const level_measure mu(arg_nmax);
            for (std::size_t m = 0; m < mu.size(); ++m)
                rep.rows.push_back({std::to_string(m),
                                    rat_str(dyadic(bigint(m), mu.level()).value()),
                                    rat_str(mu.weight(m))});
        } else if (cmd_fourier->parsed()) {
            rep.command = "fourier";
            rep.params = {{"k", arg_text}, {"real", fourier_real ? "1" : "0"}};
            rep.columns = {"mu_hat"};
            const double v = fourier_real
                                 ? mu_hat(std::stod(arg_text), g.settings())
                                 : mu_hat_int(std::stoll(arg_text), g.settings());
            rep.rows = {{real_str(v)}};
        } else if (cmd_cdf->parsed()) {
            rep.command = "cdf";
            rep.params = {{"x", arg_text}};
            rep.columns = {"F"};
            rep.rows = {{rat_str(cdf(parse_dyadic_arg(arg_text, g.depth)))}};
        } else if (cmd_dilation->parsed()) {
            rep.command = "dilation";
            rep.params = {{"t", arg_text}};
            rep.columns = {"f0", "f1"};
            const dilation_values v = f_dyadic(parse_dyadic_arg(arg_text, g.depth));
            rep.rows = {{rat_str(v.f0), rat_str(v.f1)}};
        } else if (cmd_interval->parsed()) {
            rep.command = "interval";
            rep.params = {{"m", std::to_string(arg_m)}, {"k", std::to_string(arg_k)}};
            rep.columns = {"measure"};
            rep.rows = {{rat_str(interval_measure(arg_m, arg_k))}};
        } else if (cmd_wiener->parsed()) {
            rep.command = "wiener";
            rep.params = {{"n_max", std::to_string(arg_nmax)}};
            rep.columns = {"N", "sigma", "sublinear"};
            const wiener_series series =
                compute_wiener_series(arg_nmax, g.settings(), g.threads);
            const auto sub = arg_nmax >= 2 ? check_sublinear(series) : std::vector<bool>{};
            for (int n = 0; n <= series.n_max; ++n)
                rep.rows.push_back({std::to_string(n), real_str(series.sigma[n]),
                                    n >= 2 ? (sub[n - 2] ? "true" : "false") : ""});
        } else if (cmd_scan->parsed()) {
            rep.command = "scan";
            rep.params = {{"grid", std::to_string(g.grid)}};
            rep.columns = {"ratio", "max_pos", "max_val", "min_pos", "min_val", "below_quarter"};
            const ratio_scan r = ratio_bound_check(g.settings(), g.grid);
            rep.pass = r.ratio < 0.25;
            rep.rows = {{real_str(r.ratio), real_str(r.max_pos), real_str(r.max_val),
                         real_str(r.min_pos), real_str(r.min_val),
                         r.ratio < 0.25 ? "true" : "false"}};
        } else if (cmd_appendix->parsed()) {
            rep.command = "appendix";
            rep.columns = {"check", "value", "arg"};
            const appendix_slacks s = appendix_inequalities(4096, g.settings());
            rep.rows.push_back({"worst_slack_1", real_str(s.worst_slack_1),
                                std::to_string(s.arg_1)});
            rep.rows.push_back({"worst_slack_2", real_str(s.worst_slack_2),
                                std::to_string(s.arg_2)});
            const doubling_report dr = appendix_doubling(std::int64_t{1} << 16, g.settings());
            for (const auto& [n, ratio] : dr.ratios)
                rep.rows.push_back({"doubling_ratio", real_str(ratio), std::to_string(n)});
            rep.rows.push_back({"decay_exponent", real_str(dr.decay_exponent), ""});
        } else if (cmd_moments->parsed()) {
            rep.command = "moments";
            rep.columns = {"r", "m", "moment"};
            for (const jw_moment& mom : jw_moments(8, 32))
                rep.rows.push_back(
                    {std::to_string(mom.r), std::to_string(mom.m), rat_str(mom.value)});
        } else if (cmd_figure->parsed()) {
            rep.command = "figure";
            rep.params = {{"id", std::to_string(arg_fig)}};
            const int level = std::min(g.depth, 12);
            if (arg_fig == 1) {
                rep.columns = {"kappa", "abs_mu_hat"};
                for (const auto& p : figure_profile(g.grid, g.settings()))
                    rep.rows.push_back({real_str(p.kappa), real_str(p.abs_mu)});
            } else if (arg_fig == 2) {
                rep.columns = {"x", "F"};
                for (const auto& p : figure_cdf(level))
                    rep.rows.push_back({rat_str(p.x.value()), rat_str(p.f)});
            } else {
                rep.columns = {"t", "f0", "f1"};
                for (const auto& p : figure_dilation(level))
                    rep.rows.push_back(
                        {rat_str(p.t.value()), rat_str(p.f0), rat_str(p.f1)});
            }
        } else if (cmd_verify->parsed()) {
            exit_code = run_verify(g);
            const auto ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            std::cerr << "elapsed_ms=" << real_str(ms, 6) << "\n";
            return exit_code;
        }
        emit(rep, g);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cerr << "elapsed_ms=" << real_str(ms, 6) << "\n";
    return exit_code;
}
