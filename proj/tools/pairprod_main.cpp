// pairprod: momentum spectra and pair number densities for charged scalars
// created from vacuum by time-dependent Sauter-pulse electric fields.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairprod/analysis.hpp"
#include "pairprod/fermion.hpp"
#include "pairprod/fields.hpp"
#include "pairprod/qve.hpp"
#include "pairprod/render.hpp"
#include "pairprod/riccati.hpp"
#include "pairprod/semiclassical.hpp"
#include "pairprod/spectrum_table.hpp"

namespace pp = pairprod;

namespace {

struct GridArgs {
    double kpar_min = -1.0;
    double kpar_max = 1.0;
    int steps = 201;
    double kperp = 0.0;
};

struct TolArgs {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

void add_grid_options(CLI::App* cmd, GridArgs& g) {
    cmd->add_option("--kpar-min", g.kpar_min, "lower edge of the k_parallel grid");
    cmd->add_option("--kpar-max", g.kpar_max, "upper edge of the k_parallel grid");
    cmd->add_option("--kpar-steps", g.steps, "number of k_parallel grid points")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--kperp", g.kperp, "transverse momentum of the scan line")
        ->check(CLI::NonNegativeNumber);
}

void add_tol_options(CLI::App* cmd, TolArgs& t) {
    cmd->add_option("--rel-tol", t.rel_tol, "ODE relative tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--abs-tol", t.abs_tol, "ODE absolute tolerance")
        ->check(CLI::PositiveNumber);
}

pp::SolverSettings settings_for(const pp::FieldConfig& config, const TolArgs& tol) {
    pp::SolverSettings s = pp::SolverSettings::for_config(config);
    s.rel_tol = tol.rel_tol;
    s.abs_tol = tol.abs_tol;
    return s;
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

void write_table(const pp::SpectrumTable& table, const std::string& out_path) {
    std::ostringstream buf;
    pp::write_csv(table, buf);
    write_text(buf.str(), out_path);
}

pp::SpectrumTable compute_spectrum(const pp::FieldConfig& config, const GridArgs& g,
                                   const TolArgs& tol, const std::string& method) {
    const auto grid = pp::uniform_kpar_grid(g.kpar_min, g.kpar_max, g.steps, g.kperp);
    const pp::SolverSettings s = settings_for(config, tol);
    if (method == "riccati") return pp::spectrum(config, grid, s);
    if (method == "qve") return pp::qve_spectrum(config, grid, s);
    if (method == "fermion") return pp::fermion_spectrum(config, grid, s);
    if (method == "born") {
        pp::SpectrumTable table;
        table.rows.reserve(grid.size());
        for (const auto& k : grid) {
            const double r2 = std::norm(pp::born_reflection(config, k, s));
            if (r2 >= 1.0)
                throw pp::SupercriticalError("Born amplitude reached |R| = 1", s.t_end,
                                             std::sqrt(r2));
            table.rows.push_back({k.k_parallel, k.k_perp, r2 / (1.0 - r2), "born"});
        }
        return table;
    }
    if (method == "semiclassical") {
        const pp::SearchRegion region = pp::SearchRegion::default_for(config);
        pp::SpectrumTable table;
        table.rows.reserve(grid.size());
        for (const auto& k : grid) {
            const auto tps = pp::find_turning_points(config, k, region);
            table.rows.push_back({k.k_parallel, k.k_perp,
                                  pp::approx_spectrum_general(config, k, tps),
                                  "semiclassical"});
        }
        return table;
    }
    throw std::invalid_argument("unknown method: " + method);
}

std::string density_report_json(const pp::DensityResult& d, const std::string& label) {
    nlohmann::json j;
    j["label"] = label;
    j["n"] = d.n;
    j["error_estimate"] = d.error_estimate;
    j["grid"] = {{"kpar_min", d.grid.kpar_min},   {"kpar_max", d.grid.kpar_max},
                 {"n_kpar", d.grid.n_kpar},       {"kperp_max", d.grid.kperp_max},
                 {"n_kperp", d.grid.n_kperp}};
    return j.dump(2) + "\n";
}

std::string turning_points_csv(const pp::FieldConfig& config, const GridArgs& g) {
    const auto grid = pp::uniform_kpar_grid(g.kpar_min, g.kpar_max, g.steps, g.kperp);
    const pp::SearchRegion region = pp::SearchRegion::default_for(config);
    std::ostringstream out;
    out << "k_parallel,re_t,im_t,residual,vartheta\n";
    for (const auto& k : grid) {
        const auto tps = pp::find_turning_points(config, k, region);
        for (const auto& tp : tps) {
            const double vt = pp::singulant(config, k, tp);
            out << pp::format_float(k.k_parallel) << ',' << pp::format_float(tp.t.real())
                << ',' << pp::format_float(tp.t.imag()) << ','
                << pp::format_float(tp.residual) << ',' << pp::format_float(vt) << '\n';
        }
    }
    return out.str();
}

nlohmann::json cross_check_json(const pp::CrossCheckReport& rep,
                                const std::string& label) {
    nlohmann::json j;
    j["label"] = label;
    j["pass"] = rep.pass;
    j["tolerance"] = rep.tolerance;
    j["max_rel_diff"] = rep.max_rel_diff;
    j["n_modes"] = rep.cases.size();
    return j;
}

int run_recipe(const std::string& path, const std::string& out_dir, const TolArgs& tol);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pair creation from time-dependent Sauter-pulse fields: exact Riccati "
                 "solver, semiclassical turning-point approximation, and kinetic "
                 "cross-checks."};
    app.require_subcommand(1);

    std::string config_path, out_path, method = "riccati", spec_path;
    GridArgs grid;
    TolArgs tol;

    // spectrum
    auto* sc_spectrum = app.add_subcommand("spectrum", "momentum spectrum f(k) on a grid");
    sc_spectrum->add_option("--config", config_path, "field config JSON")->required();
    sc_spectrum->add_option("--out", out_path, "output CSV path (default stdout)");
    sc_spectrum
        ->add_option("--method", method,
                     "riccati | born | semiclassical | qve | fermion")
        ->check(CLI::IsMember({"riccati", "born", "semiclassical", "qve", "fermion"}));
    add_grid_options(sc_spectrum, grid);
    add_tol_options(sc_spectrum, tol);

    // density
    auto* sc_density = app.add_subcommand("density", "pair number density n");
    sc_density->add_option("--config", config_path, "field config JSON")->required();
    sc_density->add_option("--out", out_path, "output JSON path (default stdout)");
    double q_kpar_min = 0, q_kpar_max = 0, q_kperp_max = 0;
    int q_n_kpar = 0, q_n_kperp = 0;
    auto* o_qpmin = sc_density->add_option("--quad-kpar-min", q_kpar_min);
    auto* o_qpmax = sc_density->add_option("--quad-kpar-max", q_kpar_max);
    auto* o_qnp = sc_density->add_option("--quad-n-kpar", q_n_kpar);
    auto* o_qqmax = sc_density->add_option("--quad-kperp-max", q_kperp_max);
    auto* o_qnq = sc_density->add_option("--quad-n-kperp", q_n_kperp);
    add_tol_options(sc_density, tol);

    // sweep-delay
    auto* sc_sweep = app.add_subcommand("sweep-delay", "sweep T or N per a JSON spec");
    sc_sweep->add_option("--spec", spec_path, "sweep spec JSON")->required();
    sc_sweep->add_option("--out", out_path, "output CSV path (default stdout)");
    add_tol_options(sc_sweep, tol);

    // turning-points
    auto* sc_tp = app.add_subcommand("turning-points",
                                     "complex turning points and singulants per k");
    sc_tp->add_option("--config", config_path, "field config JSON")->required();
    sc_tp->add_option("--out", out_path, "output CSV path (default stdout)");
    add_grid_options(sc_tp, grid);

    // compare
    auto* sc_compare = app.add_subcommand("compare", "two methods on one grid");
    std::string method_a = "riccati", method_b = "semiclassical";
    sc_compare->add_option("--config", config_path, "field config JSON")->required();
    sc_compare->add_option("--out", out_path, "stacked CSV path (default stdout)");
    sc_compare
        ->add_option("--method-a", method_a)
        ->check(CLI::IsMember({"riccati", "born", "semiclassical", "qve", "fermion"}));
    sc_compare
        ->add_option("--method-b", method_b)
        ->check(CLI::IsMember({"riccati", "born", "semiclassical", "qve", "fermion"}));
    add_grid_options(sc_compare, grid);
    add_tol_options(sc_compare, tol);

    // validate
    auto* sc_validate =
        app.add_subcommand("validate", "Riccati-vs-kinetic cross-check suite");
    sc_validate->add_option("--config", config_path,
                            "field config JSON (default: built-in suite)");
    sc_validate->add_option("--out", out_path, "report JSON path (default stdout)");
    int n_modes = 21;
    double check_kmin = -0.5, check_kmax = 0.5, check_tolerance = 1e-3;
    sc_validate->add_option("--modes", n_modes)->check(CLI::PositiveNumber);
    sc_validate->add_option("--kpar-min", check_kmin);
    sc_validate->add_option("--kpar-max", check_kmax);
    sc_validate->add_option("--tolerance", check_tolerance)->check(CLI::PositiveNumber);
    add_tol_options(sc_validate, tol);

    // render
    auto* sc_render = app.add_subcommand("render", "SVG line plot from spectrum CSVs");
    std::vector<std::string> csv_inputs;
    bool log_y = false;
    std::string title;
    sc_render->add_option("inputs", csv_inputs, "spectrum CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    sc_render->add_option("--out", out_path, "output SVG path")->required();
    sc_render->add_flag("--log-y", log_y, "logarithmic f axis");
    sc_render->add_option("--title", title, "plot title");

    // make-config
    auto* sc_make = app.add_subcommand("make-config", "write a field config JSON");
    std::string tmpl = "single", gauge = "vanish_at_minus_infinity";
    double E0 = 0.1, w0 = 0.05, E1 = 0.25, w1 = 0.02, E2 = 0.025, w2 = 1.0, T = 180.32;
    int N = 2;
    sc_make
        ->add_option("--template", tmpl,
                     "single | assist-equal | assist-alternating | train-equal | "
                     "train-alternating")
        ->check(CLI::IsMember({"single", "assist-equal", "assist-alternating",
                               "train-equal", "train-alternating"}));
    sc_make->add_option("--E0", E0);
    sc_make->add_option("--w0", w0);
    sc_make->add_option("--E1", E1);
    sc_make->add_option("--w1", w1);
    sc_make->add_option("--E2", E2);
    sc_make->add_option("--w2", w2);
    sc_make->add_option("--T", T);
    sc_make->add_option("--N", N)->check(CLI::PositiveNumber);
    sc_make
        ->add_option("--gauge", gauge, "vanish_at_minus_infinity | centered_2pulse")
        ->check(CLI::IsMember({"vanish_at_minus_infinity", "centered_2pulse"}));
    sc_make->add_option("--out", out_path, "output JSON path (default stdout)");

    // recipe
    auto* sc_recipe = app.add_subcommand("recipe", "run a declarative figure recipe");
    std::string recipe_path, out_dir = ".";
    sc_recipe->add_option("recipe", recipe_path, "recipe JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sc_recipe->add_option("--out-dir", out_dir, "directory for recipe outputs");
    add_tol_options(sc_recipe, tol);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_spectrum->parsed()) {
            const auto config = pp::load_config(config_path);
            write_table(compute_spectrum(config, grid, tol, method), out_path);
        } else if (sc_density->parsed()) {
            const auto config = pp::load_config(config_path);
            const pp::SolverSettings s = settings_for(config, tol);
            pp::QuadratureSettings quad = pp::QuadratureSettings::auto_for(config, s);
            if (o_qpmin->count()) quad.kpar_min = q_kpar_min;
            if (o_qpmax->count()) quad.kpar_max = q_kpar_max;
            if (o_qnp->count()) quad.n_kpar = q_n_kpar;
            if (o_qqmax->count()) quad.kperp_max = q_kperp_max;
            if (o_qnq->count()) quad.n_kperp = q_n_kperp;
            const auto d = pp::number_density(config, quad, s);
            write_text(density_report_json(d, config.label), out_path);
        } else if (sc_sweep->parsed()) {
            const auto spec = pp::SweepSpec::load(spec_path);
            pp::SolverSettings tol_settings;
            tol_settings.rel_tol = tol.rel_tol;
            tol_settings.abs_tol = tol.abs_tol;
            const auto result = pp::sweep_delay(spec, tol_settings);
            std::ostringstream buf;
            pp::write_sweep_csv(result, buf);
            write_text(buf.str(), out_path);
            for (const auto& row : result.rows)
                if (!row.ok)
                    std::cerr << "row " << pp::format_float(row.value)
                              << " failed: " << row.error << "\n";
        } else if (sc_tp->parsed()) {
            const auto config = pp::load_config(config_path);
            write_text(turning_points_csv(config, grid), out_path);
        } else if (sc_compare->parsed()) {
            const auto config = pp::load_config(config_path);
            const auto ta = compute_spectrum(config, grid, tol, method_a);
            const auto tb = compute_spectrum(config, grid, tol, method_b);
            pp::SpectrumTable stacked = ta;
            stacked.rows.insert(stacked.rows.end(), tb.rows.begin(), tb.rows.end());
            write_table(stacked, out_path);
            double max_rel = 0.0;
            for (std::size_t i = 0; i < ta.rows.size(); ++i) {
                const double denom = std::max(std::abs(ta.rows[i].f), 1e-300);
                max_rel = std::max(max_rel,
                                   std::abs(tb.rows[i].f - ta.rows[i].f) / denom);
            }
            std::cerr << "max |" << method_b << " - " << method_a << "| / |" << method_a
                      << "| = " << pp::format_float(max_rel) << "\n";
        } else if (sc_validate->parsed()) {
            nlohmann::json report;
            report["tolerance"] = check_tolerance;
            bool all_pass = true;
            pp::SolverSettings tol_settings;
            std::vector<pp::FieldConfig> suite;
            if (!config_path.empty()) {
                suite.push_back(pp::load_config(config_path));
            } else {
                suite.push_back(pp::make_single_sauter(0.1, 0.05));
                suite.back().label = "single_sauter";
                suite.push_back(pp::make_pulse_train(2, pp::SignMode::alternating, 0.1,
                                                     0.05, 180.32,
                                                     pp::GaugeMode::centered_2pulse));
                suite.back().label = "alternating_2pulse";
            }
            for (const auto& config : suite) {
                pp::SolverSettings s = settings_for(config, tol);
                const auto rep = pp::cross_check(config, check_kmin, check_kmax, n_modes,
                                                 s, check_tolerance);
                report["cases"].push_back(cross_check_json(rep, config.label));
                all_pass = all_pass && rep.pass;
            }
            report["pass"] = all_pass;
            write_text(report.dump(2) + "\n", out_path);
            if (!all_pass) {
                std::cerr << "cross-method validation failed\n";
                return 2;
            }
        } else if (sc_render->parsed()) {
            std::vector<pp::SpectrumTable> tables;
            for (const auto& path : csv_inputs) tables.push_back(pp::read_csv_file(path));
            pp::PlotStyle style;
            style.log_y = log_y;
            style.title = title;
            pp::render_plot_to_file(tables, style, out_path);
        } else if (sc_make->parsed()) {
            const pp::GaugeMode gm = gauge == "centered_2pulse"
                                         ? pp::GaugeMode::centered_2pulse
                                         : pp::GaugeMode::vanish_at_minus_infinity;
            pp::FieldConfig config;
            if (tmpl == "single")
                config = pp::make_single_sauter(E0, w0);
            else if (tmpl == "assist-equal")
                config = pp::make_equal_sign_assist(E1, w1, E2, w2, T, gm);
            else if (tmpl == "assist-alternating")
                config = pp::make_alternating_assist(E1, w1, E2, w2, T, gm);
            else if (tmpl == "train-equal")
                config = pp::make_pulse_train(N, pp::SignMode::equal, E0, w0, T, gm);
            else
                config = pp::make_pulse_train(N, pp::SignMode::alternating, E0, w0, T, gm);
            config.label = tmpl;
            write_text(pp::config_to_json_text(config), out_path);
        } else if (sc_recipe->parsed()) {
            return run_recipe(recipe_path, out_dir, tol);
        }
    } catch (const pp::DomainError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

namespace {

int run_recipe(const std::string& path, const std::string& out_dir, const TolArgs& tol) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open recipe: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("recipe is not valid JSON: ") + e.what());
    }

    const std::string command = j.at("command").get<std::string>();
    const std::string out_name = j.at("out").get<std::string>();
    const std::string out_path = out_dir + "/" + out_name;

    TolArgs t = tol;
    if (j.contains("rel_tol")) t.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("abs_tol")) t.abs_tol = j["abs_tol"].get<double>();

    auto config_of = [&]() {
        if (j.contains("config_path")) {
            return pp::load_config(j["config_path"].get<std::string>());
        }
        return pp::config_from_json_text(j.at("config").dump());
    };
    auto grid_of = [&]() {
        GridArgs g;
        const auto& gj = j.at("grid");
        g.kpar_min = gj.at("kpar_min").get<double>();
        g.kpar_max = gj.at("kpar_max").get<double>();
        g.steps = gj.at("n").get<int>();
        g.kperp = gj.value("kperp", 0.0);
        return g;
    };

    if (command == "spectrum") {
        const auto config = config_of();
        const std::string method = j.value("method", std::string("riccati"));
        write_table(compute_spectrum(config, grid_of(), t, method), out_path);
    } else if (command == "density") {
        const auto config = config_of();
        const pp::SolverSettings s = settings_for(config, t);
        pp::QuadratureSettings quad = pp::QuadratureSettings::auto_for(config, s);
        if (j.contains("quad")) {
            const auto& q = j["quad"];
            quad.kpar_min = q.value("kpar_min", quad.kpar_min);
            quad.kpar_max = q.value("kpar_max", quad.kpar_max);
            quad.n_kpar = q.value("n_kpar", quad.n_kpar);
            quad.kperp_max = q.value("kperp_max", quad.kperp_max);
            quad.n_kperp = q.value("n_kperp", quad.n_kperp);
        }
        write_text(density_report_json(pp::number_density(config, quad, s), config.label),
                   out_path);
    } else if (command == "sweep-delay") {
        const auto spec = pp::SweepSpec::from_json_text(j.at("spec").dump());
        pp::SolverSettings tol_settings;
        tol_settings.rel_tol = t.rel_tol;
        tol_settings.abs_tol = t.abs_tol;
        std::ostringstream buf;
        pp::write_sweep_csv(pp::sweep_delay(spec, tol_settings), buf);
        write_text(buf.str(), out_path);
    } else if (command == "turning-points") {
        write_text(turning_points_csv(config_of(), grid_of()), out_path);
    } else {
        throw std::invalid_argument("unknown recipe command: " + command);
    }
    return 0;
}

}  // namespace
