#include "pairprod/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pairprod {

namespace {

// Index range [lo, hi) of rows inside the window; rows must be k-sorted.
std::pair<std::size_t, std::size_t> window_range(const SpectrumTable& table, double k_min,
                                                 double k_max) {
    if (!(k_min < k_max)) throw std::invalid_argument("k window requires k_min < k_max");
    std::size_t lo = 0, hi = table.rows.size();
    while (lo < hi && table.rows[lo].k_parallel < k_min) ++lo;
    while (hi > lo && table.rows[hi - 1].k_parallel > k_max) --hi;
    for (std::size_t i = lo + 1; i < hi; ++i)
        if (table.rows[i].k_parallel <= table.rows[i - 1].k_parallel)
            throw std::invalid_argument("spectrum table must be strictly k-sorted");
    return {lo, hi};
}

std::vector<std::size_t> extrema_indices(const SpectrumTable& table, double k_min,
                                         double k_max, bool maxima) {
    const auto [lo, hi] = window_range(table, k_min, k_max);
    std::vector<std::size_t> out;
    if (hi - lo < 3) return out;
    double window_max = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        window_max = std::max(window_max, table.rows[i].f);
    const double floor = kPeakNoiseFloor * window_max;
    for (std::size_t i = lo + 1; i + 1 < hi; ++i) {
        const double a = table.rows[i - 1].f, b = table.rows[i].f,
                     c = table.rows[i + 1].f;
        if (maxima) {
            if (b > a && b > c && b > floor) out.push_back(i);
        } else {
            if (b < a && b < c) out.push_back(i);
        }
    }
    return out;
}

}  // namespace

std::vector<std::size_t> local_maxima_indices(const SpectrumTable& table, double k_min,
                                              double k_max) {
    return extrema_indices(table, k_min, k_max, true);
}

std::vector<std::size_t> local_minima_indices(const SpectrumTable& table, double k_min,
                                              double k_max) {
    return extrema_indices(table, k_min, k_max, false);
}

int count_local_maxima(const SpectrumTable& table, double k_min, double k_max) {
    return static_cast<int>(local_maxima_indices(table, k_min, k_max).size());
}

EnvelopeReport envelope_ratio(const SpectrumTable& oscillating,
                              const SpectrumTable& reference, double k_min, double k_max) {
    const auto peaks = local_maxima_indices(oscillating, k_min, k_max);
    if (peaks.size() < 3) {
        std::ostringstream msg;
        msg << "envelope needs >= 3 local maxima in [" << k_min << ", " << k_max
            << "], found " << peaks.size();
        throw InsufficientOscillationError(msg.str());
    }
    EnvelopeReport rep;
    rep.k_min = k_min;
    rep.k_max = k_max;
    rep.n_local_maxima = static_cast<int>(peaks.size());
    for (std::size_t i : peaks)
        rep.envelope_max = std::max(rep.envelope_max, oscillating.rows[i].f);

    const auto [lo, hi] = window_range(reference, k_min, k_max);
    for (std::size_t i = lo; i < hi; ++i)
        rep.reference_max = std::max(rep.reference_max, reference.rows[i].f);
    if (!(rep.reference_max > 0.0))
        throw std::invalid_argument("reference spectrum vanishes inside the window");
    rep.ratio = rep.envelope_max / rep.reference_max;
    return rep;
}

void SweepSpec::validate() const {
    if (template_name != "assist" && template_name != "pulse_train")
        throw std::invalid_argument("template must be 'assist' or 'pulse_train'");
    if (signs != "equal" && signs != "alternating")
        throw std::invalid_argument("signs must be 'equal' or 'alternating'");
    if (variable != "T" && variable != "N")
        throw std::invalid_argument("variable must be 'T' or 'N'");
    if (template_name == "assist" && variable != "T")
        throw std::invalid_argument("assist template only sweeps T");
    if (observable != "spectrum" && observable != "density" && observable != "f_at_k0")
        throw std::invalid_argument("observable must be spectrum, density, or f_at_k0");
    if (values.empty()) throw std::invalid_argument("values must be nonempty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("values must be strictly increasing");
    if (gauge != "vanish_at_minus_infinity" && gauge != "centered_2pulse")
        throw std::invalid_argument("unknown gauge keyword: " + gauge);
    const char* needed[] = {"E1", "w1", "E2", "w2"};
    if (template_name == "assist") {
        for (const char* p : needed)
            if (!params.count(p))
                throw std::invalid_argument(std::string("assist needs param ") + p);
    } else {
        if (!params.count("E0") || !params.count("w0"))
            throw std::invalid_argument("pulse_train needs params E0, w0");
        if (variable == "T" && !params.count("N"))
            throw std::invalid_argument("pulse_train T-sweep needs fixed param N");
        if (variable == "N" && !params.count("T"))
            throw std::invalid_argument("pulse_train N-sweep needs fixed param T");
        if (variable == "N")
            for (double v : values)
                if (v < 1.0 || v != std::floor(v))
                    throw std::invalid_argument("N values must be positive integers");
    }
    if (has_quad) quad.validate();
    if (k.k_perp < 0.0) throw std::invalid_argument("k_perp must be >= 0");
    if (observable == "spectrum") {
        if (!(grid_kpar_min < grid_kpar_max) || grid_n < 3)
            throw std::invalid_argument("spectrum sweep needs a valid k grid");
    }
}

FieldConfig SweepSpec::instantiate(double value) const {
    const GaugeMode gm = gauge == "centered_2pulse" ? GaugeMode::centered_2pulse
                                                 : GaugeMode::vanish_at_minus_infinity;
    if (template_name == "assist") {
        const double E1 = params.at("E1"), w1 = params.at("w1");
        const double E2 = params.at("E2"), w2 = params.at("w2");
        return signs == "equal" ? make_equal_sign_assist(E1, w1, E2, w2, value, gm)
                                : make_alternating_assist(E1, w1, E2, w2, value, gm);
    }
    const double E0 = params.at("E0"), w0 = params.at("w0");
    const SignMode sm = signs == "equal" ? SignMode::equal : SignMode::alternating;
    if (variable == "N")
        return make_pulse_train(static_cast<int>(value), sm, E0, w0, params.at("T"), gm);
    return make_pulse_train(static_cast<int>(params.at("N")), sm, E0, w0, value, gm);
}

SweepSpec SweepSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("sweep spec is not valid JSON: ") +
                                    e.what());
    }
    SweepSpec spec;
    try {
        spec.template_name = j.at("template").get<std::string>();
        spec.variable = j.at("variable").get<std::string>();
        spec.observable = j.at("observable").get<std::string>();
        spec.values = j.at("values").get<std::vector<double>>();
        for (const auto& [key, val] : j.at("params").items())
            spec.params[key] = val.get<double>();
        if (j.contains("signs")) spec.signs = j["signs"].get<std::string>();
        if (j.contains("gauge")) spec.gauge = j["gauge"].get<std::string>();
        if (j.contains("k")) {
            spec.k.k_parallel = j["k"].value("k_parallel", 0.0);
            spec.k.k_perp = j["k"].value("k_perp", 0.0);
        }
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            spec.grid_kpar_min = g.value("kpar_min", spec.grid_kpar_min);
            spec.grid_kpar_max = g.value("kpar_max", spec.grid_kpar_max);
            spec.grid_n = g.value("n", spec.grid_n);
            spec.grid_kperp = g.value("kperp", spec.grid_kperp);
        }
        if (j.contains("quad")) {
            const auto& q = j["quad"];
            spec.has_quad = true;
            spec.quad.kpar_min = q.value("kpar_min", spec.quad.kpar_min);
            spec.quad.kpar_max = q.value("kpar_max", spec.quad.kpar_max);
            spec.quad.n_kpar = q.value("n_kpar", spec.quad.n_kpar);
            spec.quad.kperp_max = q.value("kperp_max", spec.quad.kperp_max);
            spec.quad.n_kperp = q.value("n_kperp", spec.quad.n_kperp);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("sweep spec schema violation: ") +
                                    e.what());
    }
    spec.validate();
    return spec;
}

SweepSpec SweepSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sweep spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string SweepSpec::to_json_text() const {
    nlohmann::json j;
    j["template"] = template_name;
    j["signs"] = signs;
    j["params"] = params;
    j["gauge"] = gauge;
    j["variable"] = variable;
    j["values"] = values;
    j["observable"] = observable;
    j["k"] = {{"k_parallel", k.k_parallel}, {"k_perp", k.k_perp}};
    j["grid"] = {{"kpar_min", grid_kpar_min},
                 {"kpar_max", grid_kpar_max},
                 {"n", grid_n},
                 {"kperp", grid_kperp}};
    if (has_quad)
        j["quad"] = {{"kpar_min", quad.kpar_min},
                     {"kpar_max", quad.kpar_max},
                     {"n_kpar", quad.n_kpar},
                     {"kperp_max", quad.kperp_max},
                     {"n_kperp", quad.n_kperp}};
    return j.dump(2) + "\n";
}

namespace {

SolverSettings settings_for(const FieldConfig& config, const SolverSettings& tol) {
    SolverSettings s = SolverSettings::for_config(config);
    s.rel_tol = tol.rel_tol;
    s.abs_tol = tol.abs_tol;
    s.max_step = tol.max_step;
    return s;
}

double density_for(const FieldConfig& config, const SweepSpec& spec,
                   const SolverSettings& tol, double* err_estimate) {
    const SolverSettings s = settings_for(config, tol);
    const QuadratureSettings quad =
        spec.has_quad ? spec.quad : QuadratureSettings::auto_for(config, s);
    const DensityResult d = number_density(config, quad, s);
    if (err_estimate) *err_estimate = d.error_estimate;
    return d.n;
}

}  // namespace

SweepResult sweep_delay(const SweepSpec& spec, const SolverSettings& tol) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    result.rows.resize(spec.values.size());

    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        SweepRow& row = result.rows[i];
        row.value = spec.values[i];
        try {
            const FieldConfig config = spec.instantiate(row.value);
            const SolverSettings s = settings_for(config, tol);
            if (spec.observable == "f_at_k0") {
                row.observable = solve_mode(config, spec.k, s).f;
            } else if (spec.observable == "density") {
                row.observable =
                    density_for(config, spec, tol, &row.density_error_estimate);
            } else {
                const auto grid = uniform_kpar_grid(spec.grid_kpar_min, spec.grid_kpar_max,
                                                    spec.grid_n, spec.grid_kperp);
                row.spectrum = spectrum(config, grid, s);
                for (const auto& r : row.spectrum.rows)
                    row.observable = std::max(row.observable, r.f);
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    }

    // Fig-3-style reference lines: each color of the two-color field alone.
    if (spec.template_name == "assist" && spec.observable == "density") {
        try {
            const FieldConfig c1 = make_single_sauter(spec.params.at("E1"),
                                                      spec.params.at("w1"));
            const FieldConfig c2 = make_single_sauter(spec.params.at("E2"),
                                                      spec.params.at("w2"));
            result.n_ref_1 = density_for(c1, spec, tol, nullptr);
            result.n_ref_2 = density_for(c2, spec, tol, nullptr);
            result.n_ref_sum = result.n_ref_1 + result.n_ref_2;
            result.has_references = true;
        } catch (const std::exception&) {
            result.has_references = false;
        }
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "value,observable,error_estimate,status";
    if (result.has_references) out << ",n_ref_1,n_ref_2,n_ref_sum";
    out << "\n";
    for (const auto& row : result.rows) {
        std::string status = row.ok ? "ok" : "failed:" + row.error;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        out << format_float(row.value) << ',' << format_float(row.observable) << ','
            << format_float(row.density_error_estimate) << ',' << status;
        if (result.has_references)
            out << ',' << format_float(result.n_ref_1) << ','
                << format_float(result.n_ref_2) << ',' << format_float(result.n_ref_sum);
        out << "\n";
    }
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    write_sweep_csv(result, out);
}

}  // namespace pairprod
