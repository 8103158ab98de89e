// Command-line frontend for the armasin library. Exit codes: 0 success,
// 2 input/usage error, 3 internal computation failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <armasin/armasin.hpp>

namespace fs = std::filesystem;
using armasin::io::json;

namespace {

/// All output files go through a temp file + rename so a failing command
/// never leaves a partial artifact behind.
class OutputSet {
public:
    std::ostringstream& add(const std::string& path) {
        entries_.emplace_back(path, std::ostringstream());
        return entries_.back().second;
    }

    void commit() {
        for (auto& [path, buf] : entries_) {
            const fs::path target(path);
            const fs::path tmp = target.string() + ".tmp";
            if (target.has_parent_path() && !target.parent_path().empty())
                fs::create_directories(target.parent_path());
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw armasin::invalid_input("cannot write: " + tmp.string());
                out << buf.str();
            }
            fs::rename(tmp, target);
        }
    }

private:
    std::vector<std::pair<std::string, std::ostringstream>> entries_;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw armasin::invalid_input("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw armasin::invalid_input(path + ": " + e.what());
    }
    return j;
}

std::optional<std::uint64_t> env_seed() {
    if (const char* v = std::getenv("ARMASIN_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(v));
        } catch (const std::exception&) {
            throw armasin::invalid_input("ARMASIN_SEED is not an integer");
        }
    }
    return std::nullopt;
}

void write_response_csv(std::ostringstream& out, const armasin::TransferFunction& tf,
                        std::size_t grid) {
    out << "w,magnitude_db,phase_rad\n";
    for (std::size_t i = 0; i < grid; ++i) {
        const double w = std::numbers::pi * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(grid);
        const auto h = armasin::freq_response(tf, w);
        out << armasin::io::format_double(w) << ','
            << armasin::io::format_double(20.0 * std::log10(std::abs(h))) << ','
            << armasin::io::format_double(std::arg(h)) << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral time-series regularization and forecasting toolkit"};
    app.require_subcommand(1);

    // ---- spectrum ----
    auto* sp = app.add_subcommand("spectrum", "DFT of a series CSV");
    std::string sp_in, sp_out, sp_peaks_out;
    double sp_factor = 0.0;
    sp->add_option("--input,-i", sp_in, "series CSV (time,value)")->required();
    sp->add_option("--output,-o", sp_out, "spectrum CSV (k,w,magnitude,phase_rad)")
        ->required();
    sp->add_option("--peaks", sp_factor,
                   "detect line spectra with this threshold factor (> 1)");
    sp->add_option("--peaks-output", sp_peaks_out,
                   "peak list CSV (default: stdout)");

    // ---- design ----
    auto* de = app.add_subcommand("design", "Elliptic filter design from a spec JSON");
    std::string de_spec, de_out, de_resp;
    std::size_t de_grid = 512;
    de->add_option("--spec,-s", de_spec, "filter spec JSON")->required();
    de->add_option("--output,-o", de_out, "filter JSON {b, a}")->required();
    de->add_option("--response", de_resp, "response CSV (w,magnitude_db,phase_rad)");
    de->add_option("--grid", de_grid, "response grid size")->check(CLI::PositiveNumber);

    // ---- filter / filtfilt ----
    auto* fi = app.add_subcommand("filter", "Single-pass causal filtering");
    auto* ff = app.add_subcommand("filtfilt", "Zero-phase forward-backward filtering");
    std::string fi_filter, fi_in, fi_out, ff_filter, ff_in, ff_out;
    bool ff_pad = false;
    fi->add_option("--filter,-f", fi_filter, "filter JSON")->required();
    fi->add_option("--input,-i", fi_in, "series CSV")->required();
    fi->add_option("--output,-o", fi_out, "series CSV")->required();
    ff->add_option("--filter,-f", ff_filter, "filter JSON")->required();
    ff->add_option("--input,-i", ff_in, "series CSV")->required();
    ff->add_option("--output,-o", ff_out, "series CSV")->required();
    ff->add_flag("--reflect-padding", ff_pad, "odd-reflect the edges before filtering");

    // ---- simulate ----
    auto* si = app.add_subcommand("simulate", "Simulate a seeded ARMA series");
    std::string si_model, si_out;
    std::size_t si_n = 0;
    std::uint64_t si_seed = 0;
    double si_ts = 1.0;
    si->add_option("--model,-m", si_model, "model JSON")->required();
    si->add_option("--n,-n", si_n, "sample count")->required()->check(CLI::PositiveNumber);
    si->add_option("--seed", si_seed, "noise seed (env ARMASIN_SEED overrides)");
    si->add_option("--ts", si_ts, "sampling period")->check(CLI::PositiveNumber);
    si->add_option("--output,-o", si_out, "series CSV")->required();

    // ---- fit ----
    auto* ft = app.add_subcommand("fit", "Fit an ARMA model to a series");
    std::string ft_in, ft_out;
    std::size_t ft_p = 0, ft_q = 0, ft_pmax = 0, ft_qmax = 0;
    bool ft_auto = false;
    ft->add_option("--input,-i", ft_in, "series CSV")->required();
    ft->add_option("--p", ft_p, "AR order");
    ft->add_option("--q", ft_q, "MA order");
    ft->add_flag("--auto", ft_auto, "select orders by AIC");
    ft->add_option("--p-max", ft_pmax, "AIC grid AR bound (with --auto)");
    ft->add_option("--q-max", ft_qmax, "AIC grid MA bound (with --auto)");
    ft->add_option("--output,-o", ft_out, "model JSON")->required();

    // ---- forecast ----
    auto* fo = app.add_subcommand("forecast", "Forecast from a fitted model");
    std::string fo_model, fo_in, fo_out, fo_json;
    std::size_t fo_h = 10;
    fo->add_option("--model,-m", fo_model, "model JSON")->required();
    fo->add_option("--input,-i", fo_in, "history series CSV")->required();
    fo->add_option("--horizon", fo_h, "steps ahead")->check(CLI::PositiveNumber);
    fo->add_option("--output,-o", fo_out, "forecast CSV (step,value)")->required();

    // ---- armasin ----
    auto* as = app.add_subcommand("armasin", "Full regularize-and-forecast pipeline");
    std::string as_in, as_json, as_csv, as_mode = "auto", as_spec, as_pred = "auto";
    std::size_t as_h = 10;
    int as_p = -1, as_q = -1;
    double as_window = 1.0, as_thresh = 8.0;
    std::size_t as_polydeg = 1;
    as->add_option("--input,-i", as_in, "series CSV")->required();
    as->add_option("--horizon", as_h, "steps ahead")->check(CLI::PositiveNumber);
    as->add_option("--mode", as_mode,
                   "auto|highpass|bandstop|direct (filter modes need --spec)");
    as->add_option("--spec", as_spec, "filter spec JSON (highpass/bandstop modes)");
    as->add_option("--predictable", as_pred, "auto|sinusoids|polynomial|none");
    as->add_option("--poly-degree", as_polydeg, "polynomial degree (<= 2)");
    as->add_option("--window", as_window, "tail fraction for the predictable fit");
    as->add_option("--threshold", as_thresh, "peak threshold factor (auto mode)");
    as->add_option("--p", as_p, "AR order (omit both orders for AIC selection)");
    as->add_option("--q", as_q, "MA order");
    as->add_option("--output,-o", as_json, "forecast report JSON")->required();
    as->add_option("--csv", as_csv, "combined forecast CSV (step,value)");

    // ---- decompose ----
    auto* dc = app.add_subcommand("decompose", "Band decomposition into components");
    std::string dc_in, dc_prefix, dc_bands;
    dc->add_option("--input,-i", dc_in, "series CSV")->required();
    dc->add_option("--bands", dc_bands,
                   "comma-separated lo:hi pairs in rad/sample, e.g. 0:0.3,0.8:1.2")
        ->required();
    dc->add_option("--output-prefix,-o", dc_prefix,
                   "writes <prefix>_<index>.csv plus <prefix>_residual.csv")
        ->required();

    // ---- bench ----
    auto* be = app.add_subcommand("bench", "Monte-Carlo scenario benchmark");
    std::string be_name, be_prefix;
    std::size_t be_runs = 0;
    std::uint64_t be_seed = 0;
    bool be_seed_set = false;
    be->add_option("scenario", be_name, "case1|case2|case3|case4|control")->required();
    be->add_option("--runs", be_runs, "override mc_runs");
    be->add_option("--seed", be_seed, "override base_seed (env ARMASIN_SEED wins)")
        ->each([&](const std::string&) { be_seed_set = true; });
    be->add_option("--output-prefix,-o", be_prefix,
                   "writes <prefix>.csv and <prefix>.json");

    CLI11_PARSE(app, argc, argv);

    try {
        OutputSet outputs;

        if (sp->parsed()) {
            const armasin::Series x = armasin::io::read_series_csv(sp_in);
            const armasin::Spectrum s = armasin::dft(x);
            armasin::io::write_spectrum_csv(outputs.add(sp_out), s);
            if (sp_factor > 0.0) {
                const auto peaks = armasin::detect_line_spectra(s, sp_factor);
                std::ostringstream pk;
                pk << "k,w,magnitude\n";
                for (std::size_t k : peaks)
                    pk << k << ',' << armasin::io::format_double(s.bin_frequency(k))
                       << ',' << armasin::io::format_double(std::abs(s.bins[k]))
                       << '\n';
                if (sp_peaks_out.empty())
                    std::cout << pk.str();
                else
                    outputs.add(sp_peaks_out) << pk.str();
            }
        } else if (de->parsed()) {
            const armasin::FilterSpec spec =
                armasin::io::filter_spec_from_json(load_json(de_spec));
            const armasin::TransferFunction tf = armasin::design_elliptic(spec);
            outputs.add(de_out) << armasin::io::filter_to_json(tf).dump(2) << '\n';
            if (!de_resp.empty())
                write_response_csv(outputs.add(de_resp), tf, de_grid);
        } else if (fi->parsed()) {
            const armasin::TransferFunction tf =
                armasin::io::filter_from_json(load_json(fi_filter));
            const armasin::Series x = armasin::io::read_series_csv(fi_in);
            armasin::io::write_series_csv(outputs.add(fi_out), armasin::apply(tf, x));
        } else if (ff->parsed()) {
            const armasin::TransferFunction tf =
                armasin::io::filter_from_json(load_json(ff_filter));
            const armasin::Series x = armasin::io::read_series_csv(ff_in);
            armasin::io::write_series_csv(outputs.add(ff_out),
                                          armasin::zero_phase_filter(tf, x, ff_pad));
        } else if (si->parsed()) {
            const armasin::ArmaModel model =
                armasin::io::model_from_json(load_json(si_model));
            const std::uint64_t seed = env_seed().value_or(si_seed);
            const armasin::Series x =
                armasin::simulate(model, si_n, armasin::NoiseSource(seed), si_ts);
            armasin::io::write_series_csv(outputs.add(si_out), x);
        } else if (ft->parsed()) {
            const armasin::Series x = armasin::io::read_series_csv(ft_in);
            std::size_t p = ft_p, q = ft_q;
            if (ft_auto) {
                const auto sel = armasin::select_order(x, ft_pmax, ft_qmax);
                p = sel.p;
                q = sel.q;
            }
            const armasin::ArmaModel model = armasin::fit(x, p, q);
            outputs.add(ft_out) << armasin::io::model_to_json(model).dump(2) << '\n';
        } else if (fo->parsed()) {
            const armasin::ArmaModel model =
                armasin::io::model_from_json(load_json(fo_model));
            const armasin::Series x = armasin::io::read_series_csv(fo_in);
            const armasin::Series f = armasin::forecast(model, x, fo_h);
            armasin::io::write_forecast_csv(outputs.add(fo_out), f);
        } else if (as->parsed()) {
            const armasin::Series x = armasin::io::read_series_csv(as_in);
            armasin::RegularizationPlan plan;
            plan.peak_threshold_factor = as_thresh;
            plan.fit_window_fraction = as_window;
            plan.polynomial_degree = as_polydeg;
            if (as_mode == "auto") {
                plan.mode = armasin::RegularizationMode::automatic;
            } else if (as_mode == "highpass") {
                plan.mode = armasin::RegularizationMode::highpass;
                if (as_spec.empty())
                    throw armasin::invalid_input("highpass mode needs --spec");
                plan.highpass_spec =
                    armasin::io::filter_spec_from_json(load_json(as_spec));
            } else if (as_mode == "bandstop") {
                plan.mode = armasin::RegularizationMode::bandstop;
                if (as_spec.empty())
                    throw armasin::invalid_input("bandstop mode needs --spec");
                const json j = load_json(as_spec);
                if (j.is_array())
                    for (const auto& e : j)
                        plan.bandstop_specs.push_back(
                            armasin::io::filter_spec_from_json(e));
                else
                    plan.bandstop_specs.push_back(
                        armasin::io::filter_spec_from_json(j));
            } else if (as_mode == "direct") {
                plan.mode = armasin::RegularizationMode::direct;
            } else {
                throw armasin::invalid_input("unknown mode: " + as_mode);
            }
            if (as_pred == "sinusoids")
                plan.predictable = armasin::PredictableForecast::sinusoids;
            else if (as_pred == "polynomial")
                plan.predictable = armasin::PredictableForecast::polynomial;
            else if (as_pred == "none")
                plan.predictable = armasin::PredictableForecast::none;
            else if (as_pred == "auto")
                plan.predictable =
                    (plan.mode == armasin::RegularizationMode::highpass)
                        ? armasin::PredictableForecast::polynomial
                        : (plan.mode == armasin::RegularizationMode::automatic
                               ? armasin::PredictableForecast::none
                               : armasin::PredictableForecast::sinusoids);
            else
                throw armasin::invalid_input("unknown --predictable: " + as_pred);

            std::optional<std::size_t> p, q;
            if (as_p >= 0 && as_q >= 0) {
                p = static_cast<std::size_t>(as_p);
                q = static_cast<std::size_t>(as_q);
            }
            const armasin::ForecastReport rep =
                armasin::arma_sin_forecast(x, plan, p, q, as_h);
            json prov{{"mode", as_mode},
                      {"predictable", as_pred},
                      {"p", rep.fitted_model.p()},
                      {"q", rep.fitted_model.q()},
                      {"horizon", as_h}};
            outputs.add(as_json)
                << armasin::io::forecast_report_to_json(rep, prov).dump(2) << '\n';
            if (!as_csv.empty())
                armasin::io::write_forecast_csv(outputs.add(as_csv), rep.combined);
        } else if (dc->parsed()) {
            const armasin::Series x = armasin::io::read_series_csv(dc_in);
            std::vector<std::pair<double, double>> bands;
            std::stringstream ss(dc_bands);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw armasin::invalid_input("bad band token: " + tok);
                bands.emplace_back(std::stod(tok.substr(0, colon)),
                                   std::stod(tok.substr(colon + 1)));
            }
            const auto comps = armasin::decompose(x, bands);
            for (std::size_t i = 0; i < comps.size(); ++i) {
                const std::string suffix =
                    (i + 1 == comps.size()) ? "residual" : std::to_string(i);
                armasin::io::write_series_csv(
                    outputs.add(dc_prefix + "_" + suffix + ".csv"), comps[i]);
            }
        } else if (be->parsed()) {
            armasin::ScenarioConfig cfg;
            bool found = false;
            for (const auto& c : armasin::builtin_scenarios())
                if (c.name == be_name) {
                    cfg = c;
                    found = true;
                }
            if (be_name == "control") {
                cfg = armasin::control_scenario();
                found = true;
            }
            if (!found)
                throw armasin::invalid_input("unknown scenario: " + be_name);
            if (be_runs > 0) cfg.mc_runs = be_runs;
            if (be_seed_set) cfg.base_seed = be_seed;
            if (const auto s = env_seed()) cfg.base_seed = *s;
            const armasin::BenchReport rep = armasin::run_scenario(cfg);
            std::cout << armasin::io::bench_report_table(rep);
            if (!be_prefix.empty()) {
                armasin::io::write_bench_csv(outputs.add(be_prefix + ".csv"), rep);
                outputs.add(be_prefix + ".json")
                    << armasin::io::bench_report_to_json(rep).dump(2) << '\n';
            }
        }

        outputs.commit();
    } catch (const armasin::invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const armasin::computation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
