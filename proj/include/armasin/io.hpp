#ifndef ARMASIN_IO_HPP
#define ARMASIN_IO_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "armasin/arma.hpp"
#include "armasin/bench.hpp"
#include "armasin/errors.hpp"
#include "armasin/filter_design.hpp"
#include "armasin/pipeline.hpp"
#include "armasin/series.hpp"
#include "armasin/spectrum.hpp"
#include "armasin/transfer_function.hpp"

namespace armasin::io {

using nlohmann::json;

// ---- CSV: Series `time,value` ---------------------------------------------

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline Series parse_series_csv(std::istream& in) {
    std::string line;
    std::vector<double> times, values;
    bool header_checked = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_checked) {
            header_checked = true;
            if (line.find("time") != std::string::npos) continue;  // header row
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw invalid_input("series CSV line " + std::to_string(lineno) +
                                ": expected `time,value`");
        try {
            const double t = std::stod(line.substr(0, comma));
            const double v = std::stod(line.substr(comma + 1));
            times.push_back(t);
            values.push_back(v);
        } catch (const std::exception&) {
            throw invalid_input("series CSV line " + std::to_string(lineno) +
                                ": non-numeric field");
        }
    }
    if (values.empty())
        throw invalid_input("series CSV: no data rows");
    double ts = 1.0;
    if (times.size() >= 2) {
        ts = times[1] - times[0];
        if (!(ts > 0.0))
            throw invalid_input("series CSV: time must be strictly increasing");
        for (std::size_t i = 2; i < times.size(); ++i) {
            const double dt = times[i] - times[i - 1];
            if (std::abs(dt - ts) > 1e-9 * std::max(1.0, std::abs(ts)))
                throw invalid_input("series CSV: non-uniform time step at row " +
                                    std::to_string(i + 1));
        }
    }
    return Series(std::move(values), ts);
}

inline Series read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw invalid_input("cannot open series CSV: " + path);
    return parse_series_csv(in);
}

inline void write_series_csv(std::ostream& out, const Series& x,
                             double t_start = 0.0) {
    out << "time,value\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_double(t_start + x.sampling_period * static_cast<double>(i))
            << ',' << format_double(x.values[i]) << '\n';
}

// ---- CSV: Spectrum `k,w,magnitude,phase_rad` -------------------------------

inline void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "k,w,magnitude,phase_rad\n";
    for (std::size_t k = 0; k < s.size(); ++k)
        out << k << ',' << format_double(s.bin_frequency(k)) << ','
            << format_double(std::abs(s.bins[k])) << ','
            << format_double(std::arg(s.bins[k])) << '\n';
}

// ---- JSON: filter {"b": [...], "a": [...]} ---------------------------------

inline json filter_to_json(const TransferFunction& tf) {
    return json{{"b", tf.b}, {"a", tf.a}};
}

inline TransferFunction filter_from_json(const json& j) {
    if (!j.contains("b") || !j.contains("a"))
        throw invalid_input("filter JSON: needs `b` and `a` arrays");
    try {
        return TransferFunction(j.at("b").get<std::vector<double>>(),
                                j.at("a").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw invalid_input(std::string("filter JSON: ") + e.what());
    }
}

// ---- JSON: FilterSpec ------------------------------------------------------

inline json filter_spec_to_json(const FilterSpec& s) {
    return json{{"band", to_string(s.band)},
                {"passband_edges", s.passband_edges},
                {"stopband_edges", s.stopband_edges},
                {"passband_ripple_db", s.passband_ripple_db},
                {"stopband_attenuation_db", s.stopband_attenuation_db}};
}

inline BandKind band_from_string(const std::string& s) {
    if (s == "lowpass") return BandKind::lowpass;
    if (s == "highpass") return BandKind::highpass;
    if (s == "bandpass") return BandKind::bandpass;
    if (s == "bandstop") return BandKind::bandstop;
    throw invalid_input("unknown band kind: " + s);
}

inline FilterSpec filter_spec_from_json(const json& j) {
    FilterSpec s;
    try {
        s.band = band_from_string(j.at("band").get<std::string>());
        s.passband_edges = j.at("passband_edges").get<std::vector<double>>();
        s.stopband_edges = j.at("stopband_edges").get<std::vector<double>>();
        s.passband_ripple_db = j.at("passband_ripple_db").get<double>();
        s.stopband_attenuation_db = j.at("stopband_attenuation_db").get<double>();
    } catch (const json::exception& e) {
        throw invalid_input(std::string("filter spec JSON: ") + e.what());
    }
    s.validate();
    return s;
}

// ---- JSON: ArmaModel -------------------------------------------------------

inline json model_to_json(const ArmaModel& m) {
    return json{{"ar", m.ar},
                {"ma", m.ma},
                {"noise_variance", m.noise_variance},
                {"mean", m.mean}};
}

inline ArmaModel model_from_json(const json& j) {
    ArmaModel m;
    try {
        m.ar = j.at("ar").get<std::vector<double>>();
        m.ma = j.at("ma").get<std::vector<double>>();
        m.noise_variance = j.at("noise_variance").get<double>();
        m.mean = j.value("mean", 0.0);
    } catch (const json::exception& e) {
        throw invalid_input(std::string("model JSON: ") + e.what());
    }
    if (m.ar.empty() || m.ar[0] == 0.0)
        throw invalid_input("model JSON: ar[0] must be nonzero");
    const double a0 = m.ar[0];
    for (double& v : m.ar) v /= a0;
    for (double& v : m.ma) v /= a0;
    m.validate();
    return m;
}

// ---- JSON: ForecastReport --------------------------------------------------

inline json forecast_report_to_json(const ForecastReport& rep, json provenance) {
    json comps = json::array();
    for (const auto& c : rep.detected_components)
        comps.push_back({{"amplitude", c.amplitude},
                         {"frequency", c.frequency},
                         {"phase", c.phase}});
    return json{{"regular_forecast", rep.regular_forecast.values},
                {"predictable_forecast", rep.predictable_forecast.values},
                {"combined", rep.combined.values},
                {"regularized_history", rep.regularized_history.values},
                {"fitted_model", model_to_json(rep.fitted_model)},
                {"detected_components", comps},
                {"component_offset", rep.component_offset},
                {"passthrough", rep.passthrough},
                {"provenance", std::move(provenance)}};
}

inline void write_forecast_csv(std::ostream& out, const Series& combined) {
    out << "step,value\n";
    for (std::size_t i = 0; i < combined.size(); ++i)
        out << (i + 1) << ',' << format_double(combined.values[i]) << '\n';
}

// ---- bench report ----------------------------------------------------------

inline void write_bench_csv(std::ostream& out, const BenchReport& rep) {
    out << "run,method,mse,status\n";
    for (const auto& r : rep.runs) {
        const std::string status = r.ok ? "ok" : "failed";
        out << r.run << ",armasin,"
            << (r.ok ? format_double(r.armasin_mse) : std::string("nan")) << ','
            << status << '\n';
        out << r.run << ",baseline,"
            << (r.ok ? format_double(r.baseline_mse) : std::string("nan")) << ','
            << status << '\n';
    }
}

inline json bench_report_to_json(const BenchReport& rep) {
    json runs = json::array();
    for (const auto& r : rep.runs)
        runs.push_back({{"run", r.run},
                        {"seed", r.seed},
                        {"armasin_mse", r.armasin_mse},
                        {"baseline_mse", r.baseline_mse},
                        {"ok", r.ok},
                        {"error", r.error}});
    return json{{"scenario", rep.scenario},
                {"armasin_mean_mse", rep.armasin_mean},
                {"armasin_stderr", rep.armasin_stderr},
                {"baseline_mean_mse", rep.baseline_mean},
                {"baseline_stderr", rep.baseline_stderr},
                {"ratio_baseline_over_armasin", rep.ratio},
                {"failures", rep.failures},
                {"seconds_per_run", rep.seconds_per_run},
                {"runs", runs}};
}

inline std::string bench_report_table(const BenchReport& rep) {
    std::ostringstream os;
    os << "scenario: " << rep.scenario << '\n';
    os << std::left << std::setw(12) << "method" << std::right << std::setw(14)
       << "mean MSE" << std::setw(14) << "std error" << '\n';
    os << std::left << std::setw(12) << "ARMA-SIN" << std::right
       << std::setw(14) << std::setprecision(6) << std::fixed << rep.armasin_mean
       << std::setw(14) << rep.armasin_stderr << '\n';
    os << std::left << std::setw(12) << "S-ARIMA" << std::right << std::setw(14)
       << rep.baseline_mean << std::setw(14) << rep.baseline_stderr << '\n';
    os << "ratio (S-ARIMA / ARMA-SIN): " << std::setprecision(4) << rep.ratio
       << "   failed runs: " << rep.failures << "/" << rep.runs.size() << '\n';
    return os.str();
}

} // namespace armasin::io

#endif
