#pragma once

// Report serialization.  Same plan + seed must give byte-identical output,
// so everything routes through nlohmann::json's deterministic dump (sorted
// keys, shortest round-trip doubles) or fixed-format CSV, and no wall-clock
// data is embedded.  Files are written to a temp path and renamed into
// place.

#include "ovl/montecarlo.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace ovl {

inline nlohmann::json report_to_json(const MCReport& rep) {
    nlohmann::json j;
    j["version"] = rep.version;
    j["mode"] = rep.mode;
    j["seed"] = rep.seed;
    j["trials"] = rep.trials;
    j["n"] = rep.n_base;
    j["all_pass"] = rep.all_pass;
    if (!rep.config_echo.empty()) {
        j["config"] = nlohmann::json::parse(rep.config_echo);
    }
    j["cells"] = nlohmann::json::array();
    for (const auto& c : rep.cells) {
        nlohmann::json jc;
        jc["a_stat"] = c.a_stat;
        jc["b_stat"] = c.b_stat;
        jc["k"] = c.k;
        jc["l"] = c.l;
        jc["estimate"] = c.estimate;
        jc["stderr"] = c.stderr_;
        jc["prediction"] = c.prediction;
        jc["zscore"] = c.zscore;
        jc["tolerance"] = c.tolerance;
        jc["gated"] = c.gated;
        jc["pass"] = c.pass;
        j["cells"].push_back(jc);
    }
    auto moments = [](const std::vector<MomentRow>& rows) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& m : rows) {
            nlohmann::json jm;
            jm["stat"] = m.stat;
            jm["mean"] = m.mean;
            jm["variance"] = m.variance;
            jm["skewness"] = m.skewness;
            jm["excess_kurtosis"] = m.excess_kurtosis;
            jm["se_skewness"] = m.se_skewness;
            jm["se_kurtosis"] = m.se_kurtosis;
            arr.push_back(jm);
        }
        return arr;
    };
    j["moments"] = {{"a", moments(rep.moments_a)}, {"b", moments(rep.moments_b)}};
    return j;
}

// Fixed column order: k, l, estimate, stderr, prediction, zscore.
inline std::string report_to_csv(const MCReport& rep) {
    std::string out = "k,l,estimate,stderr,prediction,zscore\n";
    char buf[256];
    for (const auto& c : rep.cells) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g,%.12g,%.12g\n", c.k, c.l, c.estimate,
                      c.stderr_, c.prediction, c.zscore);
        out += buf;
    }
    return out;
}

// Write via temp file + rename so readers never see a partial report.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

inline void write_report(const MCReport& rep, const std::string& path, const std::string& format) {
    if (format == "json")
        write_file_atomic(path, report_to_json(rep).dump(2) + "\n");
    else if (format == "csv")
        write_file_atomic(path, report_to_csv(rep));
    else
        throw std::invalid_argument("unknown report format: " + format);
}

}
