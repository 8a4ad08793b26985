// Command-line front end: identity verification, Monte Carlo runs,
// prediction tables, and Chebyshev coefficient dumps.

#include "ovl/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

int fail_config(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::optional<nlohmann::json> load_json(const std::string& path, std::string& err) {
    std::ifstream is(path);
    if (!is) {
        err = "cannot open config file '" + path + "'";
        return std::nullopt;
    }
    std::stringstream ss;
    ss << is.rdbuf();
    try {
        return nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        err = std::string("invalid JSON in '") + path + "': " + e.what();
        return std::nullopt;
    }
}

struct Overrides {
    std::optional<uint64_t> seed;
    std::optional<long long> trials;
    std::optional<int> n;
    std::optional<int> threads;
    std::string out, format;

    void apply(nlohmann::json& doc) const {
        if (seed) doc["seed"] = *seed;
        if (trials) doc["trials"] = *trials;
        if (n) doc["n"] = *n;
        if (threads) doc["threads"] = *threads;
        if (!out.empty()) doc["out"] = out;
        if (!format.empty()) doc["format"] = format;
    }
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--seed", ov.seed, "Override the seed");
    cmd->add_option("--trials", ov.trials, "Override the trial count");
    cmd->add_option("--n", ov.n, "Override the base size");
    cmd->add_option("--threads", ov.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--out", ov.out, "Report output path");
    cmd->add_option("--format", ov.format, "Report format: json or csv");
}

int run_from_doc(nlohmann::json doc, const Overrides& ov, const std::string& forced_mode) {
    ov.apply(doc);
    if (!forced_mode.empty()) doc["mode"] = forced_mode;
    try {
        const ovl::ExperimentConfig cfg = ovl::parse_config(doc);
        return ovl::run(cfg);
    } catch (const std::invalid_argument& e) {
        return fail_config(e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overlapping random-matrix statistics toolkit"};
    app.require_subcommand(1);

    std::string config_path, fn_id, coeff_out;
    int coeff_order = -1, coeff_nodes = 0;
    Overrides ov;

    CLI::App* verify = app.add_subcommand("verify-identities", "Exact walk-sum identity suite");
    verify->add_option("--config", config_path, "JSON config (identities mode)");
    verify->add_option("--out", ov.out, "Write the case list as JSON");

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo covariance run");
    mc->add_option("--config", config_path, "JSON config (a *-mc mode)")->required();
    add_override_flags(mc, ov);

    CLI::App* predict = app.add_subcommand("predict", "Prediction table for a config");
    predict->add_option("--config", config_path, "JSON config")->required();
    add_override_flags(predict, ov);

    CLI::App* coeffs = app.add_subcommand("coeffs", "Chebyshev series of a registry function");
    coeffs->add_option("--fn", fn_id, "Function id: x3, exp, abs3")->required();
    coeffs->add_option("--order", coeff_order, "Fixed truncation order (default: adaptive)");
    coeffs->add_option("--nodes", coeff_nodes, "Quadrature nodes (default: 4*order)");
    coeffs->add_option("--out", coeff_out, "Write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) {
        nlohmann::json doc;
        if (!config_path.empty()) {
            std::string err;
            auto loaded = load_json(config_path, err);
            if (!loaded) return fail_config(err);
            doc = *loaded;
        }
        doc["mode"] = "identities";
        if (!ov.out.empty()) doc["out"] = ov.out;
        return run_from_doc(doc, Overrides{}, "identities");
    }

    if (mc->parsed() || predict->parsed()) {
        std::string err;
        auto loaded = load_json(config_path, err);
        if (!loaded) return fail_config(err);
        return run_from_doc(*loaded, ov, predict->parsed() ? "predict" : "");
    }

    // coeffs
    try {
        ovl::ChebSeries s;
        if (coeff_order >= 0) {
            const int nodes = coeff_nodes > 0 ? coeff_nodes : 4 * std::max(1, coeff_order);
            s = ovl::cheb_coefficients(ovl::smooth_function(fn_id).f, coeff_order, nodes);
        } else {
            s = ovl::smooth_series(fn_id);
        }
        nlohmann::json j;
        j["fn"] = fn_id;
        j["coefficients"] = s.c;
        j["tail_weight"] = s.tail_weight;
        j["version"] = ovl::library_version;
        if (coeff_out.empty())
            std::cout << j.dump(2) << "\n";
        else
            ovl::write_file_atomic(coeff_out, j.dump(2) + "\n");
        return 0;
    } catch (const std::invalid_argument& e) {
        return fail_config(e.what());
    }
}
