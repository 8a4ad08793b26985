#pragma once

// JSON experiment configuration.
//
// Top-level keys: mode, n, trials, seed, threads, out, format, gate, model,
// statistics, predictor, identities.  Modes: identities, wigner-mc,
// covariance-mc, c1-mc, predict.  Size fields in "model" are ratios of the
// base size n; concrete window sizes are round(ratio * n).

#include "ovl/graph.hpp"
#include "ovl/montecarlo.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ovl {

struct IdentitiesParams {
    int kmax = 6;
    std::vector<int> complete_n = {3, 4, 5, 6, 7};
    std::vector<int> cycle_n = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::vector<std::pair<int, int>> bipartite;  // (m, n) with n <= m
    std::vector<WeightKind> weights = {WeightKind::AllOnes, WeightKind::Sign,
                                       WeightKind::UnitCircle};
    uint64_t seed = 2024;
    // Per-check cap on enumeration tree nodes; bipartite pairs whose k=6
    // trees outgrow it get their k range trimmed.  The default admits the
    // largest default case (the 5x5 pair at k=6, ~1e8 nodes).
    long long node_budget = 200000000;

    static IdentitiesParams defaults() {
        IdentitiesParams p;
        for (int m = 2; m <= 5; ++m)
            for (int n = 2; n <= m; ++n) p.bipartite.emplace_back(m, n);
        return p;
    }
};

struct ExperimentConfig {
    std::string mode;
    RunPlan plan;
    IdentitiesParams identities = IdentitiesParams::defaults();
    std::string out;
    std::string format = "json";
    std::string echo;  // canonical dump of the effective config
};

namespace detail {

inline EntryDistribution parse_dist(const nlohmann::json& j, const char* what) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "rademacher") return EntryDistribution::rademacher();
        if (s == "gaussian") return EntryDistribution::gaussian();
        if (s == "unit-circle") return EntryDistribution::unit_circle();
        if (s == "uniform") return EntryDistribution::centered_uniform();
        throw std::invalid_argument(std::string(what) + ": unknown distribution '" + s + "'");
    }
    if (j.is_object()) {
        const std::string kind = j.value("kind", "");
        if (kind == "two-point")
            return EntryDistribution::two_point(j.at("p").get<double>(), j.at("xp").get<double>(),
                                               j.at("xm").get<double>());
        if (kind == "gaussian") return EntryDistribution::gaussian();
        if (kind == "rademacher") return EntryDistribution::rademacher();
        if (kind == "uniform") return EntryDistribution::centered_uniform();
        throw std::invalid_argument(std::string(what) + ": unknown distribution kind '" + kind + "'");
    }
    throw std::invalid_argument(std::string(what) + ": expected string or object");
}

inline Norm parse_norm(const nlohmann::json& model) {
    const std::string s = model.value("normalization", "standard");
    if (s == "standard") return Norm::Standard;
    if (s == "shifted") return Norm::Shifted;
    throw std::invalid_argument("model.normalization must be 'standard' or 'shifted'");
}

inline int scaled_size(double ratio, int n, const char* what) {
    if (!(ratio > 0)) throw std::invalid_argument(std::string(what) + " ratio must be positive");
    return static_cast<int>(std::lround(ratio * n));
}

inline std::vector<int> parse_orders(const nlohmann::json& stats, const char* key) {
    const nlohmann::json& j = stats.contains(key) ? stats.at(key) : stats.at("k");
    std::vector<int> ks = j.get<std::vector<int>>();
    if (ks.empty()) throw std::invalid_argument("statistics: empty order list");
    return ks;
}

inline Predictor parse_predictor(const std::string& s) {
    if (s == "wigner") return Predictor::WignerGeneral;
    if (s == "simple-wigner") return Predictor::WignerSimple;
    if (s == "cov") return Predictor::CovGeneral;
    if (s == "simple-cov") return Predictor::CovSimple;
    if (s == "monomial") return Predictor::Monomial;
    if (s == "c1") return Predictor::C1;
    throw std::invalid_argument("unknown predictor '" + s + "'");
}

}  // namespace detail

// Parse and validate a config document; throws std::invalid_argument on any
// problem.  The effective (post-override) form is re-serialized into
// cfg.echo for embedding in reports.
inline ExperimentConfig parse_config(const nlohmann::json& doc) {
    ExperimentConfig cfg;
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    cfg.mode = doc.value("mode", "");
    const std::set<std::string> modes = {"identities", "wigner-mc", "covariance-mc", "c1-mc",
                                         "predict"};
    if (!modes.count(cfg.mode)) throw std::invalid_argument("config: unknown mode '" + cfg.mode + "'");

    cfg.out = doc.value("out", "");
    cfg.format = doc.value("format", "json");
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument("config: format must be 'json' or 'csv'");

    if (cfg.mode == "identities") {
        if (doc.contains("identities")) {
            const auto& j = doc.at("identities");
            cfg.identities.kmax = j.value("kmax", 6);
            if (cfg.identities.kmax < 1 || cfg.identities.kmax > 12)
                throw std::invalid_argument("identities.kmax must be in 1..12");
            if (j.contains("complete_n"))
                cfg.identities.complete_n = j.at("complete_n").get<std::vector<int>>();
            if (j.contains("cycle_n"))
                cfg.identities.cycle_n = j.at("cycle_n").get<std::vector<int>>();
            if (j.contains("bipartite")) {
                cfg.identities.bipartite.clear();
                for (const auto& mn : j.at("bipartite")) {
                    if (!mn.is_array() || mn.size() != 2)
                        throw std::invalid_argument("identities.bipartite entries must be [m,n]");
                    cfg.identities.bipartite.emplace_back(mn[0].get<int>(), mn[1].get<int>());
                }
            }
            if (j.contains("weights")) {
                cfg.identities.weights.clear();
                for (const auto& w : j.at("weights")) {
                    const std::string s = w.get<std::string>();
                    if (s == "all-ones") cfg.identities.weights.push_back(WeightKind::AllOnes);
                    else if (s == "sign") cfg.identities.weights.push_back(WeightKind::Sign);
                    else if (s == "unit-circle") cfg.identities.weights.push_back(WeightKind::UnitCircle);
                    else throw std::invalid_argument("identities.weights: unknown '" + s + "'");
                }
            }
            cfg.identities.seed = j.value("seed", cfg.identities.seed);
            cfg.identities.node_budget = j.value("node_budget", cfg.identities.node_budget);
            if (cfg.identities.node_budget < 1000)
                throw std::invalid_argument("identities.node_budget must be >= 1000");
        }
        cfg.echo = doc.dump();
        return cfg;
    }

    RunPlan& plan = cfg.plan;
    plan.n_base = doc.value("n", 0);
    if (plan.n_base < 8) throw std::invalid_argument("config: n must be >= 8");
    plan.trials = doc.value("trials", 0ll);
    plan.seed = doc.value("seed", 0ull);
    plan.threads = doc.value("threads", 0);
    plan.gate = doc.value("gate", true);

    if (!doc.contains("model")) throw std::invalid_argument("config: missing model");
    const auto& model = doc.at("model");

    if (cfg.mode == "covariance-mc") {
        plan.family = ModelFamily::Rect;
        RectOverlapSpec& r = plan.rect;
        r.a1 = detail::scaled_size(model.value("a1", 1.0), plan.n_base, "model.a1");
        r.a2 = detail::scaled_size(model.value("a2", 1.0), plan.n_base, "model.a2");
        r.b1 = detail::scaled_size(model.value("b1", 1.0), plan.n_base, "model.b1");
        r.b2 = detail::scaled_size(model.value("b2", 1.0), plan.n_base, "model.b2");
        r.delta1 = static_cast<int>(std::lround(model.value("delta1", 0.0) * plan.n_base));
        r.delta2 = static_cast<int>(std::lround(model.value("delta2", 0.0) * plan.n_base));
        r.entries = detail::parse_dist(model.value("entries", nlohmann::json("gaussian")),
                                       "model.entries");
        r.norm = detail::parse_norm(model);
    } else {
        plan.family = ModelFamily::Wigner;
        WignerOverlapSpec& w = plan.wigner;
        w.a = detail::scaled_size(model.value("a", 1.0), plan.n_base, "model.a");
        w.b = detail::scaled_size(model.value("b", 1.0), plan.n_base, "model.b");
        w.delta = static_cast<int>(std::lround(model.value("delta", 0.0) * plan.n_base));
        w.offdiag = detail::parse_dist(model.value("offdiag", nlohmann::json("gaussian")),
                                       "model.offdiag");
        w.norm = detail::parse_norm(model);
        if (model.contains("diag") && !model.at("diag").is_string()) {
            const auto& dj = model.at("diag");
            w.d2 = dj.value("d2", 1.0);
            w.diag = detail::parse_dist(dj, "model.diag");
        } else {
            const std::string ds = model.contains("diag") ? model.at("diag").get<std::string>() : "zero";
            if (ds == "zero") {
                w.d2 = 0.0;
            } else {
                w.diag = detail::parse_dist(model.at("diag"), "model.diag");
                w.d2 = 1.0;
            }
        }
    }

    if (!doc.contains("statistics")) throw std::invalid_argument("config: missing statistics");
    const auto& stats = doc.at("statistics");
    const std::string stype = stats.value("type", "cheb");
    if (stype == "cheb") {
        plan.stat_kind = StatKind::Cheb;
        plan.ks_a = detail::parse_orders(stats, "k_a");
        plan.ks_b = detail::parse_orders(stats, "k_b");
    } else if (stype == "monomial") {
        plan.stat_kind = StatKind::Monomial;
        plan.ks_a = detail::parse_orders(stats, "k_a");
        plan.ks_b = detail::parse_orders(stats, "k_b");
    } else if (stype == "smooth") {
        plan.stat_kind = StatKind::Smooth;
        plan.smooth_f = stats.value("f", "");
        plan.smooth_g = stats.value("g", plan.smooth_f);
        if (plan.smooth_f.empty()) throw std::invalid_argument("statistics: smooth needs 'f'");
        smooth_function(plan.smooth_f);
        smooth_function(plan.smooth_g);
    } else {
        throw std::invalid_argument("statistics.type must be cheb, monomial, or smooth");
    }

    if (cfg.mode == "c1-mc" && plan.stat_kind != StatKind::Smooth)
        throw std::invalid_argument("c1-mc requires smooth statistics");

    if (doc.contains("predictor")) {
        plan.predictor = detail::parse_predictor(doc.at("predictor").get<std::string>());
    } else if (plan.stat_kind == StatKind::Smooth) {
        plan.predictor = Predictor::C1;
    } else if (plan.stat_kind == StatKind::Monomial) {
        plan.predictor = Predictor::Monomial;
    } else if (plan.family == ModelFamily::Rect) {
        plan.predictor = plan.beta() == 2 ? Predictor::CovSimple : Predictor::CovGeneral;
    } else {
        plan.predictor = plan.beta() == 2 ? Predictor::WignerSimple : Predictor::WignerGeneral;
    }

    if (cfg.mode != "predict") plan.validate();
    cfg.echo = doc.dump();
    return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

}
