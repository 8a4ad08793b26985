#pragma once

// Experiment orchestration: the exact identity suite and the Monte Carlo /
// prediction modes behind the CLI.  Exit codes: 0 all gates pass, 1 a gate
// or identity failed, 2 invalid configuration.

#include "ovl/config.hpp"
#include "ovl/nbt.hpp"
#include "ovl/report.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ovl {

struct IdentityCase {
    std::string graph;
    std::string weights;
    std::string check;
    int k = 0;
    bool pass = false;
};

inline const char* weight_name(WeightKind w) {
    switch (w) {
        case WeightKind::AllOnes: return "all-ones";
        case WeightKind::Sign: return "sign";
        case WeightKind::UnitCircle: return "unit-circle";
    }
    return "?";
}

// Largest k <= kmax whose bipartite length-2k enumeration fits the node
// budget; identical for a pair and its transpose.
inline int bipartite_kmax_in_budget(const BipartitePhasedGraph& g, int kmax,
                                    long long node_budget) {
    int k = 0;
    while (k < kmax && detail::walk_budget_fits(g.c + 1, std::max(g.c, g.d), 2 * (k + 1), g.nv,
                                                static_cast<long double>(node_budget)))
        ++k;
    return k;
}

// Run the walk-sum identity checks over graph families and weight models.
inline std::vector<IdentityCase> run_identities(const IdentitiesParams& params) {
    std::vector<IdentityCase> out;
    auto add = [&](std::string graph, WeightKind w, std::string check, int k, bool pass) {
        out.push_back({std::move(graph), weight_name(w), std::move(check), k, pass});
    };

    uint64_t edge_seed = params.seed;
    for (WeightKind w : params.weights) {
        for (int n : params.complete_n) {
            const PhasedGraph g = with_random_phases(graph_complete(n), w, edge_seed++);
            const std::string name = "K" + std::to_string(n);
            for (int k = 1; k <= params.kmax; ++k) {
                add(name, w, "walks-to-P", k, verify_thm_2_1(g, k));
                add(name, w, "closed-walks-to-T", k, verify_thm_2_2(g, k));
            }
        }
        for (int n : params.cycle_n) {
            const PhasedGraph g = with_random_phases(graph_cycle(n), w, edge_seed++);
            const std::string name = "C" + std::to_string(n);
            for (int k = 1; k <= params.kmax; ++k) {
                add(name, w, "walks-to-P", k, verify_thm_2_1(g, k));
                add(name, w, "closed-walks-to-T", k, verify_thm_2_2(g, k));
            }
        }
        for (const auto& [m, n] : params.bipartite) {
            // V side first: K_{m,n} for the entrywise check, and the
            // transposed orientation (larger W degree) for the trace check,
            // which needs c >= d.
            const BipartitePhasedGraph g =
                with_random_phases(graph_complete_bipartite(m, n), w, edge_seed++);
            const BipartitePhasedGraph gt =
                with_random_phases(graph_complete_bipartite(n, m), w, edge_seed++);
            const std::string name = "K" + std::to_string(m) + "," + std::to_string(n);
            for (int k = 1; k <= bipartite_kmax_in_budget(g, params.kmax, params.node_budget);
                 ++k) {
                add(name, w, "walks-to-F", k, verify_thm_2_3(g, k));
                add(name + "^T", w, "closed-walks-to-S", k, verify_thm_2_4(gt, k));
            }
        }
    }

    // Polynomial-level identities tying the families together.
    for (int k = 0; k <= 12; ++k)
        out.push_back({"-", "-", "U-from-T", k, check_relation_u_t(k)});
    for (long d : {1L, 2L, 3L, 4L, 5L, 9L})
        for (int k = 1; k <= 10; ++k)
            out.push_back({"-", "-", "P-from-U(d=" + std::to_string(d) + ")", k,
                           check_relation_p_u(k, d)});
    for (long c : {1L, 2L, 3L, 4L})
        for (long d : {1L, 2L, 3L})
            for (int k = 1; k <= 8; ++k)
                out.push_back({"-", "-",
                               "F-from-U(c=" + std::to_string(c) + ",d=" + std::to_string(d) + ")",
                               k, check_relation_f_u(k, c, d)});
    return out;
}

inline nlohmann::json identities_to_json(const std::vector<IdentityCase>& cases) {
    nlohmann::json j;
    bool all = true;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        all = all && c.pass;
        j["cases"].push_back({{"graph", c.graph},
                              {"weights", c.weights},
                              {"check", c.check},
                              {"k", c.k},
                              {"pass", c.pass}});
    }
    j["all_pass"] = all;
    j["version"] = library_version;
    j["mode"] = "identities";
    return j;
}

// Run a parsed experiment; returns the process exit code.
inline int run(const ExperimentConfig& cfg, std::ostream& log = std::cout) {
    if (cfg.mode == "identities") {
        const std::vector<IdentityCase> cases = run_identities(cfg.identities);
        bool all = true;
        long long failed = 0;
        for (const auto& c : cases) {
            if (!c.pass) {
                all = false;
                ++failed;
                log << "FAIL " << c.check << " on " << c.graph << " (" << c.weights
                    << ", k=" << c.k << ")\n";
            }
        }
        log << (all ? "identities: all " : "identities: FAILED ") << cases.size() << " checks"
            << (all ? " passed" : (" (" + std::to_string(failed) + " failing)")) << "\n";
        if (!cfg.out.empty()) {
            nlohmann::json j = identities_to_json(cases);
            if (!cfg.echo.empty()) j["config"] = nlohmann::json::parse(cfg.echo);
            write_file_atomic(cfg.out, j.dump(2) + "\n");
        }
        return all ? 0 : 1;
    }

    if (cfg.mode == "predict") {
        MCReport rep;
        rep.mode = cfg.mode;
        rep.seed = cfg.plan.seed;
        rep.trials = 0;
        rep.n_base = cfg.plan.n_base;
        rep.config_echo = cfg.echo;
        ChebSeries fs, gs;
        if (cfg.plan.stat_kind == StatKind::Smooth) {
            fs = smooth_series(cfg.plan.smooth_f);
            gs = smooth_series(cfg.plan.smooth_g);
            CellResult cell;
            cell.a_stat = "f:" + cfg.plan.smooth_f;
            cell.b_stat = "f:" + cfg.plan.smooth_g;
            cell.prediction = detail::predict_cell(cfg.plan, 0, 0, fs, gs);
            cell.estimate = cell.prediction;
            rep.cells.push_back(cell);
        } else {
            for (int k : cfg.plan.ks_a)
                for (int l : cfg.plan.ks_b) {
                    CellResult cell;
                    cell.k = k;
                    cell.l = l;
                    cell.a_stat = (cfg.plan.stat_kind == StatKind::Cheb ? "T" : "pow") +
                                  std::to_string(k);
                    cell.b_stat = (cfg.plan.stat_kind == StatKind::Cheb ? "T" : "pow") +
                                  std::to_string(l);
                    cell.prediction = detail::predict_cell(cfg.plan, k, l, fs, gs);
                    cell.estimate = cell.prediction;
                    rep.cells.push_back(cell);
                }
        }
        for (const auto& c : rep.cells)
            log << c.a_stat << " x " << c.b_stat << " -> " << c.prediction << "\n";
        if (!cfg.out.empty()) write_report(rep, cfg.out, cfg.format);
        return 0;
    }

    // Monte Carlo modes.
    MCReport rep = mc_covariance(cfg.plan);
    rep.mode = cfg.mode;
    rep.config_echo = cfg.echo;
    for (const auto& c : rep.cells) {
        log << c.a_stat << " x " << c.b_stat << ": estimate=" << c.estimate
            << " stderr=" << c.stderr_ << " prediction=" << c.prediction << " z=" << c.zscore
            << (c.gated ? (c.pass ? " PASS" : " FAIL") : "") << "\n";
    }
    if (!cfg.out.empty()) write_report(rep, cfg.out, cfg.format);
    return rep.all_pass ? 0 : 1;
}

}
