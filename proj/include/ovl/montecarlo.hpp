#pragma once

// Monte Carlo covariance estimation for overlapping-pair statistics.
//
// Determinism: every trial is a pure function of (spec, seed, trial index).
// Workers write into preassigned per-trial slots and the reduction pass is
// sequential with compensated summation, so the report bytes do not depend
// on thread count or scheduling.

#include "ovl/ensembles.hpp"
#include "ovl/statistics.hpp"
#include "ovl/version.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ovl {

enum class Predictor { WignerGeneral, WignerSimple, CovGeneral, CovSimple, Monomial, C1 };

enum class ModelFamily { Wigner, Rect };

struct RunPlan {
    ModelFamily family = ModelFamily::Wigner;
    WignerOverlapSpec wigner;  // concrete sizes
    RectOverlapSpec rect;
    int n_base = 0;            // scale N that the size ratios refer to
    long long trials = 0;
    uint64_t seed = 0;
    int threads = 1;
    StatKind stat_kind = StatKind::Cheb;
    std::vector<int> ks_a, ks_b;        // Cheb/Monomial orders per side
    std::string smooth_f, smooth_g;     // Smooth mode functions
    Predictor predictor = Predictor::WignerGeneral;
    bool gate = true;

    void validate() const {
        if (n_base < 1) throw std::invalid_argument("run plan: n must be positive");
        if (trials < 100) throw std::invalid_argument("run plan: need at least 100 trials");
        if (family == ModelFamily::Wigner) wigner.validate(); else rect.validate();
        if (stat_kind == StatKind::Smooth) {
            if (family != ModelFamily::Wigner)
                throw std::invalid_argument("run plan: smooth statistics need the Hermitian model");
            if (smooth_f.empty() || smooth_g.empty())
                throw std::invalid_argument("run plan: smooth mode needs both function ids");
        } else {
            if (ks_a.empty() || ks_b.empty())
                throw std::invalid_argument("run plan: need statistic orders for both sides");
            for (int k : ks_a)
                if (k < 1) throw std::invalid_argument("run plan: orders must be >= 1");
            for (int k : ks_b)
                if (k < 1) throw std::invalid_argument("run plan: orders must be >= 1");
        }
        if (stat_kind == StatKind::Monomial && family != ModelFamily::Wigner)
            throw std::invalid_argument("run plan: monomial statistics need the Hermitian model");
        if (family == ModelFamily::Rect && stat_kind != StatKind::Cheb)
            throw std::invalid_argument("run plan: rectangular model supports Chebyshev statistics");
    }

    int beta() const {
        const bool cx = family == ModelFamily::Wigner ? wigner.offdiag.is_complex()
                                                      : rect.entries.is_complex();
        return cx ? 2 : 1;
    }

    double gamma() const {
        if (family == ModelFamily::Wigner)
            return static_cast<double>(wigner.delta) /
                   std::sqrt(static_cast<double>(wigner.a) * wigner.b);
        return (static_cast<double>(rect.delta1) * rect.delta2) /
               std::sqrt(static_cast<double>(rect.a1) * rect.a2 * static_cast<double>(rect.b1) *
                         rect.b2);
    }
};

struct CellResult {
    std::string a_stat, b_stat;
    int k = 0, l = 0;
    double estimate = 0, stderr_ = 0, prediction = 0, zscore = 0, tolerance = 0;
    bool gated = false, pass = true;
};

struct MomentRow {
    std::string stat;
    double mean = 0, variance = 0, skewness = 0, excess_kurtosis = 0;
    double se_skewness = 0, se_kurtosis = 0;
};

struct MCReport {
    std::string version = library_version;
    uint64_t seed = 0;
    long long trials = 0;
    int n_base = 0;
    std::string mode;
    std::string config_echo;  // raw config JSON as given
    std::vector<CellResult> cells;
    std::vector<MomentRow> moments_a, moments_b;
    bool all_pass = true;
};

namespace detail {

struct KahanSum {
    double s = 0, c = 0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

inline void parallel_trials(long long trials, int threads, const std::function<void(long long)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1) {
        for (long long t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<long long> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            const long long t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                fn(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// Requested statistic values for one prepared Hermitian window.
template <typename Scalar>
void stat_values(const RunPlan& plan, const std::vector<int>& ks,
                 const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& raw, bool a_side,
                 double* out) {
    if (plan.stat_kind == StatKind::Smooth) {
        const SmoothFunction sf = smooth_function(a_side ? plan.smooth_f : plan.smooth_g);
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
            normalize_wigner(raw, plan.wigner.norm);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(
            m, Eigen::EigenvaluesOnly);
        double acc = 0;
        for (long i = 0; i < es.eigenvalues().size(); ++i) acc += sf.f(es.eigenvalues()[i]);
        out[0] = acc;
        return;
    }
    int kmax = 0;
    for (int k : ks) kmax = std::max(kmax, k);
    if (plan.stat_kind == StatKind::Monomial) {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
            raw / std::sqrt(static_cast<double>(plan.n_base));
        const std::vector<double> ptr = power_traces(m, kmax);
        for (size_t i = 0; i < ks.size(); ++i) out[i] = ptr[static_cast<size_t>(ks[i])];
        return;
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = normalize_wigner(raw, plan.wigner.norm);
    const std::vector<double> tr = cheb_traces_from_powers(power_traces(m, kmax), kmax);
    for (size_t i = 0; i < ks.size(); ++i) out[i] = tr[static_cast<size_t>(ks[i])];
}

template <typename Scalar>
void rect_stat_values(const RunPlan& plan, const std::vector<int>& ks,
                      const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& raw,
                      double* out) {
    int kmax = 0;
    for (int k : ks) kmax = std::max(kmax, k);
    const auto w = build_w(raw, plan.rect.norm);
    const std::vector<double> tr = cheb_traces_from_powers(power_traces(w, kmax), kmax);
    for (size_t i = 0; i < ks.size(); ++i) out[i] = tr[static_cast<size_t>(ks[i])];
}

template <typename Scalar>
void run_trial(const RunPlan& plan, long long t, double* slot_a, double* slot_b) {
    if (plan.family == ModelFamily::Wigner) {
        const bool same_window = plan.wigner.delta == plan.wigner.a && plan.wigner.a == plan.wigner.b;
        const auto pair = sample_wigner_pair<Scalar>(plan.wigner, plan.seed, static_cast<uint64_t>(t));
        stat_values<Scalar>(plan, plan.ks_a, pair.a, true, slot_a);
        const bool same_stats = plan.stat_kind == StatKind::Smooth
                                    ? plan.smooth_f == plan.smooth_g
                                    : plan.ks_a == plan.ks_b;
        if (same_window && same_stats) {
            const size_t width = plan.stat_kind == StatKind::Smooth ? 1 : plan.ks_b.size();
            for (size_t i = 0; i < width; ++i) slot_b[i] = slot_a[i];
        } else {
            stat_values<Scalar>(plan, plan.ks_b, pair.b, false, slot_b);
        }
    } else {
        const auto pair = sample_rect_pair<Scalar>(plan.rect, plan.seed, static_cast<uint64_t>(t));
        rect_stat_values<Scalar>(plan, plan.ks_a, pair.a, slot_a);
        rect_stat_values<Scalar>(plan, plan.ks_b, pair.b, slot_b);
    }
}

inline double predict_cell(const RunPlan& plan, int k, int l, const ChebSeries& fs,
                           const ChebSeries& gs) {
    const double nb = static_cast<double>(plan.n_base);
    const double d2 = plan.family == ModelFamily::Wigner ? plan.wigner.d2 : 0.0;
    const double m4 = plan.family == ModelFamily::Wigner ? plan.wigner.offdiag.m4()
                                                         : plan.rect.entries.m4();
    switch (plan.predictor) {
        case Predictor::WignerGeneral:
            return predict_wigner(k, l, plan.wigner.a / nb, plan.wigner.b / nb,
                                  plan.wigner.delta / nb, d2, m4);
        case Predictor::WignerSimple:
            return predict_simple_wigner(k, l, plan.beta(), plan.gamma());
        case Predictor::CovGeneral:
            return predict_cov_matrices(k, l, plan.gamma(), m4);
        case Predictor::CovSimple:
            return predict_simple_cov(k, l, plan.beta(), plan.gamma());
        case Predictor::Monomial:
            return predict_monomial_trace_cov(k, l, plan.wigner.a / nb, plan.wigner.b / nb,
                                              plan.wigner.delta / nb, d2, m4);
        case Predictor::C1:
            return predict_c1(fs, gs, plan.gamma(), d2, m4);
    }
    throw std::logic_error("predict_cell: bad predictor");
}

}  // namespace detail

// Acceptance band around a prediction: four standard errors plus a
// finite-size allowance of 0.05 (1 + |prediction|) at n = 256, scaling as
// 1/n.
inline double finite_size_tolerance(double se, double prediction, int n_base) {
    return 4.0 * se + 0.05 * (1.0 + std::abs(prediction)) * (256.0 / static_cast<double>(n_base));
}

inline MCReport mc_covariance(const RunPlan& plan) {
    plan.validate();
    const bool complex_entries = plan.beta() == 2;
    const size_t wa = plan.stat_kind == StatKind::Smooth ? 1 : plan.ks_a.size();
    const size_t wb = plan.stat_kind == StatKind::Smooth ? 1 : plan.ks_b.size();
    const size_t width = wa + wb;
    const long long trials = plan.trials;
    std::vector<double> records(static_cast<size_t>(trials) * width);

    auto fn = [&](long long t) {
        double* slot = records.data() + static_cast<size_t>(t) * width;
        if (complex_entries)
            detail::run_trial<std::complex<double>>(plan, t, slot, slot + wa);
        else
            detail::run_trial<double>(plan, t, slot, slot + wa);
    };
    detail::parallel_trials(trials, plan.threads, fn);

    // Sequential reduction in trial order.
    std::vector<double> mean(width, 0.0);
    for (size_t i = 0; i < width; ++i) {
        detail::KahanSum acc;
        for (long long t = 0; t < trials; ++t) acc.add(records[static_cast<size_t>(t) * width + i]);
        mean[i] = acc.value() / static_cast<double>(trials);
    }

    ChebSeries fs, gs;
    if (plan.predictor == Predictor::C1) {
        fs = smooth_series(plan.smooth_f);
        gs = smooth_series(plan.smooth_g);
    }

    MCReport rep;
    rep.seed = plan.seed;
    rep.trials = trials;
    rep.n_base = plan.n_base;

    auto stat_name = [&](bool a_side, size_t i) {
        if (plan.stat_kind == StatKind::Smooth) return "f:" + (a_side ? plan.smooth_f : plan.smooth_g);
        const int k = (a_side ? plan.ks_a : plan.ks_b)[i];
        return (plan.stat_kind == StatKind::Cheb ? "T" : "pow") + std::to_string(k);
    };

    for (size_t i = 0; i < wa; ++i) {
        for (size_t j = 0; j < wb; ++j) {
            CellResult cell;
            cell.a_stat = stat_name(true, i);
            cell.b_stat = stat_name(false, j);
            cell.k = plan.stat_kind == StatKind::Smooth ? 0 : plan.ks_a[i];
            cell.l = plan.stat_kind == StatKind::Smooth ? 0 : plan.ks_b[j];

            detail::KahanSum cov_acc, u2_acc;
            for (long long t = 0; t < trials; ++t) {
                const double da = records[static_cast<size_t>(t) * width + i] - mean[i];
                const double db = records[static_cast<size_t>(t) * width + wa + j] - mean[wa + j];
                cov_acc.add(da * db);
            }
            const double est = cov_acc.value() / static_cast<double>(trials - 1);
            const double ubar = cov_acc.value() / static_cast<double>(trials);
            for (long long t = 0; t < trials; ++t) {
                const double da = records[static_cast<size_t>(t) * width + i] - mean[i];
                const double db = records[static_cast<size_t>(t) * width + wa + j] - mean[wa + j];
                const double u = da * db - ubar;
                u2_acc.add(u * u);
            }
            const double se =
                std::sqrt(u2_acc.value() / static_cast<double>(trials - 1) / static_cast<double>(trials));

            cell.estimate = est;
            cell.stderr_ = se;
            cell.prediction = plan.stat_kind == StatKind::Smooth
                                  ? detail::predict_cell(plan, 0, 0, fs, gs)
                                  : detail::predict_cell(plan, cell.k, cell.l, fs, gs);
            cell.zscore = (est - cell.prediction) / std::max(se, 1e-300);
            cell.tolerance = finite_size_tolerance(se, cell.prediction, plan.n_base);
            cell.gated = plan.gate;
            cell.pass = !plan.gate || std::abs(est - cell.prediction) <= cell.tolerance;
            if (!cell.pass) rep.all_pass = false;
            rep.cells.push_back(std::move(cell));
        }
    }

    if (trials >= 1000) {
        std::vector<double> column(static_cast<size_t>(trials));
        auto append_diag = [&](size_t col, const std::string& name, std::vector<MomentRow>& rows) {
            double lo = records[col], hi = records[col];
            for (long long t = 0; t < trials; ++t) {
                const double x = records[static_cast<size_t>(t) * width + col];
                column[static_cast<size_t>(t)] = x;
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            if (lo == hi) return;  // a constant statistic has no shape to diagnose
            const MomentDiagnostics d = gaussianity_diagnostics(column);
            MomentRow row;
            row.stat = name;
            row.mean = d.mean;
            row.variance = d.variance;
            row.skewness = d.skewness;
            row.excess_kurtosis = d.excess_kurtosis;
            row.se_skewness = d.se_skewness;
            row.se_kurtosis = d.se_kurtosis;
            rows.push_back(row);
        };
        for (size_t i = 0; i < wa; ++i) append_diag(i, stat_name(true, i), rep.moments_a);
        for (size_t j = 0; j < wb; ++j) append_diag(wa + j, stat_name(false, j), rep.moments_b);
    }
    return rep;
}

}
