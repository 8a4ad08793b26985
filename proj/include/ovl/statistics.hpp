#pragma once

// Asymptotic covariance predictions for linear eigenvalue statistics of
// overlapping matrix pairs, evaluation of the statistics themselves, and
// sample-moment diagnostics.
//
// Throughout, a, b, delta (and the rectangular a1, a2, b1, b2, delta1,
// delta2) are dimension *ratios* relative to the base size, so gamma =
// delta/sqrt(ab) in the Hermitian case and delta1 delta2/sqrt(a1 a2 b1 b2)
// in the sample-covariance case.

#include "ovl/chebyshev.hpp"
#include "ovl/combinatorics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ovl {

namespace detail {

inline void check_overlap_ratios(double a, double b, double delta) {
    if (!(a > 0) || !(b > 0)) throw std::invalid_argument("size ratios must be positive");
    if (delta < 0 || delta > std::min(a, b) + 1e-12)
        throw std::invalid_argument("overlap ratio must be within [0, min(a,b)]");
}

}  // namespace detail

// Hermitian pair, Chebyshev statistics: zero off the diagonal k = l; on it
// (d2/4) gamma at k=1, ((m4-1)/2) gamma^2 at k=2, (k/2) gamma^k at k>=3.
inline double predict_wigner(int k, int l, double a, double b, double delta, double d2, double m4) {
    if (k < 1 || l < 1) throw std::invalid_argument("orders must be >= 1");
    detail::check_overlap_ratios(a, b, delta);
    if (k != l) return 0.0;
    const double gamma = delta / std::sqrt(a * b);
    if (k == 1) return 0.25 * d2 * gamma;
    if (k == 2) return 0.5 * (m4 - 1.0) * gamma * gamma;
    return 0.5 * k * std::pow(gamma, k);
}

// Zero-diagonal sign (beta=1) or unit-circle (beta=2) pair: diagonal cells
// (k/(2 beta)) gamma^k for k >= 3, zero otherwise.
inline double predict_simple_wigner(int k, int l, int beta, double gamma) {
    if (k < 1 || l < 1) throw std::invalid_argument("orders must be >= 1");
    if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
    if (!(gamma >= 0 && gamma <= 1 + 1e-12)) throw std::invalid_argument("gamma must be in [0,1]");
    if (k != l || k < 3) return 0.0;
    return k / (2.0 * beta) * std::pow(gamma, k);
}

// Sample-covariance pair: diagonal cells ((m4-1)/4) gamma at k=1 and
// (k/2) gamma^k at k >= 2.
inline double predict_cov_matrices(int k, int l, double gamma, double m4) {
    if (k < 1 || l < 1) throw std::invalid_argument("orders must be >= 1");
    if (!(gamma >= 0 && gamma <= 1 + 1e-12)) throw std::invalid_argument("gamma must be in [0,1]");
    if (k != l) return 0.0;
    if (k == 1) return 0.25 * (m4 - 1.0) * gamma;
    return 0.5 * k * std::pow(gamma, k);
}

inline double predict_simple_cov(int k, int l, int beta, double gamma) {
    if (k < 1 || l < 1) throw std::invalid_argument("orders must be >= 1");
    if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
    if (!(gamma >= 0 && gamma <= 1 + 1e-12)) throw std::invalid_argument("gamma must be in [0,1]");
    if (k != l || k < 2) return 0.0;
    return k / (2.0 * beta) * std::pow(gamma, k);
}

// C^1 statistics through their Chebyshev series:
// Cov = 1/2 [ (d2/2) f1 g1 gamma + (m4-1) f2 g2 gamma^2 + sum_{k>=3} k fk gk gamma^k ].
inline double predict_c1(const ChebSeries& f, const ChebSeries& g, double gamma, double d2,
                         double m4) {
    if (!(gamma >= 0 && gamma <= 1 + 1e-12)) throw std::invalid_argument("gamma must be in [0,1]");
    if (f.tail_weight >= 1e-10 || g.tail_weight >= 1e-10)
        throw std::invalid_argument("predict_c1: truncation tail bound violated");
    double acc = 0.5 * (0.5 * d2 * f.coeff(1) * g.coeff(1) * gamma +
                        (m4 - 1.0) * f.coeff(2) * g.coeff(2) * gamma * gamma);
    const int kmax = std::max(f.order(), g.order());
    for (int k = 3; k <= kmax; ++k) acc += 0.5 * k * f.coeff(k) * g.coeff(k) * std::pow(gamma, k);
    return acc;
}

// Covariance of raw monomial trace statistics Tr[(A/sqrt n)^k]:
//   d2 k l C_{(k-1)/2} C_{(l-1)/2} delta a^{(k-1)/2} b^{(l-1)/2}
// + (m4-1) (kl/2) C_{k/2} C_{l/2} delta^2 a^{k/2-1} b^{l/2-1}
// + sum_{r>=3} (2kl/r) [x^{(k-r)/2}] Cat(x)^r [x^{(l-r)/2}] Cat(x)^r
//       * delta^r a^{(k-r)/2} b^{(l-r)/2},
// where Cat is the Catalan generating series and half-integer Catalan
// indices vanish.  Zero whenever k + l is odd.
inline double predict_monomial_trace_cov(int k, int l, double a, double b, double delta, double d2,
                                         double m4) {
    if (k < 1 || l < 1) throw std::invalid_argument("orders must be >= 1");
    detail::check_overlap_ratios(a, b, delta);
    double acc = 0.0;
    if (k % 2 == 1 && l % 2 == 1)
        acc += d2 * k * l * to_double(catalan_twice(k - 1)) * to_double(catalan_twice(l - 1)) *
               delta * std::pow(a, (k - 1) / 2) * std::pow(b, (l - 1) / 2);
    if (k % 2 == 0 && l % 2 == 0)
        acc += (m4 - 1.0) * (0.5 * k * l) * to_double(catalan_twice(k)) *
               to_double(catalan_twice(l)) * delta * delta * std::pow(a, k / 2 - 1) *
               std::pow(b, l / 2 - 1);
    for (int r = 3; r <= std::min(k, l); ++r) {
        if ((k - r) % 2 != 0 || (l - r) % 2 != 0) continue;
        const double cka = to_double(catalan_conv_coeff(r, (k - r) / 2));
        const double ckb = to_double(catalan_conv_coeff(r, (l - r) / 2));
        acc += (2.0 * k * l / r) * cka * ckb * std::pow(delta, r) * std::pow(a, (k - r) / 2) *
               std::pow(b, (l - r) / 2);
    }
    return acc;
}

// What a single statistic evaluates on a prepared matrix.
enum class StatKind { Cheb, Monomial, Smooth };

struct StatisticRequest {
    StatKind kind = StatKind::Cheb;
    int k = 0;                          // Cheb/Monomial order
    std::string smooth_id;              // Smooth registry key
    std::function<double(double)> f;    // Smooth evaluation

    std::string name() const {
        switch (kind) {
            case StatKind::Cheb: return "T" + std::to_string(k);
            case StatKind::Monomial: return "pow" + std::to_string(k);
            case StatKind::Smooth: return "f:" + smooth_id;
        }
        return "?";
    }
};

// Tr T_k(M), Tr M^k, or sum_i f(lambda_i(M)); the smooth route goes through
// the symmetric eigensolver, the polynomial routes stay matrix-only.
template <typename Scalar>
double linear_statistic(const StatisticRequest& req,
                        const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    switch (req.kind) {
        case StatKind::Cheb:
            if (req.k < 0) throw std::invalid_argument("linear_statistic: negative order");
            return trace_cheb(req.k, m);
        case StatKind::Monomial: {
            if (req.k < 1) throw std::invalid_argument("linear_statistic: order must be >= 1");
            return power_traces(m, req.k).back();
        }
        case StatKind::Smooth: {
            if (!req.f) throw std::invalid_argument("linear_statistic: missing smooth function");
            detail::require_hermitian(m);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>
                es(m, Eigen::EigenvaluesOnly);
            double acc = 0;
            const auto& ev = es.eigenvalues();
            for (long i = 0; i < ev.size(); ++i) acc += req.f(ev[i]);
            return acc;
        }
    }
    throw std::logic_error("linear_statistic: bad kind");
}

struct SmoothFunction {
    std::string id;
    std::function<double(double)> f;
};

// Registry of smooth test functions on [-1,1].
inline SmoothFunction smooth_function(const std::string& id) {
    if (id == "x3") return {id, [](double x) { return x * x * x; }};
    if (id == "exp") return {id, [](double x) { return std::exp(x); }};
    if (id == "abs3") return {id, [](double x) { return std::abs(x) * x * x; }};
    throw std::invalid_argument("unknown smooth function id: " + id);
}

// Chebyshev series of a registry function, truncated adaptively so the
// weighted tail sum_{k>K} k c_k^2 of computed coefficients drops below
// 1e-12; the dropped weight is recorded on the series.
inline ChebSeries smooth_series(const std::string& id) {
    const SmoothFunction sf = smooth_function(id);
    const int kmax = 200;
    ChebSeries full = cheb_coefficients(sf.f, kmax, 4 * kmax);
    std::vector<double> tail(static_cast<size_t>(kmax) + 2, 0.0);
    for (int k = kmax; k >= 1; --k)
        tail[static_cast<size_t>(k)] = tail[static_cast<size_t>(k) + 1] +
                                       k * full.c[static_cast<size_t>(k)] * full.c[static_cast<size_t>(k)];
    int K = kmax;
    while (K > 1 && tail[static_cast<size_t>(K)] < 1e-12) --K;
    ChebSeries out;
    out.c.assign(full.c.begin(), full.c.begin() + K + 1);
    out.tail_weight = tail[static_cast<size_t>(K) + 1];
    if (out.tail_weight >= 1e-10)
        throw std::runtime_error("smooth_series: series for " + id + " does not truncate");
    return out;
}

struct MomentDiagnostics {
    double mean = 0, variance = 0;
    double skewness = 0, excess_kurtosis = 0;
    double se_skewness = 0, se_kurtosis = 0;
};

// Sample skewness/excess kurtosis with the normal-theory standard errors
// sqrt(6/T) and sqrt(24/T).  Requires >= 1000 samples and nonzero variance.
inline MomentDiagnostics gaussianity_diagnostics(const std::vector<double>& samples) {
    const size_t t = samples.size();
    if (t < 1000) throw std::invalid_argument("gaussianity_diagnostics: need >= 1000 samples");
    double mean = 0, comp = 0;
    for (double x : samples) {
        const double y = x - comp;
        const double s = mean + y;
        comp = (s - mean) - y;
        mean = s;
    }
    mean /= static_cast<double>(t);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : samples) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(t);
    m3 /= static_cast<double>(t);
    m4 /= static_cast<double>(t);
    if (m2 <= 0) throw std::invalid_argument("gaussianity_diagnostics: zero variance");
    MomentDiagnostics out;
    out.mean = mean;
    out.variance = m2 * static_cast<double>(t) / static_cast<double>(t - 1);
    out.skewness = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    out.se_skewness = std::sqrt(6.0 / static_cast<double>(t));
    out.se_kurtosis = std::sqrt(24.0 / static_cast<double>(t));
    return out;
}

}
