#pragma once

// Overlapping random matrix ensembles.
//
// A Wigner pair (A, B) consists of two Hermitian windows cut from one
// infinite symmetric array X: A = X[0..a)^2 and B = X[o..o+b)^2 with
// o = a - delta, so they share a delta x delta corner block.  A rectangular
// pair takes two windows of a doubly-infinite array with row overlap delta1
// and column overlap delta2, again placed at trailing corners.
//
// Entries are pure functions of (seed, trial, cell), so the shared block is
// shared automatically and sampling is reproducible under any evaluation
// order.

#include "ovl/philox.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ovl {

enum class Dist { Rademacher, UnitCircle, StandardGaussian, CenteredUniform, TwoPointGeneral };

// Mean-zero unit-variance entry laws.  TwoPointGeneral takes value xp with
// probability p and xm otherwise; the two moment constraints pin it to mean
// zero, variance one.
struct EntryDistribution {
    Dist kind = Dist::StandardGaussian;
    double p = 0.0, xp = 0.0, xm = 0.0;  // TwoPointGeneral parameters

    static EntryDistribution rademacher() { return {Dist::Rademacher}; }
    static EntryDistribution unit_circle() { return {Dist::UnitCircle}; }
    static EntryDistribution gaussian() { return {Dist::StandardGaussian}; }
    static EntryDistribution centered_uniform() { return {Dist::CenteredUniform}; }
    static EntryDistribution two_point(double p, double xp, double xm) {
        EntryDistribution d{Dist::TwoPointGeneral, p, xp, xm};
        d.validate();
        return d;
    }

    void validate() const {
        if (kind != Dist::TwoPointGeneral) return;
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("two-point law: p must be in (0,1)");
        if (std::abs(p * xp + (1 - p) * xm) > 1e-12)
            throw std::invalid_argument("two-point law: mean must be zero");
        if (std::abs(p * xp * xp + (1 - p) * xm * xm - 1.0) > 1e-12)
            throw std::invalid_argument("two-point law: variance must be one");
    }

    bool is_complex() const { return kind == Dist::UnitCircle; }

    // E |x|^4
    double m4() const {
        switch (kind) {
            case Dist::Rademacher: return 1.0;
            case Dist::UnitCircle: return 1.0;
            case Dist::StandardGaussian: return 3.0;
            case Dist::CenteredUniform: return 9.0 / 5.0;
            case Dist::TwoPointGeneral: return p * std::pow(xp, 4) + (1 - p) * std::pow(xm, 4);
        }
        return 0.0;
    }

    // One draw per counter block.
    std::complex<double> draw(uint64_t key, uint64_t cell, uint64_t trial) const {
        const UniformPair u = uniform_pair(key, cell, trial);
        switch (kind) {
            case Dist::Rademacher:
                return u.u1 < 0.5 ? -1.0 : 1.0;
            case Dist::UnitCircle: {
                const double th = 2.0 * M_PI * u.u1;
                return {std::cos(th), std::sin(th)};
            }
            case Dist::StandardGaussian:
                return std::sqrt(-2.0 * std::log(u.u1)) * std::cos(2.0 * M_PI * u.u2);
            case Dist::CenteredUniform:
                return std::sqrt(3.0) * (2.0 * u.u1 - 1.0);
            case Dist::TwoPointGeneral:
                return u.u1 < p ? xp : xm;
        }
        return 0.0;
    }

    double draw_real(uint64_t key, uint64_t cell, uint64_t trial) const {
        return draw(key, cell, trial).real();
    }
};

inline const char* dist_name(Dist d) {
    switch (d) {
        case Dist::Rademacher: return "rademacher";
        case Dist::UnitCircle: return "unit-circle";
        case Dist::StandardGaussian: return "gaussian";
        case Dist::CenteredUniform: return "uniform";
        case Dist::TwoPointGeneral: return "two-point";
    }
    return "?";
}

enum class Norm { Standard, Shifted };

// Overlapping Hermitian windows of sizes a and b sharing a delta-corner.
struct WignerOverlapSpec {
    int a = 0, b = 0, delta = 0;
    EntryDistribution offdiag;
    EntryDistribution diag;   // ignored when d2 == 0
    double d2 = 0.0;          // diagonal entry variance
    Norm norm = Norm::Standard;

    void validate() const {
        if (a < 1 || b < 1) throw std::invalid_argument("window sizes must be positive");
        if (delta < 0 || delta > std::min(a, b))
            throw std::invalid_argument("overlap must satisfy 0 <= delta <= min(a,b)");
        if (d2 < 0) throw std::invalid_argument("diagonal variance must be nonnegative");
        if (d2 > 0 && diag.is_complex())
            throw std::invalid_argument("diagonal law must be real");
        if (norm == Norm::Shifted && std::min(a, b) < 4)
            throw std::invalid_argument("shifted normalization needs sizes >= 4");
        offdiag.validate();
        if (d2 > 0) diag.validate();
    }
};

// Overlapping rectangular windows: A is a1 x a2, B is b1 x b2, sharing
// delta1 rows and delta2 columns.
struct RectOverlapSpec {
    int a1 = 0, a2 = 0, b1 = 0, b2 = 0, delta1 = 0, delta2 = 0;
    EntryDistribution entries;
    Norm norm = Norm::Standard;

    void validate() const {
        if (a1 < 1 || a2 < 1 || b1 < 1 || b2 < 1)
            throw std::invalid_argument("window sizes must be positive");
        if (delta1 < 0 || delta1 > std::min(a1, b1) || delta2 < 0 || delta2 > std::min(a2, b2))
            throw std::invalid_argument("overlaps must satisfy 0 <= delta_i <= min of sizes");
        if (norm == Norm::Shifted && (std::min(a1, a2) < 2 || std::min(b1, b2) < 2))
            throw std::invalid_argument("shifted normalization needs sizes >= 2");
        entries.validate();
    }
};

namespace detail {

// Stream tags keep the symmetric and rectangular arrays independent.
constexpr uint64_t kWignerStream = 0x5749ull;  // "WI"
constexpr uint64_t kRectStream = 0x5245ull;    // "RE"

inline uint64_t stream_key(uint64_t seed, uint64_t tag) { return seed ^ (tag * 0x9E3779B97F4A7C15ull); }

inline uint64_t sym_cell(long i, long j) {
    const uint64_t lo = static_cast<uint64_t>(std::min(i, j));
    const uint64_t hi = static_cast<uint64_t>(std::max(i, j));
    return (hi * (hi + 1)) / 2 + lo;
}

}  // namespace detail

// Entry (i,j) of the symmetric array behind a Wigner pair, in global
// coordinates.  Hermitian: (j,i) returns the conjugate.
inline std::complex<double> entry_at(const WignerOverlapSpec& spec, uint64_t seed, uint64_t trial,
                                     long i, long j) {
    const uint64_t key = detail::stream_key(seed, detail::kWignerStream);
    if (i == j) {
        if (spec.d2 == 0.0) return 0.0;
        return std::sqrt(spec.d2) * spec.diag.draw_real(key, detail::sym_cell(i, i), trial);
    }
    const std::complex<double> v = spec.offdiag.draw(key, detail::sym_cell(i, j), trial);
    return i < j ? v : std::conj(v);
}

// Entry (i,j) of the rectangular array behind a rectangular pair.
inline std::complex<double> entry_at(const RectOverlapSpec& spec, uint64_t seed, uint64_t trial,
                                     long i, long j) {
    const uint64_t key = detail::stream_key(seed, detail::kRectStream);
    const uint64_t cell = (static_cast<uint64_t>(i) << 28) | static_cast<uint64_t>(j);
    return spec.entries.draw(key, cell, trial);
}

template <typename Scalar>
struct MatrixPair {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, b;
};

namespace detail {

inline void assign_entry(double& dst, const std::complex<double>& v) { dst = v.real(); }
inline void assign_entry(std::complex<double>& dst, const std::complex<double>& v) { dst = v; }

}  // namespace detail

// Sample both windows of a Wigner pair.  Scalar must be std::complex<double>
// when the off-diagonal law is complex, double otherwise.
template <typename Scalar>
MatrixPair<Scalar> sample_wigner_pair(const WignerOverlapSpec& spec, uint64_t seed, uint64_t trial) {
    spec.validate();
    if (spec.offdiag.is_complex() && !std::is_same_v<Scalar, std::complex<double>>)
        throw std::invalid_argument("complex entry law needs a complex matrix type");
    MatrixPair<Scalar> out;
    out.a.resize(spec.a, spec.a);
    out.b.resize(spec.b, spec.b);
    const long off = spec.a - spec.delta;
    for (long j = 0; j < spec.a; ++j)
        for (long i = 0; i <= j; ++i) {
            const auto v = entry_at(spec, seed, trial, i, j);
            detail::assign_entry(out.a(i, j), v);
            detail::assign_entry(out.a(j, i), std::conj(v));
        }
    for (long j = 0; j < spec.b; ++j)
        for (long i = 0; i <= j; ++i) {
            const auto v = entry_at(spec, seed, trial, off + i, off + j);
            detail::assign_entry(out.b(i, j), v);
            detail::assign_entry(out.b(j, i), std::conj(v));
        }
    return out;
}

template <typename Scalar>
MatrixPair<Scalar> sample_rect_pair(const RectOverlapSpec& spec, uint64_t seed, uint64_t trial) {
    spec.validate();
    if (spec.entries.is_complex() && !std::is_same_v<Scalar, std::complex<double>>)
        throw std::invalid_argument("complex entry law needs a complex matrix type");
    MatrixPair<Scalar> out;
    out.a.resize(spec.a1, spec.a2);
    out.b.resize(spec.b1, spec.b2);
    const long off1 = spec.a1 - spec.delta1, off2 = spec.a2 - spec.delta2;
    for (long i = 0; i < spec.a1; ++i)
        for (long j = 0; j < spec.a2; ++j) detail::assign_entry(out.a(i, j), entry_at(spec, seed, trial, i, j));
    for (long i = 0; i < spec.b1; ++i)
        for (long j = 0; j < spec.b2; ++j)
            detail::assign_entry(out.b(i, j), entry_at(spec, seed, trial, off1 + i, off2 + j));
    return out;
}

// A / (2 sqrt(size)) or A / (2 sqrt(size - 2)).
template <typename Derived>
auto normalize_wigner(const Eigen::MatrixBase<Derived>& m, Norm norm) {
    const long n = m.rows();
    const double base = norm == Norm::Standard ? static_cast<double>(n) : static_cast<double>(n - 2);
    if (base <= 0) throw std::invalid_argument("normalize_wigner: window too small");
    return (m / (2.0 * std::sqrt(base))).eval();
}

// W = (AA* - (r+c) I) / (2 sqrt(rc)) standard, or with r+c-2 and
// (r-1)(c-1) under the shifted convention.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build_w(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, Norm norm) {
    const double r = static_cast<double>(m.rows()), c = static_cast<double>(m.cols());
    const double shift = norm == Norm::Standard ? r + c : r + c - 2;
    const double scale = norm == Norm::Standard ? std::sqrt(r * c) : std::sqrt((r - 1) * (c - 1));
    if (scale <= 0) throw std::invalid_argument("build_w: window too small");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> w = m * m.adjoint();
    w -= shift * Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(m.rows(), m.rows());
    w /= 2.0 * scale;
    return w;
}

}
