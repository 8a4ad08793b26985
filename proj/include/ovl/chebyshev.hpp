#pragma once

// Chebyshev polynomials of both kinds, the non-backtracking spectral
// polynomial families P_k and F_k, their scaled/shifted Chebyshev forms, and
// trace evaluation of polynomials in a Hermitian matrix.
//
// Everything on the Poly level is exact rational arithmetic.  The scaled
// variants m^{k/2} T_k(x / (2 sqrt(m))) are exact because T_k and U_k only
// have terms of the same parity as k, so every surviving power of sqrt(m) is
// even; no floating point square root enters the coefficients.

#include "ovl/poly.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ovl {

// T_k: T_0 = 1, T_1 = x, T_k = 2x T_{k-1} - T_{k-2}.
inline Poly cheb_t(int k) {
    if (k < 0) throw std::invalid_argument("cheb_t: negative index");
    Poly tm1 = Poly::constant(1);
    if (k == 0) return tm1;
    Poly t = Poly::x();
    const Poly two_x = Rational(2) * Poly::x();
    for (int i = 2; i <= k; ++i) {
        Poly next = two_x * t - tm1;
        tm1 = std::move(t);
        t = std::move(next);
    }
    return t;
}

// U_k: U_0 = 1, U_1 = 2x, U_k = 2x U_{k-1} - U_{k-2}.  Zero for k < 0.
inline Poly cheb_u(int k) {
    if (k < 0) return Poly::zero();
    Poly um1 = Poly::constant(1);
    if (k == 0) return um1;
    const Poly two_x = Rational(2) * Poly::x();
    Poly u = two_x;
    for (int i = 2; i <= k; ++i) {
        Poly next = two_x * u - um1;
        um1 = std::move(u);
        u = std::move(next);
    }
    return u;
}

// P_1 = x, P_2 = x^2 - (d+1), P_k = x P_{k-1} - d P_{k-2}.
// Entry (u,v) of P_k(A) sums the weights of non-backtracking length-k walks
// from u to v on a (d+1)-regular graph with adjacency-type matrix A.
inline Poly p_poly(int k, long d) {
    if (k < 1) throw std::invalid_argument("p_poly: k must be >= 1");
    if (d < 1) throw std::invalid_argument("p_poly: d must be >= 1");
    Poly pm1 = Poly::x();
    if (k == 1) return pm1;
    Poly p({Rational(-(d + 1)), Rational(0), Rational(1)});
    const Poly x = Poly::x();
    for (int i = 3; i <= k; ++i) {
        Poly next = x * p - Rational(d) * pm1;
        pm1 = std::move(p);
        p = std::move(next);
    }
    return p;
}

// F_1 = x - (c+1), F_2 = x^2 - (2c+d+1)x + (c+1)c,
// F_k = (x - (c+d)) F_{k-1} - cd F_{k-2}.
// Entry (v0,vk) of F_k(AA*) sums bipartite non-backtracking length-2k walk
// weights between vertices of the (c+1,d+1)-biregular side V.
inline Poly f_poly(int k, long c, long d) {
    if (k < 1) throw std::invalid_argument("f_poly: k must be >= 1");
    if (c < 1 || d < 1) throw std::invalid_argument("f_poly: c,d must be >= 1");
    Poly fm1({Rational(-(c + 1)), Rational(1)});
    if (k == 1) return fm1;
    Poly f({Rational((c + 1) * c), Rational(-(2 * c + d + 1)), Rational(1)});
    const Poly xs({Rational(-(c + d)), Rational(1)});
    for (int i = 3; i <= k; ++i) {
        Poly next = xs * f - Rational(c * d) * fm1;
        fm1 = std::move(f);
        f = std::move(next);
    }
    return f;
}

namespace detail {

// m^{k/2} X_k(x / (2 sqrt(m))) for a parity-k source polynomial X_k.
// Term j picks up m^{(k-j)/2} / 2^j, an exact rational since k-j is even.
inline Poly scale_by_half_sqrt(const Poly& xk, int k, long m) {
    if (xk.is_zero()) return xk;
    if (!xk.has_parity_of(k)) throw std::logic_error("scale_by_half_sqrt: parity mismatch");
    std::vector<Rational> out(static_cast<size_t>(xk.degree()) + 1, Rational(0));
    for (int j = 0; j <= xk.degree(); ++j) {
        if (xk.coeff(j) == 0) continue;
        Rational f(ipow(BigInt(m), (k - j) / 2), ipow(BigInt(2), j));
        out[static_cast<size_t>(j)] = xk.coeff(j) * f;
    }
    return Poly(std::move(out));
}

}  // namespace detail

// m^{k/2} T_k(x / (2 sqrt(m))), exact.  m > 0.
inline Poly scaled_cheb_t(int k, long m) {
    if (m <= 0) throw std::invalid_argument("scaled_cheb_t: m must be positive");
    return detail::scale_by_half_sqrt(cheb_t(k), k, m);
}

// m^{k/2} U_k(x / (2 sqrt(m))), exact.  Zero for k < 0.
inline Poly scaled_cheb_u(int k, long m) {
    if (m <= 0) throw std::invalid_argument("scaled_cheb_u: m must be positive");
    if (k < 0) return Poly::zero();
    return detail::scale_by_half_sqrt(cheb_u(k), k, m);
}

// (cd)^{k/2} T_k((x - (c+d)) / (2 sqrt(cd))), exact.
inline Poly t_modified(int k, long c, long d) {
    if (c < 1 || d < 1) throw std::invalid_argument("t_modified: c,d must be >= 1");
    return scaled_cheb_t(k, c * d).shifted(Rational(-(c + d)));
}

// (cd)^{k/2} U_k((x - (c+d)) / (2 sqrt(cd))), exact.  Zero for k < 0.
inline Poly u_modified(int k, long c, long d) {
    if (c < 1 || d < 1) throw std::invalid_argument("u_modified: c,d must be >= 1");
    return scaled_cheb_u(k, c * d).shifted(Rational(-(c + d)));
}

// ((c-d)(-d)^k + cd - 1) / (d+1).
inline Rational s_constant(int k, long c, long d) {
    if (k < 0) throw std::invalid_argument("s_constant: negative k");
    BigInt num = BigInt(c - d) * ipow(BigInt(-d), k) + BigInt(c) * d - 1;
    return Rational(num, BigInt(d + 1));
}

// S_k = 2 T~_k + s_{c,d,k} for k >= 1, zero for k <= 0.  Its trace against
// AA* counts tailless closed non-backtracking walks of length 2k based on
// the degree-(c+1) side.
inline Poly s_poly(int k, long c, long d) {
    if (k <= 0) return Poly::zero();
    return Rational(2) * t_modified(k, c, d) + Poly::constant(s_constant(k, c, d));
}

// U_k == 2(T_k + T_{k-2} + ... + T_eps) + (eps - 1), eps = k mod 2.
inline bool check_relation_u_t(int k) {
    if (k < 0) throw std::invalid_argument("check_relation_u_t: negative k");
    int eps = k % 2;
    Poly sum;
    for (int j = k; j >= eps; j -= 2) sum = sum + cheb_t(j);
    Poly rhs = Rational(2) * sum + Poly::constant(Rational(eps - 1));
    return cheb_u(k) == rhs;
}

// P_k == d^{k/2} U_k(x/(2 sqrt d)) - d^{(k-2)/2} U_{k-2}(x/(2 sqrt d)).
inline bool check_relation_p_u(int k, long d) {
    Poly rhs = scaled_cheb_u(k, d) - scaled_cheb_u(k - 2, d);
    return p_poly(k, d) == rhs;
}

// F_k == U~_k + (d-1) U~_{k-1} - d U~_{k-2}.
inline bool check_relation_f_u(int k, long c, long d) {
    Poly rhs = u_modified(k, c, d) + Rational(d - 1) * u_modified(k - 1, c, d) -
               Rational(d) * u_modified(k - 2, c, d);
    return f_poly(k, c, d) == rhs;
}

namespace detail {

template <typename Scalar>
void require_hermitian(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    double scale = m.cwiseAbs().maxCoeff();
    double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * (1.0 + scale)) throw std::invalid_argument("matrix must be Hermitian");
}

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& x) { return x.real(); }

}  // namespace detail

// Tr p(M) for Hermitian M, via the power sequence I, M, M^2, ...
template <typename Scalar>
double trace_poly(const Poly& p, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    detail::require_hermitian(m);
    const auto n = m.rows();
    if (p.is_zero()) return 0.0;
    double acc = to_double(p.coeff(0)) * static_cast<double>(n);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pw =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
    for (int j = 1; j <= p.degree(); ++j) {
        pw = (pw * m).eval();
        if (p.coeff(j) != 0) acc += to_double(p.coeff(j)) * detail::real_part(pw.trace());
    }
    return acc;
}

// Tr T_j(M) for j = 0..kmax via the matrix three-term recurrence.
template <typename Scalar>
std::vector<double> trace_cheb_all(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                                   int kmax) {
    detail::require_hermitian(m);
    if (kmax < 0) throw std::invalid_argument("trace_cheb_all: negative kmax");
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const auto n = m.rows();
    std::vector<double> tr(static_cast<size_t>(kmax) + 1);
    tr[0] = static_cast<double>(n);
    if (kmax == 0) return tr;
    Mat tm1 = Mat::Identity(n, n);
    Mat t = m;
    tr[1] = detail::real_part(t.trace());
    for (int j = 2; j <= kmax; ++j) {
        Mat next = 2.0 * (m * t) - tm1;
        tm1 = std::move(t);
        t = std::move(next);
        tr[static_cast<size_t>(j)] = detail::real_part(t.trace());
    }
    return tr;
}

template <typename Scalar>
double trace_cheb(int k, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    return trace_cheb_all(m, k).back();
}

// Tr M^j for j = 0..jmax with ceil(jmax/2) - 1 multiplies: form M^2..M^p for
// p = ceil(jmax/2) and read the upper half off Frobenius products
// Tr M^{r+s} = <M^r, M^s>.
template <typename Scalar>
std::vector<double> power_traces(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                                 int jmax) {
    detail::require_hermitian(m);
    if (jmax < 0) throw std::invalid_argument("power_traces: negative jmax");
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const auto n = m.rows();
    std::vector<double> tr(static_cast<size_t>(jmax) + 1);
    tr[0] = static_cast<double>(n);
    if (jmax == 0) return tr;
    const int p = (jmax + 1) / 2;
    std::vector<Mat> pw;  // pw[i] = M^{i+1}
    pw.reserve(static_cast<size_t>(p));
    pw.push_back(m);
    for (int i = 2; i <= p; ++i) pw.push_back(pw.back() * m);
    for (int j = 1; j <= jmax; ++j) {
        const int r = (j + 1) / 2, s = j / 2;
        if (s == 0) {
            tr[static_cast<size_t>(j)] = detail::real_part(pw[0].trace());
        } else {
            // Hermitian powers: Tr M^{r+s} = sum_ij (M^r)_ij conj((M^s)_ij).
            tr[static_cast<size_t>(j)] =
                detail::real_part(pw[static_cast<size_t>(r - 1)]
                                      .cwiseProduct(pw[static_cast<size_t>(s - 1)].conjugate())
                                      .sum());
        }
    }
    return tr;
}

// Combine monomial traces into Chebyshev traces: Tr T_k(M) from Tr M^j.
inline std::vector<double> cheb_traces_from_powers(const std::vector<double>& ptr, int kmax) {
    if (static_cast<int>(ptr.size()) < kmax + 1)
        throw std::invalid_argument("cheb_traces_from_powers: need power traces up to kmax");
    std::vector<double> tr(static_cast<size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
        const Poly t = cheb_t(k);
        double acc = 0;
        for (int j = 0; j <= k; ++j)
            if (t.coeff(j) != 0) acc += to_double(t.coeff(j)) * ptr[static_cast<size_t>(j)];
        tr[static_cast<size_t>(k)] = acc;
    }
    return tr;
}

// Chebyshev coefficient series of a function on [-1,1].
struct ChebSeries {
    std::vector<double> c;        // c[k] multiplies T_k
    double tail_weight = 0.0;     // bound on sum_{k > K} k c_k^2 dropped by truncation

    int order() const { return static_cast<int>(c.size()) - 1; }
    double coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[static_cast<size_t>(k)] : 0.0;
    }
};

// Gauss-Chebyshev (midpoint-in-theta) quadrature for the coefficients
//   c_0 = (1/pi) integral f(x)/sqrt(1-x^2) dx,
//   c_k = (2/pi) integral f(x) T_k(x)/sqrt(1-x^2) dx,  k >= 1.
// Exact for polynomial f with deg f + K < nodes; nodes >= 4K keeps plenty of
// margin and controls aliasing for smooth non-polynomial f.
inline ChebSeries cheb_coefficients(const std::function<double(double)>& f, int max_order,
                                    int nodes) {
    if (max_order < 0) throw std::invalid_argument("cheb_coefficients: negative order");
    if (nodes < 4 * std::max(1, max_order))
        throw std::invalid_argument("cheb_coefficients: nodes must be >= 4*max_order");
    std::vector<double> fx(static_cast<size_t>(nodes)), theta(static_cast<size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        theta[static_cast<size_t>(j)] = M_PI * (j + 0.5) / nodes;
        fx[static_cast<size_t>(j)] = f(std::cos(theta[static_cast<size_t>(j)]));
    }
    ChebSeries s;
    s.c.resize(static_cast<size_t>(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) {
        double acc = 0;
        for (int j = 0; j < nodes; ++j)
            acc += fx[static_cast<size_t>(j)] * std::cos(k * theta[static_cast<size_t>(j)]);
        s.c[static_cast<size_t>(k)] = acc * ((k == 0 ? 1.0 : 2.0) / nodes);
    }
    return s;
}

}
