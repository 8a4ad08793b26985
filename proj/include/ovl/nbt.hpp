#pragma once

// Non-backtracking walk enumeration on phased graphs and the exact identity
// checks tying walk sums to the spectral polynomial families.
//
// Conventions: walks are directed and based, i.e. (u0,...,uk) and its
// reversal or rotations are distinct walks.  Non-backtracking means
// u_{j+1} != u_{j-1} at every interior step; a closed walk (u_k = u_0) is
// additionally "tailless" when u_{k-1} != u_1, which extends the
// non-backtracking condition through the base point.
//
// For graphs without sign/circle phases the checks run in exact integer or
// rational arithmetic end to end; unit-circle phases use complex doubles
// with a tolerance scaled by the number of walks.

#include "ovl/chebyshev.hpp"
#include "ovl/graph.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace ovl {

struct Path {
    std::vector<int> v;  // vertex sequence; closed walks repeat the base at the end
};

namespace detail {

// (d+1) d^{k-1} n bounds the enumeration work in tree nodes.
inline bool walk_budget_fits(long long degree, long long branch, int steps, long long n,
                             long double cap) {
    long double est = static_cast<long double>(degree) * n;
    for (int i = 1; i < steps; ++i) {
        est *= static_cast<long double>(branch);
        if (est > cap) return false;
    }
    return true;
}

inline void check_walk_budget(long long degree, long long branch, int steps, long long n) {
    if (!walk_budget_fits(degree, branch, steps, n, 4e8L))
        throw std::invalid_argument("walk enumeration budget exceeded");
}

inline bool has_edge(const PhasedGraph& g, int a, int b) { return g.sw(a, b) != 0; }

// The enumerators carry the edge-weight product along with the search so a
// finished walk costs O(1) instead of O(k) to weigh: wf(u, v) supplies one
// edge weight and visit(p, w) sees the vertex sequence with its product.

// Closed non-backtracking walks of length k from every base point; the
// closing edge is tested directly instead of being searched.
// RequireTailless selects tailless walks only.
template <bool RequireTailless, class WeightFn, class Visit>
void closed_walks(const PhasedGraph& g, int k, WeightFn&& wf, Visit&& visit) {
    using W = std::decay_t<decltype(wf(0, 0))>;
    if (k < 1) throw std::invalid_argument("closed walk length must be >= 1");
    detail::check_walk_budget(g.d + 1, g.d, k, g.n);
    if (k <= 2) return;  // no loops, and closing a 2-step walk backtracks
    std::vector<int> p(static_cast<size_t>(k) + 1);
    std::vector<W> ws(static_cast<size_t>(k));  // ws[j]: product over the first j edges
    ws[0] = W(1);
    auto rec = [&](auto&& self, int j) -> void {
        if (j == k - 1) {
            // u_k = u_0: needs the edge, the final non-backtracking condition
            // u_0 != u_{k-2}, and (optionally) taillessness u_{k-1} != u_1.
            if (has_edge(g, p[static_cast<size_t>(k - 1)], p[0]) &&
                p[0] != p[static_cast<size_t>(k - 2)] &&
                (!RequireTailless || p[static_cast<size_t>(k - 1)] != p[1])) {
                p[static_cast<size_t>(k)] = p[0];
                visit(p, ws[static_cast<size_t>(k - 1)] * wf(p[static_cast<size_t>(k - 1)], p[0]));
            }
            return;
        }
        for (int w : g.adj[static_cast<size_t>(p[static_cast<size_t>(j)])])
            if (w != p[static_cast<size_t>(j - 1)]) {
                p[static_cast<size_t>(j + 1)] = w;
                ws[static_cast<size_t>(j + 1)] =
                    ws[static_cast<size_t>(j)] * wf(p[static_cast<size_t>(j)], w);
                self(self, j + 1);
            }
    };
    for (int u0 = 0; u0 < g.n; ++u0) {
        p[0] = u0;
        for (int u1 : g.adj[static_cast<size_t>(u0)]) {
            p[1] = u1;
            ws[1] = wf(u0, u1);
            rec(rec, 1);
        }
    }
}

// Open non-backtracking walks of length k from every start; visit(p, w) sees
// the full vertex sequence and its weight.
template <class WeightFn, class Visit>
void open_walks(const PhasedGraph& g, int k, WeightFn&& wf, Visit&& visit) {
    using W = std::decay_t<decltype(wf(0, 0))>;
    if (k < 1) throw std::invalid_argument("walk length must be >= 1");
    detail::check_walk_budget(g.d + 1, g.d, k, g.n);
    std::vector<int> p(static_cast<size_t>(k) + 1);
    std::vector<W> ws(static_cast<size_t>(k) + 1);
    ws[0] = W(1);
    auto rec = [&](auto&& self, int j) -> void {
        if (j == k) {
            visit(p, ws[static_cast<size_t>(k)]);
            return;
        }
        for (int w : g.adj[static_cast<size_t>(p[static_cast<size_t>(j)])])
            if (j == 0 || w != p[static_cast<size_t>(j - 1)]) {
                p[static_cast<size_t>(j + 1)] = w;
                ws[static_cast<size_t>(j + 1)] =
                    ws[static_cast<size_t>(j)] * wf(p[static_cast<size_t>(j)], w);
                self(self, j + 1);
            }
    };
    for (int u0 = 0; u0 < g.n; ++u0) {
        p[0] = u0;
        rec(rec, 0);
    }
}

// Bipartite walks (v0, w1, v1, ..., w_k, v_k) stored flat; even positions
// are V-side ids, odd positions W-side.  Closed + tailless means v_k = v_0
// with v_0 != v_{k-1} and w_k != w_1.  wf(j, from, to) weighs the step at
// position j, so down- and up-steps can use different conventions.
template <bool Closed, class WeightFn, class Visit>
void bipartite_walks(const BipartitePhasedGraph& g, int k, WeightFn&& wf, Visit&& visit) {
    using W = std::decay_t<decltype(wf(0, 0, 0))>;
    if (k < 1) throw std::invalid_argument("bipartite walk length must be >= 1");
    const int len = 2 * k;
    detail::check_walk_budget(g.c + 1, std::max(g.c, g.d), len, g.nv);
    std::vector<int> p(static_cast<size_t>(len) + 1);
    std::vector<W> ws(static_cast<size_t>(len) + 1);
    ws[0] = W(1);
    auto rec = [&](auto&& self, int j) -> void {
        if (Closed && j == len - 1) {
            const int wk = p[static_cast<size_t>(j)];
            if (p[0] != p[static_cast<size_t>(len - 2)] && wk != p[1] &&
                g.sw(p[0], wk) != 0) {
                p[static_cast<size_t>(len)] = p[0];
                visit(p, ws[static_cast<size_t>(len - 1)] * wf(len - 1, wk, p[0]));
            }
            return;
        }
        if (j == len) {
            visit(p, ws[static_cast<size_t>(len)]);
            return;
        }
        if (j % 2 == 0) {  // at a V vertex, step to W
            for (int w : g.adj_v[static_cast<size_t>(p[static_cast<size_t>(j)])])
                if (j == 0 || w != p[static_cast<size_t>(j - 1)]) {
                    p[static_cast<size_t>(j + 1)] = w;
                    ws[static_cast<size_t>(j + 1)] =
                        ws[static_cast<size_t>(j)] * wf(j, p[static_cast<size_t>(j)], w);
                    self(self, j + 1);
                }
        } else {  // at a W vertex, step to V
            for (int v : g.adj_w[static_cast<size_t>(p[static_cast<size_t>(j)])])
                if (v != p[static_cast<size_t>(j - 1)]) {
                    p[static_cast<size_t>(j + 1)] = v;
                    ws[static_cast<size_t>(j + 1)] =
                        ws[static_cast<size_t>(j)] * wf(j, p[static_cast<size_t>(j)], v);
                    self(self, j + 1);
                }
        }
    };
    for (int v0 = 0; v0 < g.nv; ++v0) {
        p[0] = v0;
        rec(rec, 0);
    }
}

inline long long unit_weight(int, int) { return 1; }
inline long long unit_weight_bip(int, int, int) { return 1; }

}  // namespace detail

// Product of edge weights along a walk.
inline std::complex<double> path_weight(const PhasedGraph& g, const Path& path) {
    std::complex<double> w(1.0, 0.0);
    for (size_t i = 0; i + 1 < path.v.size(); ++i) w *= g.weight(path.v[i], path.v[i + 1]);
    return w;
}

// Bipartite two-sided weight: down-steps v->w contribute A(v,w), up-steps
// w->v contribute conj(A(v,w)).
inline std::complex<double> bipartite_weight(const BipartitePhasedGraph& g, const Path& path) {
    std::complex<double> acc(1.0, 0.0);
    for (size_t i = 0; i + 1 < path.v.size(); ++i) {
        if (i % 2 == 0)
            acc *= g.weight(path.v[i], path.v[i + 1]);
        else
            acc *= std::conj(g.weight(path.v[i + 1], path.v[i]));
    }
    return acc;
}

// Materialized list of closed tailless non-backtracking walks (small cases;
// refuse above 2e6 walks).
inline std::vector<Path> enumerate_nbt_closed(const PhasedGraph& g, int k) {
    std::vector<Path> out;
    detail::closed_walks<true>(g, k, detail::unit_weight, [&](const std::vector<int>& p, long long) {
        if (out.size() >= 2000000) throw std::length_error("enumerate_nbt_closed: too many walks");
        out.push_back(Path{p});
    });
    return out;
}

inline std::vector<Path> enumerate_nbt_closed(const BipartitePhasedGraph& g, int k) {
    std::vector<Path> out;
    detail::bipartite_walks<true>(g, k, detail::unit_weight_bip,
                                  [&](const std::vector<int>& p, long long) {
        if (out.size() >= 2000000) throw std::length_error("enumerate_nbt_closed: too many walks");
        out.push_back(Path{p});
    });
    return out;
}

inline long long count_nbt_closed(const PhasedGraph& g, int k) {
    long long c = 0;
    detail::closed_walks<true>(g, k, detail::unit_weight,
                               [&](const std::vector<int>&, long long) { ++c; });
    return c;
}

// Closed non-backtracking walk counts split by tail length (the longest t
// with u_i = u_{k-i} for all i <= t).  Index t of the result.
inline std::vector<long long> count_nb_closed_by_tail(const PhasedGraph& g, int k) {
    std::vector<long long> by_tail(static_cast<size_t>(k) / 2 + 1, 0);
    detail::closed_walks<false>(g, k, detail::unit_weight,
                                [&](const std::vector<int>& p, long long) {
        int t = 0;
        while (p[static_cast<size_t>(t + 1)] == p[static_cast<size_t>(k - t - 1)]) ++t;
        ++by_tail[static_cast<size_t>(t)];
    });
    return by_tail;
}

namespace detail {

inline long long int_coeff(const Rational& r) {
    if (boost::multiprecision::denominator(r) != 1)
        throw std::logic_error("expected integer coefficient");
    return boost::multiprecision::numerator(r).convert_to<long long>();
}

// p(M) for integer-coefficient p and integer M, exact.
inline IntMatrix int_poly_apply(const Poly& p, const IntMatrix& m) {
    const auto n = m.rows();
    IntMatrix acc = IntMatrix::Identity(n, n) * int_coeff(p.coeff(0));
    IntMatrix pw = IntMatrix::Identity(n, n);
    for (int j = 1; j <= p.degree(); ++j) {
        pw = (pw * m).eval();
        const long long c = int_coeff(p.coeff(j));
        if (c != 0) acc += pw * c;
    }
    return acc;
}

inline CxMatrix cx_poly_apply(const Poly& p, const CxMatrix& m) {
    const auto n = m.rows();
    CxMatrix acc = CxMatrix::Identity(n, n) * to_double(p.coeff(0));
    CxMatrix pw = CxMatrix::Identity(n, n);
    for (int j = 1; j <= p.degree(); ++j) {
        pw = (pw * m).eval();
        acc += pw * to_double(p.coeff(j));
    }
    return acc;
}

// Tr M^j for j = 0..jmax of an integer matrix, exact.
inline std::vector<BigInt> int_power_traces(const IntMatrix& m, int jmax) {
    const auto n = m.rows();
    std::vector<BigInt> tr(static_cast<size_t>(jmax) + 1);
    tr[0] = n;
    IntMatrix pw = IntMatrix::Identity(n, n);
    for (int j = 1; j <= jmax; ++j) {
        pw = (pw * m).eval();
        tr[static_cast<size_t>(j)] = pw.trace();
    }
    return tr;
}

inline Rational rational_trace(const Poly& p, const std::vector<BigInt>& ptr, long long n) {
    Rational acc = p.coeff(0) * n;
    for (int j = 1; j <= p.degree(); ++j) acc += p.coeff(j) * Rational(ptr[static_cast<size_t>(j)]);
    return acc;
}

}  // namespace detail

// Walk sums over non-backtracking length-k walks u -> v match P_k applied to
// the weighted adjacency matrix, entrywise.
inline bool verify_thm_2_1(const PhasedGraph& g, int k) {
    if (g.is_complex()) {
        CxMatrix lhs = CxMatrix::Zero(g.n, g.n);
        long long paths = 0;
        detail::open_walks(
            g, k, [&](int u, int v) { return g.cw(u, v); },
            [&](const std::vector<int>& p, const std::complex<double>& w) {
                lhs(p[0], p[static_cast<size_t>(k)]) += w;
                ++paths;
            });
        const CxMatrix rhs = detail::cx_poly_apply(p_poly(k, g.d), g.cw);
        return (lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + static_cast<double>(paths));
    }
    IntMatrix lhs = IntMatrix::Zero(g.n, g.n);
    detail::open_walks(
        g, k, [&](int u, int v) { return g.sw(u, v); },
        [&](const std::vector<int>& p, long long w) { lhs(p[0], p[static_cast<size_t>(k)]) += w; });
    return lhs == detail::int_poly_apply(p_poly(k, g.d), g.sw);
}

// Closed tailless walk sums match Tr[2 d^{k/2} T_k(A / 2 sqrt d)], with the
// extra (d-1) I_n inside the trace when k is even.
inline bool verify_thm_2_2(const PhasedGraph& g, int k) {
    const Poly q = Rational(2) * scaled_cheb_t(k, g.d);
    if (g.is_complex()) {
        std::complex<double> lhs(0.0, 0.0);
        long long paths = 0;
        detail::closed_walks<true>(
            g, k, [&](int u, int v) { return g.cw(u, v); },
            [&](const std::vector<int>&, const std::complex<double>& w) {
                lhs += w;
                ++paths;
            });
        double rhs = trace_poly(q, g.cw);
        if (k % 2 == 0) rhs += static_cast<double>(g.d - 1) * g.n;
        return std::abs(lhs - rhs) <= 1e-9 * (1.0 + static_cast<double>(paths));
    }
    long long lhs = 0;
    detail::closed_walks<true>(
        g, k, [&](int u, int v) { return g.sw(u, v); },
        [&](const std::vector<int>&, long long w) { lhs += w; });
    Rational rhs = detail::rational_trace(q, detail::int_power_traces(g.sw, k), g.n);
    if (k % 2 == 0) rhs += Rational((static_cast<long long>(g.d) - 1) * g.n);
    return Rational(lhs) == rhs;
}

// Bipartite walk sums over non-backtracking length-2k walks v0 -> vk match
// F_k(AA*), entrywise on the V side.
inline bool verify_thm_2_3(const BipartitePhasedGraph& g, int k) {
    if (g.is_complex()) {
        CxMatrix lhs = CxMatrix::Zero(g.nv, g.nv);
        long long paths = 0;
        detail::bipartite_walks<false>(
            g, k,
            [&](int j, int from, int to) {
                return j % 2 == 0 ? g.cw(from, to) : std::conj(g.cw(to, from));
            },
            [&](const std::vector<int>& p, const std::complex<double>& w) {
                lhs(p[0], p[static_cast<size_t>(2 * k)]) += w;
                ++paths;
            });
        const CxMatrix gram = g.cw * g.cw.adjoint();
        const CxMatrix rhs = detail::cx_poly_apply(f_poly(k, g.c, g.d), gram);
        return (lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + static_cast<double>(paths));
    }
    IntMatrix lhs = IntMatrix::Zero(g.nv, g.nv);
    detail::bipartite_walks<false>(
        g, k,
        [&](int j, int from, int to) { return j % 2 == 0 ? g.sw(from, to) : g.sw(to, from); },
        [&](const std::vector<int>& p, long long w) {
            lhs(p[0], p[static_cast<size_t>(2 * k)]) += w;
        });
    const IntMatrix gram = g.sw * g.sw.transpose();
    return lhs == detail::int_poly_apply(f_poly(k, g.c, g.d), gram);
}

// Closed tailless bipartite walk sums based on the V side match
// Tr[2 T~_k(AA*) + s_{c,d,k} I].  Requires c >= d.
inline bool verify_thm_2_4(const BipartitePhasedGraph& g, int k) {
    if (g.c < g.d) throw std::invalid_argument("verify_thm_2_4: requires c >= d");
    const Poly q = Rational(2) * t_modified(k, g.c, g.d);
    if (g.is_complex()) {
        std::complex<double> lhs(0.0, 0.0);
        long long paths = 0;
        detail::bipartite_walks<true>(
            g, k,
            [&](int j, int from, int to) {
                return j % 2 == 0 ? g.cw(from, to) : std::conj(g.cw(to, from));
            },
            [&](const std::vector<int>&, const std::complex<double>& w) {
                lhs += w;
                ++paths;
            });
        const CxMatrix gram = g.cw * g.cw.adjoint();
        const double rhs =
            trace_poly(q, gram) + to_double(s_constant(k, g.c, g.d)) * static_cast<double>(g.nv);
        return std::abs(lhs - rhs) <= 1e-9 * (1.0 + static_cast<double>(paths));
    }
    long long lhs = 0;
    detail::bipartite_walks<true>(
        g, k,
        [&](int j, int from, int to) { return j % 2 == 0 ? g.sw(from, to) : g.sw(to, from); },
        [&](const std::vector<int>&, long long w) { lhs += w; });
    const IntMatrix gram = g.sw * g.sw.transpose();
    Rational rhs = detail::rational_trace(q, detail::int_power_traces(gram, k), g.nv) +
                   s_constant(k, g.c, g.d) * g.nv;
    return Rational(lhs) == rhs;
}

}
