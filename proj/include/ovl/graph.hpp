#pragma once

// Regular and biregular graphs with edge weights ("phases") attached.
//
// Weight models: AllOnes (plain adjacency), Sign (+/-1 per undirected edge),
// UnitCircle (e^{i theta} in one direction, conjugate in the other).  The
// first two stay in exact integer arithmetic; the unit-circle model uses
// complex doubles.

#include "ovl/philox.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace ovl {

enum class WeightKind { AllOnes, Sign, UnitCircle };

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using CxMatrix = Eigen::MatrixXcd;

// (d+1)-regular undirected graph, no loops or multi-edges.
struct PhasedGraph {
    int n = 0;
    int d = 0;  // degree is d+1
    std::vector<std::vector<int>> adj;
    WeightKind kind = WeightKind::AllOnes;
    IntMatrix sw;  // entries in {-1,0,1}; AllOnes/Sign models
    CxMatrix cw;   // UnitCircle model

    bool is_complex() const { return kind == WeightKind::UnitCircle; }

    std::complex<double> weight(int u, int v) const {
        return is_complex() ? cw(u, v) : std::complex<double>(static_cast<double>(sw(u, v)), 0.0);
    }
};

// Biregular bipartite graph: every V-vertex has degree c+1, every W-vertex
// degree d+1.  Weights live on (v,w) pairs; the step w -> v uses the
// conjugate.
struct BipartitePhasedGraph {
    int nv = 0, nw = 0;
    int c = 0, d = 0;
    std::vector<std::vector<int>> adj_v;  // v -> list of w
    std::vector<std::vector<int>> adj_w;  // w -> list of v
    WeightKind kind = WeightKind::AllOnes;
    IntMatrix sw;  // nv x nw
    CxMatrix cw;

    bool is_complex() const { return kind == WeightKind::UnitCircle; }

    std::complex<double> weight(int v, int w) const {
        return is_complex() ? cw(v, w) : std::complex<double>(static_cast<double>(sw(v, w)), 0.0);
    }
};

namespace detail {

inline void finish_regular(PhasedGraph& g) {
    g.adj.assign(static_cast<size_t>(g.n), {});
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
            if (g.sw(u, v) != 0) g.adj[static_cast<size_t>(u)].push_back(v);
    const size_t deg = g.adj.empty() ? 0 : g.adj[0].size();
    for (const auto& nb : g.adj)
        if (nb.size() != deg) throw std::logic_error("graph is not regular");
    g.d = static_cast<int>(deg) - 1;
    if (g.d < 1) throw std::invalid_argument("graph needs degree >= 2");
}

}  // namespace detail

// Complete graph K_n, all-ones weights.  n >= 3.
inline PhasedGraph graph_complete(int n) {
    if (n < 3) throw std::invalid_argument("graph_complete: n must be >= 3");
    PhasedGraph g;
    g.n = n;
    g.sw = IntMatrix::Ones(n, n) - IntMatrix::Identity(n, n);
    detail::finish_regular(g);
    return g;
}

// Cycle C_n, all-ones weights.  n >= 3.
inline PhasedGraph graph_cycle(int n) {
    if (n < 3) throw std::invalid_argument("graph_cycle: n must be >= 3");
    PhasedGraph g;
    g.n = n;
    g.sw = IntMatrix::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        g.sw(u, (u + 1) % n) = 1;
        g.sw((u + 1) % n, u) = 1;
    }
    detail::finish_regular(g);
    return g;
}

// Complete bipartite K_{nv,nw} with V the first argument's side, all-ones.
// Every V-vertex has degree nw (so c = nw-1), every W-vertex degree nv.
inline BipartitePhasedGraph graph_complete_bipartite(int nv, int nw) {
    if (nv < 2 || nw < 2)
        throw std::invalid_argument("graph_complete_bipartite: sides must have >= 2 vertices");
    BipartitePhasedGraph g;
    g.nv = nv;
    g.nw = nw;
    g.c = nw - 1;
    g.d = nv - 1;
    g.sw = IntMatrix::Ones(nv, nw);
    g.adj_v.assign(static_cast<size_t>(nv), {});
    g.adj_w.assign(static_cast<size_t>(nw), {});
    for (int v = 0; v < nv; ++v)
        for (int w = 0; w < nw; ++w) {
            g.adj_v[static_cast<size_t>(v)].push_back(w);
            g.adj_w[static_cast<size_t>(w)].push_back(v);
        }
    return g;
}

namespace detail {

inline uint64_t edge_cell(int u, int v) {
    const uint64_t a = static_cast<uint64_t>(std::min(u, v));
    const uint64_t b = static_cast<uint64_t>(std::max(u, v));
    return (b * (b + 1)) / 2 + a;
}

}  // namespace detail

// Assign independent random phases to the edges, keyed by (seed, edge).
inline PhasedGraph with_random_phases(PhasedGraph g, WeightKind kind, uint64_t seed) {
    g.kind = kind;
    if (kind == WeightKind::AllOnes) return g;
    if (kind == WeightKind::UnitCircle) {
        g.cw = CxMatrix::Zero(g.n, g.n);
    }
    for (int u = 0; u < g.n; ++u) {
        for (int v : g.adj[static_cast<size_t>(u)]) {
            if (v < u) continue;
            const auto pr = uniform_pair(seed, detail::edge_cell(u, v), /*ctr_hi=*/1);
            if (kind == WeightKind::Sign) {
                const long long s = pr.u1 < 0.5 ? -1 : 1;
                g.sw(u, v) = s;
                g.sw(v, u) = s;
            } else {
                const double th = 2.0 * M_PI * pr.u1;
                g.cw(u, v) = std::complex<double>(std::cos(th), std::sin(th));
                g.cw(v, u) = std::conj(g.cw(u, v));
            }
        }
    }
    return g;
}

inline BipartitePhasedGraph with_random_phases(BipartitePhasedGraph g, WeightKind kind,
                                               uint64_t seed) {
    g.kind = kind;
    if (kind == WeightKind::AllOnes) return g;
    if (kind == WeightKind::UnitCircle) g.cw = CxMatrix::Zero(g.nv, g.nw);
    for (int v = 0; v < g.nv; ++v)
        for (int w : g.adj_v[static_cast<size_t>(v)]) {
            const uint64_t cell = static_cast<uint64_t>(v) * static_cast<uint64_t>(g.nw) +
                                  static_cast<uint64_t>(w);
            const auto pr = uniform_pair(seed, cell, /*ctr_hi=*/2);
            if (kind == WeightKind::Sign) {
                g.sw(v, w) = pr.u1 < 0.5 ? -1 : 1;
            } else {
                const double th = 2.0 * M_PI * pr.u1;
                g.cw(v, w) = std::complex<double>(std::cos(th), std::sin(th));
            }
        }
    return g;
}

}
