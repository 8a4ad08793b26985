#pragma once

// Catalan/Narayana numbers, non-crossing partition and plane tree counts by
// exhaustive enumeration, and the alternating Narayana sum R_k with its
// closed form.

#include "ovl/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ovl {

// C_k = binom(2k, k) / (k+1).
inline BigInt catalan(long k) {
    if (k < 0) throw std::invalid_argument("catalan: negative index");
    return binomial(2 * k, k) / (k + 1);
}

// Catalan number at half-integer argument twice_k/2: zero unless twice_k is
// even and nonnegative.
inline BigInt catalan_twice(long twice_k) {
    if (twice_k < 0 || twice_k % 2 != 0) return 0;
    return catalan(twice_k / 2);
}

// N(n,k) = (1/k) binom(n-1, k-1) binom(n, k-1); zero outside 1 <= k <= n.
inline BigInt narayana(long n, long k) {
    if (n < 1 || k < 1 || k > n) return 0;
    return binomial(n - 1, k - 1) * binomial(n, k - 1) / k;
}

namespace detail {

// Non-crossing test for a set partition given as block labels per position.
// Scan left to right keeping a stack of blocks that are open (between their
// first and last member); a partition crosses exactly when a revisited block
// is not the top of the stack.
inline bool is_noncrossing(const std::vector<int>& block_of, const std::vector<int>& last_pos) {
    thread_local std::vector<int> stack;
    thread_local std::vector<char> seen;
    stack.clear();
    seen.assign(block_of.size(), 0);
    for (size_t i = 0; i < block_of.size(); ++i) {
        const int b = block_of[i];
        if (!seen[static_cast<size_t>(b)]) {
            seen[static_cast<size_t>(b)] = 1;
            stack.push_back(b);
        } else if (stack.empty() || stack.back() != b) {
            return false;
        }
        if (last_pos[static_cast<size_t>(b)] == static_cast<int>(i)) stack.pop_back();
    }
    return true;
}

}  // namespace detail

// Number of non-crossing partitions of {1..n} with exactly k blocks, by
// enumerating all set partitions (restricted growth strings).  n <= 12.
inline BigInt nc_partition_count(int n, int k) {
    if (n < 1 || n > 12) throw std::invalid_argument("nc_partition_count: n must be in 1..12");
    if (k < 1 || k > n) return 0;
    std::vector<int> block_of(static_cast<size_t>(n)), last_pos(static_cast<size_t>(n));
    long long count = 0;
    auto rec = [&](auto&& self, int pos, int nblocks) -> void {
        if (pos == n) {
            if (nblocks != k) return;
            for (int b = 0; b < nblocks; ++b) last_pos[static_cast<size_t>(b)] = -1;
            for (int i = n - 1; i >= 0; --i) {
                int b = block_of[static_cast<size_t>(i)];
                if (last_pos[static_cast<size_t>(b)] < 0) last_pos[static_cast<size_t>(b)] = i;
            }
            if (detail::is_noncrossing(block_of, last_pos)) ++count;
            return;
        }
        if (nblocks + (n - pos) < k) return;  // cannot reach k blocks any more
        for (int b = 0; b <= nblocks && b < k; ++b) {
            block_of[static_cast<size_t>(pos)] = b;
            self(self, pos + 1, nblocks + (b == nblocks ? 1 : 0));
        }
    };
    rec(rec, 0, 0);
    return count;
}

// Plane rooted trees with n edges, counted by the sizes of the two depth
// parity classes.  even_class[k] counts trees with k vertices at even depth
// (root included); odd_class[k] counts trees with k vertices at odd depth.
struct PlaneTreeCounts {
    std::vector<BigInt> even_class;  // index 0..n+1
    std::vector<BigInt> odd_class;
};

// Enumerates all plane trees via their depth-step sequences (Dyck paths):
// each tree is a sequence of +1 (edge down to a new child) and -1 (step back
// up) moves.  n <= 10.
inline PlaneTreeCounts plane_tree_counts(int n) {
    if (n < 1 || n > 10) throw std::invalid_argument("plane_tree_counts: n must be in 1..10");
    PlaneTreeCounts out;
    out.even_class.assign(static_cast<size_t>(n) + 2, 0);
    out.odd_class.assign(static_cast<size_t>(n) + 2, 0);
    // odd = vertices created at odd depth so far; depth tracked during the walk
    auto rec = [&](auto&& self, int opens, int closes, int depth, int odd) -> void {
        if (opens == n && closes == n) {
            out.odd_class[static_cast<size_t>(odd)] += 1;
            out.even_class[static_cast<size_t>(n + 1 - odd)] += 1;
            return;
        }
        if (opens < n) self(self, opens + 1, closes, depth + 1, odd + (depth % 2 == 0 ? 1 : 0));
        if (closes < opens) self(self, opens, closes + 1, depth - 1, odd);
    };
    rec(rec, 0, 0, 0, 0);
    return out;
}

// Coefficient of x^m in (sum_{s>=0} C_s x^s)^r, exact.
inline BigInt catalan_conv_coeff(int r, int m) {
    if (r < 0 || m < 0) throw std::invalid_argument("catalan_conv_coeff: negative argument");
    if (r == 0) return m == 0 ? 1 : 0;
    std::vector<BigInt> cur(static_cast<size_t>(m) + 1, 0), next(static_cast<size_t>(m) + 1, 0);
    for (int s = 0; s <= m; ++s) cur[static_cast<size_t>(s)] = catalan(s);
    for (int step = 1; step < r; ++step) {
        std::fill(next.begin(), next.end(), BigInt(0));
        for (int i = 0; i <= m; ++i)
            for (int j = 0; i + j <= m; ++j)
                next[static_cast<size_t>(i + j)] += cur[static_cast<size_t>(i)] * catalan(j);
        std::swap(cur, next);
    }
    return cur[static_cast<size_t>(m)];
}

// R_k(a1, a2) = ((a1+a2)/(2 sqrt(a1 a2)))^k sqrt(a2/a1)
//               * sum_{s=1}^k (-1/(a1+a2))^s binom(k,s) s sum_t N(s,t) a1^t a2^{s-t}.
inline double r_k_sum(int k, double a1, double a2) {
    if (k < 1) throw std::invalid_argument("r_k_sum: k must be >= 1");
    if (!(a1 > 0) || !(a2 > 0)) throw std::invalid_argument("r_k_sum: a1,a2 must be positive");
    long double total = 0;
    for (int s = 1; s <= k; ++s) {
        long double inner = 0;
        for (int t = 1; t <= s; ++t)
            inner += static_cast<long double>(to_double(narayana(s, t))) *
                     std::pow(static_cast<long double>(a1), t) *
                     std::pow(static_cast<long double>(a2), s - t);
        long double sign_pow = std::pow(-1.0L / (a1 + a2), s);
        total += sign_pow * static_cast<long double>(to_double(binomial(k, s))) * s * inner;
    }
    long double prefactor = std::pow((a1 + a2) / (2.0L * std::sqrt(static_cast<long double>(a1) * a2)),
                                     k) *
                            std::sqrt(static_cast<long double>(a2) / a1);
    return static_cast<double>(prefactor * total);
}

// Closed form of the same sum: -2^{-k} binom(k, (k-1)/2) for odd k, 0 for even.
inline Rational r_k_closed(int k) {
    if (k < 1) throw std::invalid_argument("r_k_closed: k must be >= 1");
    if (k % 2 == 0) return Rational(0);
    return Rational(-binomial(k, (k - 1) / 2), ipow(BigInt(2), k));
}

}
