#include "ovl/nbt.hpp"

#include <catch_amalgamated.hpp>

#include <complex>

using ovl::graph_complete;
using ovl::graph_complete_bipartite;
using ovl::graph_cycle;
using ovl::WeightKind;

TEST_CASE("closed tailless walk counts on small graphs", "[nbt]") {
    SECTION("triangles of K_4") {
        // Ordered vertex triples: 4 * 3 * 2.
        REQUIRE(ovl::count_nbt_closed(graph_complete(4), 3) == 24);
    }
    SECTION("based directed cycles of K_5") {
        REQUIRE(ovl::count_nbt_closed(graph_complete(5), 3) == 60);
        // Twelve undirected 5-cycles, five base points, two directions.
        REQUIRE(ovl::count_nbt_closed(graph_complete(5), 5) == 120);
    }
    SECTION("cycles only close by winding") {
        for (int n : {3, 4, 5, 6}) {
            for (int k = 3; k <= 12; ++k) {
                const long long expect = (k % n == 0) ? 2LL * n : 0LL;
                REQUIRE(ovl::count_nbt_closed(graph_cycle(n), k) == expect);
            }
        }
    }
    SECTION("lengths 1 and 2 never close") {
        REQUIRE(ovl::count_nbt_closed(graph_complete(5), 1) == 0);
        REQUIRE(ovl::count_nbt_closed(graph_complete(5), 2) == 0);
    }
}

TEST_CASE("enumerated walks satisfy the walk conditions", "[nbt]") {
    const auto g = graph_complete(5);
    const int k = 4;
    const auto walks = ovl::enumerate_nbt_closed(g, k);
    REQUIRE(walks.size() == static_cast<size_t>(ovl::count_nbt_closed(g, k)));
    for (const auto& path : walks) {
        const auto& p = path.v;
        REQUIRE(p.size() == static_cast<size_t>(k) + 1);
        REQUIRE(p.front() == p.back());
        for (int i = 0; i < k; ++i) REQUIRE(g.sw(p[static_cast<size_t>(i)], p[static_cast<size_t>(i + 1)]) != 0);
        for (int i = 1; i < k; ++i) REQUIRE(p[static_cast<size_t>(i + 1)] != p[static_cast<size_t>(i - 1)]);
        REQUIRE(p[1] != p[static_cast<size_t>(k - 1)]);
    }
}

TEST_CASE("tail decomposition of closed non-backtracking walks", "[nbt]") {
    for (int nc : {4, 5}) {
        const auto g = graph_complete(nc);
        const long long d = g.d;
        for (int k = 3; k <= 6; ++k) {
            const auto by_tail = ovl::count_nb_closed_by_tail(g, k);
            REQUIRE(by_tail[0] == ovl::count_nbt_closed(g, k));
            long long total = 0;
            for (size_t l = 0; l < by_tail.size(); ++l) {
                if (l >= 1) {
                    const int rest = k - 2 * static_cast<int>(l);
                    long long expect = 0;
                    if (rest >= 3) {
                        long long ways = d - 1;
                        for (size_t i = 1; i < l; ++i) ways *= d;
                        expect = ways * ovl::count_nbt_closed(g, rest);
                    }
                    REQUIRE(by_tail[l] == expect);
                }
                total += by_tail[l];
            }
            // All tails together recover the plain closed-walk count Tr P_k(A).
            const auto pk = ovl::detail::int_poly_apply(ovl::p_poly(k, g.d), g.sw);
            REQUIRE(total == pk.trace());
        }
    }
    SECTION("degree-2 graphs admit no tails") {
        const auto by_tail = ovl::count_nb_closed_by_tail(graph_cycle(5), 10);
        for (size_t l = 1; l < by_tail.size(); ++l) REQUIRE(by_tail[l] == 0);
    }
}

TEST_CASE("walk sums match the P family entrywise", "[nbt]") {
    for (WeightKind kind : {WeightKind::AllOnes, WeightKind::Sign, WeightKind::UnitCircle}) {
        for (int n : {4, 5}) {
            const auto g = ovl::with_random_phases(graph_complete(n), kind, 97);
            for (int k = 1; k <= 5; ++k) REQUIRE(ovl::verify_thm_2_1(g, k));
        }
        const auto c6 = ovl::with_random_phases(graph_cycle(6), kind, 98);
        for (int k = 1; k <= 8; ++k) REQUIRE(ovl::verify_thm_2_1(c6, k));
    }
}

TEST_CASE("closed tailless walk sums match the scaled Chebyshev trace", "[nbt]") {
    for (WeightKind kind : {WeightKind::AllOnes, WeightKind::Sign, WeightKind::UnitCircle}) {
        for (int n : {4, 5}) {
            const auto g = ovl::with_random_phases(graph_complete(n), kind, 99);
            for (int k = 1; k <= 6; ++k) REQUIRE(ovl::verify_thm_2_2(g, k));
        }
        const auto c5 = ovl::with_random_phases(graph_cycle(5), kind, 100);
        for (int k = 1; k <= 10; ++k) REQUIRE(ovl::verify_thm_2_2(c5, k));
    }
}

TEST_CASE("bipartite walk sums match the F family entrywise", "[nbt]") {
    const std::pair<int, int> sides[] = {{2, 2}, {2, 3}, {3, 3}, {3, 4}};
    for (WeightKind kind : {WeightKind::AllOnes, WeightKind::Sign, WeightKind::UnitCircle}) {
        for (auto [nv, nw] : sides) {
            const auto g = ovl::with_random_phases(graph_complete_bipartite(nv, nw), kind, 41);
            for (int k = 1; k <= 3; ++k) REQUIRE(ovl::verify_thm_2_3(g, k));
        }
    }
}

TEST_CASE("closed bipartite walk sums match the shifted Chebyshev trace", "[nbt]") {
    SECTION("hand count on K_{2,2}, the 4-cycle") {
        const auto g = graph_complete_bipartite(2, 2);
        REQUIRE(ovl::enumerate_nbt_closed(g, 1).empty());
        REQUIRE(ovl::enumerate_nbt_closed(g, 2).size() == 4);  // 2 bases x 2 directions
        REQUIRE(ovl::enumerate_nbt_closed(g, 3).empty());
    }
    const std::pair<int, int> sides[] = {{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}};
    for (WeightKind kind : {WeightKind::AllOnes, WeightKind::Sign, WeightKind::UnitCircle}) {
        for (auto [nv, nw] : sides) {
            // c = nw-1 >= d = nv-1 holds for these orientations
            const auto g = ovl::with_random_phases(graph_complete_bipartite(nv, nw), kind, 42);
            for (int k = 1; k <= 3; ++k) REQUIRE(ovl::verify_thm_2_4(g, k));
        }
    }
    SECTION("orientation with c < d is rejected") {
        const auto g = graph_complete_bipartite(4, 2);
        REQUIRE_THROWS_AS(ovl::verify_thm_2_4(g, 2), std::invalid_argument);
    }
}

TEST_CASE("edge weights multiply along walks", "[nbt]") {
    const auto g = ovl::with_random_phases(graph_complete(4), WeightKind::UnitCircle, 7);
    ovl::Path p{{0, 1, 2, 0}};
    const std::complex<double> expect = g.cw(0, 1) * g.cw(1, 2) * g.cw(2, 0);
    REQUIRE(std::abs(ovl::path_weight(g, p) - expect) < 1e-15);

    const auto bg = ovl::with_random_phases(graph_complete_bipartite(3, 3), WeightKind::UnitCircle, 8);
    ovl::Path bp{{0, 1, 2, 0, 1}};  // v0 -> w1 -> v2 -> w0 -> v1
    const std::complex<double> bexpect =
        bg.cw(0, 1) * std::conj(bg.cw(2, 1)) * bg.cw(2, 0) * std::conj(bg.cw(1, 0));
    REQUIRE(std::abs(ovl::bipartite_weight(bg, bp) - bexpect) < 1e-15);
}

TEST_CASE("phased closed-walk sums are real", "[nbt]") {
    // Reversal conjugates a closed walk's weight and is a bijection on the
    // tailless closed walks, so the total has no imaginary part.
    const auto g = ovl::with_random_phases(graph_complete(5), WeightKind::UnitCircle, 11);
    for (int k = 3; k <= 5; ++k) {
        std::complex<double> total(0, 0);
        for (const auto& p : ovl::enumerate_nbt_closed(g, k)) total += ovl::path_weight(g, p);
        REQUIRE(std::abs(total.imag()) < 1e-9);
    }
}

TEST_CASE("enumeration budget is enforced", "[nbt]") {
    REQUIRE_THROWS_AS(ovl::count_nbt_closed(graph_complete(30), 7), std::invalid_argument);
}
