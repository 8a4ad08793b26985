#include "ovl/combinatorics.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using ovl::BigInt;

TEST_CASE("Catalan numbers", "[combinatorics]") {
    const long expect[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (long k = 0; k <= 10; ++k) REQUIRE(ovl::catalan(k) == BigInt(expect[k]));
    REQUIRE(ovl::catalan(20) == BigInt(6564120420LL));

    REQUIRE(ovl::catalan_twice(8) == BigInt(14));
    REQUIRE(ovl::catalan_twice(7) == 0);
    REQUIRE(ovl::catalan_twice(-2) == 0);
}

TEST_CASE("Narayana numbers", "[combinatorics]") {
    REQUIRE(ovl::narayana(1, 1) == 1);
    REQUIRE(ovl::narayana(4, 2) == 6);
    REQUIRE(ovl::narayana(6, 3) == 50);
    REQUIRE(ovl::narayana(8, 4) == 490);
    REQUIRE(ovl::narayana(5, 0) == 0);
    REQUIRE(ovl::narayana(5, 6) == 0);

    SECTION("rows sum to Catalan") {
        for (long n = 1; n <= 12; ++n) {
            BigInt row = 0;
            for (long k = 1; k <= n; ++k) row += ovl::narayana(n, k);
            REQUIRE(row == ovl::catalan(n));
        }
    }
    SECTION("symmetry") {
        for (long n = 1; n <= 12; ++n)
            for (long k = 1; k <= n; ++k)
                REQUIRE(ovl::narayana(n, k) == ovl::narayana(n, n + 1 - k));
    }
}

TEST_CASE("non-crossing partitions are Narayana-counted", "[combinatorics]") {
    for (int n = 1; n <= 9; ++n)
        for (int k = 1; k <= n; ++k)
            REQUIRE(ovl::nc_partition_count(n, k) == ovl::narayana(n, k));
    REQUIRE_THROWS_AS(ovl::nc_partition_count(13, 1), std::invalid_argument);
}

TEST_CASE("plane tree depth-parity classes are Narayana-counted", "[combinatorics]") {
    for (int n = 1; n <= 8; ++n) {
        const ovl::PlaneTreeCounts c = ovl::plane_tree_counts(n);
        BigInt total_even = 0, total_odd = 0;
        for (int k = 0; k <= n + 1; ++k) {
            // Both parity classes carry the same distribution because Narayana
            // numbers are symmetric; the enumeration checks each on its own.
            REQUIRE(c.odd_class[static_cast<size_t>(k)] == ovl::narayana(n, k));
            REQUIRE(c.even_class[static_cast<size_t>(k)] == ovl::narayana(n, k));
            total_even += c.even_class[static_cast<size_t>(k)];
            total_odd += c.odd_class[static_cast<size_t>(k)];
        }
        REQUIRE(total_even == ovl::catalan(n));
        REQUIRE(total_odd == ovl::catalan(n));
    }
}

TEST_CASE("Catalan generating-series powers", "[combinatorics]") {
    SECTION("r = 1 reproduces the sequence") {
        for (int m = 0; m <= 10; ++m) REQUIRE(ovl::catalan_conv_coeff(1, m) == ovl::catalan(m));
    }
    SECTION("r = 0 is the constant series 1") {
        REQUIRE(ovl::catalan_conv_coeff(0, 0) == 1);
        REQUIRE(ovl::catalan_conv_coeff(0, 3) == 0);
    }
    SECTION("direct convolution oracle") {
        for (int r = 2; r <= 5; ++r)
            for (int m = 0; m <= 8; ++m) {
                BigInt expect = 0;
                // fold one factor off and recurse on the tabulated values
                for (int j = 0; j <= m; ++j)
                    expect += ovl::catalan_conv_coeff(r - 1, m - j) * ovl::catalan(j);
                REQUIRE(ovl::catalan_conv_coeff(r, m) == expect);
            }
    }
    SECTION("ballot closed form: coefficient of x^m in C(x)^r") {
        // r/(2m+r) binom(2m+r, m)
        for (int r = 1; r <= 6; ++r)
            for (int m = 0; m <= 9; ++m)
                REQUIRE(ovl::catalan_conv_coeff(r, m) ==
                        BigInt(r) * ovl::binomial(2 * m + r, m) / (2 * m + r));
    }
}

TEST_CASE("alternating Narayana sum collapses to its closed form", "[combinatorics]") {
    const std::pair<double, double> ratios[] = {
        {1.0, 1.0}, {2.0, 1.0}, {0.5, 2.0}, {10.0, 0.1}, {3.0, 7.0}};
    for (int k = 1; k <= 14; ++k) {
        const double expect = ovl::to_double(ovl::r_k_closed(k));
        for (const auto& [a1, a2] : ratios) {
            const double tol = 1e-9 * std::pow(2.0, k);
            REQUIRE(ovl::r_k_sum(k, a1, a2) == Catch::Approx(expect).margin(tol));
        }
    }
    REQUIRE(ovl::r_k_closed(3) == ovl::Rational(-3, 8));
    REQUIRE(ovl::r_k_closed(5) == ovl::Rational(-10, 32));
    REQUIRE(ovl::r_k_closed(4) == 0);
}
