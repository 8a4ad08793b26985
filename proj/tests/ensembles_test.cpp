#include "ovl/ensembles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using ovl::Dist;
using ovl::EntryDistribution;
using ovl::Norm;
using ovl::RectOverlapSpec;
using ovl::WignerOverlapSpec;

namespace {

struct Moments {
    std::complex<double> mean;
    double abs2, abs4;
};

Moments sample_moments(const EntryDistribution& law, int count) {
    std::complex<double> sum(0, 0);
    double s2 = 0, s4 = 0;
    for (int i = 0; i < count; ++i) {
        const std::complex<double> x = law.draw(/*key=*/12345, /*cell=*/static_cast<uint64_t>(i),
                                                /*trial=*/0);
        sum += x;
        const double a2 = std::norm(x);
        s2 += a2;
        s4 += a2 * a2;
    }
    return {sum / static_cast<double>(count), s2 / count, s4 / count};
}

}  // namespace

TEST_CASE("entry laws have the declared moments", "[ensembles]") {
    const int t = 200000;
    const double se = 1.0 / std::sqrt(static_cast<double>(t));

    SECTION("rademacher") {
        const auto m = sample_moments(EntryDistribution::rademacher(), t);
        REQUIRE(std::abs(m.mean) < 6 * se);
        REQUIRE(m.abs2 == 1.0);
        REQUIRE(m.abs4 == 1.0);
        REQUIRE(EntryDistribution::rademacher().m4() == 1.0);
    }
    SECTION("unit circle") {
        const auto m = sample_moments(EntryDistribution::unit_circle(), t);
        REQUIRE(std::abs(m.mean) < 6 * se);
        REQUIRE(m.abs2 == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(EntryDistribution::unit_circle().m4() == 1.0);
    }
    SECTION("gaussian") {
        const auto m = sample_moments(EntryDistribution::gaussian(), t);
        REQUIRE(std::abs(m.mean) < 6 * se);
        REQUIRE(m.abs2 == Catch::Approx(1.0).margin(0.02));
        REQUIRE(m.abs4 == Catch::Approx(3.0).margin(0.15));
        REQUIRE(EntryDistribution::gaussian().m4() == 3.0);
    }
    SECTION("centered uniform") {
        const auto m = sample_moments(EntryDistribution::centered_uniform(), t);
        REQUIRE(std::abs(m.mean) < 6 * se);
        REQUIRE(m.abs2 == Catch::Approx(1.0).margin(0.02));
        REQUIRE(m.abs4 == Catch::Approx(1.8).margin(0.05));
        REQUIRE(EntryDistribution::centered_uniform().m4() == Catch::Approx(1.8));
    }
    SECTION("asymmetric two-point") {
        const auto law = EntryDistribution::two_point(0.2, 2.0, -0.5);
        const auto m = sample_moments(law, t);
        REQUIRE(std::abs(m.mean) < 0.03);
        REQUIRE(m.abs2 == Catch::Approx(1.0).margin(0.03));
        REQUIRE(law.m4() == Catch::Approx(3.25));
    }
}

TEST_CASE("two-point parameter validation", "[ensembles]") {
    REQUIRE_THROWS_AS(EntryDistribution::two_point(0.0, 1.0, -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(EntryDistribution::two_point(0.5, 1.0, -0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(EntryDistribution::two_point(0.5, 2.0, -2.0), std::invalid_argument);
    REQUIRE_NOTHROW(EntryDistribution::two_point(0.5, 1.0, -1.0));
}

TEST_CASE("array entries are deterministic and Hermitian", "[ensembles]") {
    WignerOverlapSpec spec;
    spec.a = 12;
    spec.b = 10;
    spec.delta = 6;
    spec.offdiag = EntryDistribution::gaussian();
    spec.diag = EntryDistribution::gaussian();
    spec.d2 = 2.0;

    SECTION("same coordinates, same value") {
        for (long i = 0; i < 5; ++i)
            for (long j = 0; j < 5; ++j)
                REQUIRE(ovl::entry_at(spec, 7, 3, i, j) == ovl::entry_at(spec, 7, 3, i, j));
    }
    SECTION("transposed coordinates conjugate") {
        WignerOverlapSpec cx = spec;
        cx.offdiag = EntryDistribution::unit_circle();
        cx.d2 = 0.0;
        for (long i = 0; i < 6; ++i)
            for (long j = 0; j < 6; ++j)
                REQUIRE(ovl::entry_at(cx, 7, 3, i, j) == std::conj(ovl::entry_at(cx, 7, 3, j, i)));
    }
    SECTION("trial index changes the draw") {
        REQUIRE(ovl::entry_at(spec, 7, 3, 1, 2) != ovl::entry_at(spec, 7, 4, 1, 2));
        REQUIRE(ovl::entry_at(spec, 7, 3, 1, 2) != ovl::entry_at(spec, 8, 3, 1, 2));
    }
    SECTION("zero diagonal variance gives a zero diagonal") {
        WignerOverlapSpec z = spec;
        z.d2 = 0.0;
        for (long i = 0; i < 8; ++i) REQUIRE(ovl::entry_at(z, 7, 3, i, i) == 0.0);
    }
}

TEST_CASE("overlapping windows share their corner block exactly", "[ensembles]") {
    WignerOverlapSpec spec;
    spec.a = 10;
    spec.b = 8;
    spec.delta = 5;
    spec.offdiag = EntryDistribution::gaussian();
    spec.diag = EntryDistribution::gaussian();
    spec.d2 = 1.0;

    const auto pair = ovl::sample_wigner_pair<double>(spec, 99, 0);
    REQUIRE(pair.a.rows() == 10);
    REQUIRE(pair.b.rows() == 8);
    REQUIRE(pair.a == pair.a.transpose().eval());
    REQUIRE(pair.b == pair.b.transpose().eval());
    // A's trailing corner and B's leading corner are the same array cells.
    REQUIRE(pair.a.block(5, 5, 5, 5) == pair.b.block(0, 0, 5, 5));

    SECTION("full overlap with equal sizes duplicates the window") {
        WignerOverlapSpec full = spec;
        full.b = full.a;
        full.delta = full.a;
        const auto p2 = ovl::sample_wigner_pair<double>(full, 99, 0);
        REQUIRE(p2.a == p2.b);
    }
    SECTION("complex windows are Hermitian and share the block") {
        WignerOverlapSpec cx = spec;
        cx.offdiag = EntryDistribution::unit_circle();
        cx.d2 = 0.0;
        const auto p3 = ovl::sample_wigner_pair<std::complex<double>>(cx, 99, 0);
        REQUIRE(p3.a == p3.a.adjoint().eval());
        REQUIRE(p3.a.block(5, 5, 5, 5) == p3.b.block(0, 0, 5, 5));
    }
}

TEST_CASE("rectangular windows share rows and columns", "[ensembles]") {
    RectOverlapSpec spec;
    spec.a1 = 6;
    spec.a2 = 5;
    spec.b1 = 4;
    spec.b2 = 7;
    spec.delta1 = 3;
    spec.delta2 = 2;
    spec.entries = EntryDistribution::gaussian();

    const auto pair = ovl::sample_rect_pair<double>(spec, 123, 5);
    REQUIRE(pair.a.rows() == 6);
    REQUIRE(pair.a.cols() == 5);
    REQUIRE(pair.b.rows() == 4);
    REQUIRE(pair.b.cols() == 7);
    REQUIRE(pair.a.block(3, 3, 3, 2) == pair.b.block(0, 0, 3, 2));
}

TEST_CASE("window validation", "[ensembles]") {
    WignerOverlapSpec spec;
    spec.a = 8;
    spec.b = 6;
    spec.delta = 7;  // exceeds min(a,b)
    spec.offdiag = EntryDistribution::gaussian();
    REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);

    spec.delta = 3;
    REQUIRE_NOTHROW(spec.validate());

    spec.d2 = -1.0;
    REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);

    spec.d2 = 1.0;
    spec.diag = EntryDistribution::unit_circle();
    REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);

    spec.diag = EntryDistribution::rademacher();
    spec.norm = Norm::Shifted;
    spec.b = 3;
    spec.delta = 2;
    REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);

    SECTION("complex entries need a complex matrix type") {
        WignerOverlapSpec cx;
        cx.a = cx.b = cx.delta = 6;
        cx.offdiag = EntryDistribution::unit_circle();
        REQUIRE_THROWS_AS(ovl::sample_wigner_pair<double>(cx, 1, 0), std::invalid_argument);
    }
}

TEST_CASE("normalization conventions", "[ensembles]") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(9, 9);
    m = ((m + m.transpose()) / 2).eval();
    REQUIRE((ovl::normalize_wigner(m, Norm::Standard) * 6.0 - m).norm() < 1e-12);
    REQUIRE((ovl::normalize_wigner(m, Norm::Shifted) * (2.0 * std::sqrt(7.0)) - m).norm() < 1e-12);

    Eigen::MatrixXd r = Eigen::MatrixXd::Random(4, 9);
    const Eigen::MatrixXd w = ovl::build_w(r, Norm::Standard);
    const Eigen::MatrixXd expect =
        ((r * r.transpose() - 13.0 * Eigen::MatrixXd::Identity(4, 4)) / (2.0 * 6.0)).eval();
    REQUIRE((w - expect).norm() < 1e-12);

    const Eigen::MatrixXd ws = ovl::build_w(r, Norm::Shifted);
    const Eigen::MatrixXd expect_s =
        ((r * r.transpose() - 11.0 * Eigen::MatrixXd::Identity(4, 4)) / (2.0 * std::sqrt(24.0)))
            .eval();
    REQUIRE((ws - expect_s).norm() < 1e-12);
}
