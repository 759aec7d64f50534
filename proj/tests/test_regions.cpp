#include <doctest.h>

#include <cmath>
#include <random>

#include "sgx/decimation.hpp"
#include "sgx/errors.hpp"
#include "sgx/projective.hpp"
#include "sgx/regions.hpp"

using namespace sgx;

namespace {

const double kS3 = std::sqrt(3.0);

// barycentric coordinates of p in the triangle spanned by the three zeta vertices
Eigen::Vector3d zeta_bary(double alpha, const Eigen::Vector2d& p) {
    Eigen::Matrix3d m;
    for (int k = 1; k <= 3; ++k) {
        const auto z = zeta(alpha, k).v;
        m.col(k - 1) << z[0], z[1], 1.0;
    }
    return m.lu().solve(Eigen::Vector3d(p[0], p[1], 1.0));
}

RP2Point mix(const RP2Point& a, const RP2Point& b, double t) {
    return RP2Point::affine((1 - t) * a.v[0] + t * b.v[0], (1 - t) * a.v[1] + t * b.v[1]);
}

}  // namespace

TEST_SUITE("regions") {

TEST_CASE("classification examples") {
    for (double alpha : {0.3, 1.7, 3.0, 4.4, 5.5}) {
        CHECK(classify(alpha, RP2Point::theta()).kind == RegionKind::Theta);
        const double h = alpha / (2.0 * (6.0 - alpha));
        const auto mid = classify(alpha, RP2Point::affine(0.0, -h));
        CHECK(mid.kind == RegionKind::SegmentL);
        CHECK(mid.index == 1);
        const auto upper = classify(alpha, RP2Point::affine(0.0, 0.5 * h));
        CHECK(upper.kind == RegionKind::SubTriangleG);
        CHECK(upper.index == 1);
        for (int k = 1; k <= 3; ++k) {
            const auto v = classify(alpha, zeta(alpha, k));
            CHECK(v.kind == RegionKind::VertexZeta);
            CHECK(v.index == k);
        }
        // the edge between zeta_2 and zeta_3 is where form 1 vanishes
        const auto edge = classify(alpha, mix(zeta(alpha, 2), zeta(alpha, 3), 0.3));
        CHECK(edge.kind == RegionKind::EdgeI);
        CHECK(edge.index == 1);
        CHECK(classify(alpha, RP2Point::at_infinity(1, 0)).kind == RegionKind::Outside);
        CHECK(classify(alpha, RP2Point::affine(0.0, 10.0)).kind == RegionKind::Outside);
    }
    const auto z = classify(3.0, RP2Point::affine(0, -1));
    CHECK(z.kind == RegionKind::VertexZeta);
    CHECK(z.index == 1);
    CHECK(pair_name(1) == "23");
    CHECK(parse_pair("31") == 2);
}

TEST_CASE("triangle membership agrees with barycentric coordinates") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double alpha : {0.5, 1.5, 3.0, 3.5, 4.5, 5.8}) {
        const double h = alpha / (2.0 * (6.0 - alpha));
        int strata[3] = {0, 0, 0};
        for (int t = 0; t < 10000; ++t) {
            const Eigen::Vector2d p(3.0 * h * u(rng), 3.0 * h * u(rng));
            const auto b = zeta_bary(alpha, p);
            const auto c = classify(alpha, RP2Point::affine(p[0], p[1]));
            if (b.minCoeff() > 1e-6) {
                CHECK(c.in_D());
                // a generic interior point lies in exactly one open sub-triangle
                CHECK(c.kind == RegionKind::SubTriangleG);
                ++strata[0];
            } else if (b.minCoeff() < -1e-6) {
                CHECK(c.kind == RegionKind::Outside);
                ++strata[1];
            } else {
                ++strata[2];
            }
        }
        CHECK(strata[0] > 0);
        CHECK(strata[1] > 0);
    }
}

TEST_CASE("sub-triangle index is the wedge of the largest barycentric gap") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double alpha : {1.0, 4.0}) {
        for (int t = 0; t < 2000; ++t) {
            Eigen::Vector3d w(u(rng), u(rng), u(rng));
            w /= w.sum();
            Eigen::Vector2d p = Eigen::Vector2d::Zero();
            for (int k = 1; k <= 3; ++k) p += w[k - 1] * zeta(alpha, k).v;
            const auto c = classify(alpha, RP2Point::affine(p[0], p[1]));
            if (!(c.kind == RegionKind::SubTriangleG) || c.near_median) continue;
            // G_i is the sub-triangle away from zeta_i: its weight is the smallest
            int smallest = 0;
            w.minCoeff(&smallest);
            CHECK(c.index == smallest + 1);
        }
    }
}

TEST_CASE("triple classification matches the projective route") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n(0, 1);
    std::uniform_real_distribution<double> a(0.05, 5.95);
    for (int t = 0; t < 5000; ++t) {
        const double alpha = a(rng);
        const Triple x(n(rng), n(rng), n(rng));
        const auto c1 = classify_triple(alpha, x);
        const auto c2 = classify(alpha, project(x));
        if (c1.near_boundary || c1.near_median) continue;
        CHECK(c1.kind == c2.kind);
        if (c1.kind != RegionKind::Outside && c1.kind != RegionKind::Theta) CHECK(c1.index == c2.index);
    }
}

TEST_CASE("shrunken wedges") {
    for (double l1 : {0.3, 1.0, 1.8}) {
        const double l0 = phi_forward(l1);
        CHECK(in_M(l0, l1, 1, RP2Point::theta()));
        const double h = l0 / (2.0 * (6.0 - l0));
        CHECK(in_M(l0, l1, 1, RP2Point::affine(0.0, -0.5 * h)));
        CHECK_FALSE(in_M(l0, l1, 1, zeta(l0, 2)));
    }
    CHECK_THROWS_AS(in_M(6.0, 2.0, 1, RP2Point::theta()), DomainError);
}

TEST_CASE("preimage regions") {
    CHECK(preimage_classify(4.0, 1, RP2Point::at_infinity(0, 1)));
    CHECK_FALSE(preimage_classify(3.0, 1, RP2Point::at_infinity(0, 1)));
    for (double alpha : {0.7, 1.5}) {
        const double f = phi_forward(alpha);
        const auto p = RP2Point::affine(0.0, 0.5 * f / (2.0 * (6.0 - f)));
        CHECK(preimage_classify(alpha, 1, p));
        CHECK(classify(alpha, apply_P_proj(alpha, 1, p)).in_D());
    }

    std::mt19937_64 rng(24);
    std::normal_distribution<double> n(0, 1);
    for (double alpha : {0.4, 1.2, 1.9, 3.0, 3.3, 4.0, 4.8}) {
        for (int t = 0; t < 10000; ++t) {
            const double s = std::exp(n(rng));
            const RP2Point p = t % 10 == 0 ? RP2Point::at_infinity(n(rng), n(rng))
                                           : RP2Point::affine(s * n(rng), s * n(rng));
            for (int i = 1; i <= 3; ++i) {
                const auto forward = classify(alpha, apply_P_proj(alpha, i, p));
                if (forward.near_boundary) continue;
                CHECK(forward.in_D() == preimage_classify(alpha, i, p));
            }
        }
    }
}

TEST_CASE("covering of the projective plane") {
    const auto rep = covering_check(4.0, 100000, 25);
    CHECK(rep.uncovered == 0);
    CHECK(rep.samples == 100000);

    // a point whose image is on an edge of D is covered by the edge clause
    for (double alpha : {3.2, 4.0, 4.7}) {
        for (int i = 1; i <= 3; ++i) {
            // target edge I_j with j != i, spanned by the two zeta vertices other than j
            const int j = i % 3 + 1, k1 = j % 3 + 1, k2 = k1 % 3 + 1;
            const auto q = mix(zeta(alpha, k1), zeta(alpha, k2), 0.4);
            const Triple back = transfer_matrix(alpha, i).inverse() * lift(q);
            const auto p = project(back);
            CHECK(classify(alpha, apply_P_proj(alpha, i, p)).kind == RegionKind::EdgeI);
            CHECK(covered_by_edge_clause(alpha, p));
        }
    }
}

TEST_CASE("region polylines") {
    const auto csv = region_polylines_csv({1.0, 4.0});
    CHECK(csv.rfind("alpha,region,x,y\n", 0) == 0);
    CHECK(csv.find("4,") != std::string::npos);
}

}
