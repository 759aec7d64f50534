#include <doctest.h>

#include <cmath>
#include <random>

#include "sgx/decimation.hpp"
#include "sgx/eigenfunction.hpp"
#include "sgx/errors.hpp"
#include "sgx/extrema.hpp"
#include "sgx/oracle.hpp"
#include "sgx/projective.hpp"
#include "sgx/regions.hpp"

using namespace sgx;

namespace {

BranchWord random_eps(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<int> s;
    for (int k = 0; k < n; ++k) s.push_back(bit(rng) ? 1 : -1);
    if (n > 0) s.back() = 1;
    return BranchWord(s);
}

Triple gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    return Triple(n(rng), n(rng), n(rng));
}

EigenFn u_eps(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> birth(0.0, 6.0);
    return EigenFn::from_boundary(gaussian(rng), DecimationPath(0, birth(rng), random_eps(rng, n)));
}

// boundary data whose restriction to cell w has the given triple
Triple pull_back(const DecimationPath& path, const Word& w, const Triple& b) {
    Triple a = b;
    for (int k = static_cast<int>(w.size()); k >= 1; --k)
        a = transfer_matrix(path.lambda_at(k), w[static_cast<std::size_t>(k - 1)]).inverse() * a;
    return a;
}

// sign of the vertex against its neighbours on a fine grid: +1 strict max, -1 strict min, 0 neither
int local_extremum(const ValueGrid& g, const VertexId& v) {
    const auto idx = g.graph->index_of(v);
    const double uv = g.values[static_cast<std::size_t>(idx)];
    bool above = true, below = true;
    for (int k = 0; k < g.graph->degree(idx); ++k) {
        const double uq = g.values[static_cast<std::size_t>(g.graph->neighbors(idx)[k])];
        above = above && uv > uq;
        below = below && uv < uq;
    }
    return above ? 1 : below ? -1 : 0;
}

EigenFn oracle_fn(int m, BoundaryKind kind, double lambda_m, Series s, const std::vector<double>& coef) {
    const Eigen::MatrixXd basis = eigenspace(m, kind, lambda_m);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.rows());
    for (int k = 0; k < basis.cols(); ++k) v += coef[static_cast<std::size_t>(k) % coef.size()] * basis.col(k);
    return EigenFn::from_seed(std::vector<double>(v.data(), v.data() + v.size()), DecimationPath(m, lambda_m, {}, s));
}

}  // namespace

TEST_SUITE("extrema") {

TEST_CASE("constant grid has no extreme set") {
    const auto g = extend(EigenFn::from_boundary(Triple(3, 3, 3), DecimationPath(0, 0.0, {})), 6);
    CHECK(count_discrete(g).count == 0);
}

TEST_CASE("locator on the three strata") {
    const double lambda = 0.6 * constants().lambda1_D;
    const double alpha = psi_inverse(lambda);
    const double h = alpha / (2.0 * (6.0 - alpha));

    const auto centre = locate_small_lambda(EigenFn::small(lambda, Triple(2, 2, 2)));
    REQUIRE(centre);
    CHECK(centre->locus == LocusType::CellTriangle);
    CHECK(centre->word.empty());
    CHECK(centre->kind == ExtremeKind::Max);

    const auto on_median = EigenFn::small(lambda, lift(RP2Point::affine(0.0, -h)));
    const auto v = locate_small_lambda(on_median);
    REQUIRE(v);
    CHECK(v->locus == LocusType::Vertex);
    CHECK(v->vertex == vertex_of(Word{2}, 3));
    CHECK(count_exact(on_median).count == 1);

    for (const auto& p : {RP2Point::affine(0.0, 3 * h), RP2Point::affine(2 * h, -2 * h), RP2Point::at_infinity(1, 1)}) {
        const auto outside = EigenFn::small(lambda, lift(p));
        CHECK_FALSE(locate_small_lambda(outside));
        CHECK(count_exact(outside).count == 0);
        CHECK(count_discrete(extend(outside, 10)).count == 0);
    }

    const auto inner = EigenFn::small(lambda, lift(RP2Point::affine(0.1 * h, 0.5 * h)));
    const auto g = locate_small_lambda(inner);
    REQUIRE(g);
    CHECK(g->word.size() >= 1);
    CHECK(g->word[0] == 1);
    const auto fine = count_discrete(extend(inner, 10));
    REQUIRE(fine.count == 1);
    // the plateau lies in cell 1 away from its corners
    const auto where = fine.sets.front().vertex.at_level(10);
    CHECK(where.bary[0] > (std::int64_t{1} << 9));
}

TEST_CASE("small eigenvalues have at most one extreme set") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int t = 0; t < 200; ++t) {
        const double lambda = u(rng) * constants().lambda1_D;
        const auto fn = EigenFn::small(lambda, gaussian(rng));
        const auto rep = count_exact(fn);
        CHECK(rep.count <= 1);
        const auto rc = classify_triple(psi_inverse(lambda), fn.a());
        if (!rc.near_boundary) CHECK((rep.count == 1) == rc.in_D());
        if (!rep.ambiguous()) CHECK(count_discrete(extend(fn, 10)).count == rep.count);
    }
}

TEST_CASE("vertex criterion on constructed data") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 30; ++t) {
        const auto base = u_eps(rng, 2);
        const int n = analysis_level(base);
        REQUIRE(n >= 2);
        std::uniform_int_distribution<int> sym(1, 3);
        Word w;
        for (int k = 0; k < n; ++k) w = w + sym(rng);
        const Word parent = w.prefix(static_cast<std::size_t>(n - 1));
        const int s = w[static_cast<std::size_t>(n - 1)];
        const double alpha = base.path.lambda_at(n);

        // a corner j != s of cell w whose triple lies on the edge where form j vanishes
        const int j = s % 3 + 1;
        const int k1 = j % 3 + 1, k2 = k1 % 3 + 1;
        const auto q = RP2Point::affine(0.5 * (zeta(alpha, k1).v[0] + zeta(alpha, k2).v[0]),
                                        0.5 * (zeta(alpha, k1).v[1] + zeta(alpha, k2).v[1]));
        const Triple b = lift(q) * (t % 2 ? 1.0 : -1.0);
        const auto fn = EigenFn::from_boundary(pull_back(base.path, w, b), base.path);
        REQUIRE((cell_triple(fn, w) - b).norm() < 1e-8 * b.norm());
        const auto verdict = vertex_is_extreme(fn, parent, 6 - s - j);
        CHECK(verdict.extreme);
        CHECK(verdict.locus == LocusType::Vertex);
        const int fine = local_extremum(extend(fn, n + 4), vertex_of(w, j));
        CHECK(fine == (verdict.kind == ExtremeKind::Max ? 1 : -1));

        // symmetric data on cell w makes the middle triangle of w an extreme set
        const auto sym_fn = EigenFn::from_boundary(pull_back(base.path, w, Triple(1, 1, 1)), base.path);
        bool found = false;
        for (const auto& set : count_exact(sym_fn).sets)
            found = found || (set.locus == LocusType::CellTriangle && set.word == w);
        CHECK(found);
    }
}

TEST_CASE("vertex criterion against a fine neighbourhood") {
    std::mt19937_64 rng(43);
    int compared = 0;
    for (int t = 0; t < 20; ++t) {
        const auto fn = u_eps(rng, 2);
        const int n = analysis_level(fn);
        const auto fine = extend(fn, n + 6);
        const auto coarse = build_graph(n - 1);
        for (std::int64_t c = 0; c < pow3(n - 1); ++c) {
            const Word w = Word::from_index(c, n - 1);
            for (int k = 1; k <= 3; ++k) {
                const auto verdict = vertex_is_extreme(fn, w, k);
                if (verdict.near_boundary || verdict.locus != LocusType::Vertex) continue;
                const int i = k % 3 + 1, j = i % 3 + 1;
                const int local = local_extremum(fine, vertex_of(w + i, j));
                ++compared;
                if (verdict.extreme) {
                    CHECK(local == (verdict.kind == ExtremeKind::Max ? 1 : -1));
                } else {
                    CHECK(local == 0);
                }
            }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("count bracket and per-cell floor for the u^eps family") {
    std::mt19937_64 rng(44);
    for (int n = 1; n <= 3; ++n) {
        for (int t = 0; t < 6; ++t) {
            const auto fn = u_eps(rng, n);
            const auto rep = count_exact(fn);
            CHECK(std::pow(3.0, n - 1) <= rep.count);
            CHECK(rep.count <= 4 * std::pow(3.0, n));
            for (std::int64_t c = 0; c < pow3(n - 1); ++c)
                CHECK(count_exact(restrict_to_cell(fn, Word::from_index(c, n - 1))).count >= 1);
            if (!rep.ambiguous()) CHECK(count_discrete(extend(fn, n + 6)).count == rep.count);
        }
    }
}

TEST_CASE("sandwich over a partition level") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 8; ++t) {
        const auto fn = u_eps(rng, 2);
        const auto total = count_exact(fn).count;
        for (int level = 1; level <= 3; ++level) {
            std::int64_t inside = 0;
            for (std::int64_t c = 0; c < pow3(level); ++c)
                inside += count_exact(restrict_to_cell(fn, Word::from_index(c, level))).count;
            CHECK(inside <= total);
            CHECK(total <= inside + vertex_count(level) - 3);
        }
    }
}

TEST_CASE("scaling leaves the count unchanged") {
    std::mt19937_64 rng(46);
    for (int t = 0; t < 10; ++t) {
        const auto fn = u_eps(rng, 1 + t % 3);
        const auto base = count_exact(fn);
        for (double k : {-1.0, 2.5, -0.125})
            CHECK(count_exact(fn.scaled(k)).count == base.count);
    }
}

TEST_CASE("series eigenfunctions") {
    const double c = constants().lambda1_D;
    // ground state
    const auto ground = oracle_fn(1, BoundaryKind::Dirichlet, 2.0, Series::D2, {1.0});
    CHECK(ground.lambda == doctest::Approx(c).epsilon(1e-12));
    const auto rep = count_exact(ground);
    CHECK(rep.count >= 1);
    CHECK(rep.count <= 6);
    CHECK(count_discrete(extend(ground, 10)).count == rep.count);

    // the two-dimensional space born at 3 on level 1 has no interior extreme set
    for (const auto& coef : {std::vector<double>{1.0, 0.0}, std::vector<double>{0.3, -1.1}, std::vector<double>{0.0, 1.0}}) {
        const auto fn = oracle_fn(1, BoundaryKind::Neumann, 3.0, Series::N6p, coef);
        CHECK(fn.lambda == doctest::Approx(constants().lambda2_N).epsilon(1e-12));
        CHECK(count_exact(fn).count == 0);
        CHECK(count_discrete(extend(fn, 9)).count == 0);
    }
    const auto constant = oracle_fn(1, BoundaryKind::Neumann, 0.0, Series::N0, {1.0});
    CHECK(count_exact(constant).count == 0);
}

TEST_CASE("signs of counted extreme sets") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 30; ++t) {
        const auto fn = u_eps(rng, 1 + t % 4);
        for (const auto& s : count_exact(fn).sets) {
            if (s.kind == ExtremeKind::Max) CHECK(s.lo > 0);
            else CHECK(s.hi < 0);
        }
    }
}

TEST_CASE("ambiguity policies") {
    // a triple exactly on the boundary of D but off the structural tie
    const double lambda = 0.5 * constants().lambda1_D;
    const double alpha = psi_inverse(lambda);
    const auto z2 = zeta(alpha, 2).v, z3 = zeta(alpha, 3).v;
    const Eigen::Vector2d mid = 0.5 * (z2 + z3);
    const double nudge = 3e-10 * (z2 - z3).norm();
    const auto fn = EigenFn::small(lambda, lift(RP2Point::affine(mid[0] + 0.1 * (z2 - z3)[0], mid[1] + nudge)));

    CountOptions fallback;
    const auto fb = count_exact(fn, fallback);
    CHECK(fb.ambiguous());
    CHECK(fb.method == CountMethod::Discrete);
    CHECK(fb.has_flag("fallback"));

    CountOptions resolve;
    resolve.policy = AmbiguityPolicy::Resolve;
    const auto rs = count_exact(fn, resolve);
    CHECK(rs.ambiguous());
    CHECK(rs.method == CountMethod::Exact);

    CountOptions strict;
    strict.policy = AmbiguityPolicy::Strict;
    CHECK_THROWS_AS(count_exact(fn, strict), AmbiguousClassification);

    const auto clean = count_exact(EigenFn::small(lambda, Triple(1, 2, 3)), strict);
    CHECK_FALSE(clean.ambiguous());
}

TEST_CASE("report bookkeeping") {
    std::mt19937_64 rng(48);
    for (int t = 0; t < 10; ++t) {
        const auto rep = count_exact(u_eps(rng, 2));
        CHECK(rep.count == static_cast<std::int64_t>(rep.sets.size()));
        CHECK(rep.count == rep.cell_sets + rep.vertex_sets);
        for (const auto& s : rep.sets) {
            if (s.locus == LocusType::Vertex) CHECK(s.vertex.reduced().level > 0);
        }
    }
}

}
