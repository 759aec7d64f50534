#include <doctest.h>

#include <cmath>
#include <random>

#include "sgx/decimation.hpp"
#include "sgx/errors.hpp"
#include "sgx/oracle.hpp"

using namespace sgx;

namespace {

// independent long-double iteration of (3/2) 5^m phi_{-1}^m(x), branch in cancellation-free form
long double psi_reference(long double x) {
    long double scale = 1.5L;
    for (int m = 0; m < 60; ++m) {
        x = 2.0L * x / (5.0L + std::sqrt(25.0L - 4.0L * x));
        scale *= 5.0L;
    }
    return scale * x;
}

}  // namespace

TEST_SUITE("decimation") {

TEST_CASE("quadratic and its branches") {
    CHECK(phi_forward(0.0) == 0.0);
    CHECK(phi_forward(2.0) == 6.0);
    CHECK(phi_forward(0.43844719) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(phi_branch(-1, 0.0) == 0.0);
    CHECK(phi_branch(-1, 2.0) == doctest::Approx((5.0 - std::sqrt(17.0)) / 2.0).epsilon(1e-14));
    CHECK(phi_branch(+1, 5.0) == doctest::Approx((5.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(phi_branch(1, 6.3), DomainError);
}

TEST_CASE("branch inversion over a grid") {
    for (int k = 0; k <= 500; ++k) {
        const double x = -3.0 + 9.25 * k / 500.0;
        for (int s : {-1, 1}) {
            const double back = phi_forward(phi_branch(s, x));
            CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST_CASE("psi against a long double reference") {
    CHECK(psi(0.0) == 0.0);
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0}) {
        const double ref = static_cast<double>(psi_reference(x));
        CHECK(psi(x) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(psi(6.25), DomainError);
}

TEST_CASE("psi functional equation and monotonicity") {
    double prev = -1.0;
    for (int k = 1; k < 120; ++k) {
        const double x = 6.0 * k / 120.0;
        CHECK(std::abs(5.0 * psi(phi_branch(-1, x)) - psi(x)) <= 1e-11 * std::max(1.0, psi(x)));
        CHECK(psi(x) > prev);
        prev = psi(x);
    }
}

TEST_CASE("psi inverse") {
    CHECK(psi_inverse(0.0) == 0.0);
    CHECK(psi_inverse(psi(2.0)) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(psi_inverse(constants().lambda1_D / 5.0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(psi_inverse(-1.0), DomainError);
}

TEST_CASE("constants") {
    const auto& c = constants();
    CHECK(3.0 * std::pow(5.0, -c.d_S / 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.lambda1_D == doctest::Approx(psi(6.0)).epsilon(1e-12));
    CHECK(c.lambda1_D == doctest::Approx(5.0 * psi(2.0)).epsilon(1e-12));
    CHECK(c.lambda2_N == doctest::Approx(5.0 * psi(3.0)).epsilon(1e-12));
    CHECK(c.lambda1_D < c.lambda2_N);
}

TEST_CASE("smallest dirichlet eigenvalue renormalises to the ground state") {
    // oracle level-5 ground value is phi_{-1}^4(2); its renormalised limit is lambda_1^D
    const auto& spec = discrete_spectrum(5, BoundaryKind::Dirichlet);
    const double ground = spec.clusters.front().lambda;
    double x = 2.0;
    for (int k = 0; k < 4; ++k) x = phi_branch(-1, x);
    CHECK(ground == doctest::Approx(x).epsilon(1e-10));
    CHECK(big_psi(5, BranchWord{}, ground) == doctest::Approx(constants().lambda1_D).epsilon(1e-10));
}

TEST_CASE("branch words") {
    CHECK_THROWS_AS(BranchWord(std::vector<int>{1, -1}), DomainError);
    CHECK(BranchWord::parse("+-+").size() == 3);
    CHECK(BranchWord::parse("").empty());
}

TEST_CASE("lambda sequences") {
    auto s = lambda_sequence(DecimationPath(1, 2.0, {}), 3);
    REQUIRE(s.size() == 3);
    CHECK(s[1] == doctest::Approx(0.4384472).epsilon(1e-7));
    CHECK(s[2] == doctest::Approx(phi_branch(-1, s[1])).epsilon(1e-14));

    auto d6 = lambda_sequence(DecimationPath(2, 6.0, {}), 4);
    REQUIRE(d6.size() == 3);
    CHECK(d6[1] == doctest::Approx(3.0));
    CHECK(d6[2] == doctest::Approx(0.6972244).epsilon(1e-7));

    auto plus = lambda_sequence(DecimationPath(1, 5.0, BranchWord::parse("+")), 2);
    CHECK(plus[1] == doctest::Approx(3.6180340).epsilon(1e-7));

    // phi_{+1}(0) = 5 is forbidden after birth
    CHECK_THROWS_AS(lambda_sequence(DecimationPath(1, 0.0, BranchWord::parse("+")), 3), ForbiddenValue);
}

TEST_CASE("big psi examples") {
    CHECK(big_psi(1, {}, 2.0) == doctest::Approx(constants().lambda1_D).epsilon(1e-12));
    CHECK(big_psi(1, {}, 0.0) == 0.0);
    const double v = big_psi(0, BranchWord::parse("+"), 5.0);
    CHECK(v == doctest::Approx(5.0 * psi(3.6180339887)).epsilon(1e-9));
    CHECK(v > 5.0 * psi(3.0));
    CHECK(v < 5.0 * psi(5.0));
}

TEST_CASE("renormalised sequence converges to the eigenvalue") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> signs;
        const int len = trial % 5;
        for (int k = 0; k < len; ++k) signs.push_back(bit(rng) ? 1 : -1);
        if (!signs.empty()) signs.back() = 1;
        DecimationPath path(1, 5.0, BranchWord(signs));
        const int m = path.m0 + 40;
        const double limit = 1.5 * std::pow(5.0, m) * path.lambda_at(m);
        CHECK(limit == doctest::Approx(path.eigenvalue()).epsilon(1e-12));
    }
}

}
