#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pbphase/linalg.hpp"
#include "pbphase/phase_operators.hpp"

using namespace pbphase;
using oracle::Complex;

namespace {

const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

Operator swap2() { return Operator(2, {0.0, 1.0, 1.0, 0.0}); }

// (1/sqrt2)[[1,1],[1,-1]], written out by hand.
Operator f1_by_hand() { return Operator(2, {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2}); }

// Cyclic shift at s = 2, written out by hand.
Operator v2_by_hand() { return Operator(3, {0, 1, 0, 0, 0, 1, 1, 0, 0}); }

}  // namespace

TEST_CASE("Operator construction enforces its invariants", "[linalg]") {
    CHECK_THROWS_AS(Operator(0, {}), usage_error);
    CHECK_THROWS_AS(Operator(2, {1.0, 2.0, 3.0}), usage_error);
    CHECK_THROWS_AS(Operator(1, {Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}}), domain_error);
    CHECK_THROWS_AS(Operator(1, {Complex{0.0, std::numeric_limits<double>::infinity()}}), domain_error);
    CHECK_THROWS_AS(FieldState({}), usage_error);
    CHECK_THROWS_AS(FieldState::basis(3, 3), usage_error);
    CHECK_THROWS_AS(Operator::identity(2).at(2, 0), usage_error);
}

TEST_CASE("ToleranceProfile defaults are valid", "[linalg]") {
    ToleranceProfile t;
    CHECK_NOTHROW(t.validate());
    CHECK(t.eq_tol == 1e-12);
    CHECK(t.spectral_tol == 1e-10);
    CHECK(t.ode_tol == 1e-6);
    CHECK(t.revival_tol == 1e-9);
    t.ode_tol = 0.0;
    CHECK_THROWS_AS(t.validate(), usage_error);
    t.ode_tol = 1.0;
    CHECK_THROWS_AS(t.validate(), usage_error);
}

TEST_CASE("mat_mul", "[linalg]") {
    std::mt19937_64 rng(11);
    const Operator a = oracle::random_operator(3, rng);
    CHECK(max_abs_diff(mat_mul(Operator::identity(3), a), a) == 0.0);

    const Operator v2 = v2_by_hand();
    CHECK(max_abs_diff(mat_mul(v2, adjoint(v2)), Operator::identity(3)) == 0.0);
    CHECK(max_abs_diff(mat_mul(swap2(), swap2()), Operator::identity(2)) == 0.0);

    CHECK_THROWS_AS(mat_mul(Operator::identity(2), Operator::identity(3)), usage_error);

    SECTION("matches the naive triple loop") {
        for (std::size_t n : {1u, 2u, 5u, 16u, 33u}) {
            const Operator x = oracle::random_operator(n, rng);
            const Operator y = oracle::random_operator(n, rng);
            const Operator ref = oracle::from_grid(oracle::naive_matmul(oracle::to_grid(x), oracle::to_grid(y)));
            CHECK(max_abs_diff(mat_mul(x, y), ref) < 1e-13 * double(n));
        }
    }
}

TEST_CASE("adjoint", "[linalg]") {
    CHECK(max_abs_diff(adjoint(Operator::identity(4)), Operator::identity(4)) == 0.0);
    CHECK(max_abs_diff(adjoint(f1_by_hand()), f1_by_hand()) == 0.0);

    std::mt19937_64 rng(3);
    const Operator a = oracle::random_operator(5, rng);
    CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
    CHECK(adjoint(a)(1, 3) == std::conj(a(3, 1)));
}

TEST_CASE("apply", "[linalg]") {
    const FieldState v({Complex{1, 2}, Complex{-3, 0.5}, Complex{0, 1}});
    CHECK(max_abs_diff(apply(Operator::identity(3), v), v) == 0.0);
    CHECK(max_abs_diff(apply(v2_by_hand(), FieldState::basis(3, 1)), FieldState::basis(3, 0)) == 0.0);

    const Operator n2 = number_operator(HilbertDim(2));
    CHECK(max_abs_diff(apply(n2, FieldState::basis(3, 2)), Complex{2.0} * FieldState::basis(3, 2)) == 0.0);

    CHECK_THROWS_AS(apply(Operator::identity(2), v), usage_error);
}

TEST_CASE("max_abs_diff", "[linalg]") {
    std::mt19937_64 rng(5);
    const Operator a = oracle::random_operator(4, rng);
    CHECK(max_abs_diff(a, a) == 0.0);
    CHECK(max_abs_diff(Operator::identity(2), swap2()) == 1.0);
    const Operator f1 = f1_by_hand();
    CHECK(max_abs_diff(mat_mul(f1, adjoint(f1)), Operator::identity(2)) <= 1e-15);
    CHECK(max_abs_diff(Operator(1, {Complex{3, 0}}), Operator(1, {Complex{0, 4}})) == Catch::Approx(5.0));
    CHECK_THROWS_AS(max_abs_diff(Operator::identity(2), Operator::identity(3)), usage_error);
}

TEST_CASE("conjugate_by_unitary", "[linalg]") {
    CHECK(max_abs_diff(conjugate_by_unitary(Operator::identity(3), std::vector<Complex>(3, 1.0)),
                       Operator::identity(3)) == 0.0);

    const Operator expected(2, {0.5, -0.5, -0.5, 0.5});
    const std::vector<Complex> d{0.0, 1.0};
    CHECK(max_abs_diff(conjugate_by_unitary(f1_by_hand(), d), expected) < 1e-15);

    for (std::size_t s = 0; s < 12; ++s) {
        const HilbertDim h(s);
        CHECK(max_abs_diff(conjugate_by_unitary(dft(h), spectral_diagonal(h)), lsg_shift_operator(h)) < 1e-14);
    }
    CHECK_THROWS_AS(conjugate_by_unitary(Operator::identity(2), std::vector<Complex>(3)), usage_error);
}

TEST_CASE("property: built unitaries satisfy U U^dagger = I", "[linalg][property]") {
    for (std::size_t n = 1; n <= 64; ++n) {
        const HilbertDim h = HilbertDim::from_dim(n);
        INFO("dim " << n);
        CHECK(is_unitary(dft(h), 1e-12));
        CHECK(is_unitary(lsg_shift_operator(h), 1e-12));
        const Operator f = dft(h);
        CHECK(max_abs_diff(conjugate_by_unitary(f, std::vector<Complex>(n, 1.0)), Operator::identity(n)) < 1e-12);
    }
}

TEST_CASE("property: mat_mul is associative to 8 eps relative to |A||B||C|", "[linalg][property]") {
    std::mt19937_64 rng(2024);
    const double eps = std::numeric_limits<double>::epsilon();
    auto abs_of = [](const Operator& a) {
        return Operator::generate(a.dim(), [&](std::size_t r, std::size_t c) { return Complex{std::abs(a(r, c))}; });
    };
    for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 31u, 64u}) {
        const Operator a = oracle::random_operator(n, rng);
        const Operator b = oracle::random_operator(n, rng);
        const Operator c = oracle::random_operator(n, rng);
        const Operator left = mat_mul(mat_mul(a, b), c);
        const Operator right = mat_mul(a, mat_mul(b, c));
        const Operator bound = mat_mul(mat_mul(abs_of(a), abs_of(b)), abs_of(c));
        double worst = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) {
            worst = std::max(worst, std::abs(left.entries()[i] - right.entries()[i]) / (eps * bound.entries()[i].real()));
        }
        INFO("dim " << n);
        CHECK(worst <= 8.0);
    }
}

TEST_CASE("power and inner_product", "[linalg]") {
    CHECK(max_abs_diff(power(swap2(), 0), Operator::identity(2)) == 0.0);
    CHECK(max_abs_diff(power(v2_by_hand(), 3), Operator::identity(3)) == 0.0);
    const FieldState a({Complex{0, 1}, Complex{1, 0}});
    const FieldState b({Complex{0, 1}, Complex{2, 0}});
    CHECK(inner_product(a, b) == Complex{3.0, 0.0});
    CHECK(a.norm_squared() == 2.0);
}
