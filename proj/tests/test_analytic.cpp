#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subord/analytic.hpp"
#include "subord/errors.hpp"

#include <cmath>
#include <random>

using namespace subord;

namespace {

constexpr Complex I{0.0, 1.0};

double sup_on_circle(const AnalyticFn& f, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        s = std::max(s, std::abs(f(std::polar(1.0, kTwoPi * k / n))));
    }
    return s;
}

} // namespace

TEST_CASE("AnalyticFn enforces the leading order") {
    CHECK_NOTHROW(AnalyticFn({1.0, 0.0, 2.0}, 2));
    CHECK_THROWS_AS(AnalyticFn({1.0, 0.5, 2.0}, 2), std::invalid_argument);
    CHECK(AnalyticFn(std::vector<Complex>{}).degree() == 0);
    CHECK(AnalyticFn({1.0, 2.0}).coefficient(5) == Complex(0.0));
}

TEST_CASE("eval_with_derivative examples") {
    auto [v0, d0] = eval_with_derivative(AnalyticFn({1.0}), Complex(0.3, 0.4));
    CHECK(v0 == Complex(1.0));
    CHECK(d0 == Complex(0.0));

    auto [v1, d1] = eval_with_derivative(AnalyticFn({1.0, 1.0}), 0.5);
    CHECK(v1 == Complex(1.5));
    CHECK(d1 == Complex(0.5));

    auto [v2, d2] = eval_with_derivative(AnalyticFn({1.0, 0.0, 2.0}), I);
    CHECK(std::abs(v2 - Complex(-1.0)) < 1e-15);
    CHECK(std::abs(d2 - Complex(-4.0)) < 1e-15);
}

TEST_CASE("sample_schwarz examples") {
    SUBCASE("degree 1") {
        const auto w = sample_schwarz(1, 1, 7);
        CHECK(w.series.coefficient(0) == Complex(0.0));
        CHECK(std::abs(w.series.coefficient(1)) <= 0.999 + 1e-15);
        CHECK(w.sup_bound <= 0.999 + 1e-15);
    }
    SUBCASE("omega(0) = 0 and determinism") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto w = sample_schwarz(6, 2, seed);
            CHECK(w.series(0.0) == Complex(0.0));
            CHECK(w.series.coefficient(1) == Complex(0.0));
            CHECK(w.series.coefficients() == sample_schwarz(6, 2, seed).series.coefficients());
        }
    }
    SUBCASE("degree 3: refined 16384-point sup stays below 0.9995") {
        const auto w = sample_schwarz(3, 1, 42);
        CHECK(sup_on_circle(w.series, 16384) <= 0.9995);
        CHECK(w.sup_bound <= 0.999 + 1e-12);
    }
    CHECK_THROWS_AS(sample_schwarz(1, 2, 0), std::invalid_argument);
}

TEST_CASE("compose_janowski examples") {
    SUBCASE("zero omega gives 1") {
        const SchwarzFn zero{AnalyticFn({0.0, 0.0}), 0.0};
        const auto c = compose_janowski(zero, JanowskiPair(0.5, -0.3), 5);
        for (int j = 0; j <= 5; ++j) {
            CHECK(c.series.coefficient(j) == Complex(j == 0 ? 1.0 : 0.0));
        }
    }
    SUBCASE("omega = z, (1, 0)") {
        const SchwarzFn id{AnalyticFn({0.0, 1.0}), 1.0};
        const auto c = compose_janowski(id, JanowskiPair(1, 0), 4);
        const std::vector<Complex> want{1.0, 1.0, 0.0, 0.0, 0.0};
        CHECK(c.series.coefficients() == want);
    }
    SUBCASE("omega = z, (1, -1): geometric series 1 + 2z + 2z^2 + ...") {
        const SchwarzFn id{AnalyticFn({0.0, 1.0}), 1.0};
        const auto c = compose_janowski(id, JanowskiPair(1, -1), 3);
        const std::vector<Complex> want{1.0, 2.0, 2.0, 2.0};
        CHECK(c.series.coefficients() == want);
        CHECK(c.truncation_warning());
    }
    SUBCASE("tail warning disappears with enough terms") {
        const SchwarzFn half{AnalyticFn({0.0, 0.5}), 0.5};
        CHECK(compose_janowski(half, JanowskiPair(1, -1), 4).truncation_warning());
        CHECK_FALSE(compose_janowski(half, JanowskiPair(1, -1), 40).truncation_warning());
    }
    SUBCASE("truncation below the degree of omega") {
        const auto w = sample_schwarz(5, 1, 1);
        CHECK_THROWS_AS(compose_janowski(w, JanowskiPair(1, 0), 3), std::invalid_argument);
    }
}

TEST_CASE("membership_margin examples") {
    const JanowskiPair pair(1, 0);
    CHECK(membership_margin(AnalyticFn({1.0}), pair, 256, 0.999).margin == 1.0);
    CHECK(membership_margin(AnalyticFn({1.0, 1.0}), pair, 256, 0.999).margin == doctest::Approx(0.001).epsilon(1e-6));
    const auto bad = membership_margin(AnalyticFn({1.0, 2.0}), pair, 256, 0.999);
    CHECK(bad.margin == doctest::Approx(-0.998).epsilon(1e-9));
    CHECK(std::abs(bad.witness) == doctest::Approx(0.999));
    CHECK_THROWS_AS(membership_margin(AnalyticFn({1.0}), pair, 32, 0.999), std::invalid_argument);
    CHECK_THROWS_AS(membership_margin(AnalyticFn({1.0}), pair, 256, 1.0), std::invalid_argument);
    // p = -1 hits the pole of chi for (1, -1): upper - lower p = 1 + p.
    CHECK_THROWS_AS(membership_margin(AnalyticFn({-1.0}, 1), JanowskiPair(1, -1), 64, 0.5), PoleError);
}

TEST_CASE("integrate_to_starlike examples") {
    SUBCASE("p = 1 gives f = z") {
        const auto f = integrate_to_starlike(AnalyticFn({1.0}), 6);
        for (int j = 0; j <= 7; ++j) {
            CHECK(f.coefficient(j) == Complex(j == 1 ? 1.0 : 0.0));
        }
    }
    SUBCASE("Koebe") {
        std::vector<Complex> p(9, 2.0);
        p[0] = 1.0;
        const auto f = integrate_to_starlike(AnalyticFn(p), 8);
        for (int k = 1; k <= 8; ++k) {
            CHECK(std::abs(f.coefficient(k) - Complex(k)) < 1e-12);
        }
    }
    SUBCASE("p = 1 + z gives z e^z") {
        const auto f = integrate_to_starlike(AnalyticFn({1.0, 1.0}), 10);
        double factorial = 1.0;
        for (int k = 0; k <= 10; ++k) {
            if (k > 0) {
                factorial *= k;
            }
            CHECK(std::abs(f.coefficient(k + 1) - 1.0 / factorial) < 1e-12);
        }
    }
    CHECK_THROWS_AS(integrate_to_starlike(AnalyticFn({2.0, 1.0}), 4), std::invalid_argument);
}

TEST_CASE("series_divide") {
    // 1/(1 - z) = 1 + z + z^2 + ...
    const std::vector<Complex> num{1.0};
    const std::vector<Complex> den{1.0, -1.0};
    const auto q = series_divide(num, den, 5);
    REQUIRE(q.size() == 6);
    for (const auto& c : q) {
        CHECK(c == Complex(1.0));
    }
    const std::vector<Complex> zero{0.0, 1.0};
    CHECK_THROWS(series_divide(num, zero, 3));
}

TEST_CASE("property: compositions are members") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double B = -1.0 + 1.9 * u(rng);
        const double A = B + (1.0 - B) * (0.05 + 0.95 * u(rng));
        const JanowskiPair pair(A, B);
        const int degree = 1 + static_cast<int>(rng() % 8);
        const auto w = sample_schwarz(degree, 1, rng());
        // Radius 0.9 keeps the geometric tail of the truncated series small.
        int trunc = degree;
        while (compose_janowski(w, pair, trunc).tail_bound_at(0.9) > 1e-6 && trunc < 2000) {
            trunc *= 2;
        }
        const auto c = compose_janowski(w, pair, trunc);
        CHECK(membership_margin(c.series, pair, 2048, 0.9).margin > 0.0);
    }
}

TEST_CASE("property: starlike round trip") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const auto w = sample_schwarz(4, 1, rng());
        const auto p = compose_janowski(w, JanowskiPair(0.5 + 0.5 * u(rng), -u(rng)), 14).series;
        const auto f = integrate_to_starlike(p, 14);
        const auto back = starlike_ratio_series(f, 14);
        for (int j = 0; j <= 14; ++j) {
            CHECK(std::abs(back.coefficient(j) - p.coefficient(j)) < 1e-10);
        }
    }
}

TEST_CASE("property: z p' agrees with central differences") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;
    for (int i = 0; i < 200; ++i) {
        std::vector<Complex> c(9);
        for (auto& x : c) {
            x = Complex(u(rng), u(rng));
        }
        const AnalyticFn p(c, 1);
        const Complex z = std::polar(0.9 * std::abs(u(rng)), 3.14159 * u(rng));
        const auto [value, zderiv] = eval_with_derivative(p, z);
        const Complex fd = z * (p(z + h) - p(z - h)) / (2.0 * h);
        CHECK(std::abs(zderiv - fd) <= 1e-6 * std::max(1.0, std::abs(zderiv)));
        CHECK(std::abs(value - p(z)) < 1e-13);
    }
}

TEST_CASE("property: membership margin is nonincreasing in radius") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        std::vector<Complex> c(7);
        c[0] = 1.0;
        for (std::size_t j = 1; j < c.size(); ++j) {
            c[j] = 0.1 * Complex(u(rng), u(rng)); // keeps 1 + p away from zero
        }
        const AnalyticFn p(c);
        const JanowskiPair pair(1, -1);
        double previous = 2.0;
        for (double r : {0.2, 0.4, 0.6, 0.8, 0.95, 0.999}) {
            const double m = membership_margin(p, pair, 2048, r).margin;
            CHECK(m <= previous + 1e-9);
            previous = m;
        }
    }
}
