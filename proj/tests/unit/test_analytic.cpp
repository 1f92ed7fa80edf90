#include <cmath>

#include <dalg/analytic.hpp>
#include <dalg/named_series.hpp>
#include <dalg/recurrence.hpp>

#include "doctest.h"

using namespace dalg;

namespace {

QSeries geometric(long N) {
    std::vector<mpq_class> c(static_cast<std::size_t>(N) + 1, 1);
    return QSeries(Domain::rationals(), std::move(c));
}

QSeries h1_series(long N) {
    HypergeometricSpec spec;
    spec.upper = {mpq_class(1, 2), mpq_class(1, 2)};
    spec.lower = {1};
    spec.scale = 16;
    return hypergeometric_series(spec, N);
}

} // namespace

TEST_CASE("linear ode fit recovers the geometric equation exactly") {
    auto fit = fit_linear_ode(geometric(40), 1, 1, 20);
    REQUIRE(fit.has_value());
    CHECK(fit->exact);
    CHECK(fit->head == 1);
    CHECK(fit->A[0] == std::vector<mpz_class>{1, 0});
    CHECK(fit->A[1] == std::vector<mpz_class>{-1, 1});

    auto rep = singularities(*fit);
    REQUIRE(rep.entries.size() == 1);
    CHECK(std::abs(rep.entries[0].location - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(rep.entries[0].exponent - std::complex<double>(-1, 0)) < 1e-12);
}

TEST_CASE("linear ode fit on 2F1([1/2,1/2],[1],16x)") {
    auto fit = fit_linear_ode(h1_series(60), 2, 2, 14);
    REQUIRE(fit.has_value());
    CHECK(fit->exact);
    CHECK(fit->head == 2);
    CHECK(fit->A[0] == std::vector<mpz_class>{4, 0, 0});
    CHECK(fit->A[1] == std::vector<mpz_class>{-1, 32, 0});
    CHECK(fit->A[2] == std::vector<mpz_class>{0, -1, 16});

    auto rep = singularities(*fit);
    bool hit = false;
    for (const auto& e : rep.entries)
        if (std::abs(e.location - std::complex<double>(0.0625, 0)) < 1e-10) hit = true;
    CHECK(hit);
}

TEST_CASE("undersized window throws, full-rank window reports no fit") {
    CHECK_THROWS_AS(fit_linear_ode(geometric(40), 2, 2, 8), InsufficientTerms);
    // sum n! x^n satisfies no second order equation with degree-1 coefficients
    auto fit = fit_linear_ode(named_series(NamedSeries::FactorialSum, 40), 2, 1, 30);
    CHECK(!fit.has_value());
}

namespace {

SingularityReport approximant_report(const QSeries& F, long q, long D) {
    long window = (q + 1) * (D + 1) + q - 1;
    auto fit = fit_linear_ode(F, q, D, window);
    REQUIRE(fit.has_value());
    CHECK(!fit->exact);
    CHECK(fit->nullity == 1);
    return singularities(*fit);
}

} // namespace

TEST_CASE("differential approximants locate the composition critical point") {
    QSeries F = named_series(NamedSeries::CompositionH1H2, 200);
    auto repA = approximant_report(F, 4, 12);
    auto repB = approximant_report(F, 5, 12);
    // defects of the fit move when the order changes; the singularities of
    // the function stay put
    auto stable = stable_entries(repA, repB);
    REQUIRE(!stable.empty());
    std::size_t best = 0;
    for (std::size_t i = 1; i < stable.size(); ++i)
        if (std::abs(stable[i].location) < std::abs(stable[best].location)) best = i;
    double xc = transcendental_critical_point();
    CHECK(std::abs(stable[best].location.imag()) < 1e-8);
    CHECK(stable[best].location.real() == doctest::Approx(xc).epsilon(1e-6));
    CHECK(std::abs(stable[best].exponent) < 0.02);
}

TEST_CASE("cluster of approximant roots near 1/16 across two orders") {
    QSeries F = named_series(NamedSeries::CompositionH1H2, 200);
    auto repA = approximant_report(F, 4, 12);
    auto repB = approximant_report(F, 5, 12);
    // at this window size the cluster spreads over a few percent, much
    // wider than the tolerance that suits well-resolved approximants
    flag_clusters_across(repA, repB, 0.03);
    bool clustered = false;
    for (const auto& e : repA.entries)
        if (e.irregular_cluster &&
            std::abs(e.location - std::complex<double>(0.0625, 0)) < 0.05 * 0.0625)
            clustered = true;
    CHECK(clustered);
}

TEST_CASE("growth rate of the composition coefficients") {
    QSeries F = named_series(NamedSeries::CompositionH1H2, 1500);
    auto est = radius_estimate(F, RadiusMethod::Ratio);
    CHECK(est.sign_pattern == "positive");
    CHECK(est.lambda == doctest::Approx(21.7257468152791).epsilon(1e-6));
    CHECK(est.radius == doctest::Approx(1.0 / 21.7257468152791).epsilon(1e-6));
    // the growth rate equals the reciprocal critical point
    CHECK(est.radius == doctest::Approx(transcendental_critical_point()).epsilon(1e-6));
}

TEST_CASE("ratio estimates sharpen with the truncation order") {
    double target = 21.7257468152791;
    double prev_err = 1e9;
    for (long N : {200, 400, 800}) {
        QSeries F = named_series(NamedSeries::CompositionH1H2, N);
        auto est = radius_estimate(F, RadiusMethod::Ratio);
        double err = std::abs(est.lambda - target);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("growth rate of the deformed composition at v = 2") {
    QSeries F = composition_family(2, 800);
    auto est = radius_estimate(F, RadiusMethod::Ratio);
    CHECK(est.radius == doctest::Approx(0.02722469).epsilon(1e-4));
}

TEST_CASE("radius of a plain geometric series") {
    auto est = radius_estimate(geometric(200), RadiusMethod::Ratio);
    CHECK(est.lambda == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(est.converged);
    auto root = radius_estimate(geometric(200), RadiusMethod::Root);
    CHECK(root.lambda == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("sign patterns") {
    std::vector<double> alt(120);
    for (std::size_t i = 0; i < alt.size(); ++i)
        alt[i] = (i % 2 ? -1.0 : 1.0) * std::pow(3.0, static_cast<double>(i));
    auto est = radius_estimate(alt, RadiusMethod::Ratio);
    CHECK(est.sign_pattern == "alternating");
    CHECK(est.lambda == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("the 16x S(x) = 1 solver on the identity evaluator") {
    double x = solve_16x_equals_one([](double) { return 1.0; });
    CHECK(x == doctest::Approx(0.0625).epsilon(1e-10));
}

TEST_CASE("critical point of 16x 2F1([1/2,1/2],[1],16x) = 1") {
    double xc = transcendental_critical_point();
    CHECK(xc == doctest::Approx(0.046028337184).epsilon(1e-9));
    // consistency against the exact series evaluated in doubles
    QSeries H = h1_series(200);
    double s = 0, xi = 1;
    for (long i = 0; i <= 200; ++i) {
        s += H.at(i).get_d() * xi;
        xi *= xc;
    }
    CHECK(16.0 * xc * s == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("borel asymptotics of sum n! x^n") {
    std::vector<double> scaled(3000, 1.0); // c_n / n! is identically 1
    auto fit = borel_asymptotics(scaled);
    CHECK(fit.c == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(fit.log_coeff) < 1e-6);
}

TEST_CASE("borel asymptotics of the divergent construction") {
    auto scaled = convolution_series_scaled(divergent_simple_spec(), 9000);
    auto fit = borel_asymptotics(scaled);
    CHECK(fit.c == doctest::Approx(0.21795078).epsilon(1e-6));
    CHECK(fit.log_coeff == doctest::Approx(0.65385).epsilon(0.01));
    // the pole plus log model captures the singular behavior; the transform
    // also carries a bounded regular part, so the deviation stays below a
    // constant at the sample points while both sides diverge, and the
    // relative deviation dies out approaching x = 1
    for (const auto& [x, b] : fit.samples) {
        double model = fit.c / (1.0 - x) + 0.65385 * std::log(1.0 - x);
        CHECK(std::abs(b - model) < 1.2);
    }
    for (auto [x, bound] : {std::pair{0.99, 0.06}, {0.999, 0.006}}) {
        double b = 0, xi = 1;
        for (double s : scaled) {
            b += s * xi;
            xi *= x;
        }
        double model = fit.c / (1.0 - x) + 0.65385 * std::log(1.0 - x);
        CHECK(std::abs(b - model) / b < bound);
    }
}
