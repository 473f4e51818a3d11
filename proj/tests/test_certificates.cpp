#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "pjlab/certificates.hpp"
#include "pjlab/quadrature.hpp"
#include "oracles.hpp"

using namespace pjlab;

TEST_SUITE("certificates") {

TEST_CASE("yuen certificate") {
    const auto a = certify_yuen(-1.0);
    CHECK(a.applicable);
    CHECK(*a.t_star == 0.5);
    CHECK(a.theorem_id == TheoremId::yuen_2_1);
    CHECK(a.n == 2);

    CHECK(!certify_yuen(0.0).applicable);
    CHECK(!certify_yuen(0.3).applicable);
    CHECK(*certify_yuen(-2.0).t_star == 0.25);
}

TEST_CASE("bounded certificate: condition and closed form") {
    const auto cert = certify_bounded(-1.0, 1.0, 2);
    CHECK(cert.threshold == -0.5);
    CHECK(cert.applicable);
    CHECK(*cert.t_star == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    CHECK(!certify_bounded(-0.4, 1.0, 2).applicable);
    CHECK_THROWS_AS(certify_bounded(-1.0, 0.0, 2), std::domain_error);
    CHECK_THROWS_AS(certify_bounded(-1.0, -1.0, 2), std::domain_error);
    CHECK_THROWS_AS(certify_bounded(-1.0, 1.0, 1), std::domain_error);
}

TEST_CASE("bounded certificate: small-M limit recovers 1/(2 U0)") {
    const auto cert = certify_bounded(-1.0, 1e-8, 2);
    CHECK(cert.applicable);
    CHECK(std::abs(*cert.t_star - 0.5) <= 1e-6 * 0.5);
}

TEST_CASE("bounded certificate equals the constant-damping Riccati time") {
    const auto cert = certify_bounded(-1.0, 1.0, 2);
    ComparisonContext ctx{2, -1.0, DampingProfile::constant(1.0)};
    const auto ric = riccati_blowup_time(ctx);
    CHECK(ric.blowup);
    CHECK(std::abs(ric.t_blowup - *cert.t_star) <= 1e-6);
}

TEST_CASE("t_star decreases as h0 gets more negative") {
    double prev = 1e300;
    for (double h0 : {-0.6, -0.8, -1.0, -1.5, -2.0, -5.0, -20.0}) {
        const auto cert = certify_bounded(h0, 1.0, 2);
        REQUIRE(cert.applicable);
        CHECK(*cert.t_star < prev);
        prev = *cert.t_star;
    }
}

TEST_CASE("unbounded certificate: paper sample thresholds") {
    // frozen: -1/(2 e E1(1)) = -0.8384375140893504
    const auto c1 = certify_unbounded(-1.0, 1.0, 2);
    CHECK(c1.threshold == doctest::Approx(-0.8384375140893504).epsilon(1e-10));
    CHECK(std::abs(c1.threshold - (-0.84)) < 0.005);
    CHECK(c1.applicable);

    // frozen: -0.01/(2 e^100 E1(100)) = -0.5049514383354043; needs the scaled path
    const auto c2 = certify_unbounded(-1.0, 0.01, 2);
    CHECK(c2.threshold == doctest::Approx(-0.5049514383354043).epsilon(1e-10));
    CHECK(std::abs(c2.threshold - (-0.51)) < 0.006);

    // tiny c pushes 1/c past 700: still finite through e1_scaled
    const auto c3 = certify_unbounded(-1.0, 1e-3, 2);
    CHECK(std::isfinite(c3.threshold));
    CHECK(c3.threshold < 0.0);

    CHECK_THROWS_AS(certify_unbounded(-1.0, 0.0, 2), std::domain_error);
    CHECK_THROWS_AS(certify_unbounded(-1.0, 1.0, 0), std::domain_error);
}

TEST_CASE("unbounded certificate: root of 1 + h0 phi eta") {
    const auto cert = certify_unbounded(-1.0, 1.0, 2);
    REQUIRE(cert.applicable);
    // frozen root of E1(e^t) = E1(1) - 1/(2e): t = 0.8045048162662192
    CHECK(*cert.t_star == doctest::Approx(0.8045048162662192).epsilon(1e-10));
    CHECK(*cert.t_star > 0.7);
    CHECK(*cert.t_star < 0.9);
    CHECK(std::abs(unbounded_root_residual(-1.0, 1.0, 2, *cert.t_star)) <= 1e-10);

    // independent bisection oracle on 1 + h0 phi eta(t), formed directly
    const double phi = 2.0 * std::exp(1.0);
    auto F = [&](double t) {
        const double eta_t = oracle::e1_quadrature(1.0) - oracle::e1_quadrature(std::exp(t));
        return 1.0 - phi * eta_t;
    };
    double lo = 0.5, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(*cert.t_star == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
}

TEST_CASE("threshold boundary is strict") {
    for (double c : {1.0, 0.01}) {
        const double thr = certify_unbounded(-1.0, c, 2).threshold;
        CHECK(!certify_unbounded(thr * (1.0 - 1e-9), c, 2).applicable);  // barely less negative
        CHECK(!certify_unbounded(thr, c, 2).applicable);                 // exactly at threshold
        CHECK(certify_unbounded(thr * (1.0 + 1e-2), c, 2).applicable);   // strictly below
    }
    const double thr_b = certify_bounded(-1.0, 1.0, 2).threshold;
    CHECK(!certify_bounded(thr_b * (1.0 - 1e-9), 1.0, 2).applicable);
    CHECK(certify_bounded(thr_b * (1.0 + 1e-2), 1.0, 2).applicable);
}

TEST_CASE("g_of closed forms") {
    // zero damping: g(t) = (n/(n-1)) t
    for (int n : {2, 3, 5}) {
        ComparisonContext ctx{n, -1.0, DampingProfile::zero()};
        for (double t : {0.3, 1.0, 2.0}) {
            CHECK(g_of(ctx, t) == doctest::Approx(n / (n - 1.0) * t).epsilon(1e-11));
        }
    }
    // constant damping: g(t) = (n/(n-1)) (1 - e^{-Mt})/M
    {
        ComparisonContext ctx{2, -1.0, DampingProfile::constant(1.5)};
        for (double t : {0.2, 1.0, 3.0}) {
            const double expected = 2.0 * (1.0 - std::exp(-1.5 * t)) / 1.5;
            CHECK(g_of(ctx, t) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    CHECK(g_of({2, -1.0, DampingProfile::zero()}, 0.0) == 0.0);
}

TEST_CASE("g_of for exponential damping reduces to the eta identity") {
    // substitution u = e^{cs}/c gives g(t) = (n/(n-1)) (e^{1/c}/c) eta(t)
    for (double c : {0.7, 1.0, 2.0}) {
        ComparisonContext ctx{2, -1.0, DampingProfile::exponential(c)};
        for (double t : {0.3, 0.8, 1.5}) {
            CAPTURE(c);
            CAPTURE(t);
            const double lhs = g_of(ctx, t);
            const double eta_t =
                oracle::e1_quadrature(1.0 / c) - oracle::e1_quadrature(std::exp(c * t) / c);
            const double rhs = 2.0 * std::exp(1.0 / c) / c * eta_t;
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("g_of is strictly increasing") {
    ComparisonContext ctx{3, -1.0, DampingProfile::saturating(2.0, 1.0)};
    double prev = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double v = g_of(ctx, 0.2 * k);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("lambda: endpoints and sign pattern") {
    // Lambda(0) = 1/h0 via exact cancellation of N(0) and g'(0)
    for (double h0 : {-1.0, -2.5}) {
        for (int n : {2, 3, 4}) {
            CHECK(lambda_of(h0, 1.0, n, 0.0) == doctest::Approx(1.0 / h0).epsilon(1e-14));
        }
    }
    // frozen hand value at (h0=-1, M=1, n=2, t=0.3):
    // N = 1 + 2(-1)(1 - e^{-0.3}) = 0.4816364413634357, Lambda = -0.6501411924239969
    CHECK(lambda_of(-1.0, 1.0, 2, 0.3) == doctest::Approx(-0.6501411924239969).epsilon(1e-12));
    CHECK(lambda_of(-1.0, 1.0, 2, 0.3) < 0.0);

    // Lambda rises to 0 at t_star
    const auto cert = certify_bounded(-1.0, 1.0, 2);
    const double tstar = *cert.t_star;
    CHECK(std::abs(lambda_of(-1.0, 1.0, 2, tstar)) < 1e-12);
    double prev = -1e300;
    for (int k = 0; k <= 20; ++k) {
        const double t = tstar * k / 20.0;
        const double lam = lambda_of(-1.0, 1.0, 2, t);
        if (k < 20) CHECK(lam < 0.0);
        CHECK(lam > prev - 1e-15);
        prev = lam;
    }
    CHECK_THROWS_AS(lambda_of(-0.4, 1.0, 2, 0.1), std::domain_error);
}

TEST_CASE("riccati blowup times against closed forms") {
    // zero damping, n=2, h0=-1: t* = 1/(2 U0) = 0.5
    {
        ComparisonContext ctx{2, -1.0, DampingProfile::zero()};
        const auto res = riccati_blowup_time(ctx);
        REQUIRE(res.blowup);
        CHECK(std::abs(res.t_blowup - 0.5) <= 1e-6);
    }
    // constant damping equality with the closed form over random triples
    {
        std::mt19937 gen(7u);
        std::uniform_real_distribution<double> uM(0.1, 5.0);
        std::uniform_int_distribution<int> un(2, 6);
        std::uniform_real_distribution<double> umargin(1.2, 3.0);
        for (int i = 0; i < 10; ++i) {
            const double M = uM(gen);
            const int n = un(gen);
            const double h0 = M * (1.0 - n) / n * umargin(gen);
            const auto cert = certify_bounded(h0, M, n);
            REQUIRE(cert.applicable);
            ComparisonContext ctx{n, h0, DampingProfile::constant(M)};
            const auto res = riccati_blowup_time(ctx);
            CAPTURE(M);
            CAPTURE(n);
            CAPTURE(h0);
            REQUIRE(res.blowup);
            CHECK(std::abs(res.t_blowup - *cert.t_star) <= 1e-5 * *cert.t_star);
        }
    }
    // exponential damping: numeric time matches the certificate root
    // (equality case of the comparison) and never exceeds it meaningfully
    {
        const auto cert = certify_unbounded(-1.0, 1.0, 2);
        ComparisonContext ctx{2, -1.0, DampingProfile::exponential(1.0)};
        const auto res = riccati_blowup_time(ctx);
        REQUIRE(res.blowup);
        CHECK(res.t_blowup <= *cert.t_star + 1e-6);
        CHECK(res.t_blowup == doctest::Approx(*cert.t_star).epsilon(1e-5));
    }
}

TEST_CASE("riccati reports no blowup in the decaying regime") {
    // h0 above the bounded threshold with constant damping: |h| decays
    {
        ComparisonContext ctx{2, -0.4, DampingProfile::constant(1.0)};
        const auto res = riccati_blowup_time(ctx);
        CHECK(!res.blowup);
    }
    // exponential damping with h0 above threshold: damping wins; the
    // monotone-alpha early exit must fire long before the horizon
    {
        ComparisonContext ctx{2, -0.4, DampingProfile::exponential(1.0)};
        const auto res = riccati_blowup_time(ctx);
        CHECK(!res.blowup);
        CHECK(res.stop_reason == "decay");
    }
    CHECK_THROWS_AS(riccati_blowup_time({2, 0.5, DampingProfile::zero()}), std::domain_error);
}

TEST_CASE("certificate JSON shape") {
    const auto cert = certify_bounded(-1.0, 1.0, 2);
    const auto j = nlohmann::json::parse(cert.to_json());
    CHECK(j["theorem_id"] == "bounded_3_1");
    CHECK(j["applicable"] == true);
    CHECK(j["h0"] == -1.0);
    CHECK(j["threshold"] == -0.5);
    CHECK(j["t_star"].get<double>() == doctest::Approx(std::log(2.0)));
    CHECK(j["params"]["n"] == 2);
    CHECK(j["params"]["M"] == 1.0);

    const auto inap = nlohmann::json::parse(certify_bounded(-0.4, 1.0, 2).to_json());
    CHECK(inap["applicable"] == false);
    CHECK(inap["t_star"].is_null());
}

TEST_CASE("adaptive quadrature sanity") {
    QuadratureSpec spec;
    const double v = adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 5.0, spec);
    CHECK(v == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-11));
    CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 0.0, 1.0,
                                     QuadratureSpec{-1.0, 1e-9, 10}),
                    std::domain_error);
}

}  // TEST_SUITE
