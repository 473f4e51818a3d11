#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pjlab/damping.hpp"
#include "oracles.hpp"

using pjlab::DampingFamily;
using pjlab::DampingProfile;
using pjlab::parse_damping;

TEST_SUITE("damping") {

TEST_CASE("pointwise values per family") {
    const auto zero = DampingProfile::zero();
    for (double t : {0.0, 0.5, 7.3}) CHECK(zero.alpha(t) == 0.0);

    CHECK(DampingProfile::exponential(1.0).alpha(0.0) == 1.0);
    CHECK(DampingProfile::constant(1.0).alpha(7.3) == 1.0);
    CHECK(DampingProfile::saturating(2.0, 0.5).alpha(0.0) == 0.0);
    CHECK(DampingProfile::saturating(2.0, 0.5).alpha(1e9) == doctest::Approx(2.0));
    CHECK_THROWS_AS(zero.alpha(-0.1), std::domain_error);
}

TEST_CASE("closed-form integrals") {
    CHECK(DampingProfile::exponential(1.0).integral(1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(DampingProfile::constant(2.0).integral(3.0) == 6.0);
    const auto sat = DampingProfile::saturating(1.0, 1.0);
    for (double t : {0.5, 1.0, 5.0}) {
        CAPTURE(t);
        CHECK(sat.integral(t) <= t);
        CHECK(sat.integral(t) == doctest::Approx(t - (1.0 - std::exp(-t))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(sat.integral(-1.0), std::domain_error);
}

TEST_CASE("integral matches quadrature of alpha for every family") {
    std::vector<DampingProfile> profiles = {
        DampingProfile::zero(), DampingProfile::constant(1.7),
        DampingProfile::saturating(3.0, 0.5), DampingProfile::exponential(0.8),
        DampingProfile::tabulated({0.0, 0.4, 1.0, 2.5}, {0.2, 1.0, 0.8, 1.4})};
    for (const auto& p : profiles) {
        for (double t : {0.3, 1.0, 2.2, 4.0}) {
            CAPTURE(static_cast<int>(p.family()));
            CAPTURE(t);
            const double ref = oracle::romberg([&](double s) { return p.alpha(s); }, 0.0, t);
            CHECK(std::abs(p.integral(t) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("integral is nondecreasing") {
    const auto tab = DampingProfile::tabulated({0.0, 1.0, 2.0}, {1.0, 0.0, 2.0});
    for (const auto& p :
         {DampingProfile::saturating(2.0, 1.5), DampingProfile::exponential(0.5), tab}) {
        double prev = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const double v = p.integral(0.1 * k);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("constant family: exp(-integral) equals exp(-Mt) exactly") {
    const auto p = DampingProfile::constant(1.0);
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
        CHECK(std::exp(-p.integral(t)) == std::exp(-1.0 * t));
    }
}

TEST_CASE("sup_bound per family") {
    CHECK(*DampingProfile::constant(1.0).sup_bound().value == 1.0);
    CHECK(*DampingProfile::saturating(3.0, 0.5).sup_bound().value == 3.0);

    const auto exp_sup = DampingProfile::exponential(1.0).sup_bound();
    CHECK(!exp_sup.value.has_value());
    CHECK(exp_sup.unbounded);

    const auto zero_sup = DampingProfile::zero().sup_bound();
    CHECK(!zero_sup.value.has_value());
    CHECK(zero_sup.undamped);

    const auto tab = DampingProfile::tabulated({0.0, 1.0}, {0.5, 2.0}).sup_bound();
    CHECK(*tab.value == 2.0);
    CHECK(tab.tabulated_range_only);
}

TEST_CASE("derivative_at_zero") {
    CHECK(DampingProfile::exponential(0.01).derivative_at_zero() == 0.01);
    CHECK(DampingProfile::constant(5.0).derivative_at_zero() == 0.0);
    CHECK(DampingProfile::zero().derivative_at_zero() == 0.0);
    CHECK(DampingProfile::saturating(2.0, 3.0).derivative_at_zero() == 6.0);
    CHECK_THROWS_AS(DampingProfile::tabulated({0.0, 1.0}, {0.0, 1.0}).derivative_at_zero(),
                    std::domain_error);
}

TEST_CASE("tabulated interpolation hits knots and stays nonnegative") {
    const auto p = DampingProfile::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, 2.0, 0.1, 1.0});
    CHECK(p.alpha(0.0) == 0.0);
    CHECK(p.alpha(1.0) == 2.0);
    CHECK(p.alpha(2.0) == doctest::Approx(0.1));
    for (int k = 0; k <= 300; ++k) {
        const double t = 3.0 * k / 300.0;
        CAPTURE(t);
        CHECK(p.alpha(t) >= 0.0);
    }
    // constant extension beyond the knots
    CHECK(p.alpha(10.0) == 1.0);
    CHECK(p.integral(4.0) == doctest::Approx(p.integral(3.0) + 1.0));
}

TEST_CASE("literal parsing round trip") {
    CHECK(parse_damping("zero").family() == DampingFamily::zero);
    CHECK(parse_damping("const:1.5").param_M() == 1.5);
    CHECK(parse_damping("sat:2,0.5").param_r() == 0.5);
    CHECK(parse_damping("exp:0.01").param_c() == 0.01);
    CHECK(parse_damping("const:1.5").to_literal() == "const:1.5");
    CHECK(parse_damping("sat:2,0.5").to_literal() == "sat:2,0.5");

    CHECK_THROWS_AS(parse_damping("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(parse_damping("const:-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_damping("const:xyz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_damping("sat:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_damping("exp:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_damping("tab:/no/such/file.csv"), std::invalid_argument);
}

TEST_CASE("tabulated literal loads a two-column CSV") {
    const std::string path = "damping_knots_test.csv";
    {
        std::ofstream out(path);
        out << "t,alpha\n0,0.5\n1,1.5\n2,1.0\n";
    }
    const auto p = parse_damping("tab:" + path);
    CHECK(p.family() == DampingFamily::tabulated);
    CHECK(p.alpha(0.0) == 0.5);
    CHECK(p.alpha(1.0) == 1.5);
    CHECK(p.to_literal() == "tab:" + path);
    std::remove(path.c_str());
}

TEST_CASE("tabulated knot validation") {
    CHECK_THROWS_AS(DampingProfile::tabulated({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DampingProfile::tabulated({0.0, 1.0}, {1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(DampingProfile::tabulated({}, {}), std::invalid_argument);
}

}  // TEST_SUITE
