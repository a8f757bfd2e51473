#include <doctest.h>

#include <cmath>

#include "pscale/parse.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

/// sup { t : A_l t^l <= delta, B_l t^l <= sqrt(delta) } by bisection on the maxima.
double tau_bisection(const CoefficientMaxima& mx, double delta)
{
    auto ok = [&](double t) {
        for (const auto& [l, a] : mx.A) {
            if (a > 0 && a * std::pow(t, l) > delta) return false;
        }
        for (const auto& [l, b] : mx.B) {
            if (b > 0 && b * std::pow(t, l) > std::sqrt(delta)) return false;
        }
        return true;
    };
    double lo = 0, hi = 1;
    while (ok(hi)) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

NormalizationResult normalize_boundary(const DomainSpec& spec, std::vector<Gaussian> zprime)
{
    return normalize_at(spec, boundary_point(spec, std::move(zprime)), dangelo_type_z1(spec).m());
}

}  // namespace

TEST_CASE("coefficient maxima and tau on E2 at (1/5, 0)")
{
    const DomainSpec e2 = egg(2);
    const auto norm = normalize_boundary(e2, {Gaussian(Rational(1, 5)), Gaussian(0)});
    const CoefficientMaxima mx = coefficient_maxima(norm, 2);
    CHECK(mx.A_squared.at(2) == Rational(16, 625));
    CHECK(mx.A_squared.at(3) == Rational(4, 25));
    CHECK(mx.A_squared.at(4) == Rational(1));
    CHECK(mx.B_squared.at(2) == Rational(0));

    const TauDetail td = tau_detail(mx, Rational(1, 625), 2);
    REQUIRE(td.exact.has_value());
    CHECK(*td.exact == Rational(1, 10));
    CHECK(td.active == std::vector<std::string>{"A2"});
    CHECK(tau(mx, 0.0016, 2) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(tau(mx, 0.0, 2), Error);
}

TEST_CASE("tau agrees with a bisection oracle and is admissible")
{
    Rng rng(41);
    for (const DomainSpec& spec : {egg(2), perturbed_egg(), egg(3)}) {
        const int m = dangelo_type_z1(spec).m();
        for (int t = 0; t < 8; ++t) {
            const auto norm = normalize_boundary(spec, random_rational_point(rng, 2, 0.3));
            const CoefficientMaxima mx = coefficient_maxima(norm, m);
            for (int e = 1; e <= 8; ++e) {
                const Rational delta(mpz_class(1), mpz_class(10) * mpz_class(std::pow(10, e - 1)));
                const TauDetail td = tau_detail(mx, delta, m);
                const double oracle = tau_bisection(mx, to_double(delta));
                CHECK(td.value == doctest::Approx(oracle).epsilon(1e-12));
                // Exact admissibility of the value actually used.
                const Rational tq = td.as_rational();
                for (const auto& [l, s] : mx.A_squared) {
                    Rational p = 1;
                    for (int k = 0; k < 2 * l; ++k) p *= tq;
                    CHECK(s * p <= delta * delta);
                }
                for (const auto& [l, s] : mx.B_squared) {
                    Rational p = 1;
                    for (int k = 0; k < 2 * l; ++k) p *= tq;
                    CHECK(s * p <= delta);
                }
            }
        }
    }
}

TEST_CASE("tau is nondecreasing in delta")
{
    Rng rng(42);
    for (const DomainSpec& spec : {egg(2), perturbed_egg()}) {
        for (int t = 0; t < 10; ++t) {
            const auto norm = normalize_boundary(spec, random_rational_point(rng, 2, 0.3));
            const CoefficientMaxima mx = coefficient_maxima(norm, 2);
            double prev = 0;
            for (double d = 1e-9; d < 1.0; d *= 1.7) {
                const double t_d = tau(mx, d, 2);
                CHECK(t_d >= prev);
                prev = t_d;
            }
        }
    }
}

TEST_CASE("tau needs the top coefficient")
{
    CoefficientMaxima mx;
    mx.m = 2;
    mx.A = {{2, 1.0}, {3, 0.0}, {4, 0.0}};
    mx.A_squared = {{2, 1}, {3, 0}, {4, 0}};
    CHECK_THROWS_AS(tau_detail(mx, Rational(1, 100), 2), HypothesisError);
}

TEST_CASE("rescaled E2 at (1/5, 0) with epsilon 1/625")
{
    const DomainSpec e2 = egg(2);
    const auto norm = normalize_boundary(e2, {Gaussian(Rational(1, 5)), Gaussian(0)});
    const ScalingData sd = rescaled_rho(e2, norm, Rational(1, 625), 2);
    CHECK(sd.exact);
    CHECK(sd.tau == 0.1);
    CHECK(sd.scales == std::vector<Rational>{Rational(1, 10), Rational(1, 25), Rational(1, 625)});
    CHECK(sd.P.poly() == parse_poly("abs2(z1) + 1/4*abs2(z1)*(z1 + zb1) + 1/16*abs2(z1)^2", 1));
    CHECK(sd.Q.at(2).is_zero());
    CHECK(pq_scan_discrepancy(sd) == 0.0);
    CHECK(coefficient_bounds(sd).within());
    CHECK_THROWS_AS(rescaled_rho(e2, norm, Rational(0), 2), Error);
}

TEST_CASE("rescaled function equals the dilated normalized function")
{
    Rng rng(43);
    const DomainSpec pe = perturbed_egg();
    for (int t = 0; t < 6; ++t) {
        const auto norm = normalize_boundary(pe, random_rational_point(rng, 2, 0.3));
        const Rational eps(1, 1000 * (t + 1));
        const ScalingData sd = rescaled_rho(pe, norm, eps, 2);
        CHECK(pq_scan_discrepancy(sd) <= 1e-10);
        CHECK(coefficient_bounds(sd).within());
        const auto w = random_point(rng, 3, 1.0);
        const auto scaled = inverse_dilation(sd.scales_d(), w);
        const double lhs = sd.rescaled_rho.evaluate(w);
        const double rhs = norm.normalized.evaluate(scaled) / to_double(eps);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("dilation round trip")
{
    const std::vector<double> s{0.1, 0.5, 0.01};
    const std::vector<cdouble> p{{1, 2}, {-3, 0.5}, {0.25, 0}};
    const auto back = dilation(s, inverse_dilation(s, p));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(back[k] - p[k]) <= 1e-15);
    CHECK_THROWS_AS(dilation(std::vector<double>{1.0}, p), ShapeError);
    CHECK_THROWS_AS(dilation(std::vector<double>{1.0, 0.0, 1.0}, p), Error);
    const Poly q = parse_poly("z1*zb1 + z2^2", 2);
    const std::vector<Rational> r{Rational(1, 2), Rational(3)};
    CHECK(inverse_dilation(q, r) == parse_poly("1/4*z1*zb1 + 9*z2^2", 2));
}

TEST_CASE("unit disc sampling")
{
    const auto pts = unit_disc_samples(512);
    CHECK(pts.size() >= 400);
    double rmax = 0;
    for (const auto& w : pts) rmax = std::max(rmax, std::abs(w));
    CHECK(rmax == doctest::Approx(1.0));
    CHECK(max_abs_on_disc(parse_poly("z1^3", 1), 512) == doctest::Approx(1.0));
    CHECK(max_abs_on_disc(Poly(1), 512) == 0.0);
}

TEST_CASE("Q estimate verdicts")
{
    const DomainSpec pe = perturbed_egg();
    const auto norm = normalize_boundary(pe, {Gaussian(Rational(1, 10)), Gaussian(Rational(1, 10))});
    const ScalingData big = rescaled_rho(pe, norm, Rational(1, 2), 2);
    if (big.tau >= kTauSmall) CHECK(check_q_estimate(big).verdict == Verdict::not_applicable);
    const ScalingData small = rescaled_rho(pe, norm, Rational(1, 100000000), 2);
    REQUIRE(small.tau < kTauSmall);
    const QEstimateReport rep = check_q_estimate(small);
    CHECK(rep.verdict == (rep.max_q <= rep.bound ? Verdict::pass : Verdict::fail));
    CHECK(to_string(Verdict::not_applicable) == "not-applicable");
}
