#include <doctest.h>

#include <cmath>

#include "pscale/parse.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

Poly z(int n, int k) { return Poly::variable(n, k); }
Poly zb(int n, int k) { return Poly::variable(n, k, true); }

long long binomial(int n, int k)
{
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

cdouble fd_wirtinger(const Poly& p, std::vector<cdouble> at, int var, bool barred, double h)
{
    auto f = [&](cdouble delta) {
        auto q = at;
        q[var - 1] += delta;
        return evaluate(p, q);
    };
    const cdouble dx = (f({h, 0}) - f({-h, 0})) / (2 * h);
    const cdouble dy = (f({0, h}) - f({0, -h})) / (2 * h);
    const cdouble i(0, 1);
    return barred ? 0.5 * (dx + i * dy) : 0.5 * (dx - i * dy);
}

}  // namespace

TEST_CASE("gaussian rationals")
{
    const Gaussian a(Rational(1, 2), Rational(-3, 4));
    const Gaussian b(2, 1);
    CHECK(a * b == Gaussian(Rational(7, 4), Rational(-1)));
    CHECK((a / b) * b == a);
    CHECK(a.conj().conj() == a);
    CHECK(a.norm2() == Rational(13, 16));
    CHECK(Gaussian::imag_unit() * Gaussian::imag_unit() == Gaussian(-1));
    CHECK_THROWS_AS(a / Gaussian(0), Error);
}

TEST_CASE("rational to double rounds to nearest")
{
    CHECK(to_double(Rational(1, 5)) == 0.2);
    CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
    CHECK(to_double(Rational(-2, 3)) == -2.0 / 3.0);
    CHECK(to_double(Rational(-7, 10)) == -0.7);
    Rng rng(11);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 999983);
    for (int t = 0; t < 500; ++t) {
        const long p = num(rng), q = den(rng);
        CHECK(to_double(frac(p, q)) == static_cast<double>(p) / static_cast<double>(q));
    }
    CHECK(to_rational(0.1) != Rational(1, 10));
    CHECK(to_double(to_rational(0.1)) == 0.1);
}

TEST_CASE("rational roots")
{
    CHECK(rational_root(Rational(16, 81), 4) == Rational(2, 3));
    CHECK(rational_root(Rational(1, 625), 2) == Rational(1, 25));
    CHECK_FALSE(rational_root(Rational(2), 2).has_value());
    CHECK_FALSE(rational_root(Rational(-4), 2).has_value());
    CHECK(rational_root(Rational(-8, 27), 3) == Rational(-2, 3));
}

TEST_CASE("polynomial basics")
{
    const int n = 2;
    const Poly p = z(n, 1) * zb(n, 1) + Gaussian(3) * z(n, 2);
    CHECK(p.degree() == 2);
    CHECK(Poly(n).degree() == -1);
    CHECK((p - p).is_zero());
    CHECK(p.coeff(Multidegree({1, 0}, {1, 0})) == Gaussian(1));
    CHECK(p.coeff(Multidegree({0, 1}, {0, 0})) == Gaussian(3));
    CHECK(p.coeff(Multidegree({2, 0}, {0, 0})).is_zero());
    CHECK_FALSE(p.is_holomorphic());
    CHECK_FALSE(p.is_hermitian());
    CHECK((z(n, 1) * z(n, 2)).is_holomorphic());
    CHECK_THROWS_AS(Poly::variable(2, 3), ShapeError);
    CHECK_THROWS_AS(z(2, 1) + z(3, 1), ShapeError);
}

TEST_CASE("binomial expansion oracle")
{
    const Poly s = z(1, 1) + zb(1, 1);
    for (int e = 0; e <= 9; ++e) {
        const Poly p = pow(s, e);
        for (int k = 0; k <= e; ++k) {
            CHECK(p.coeff(Multidegree({e - k}, {k})) == Gaussian(static_cast<long>(binomial(e, k))));
        }
        CHECK(p.size() == static_cast<std::size_t>(e + 1));
    }
}

TEST_CASE("degree cap")
{
    CHECK_THROWS_AS(pow(z(1, 1), 70), DegreeCapExceeded);
    CHECK_NOTHROW(pow(z(1, 1), 10, 10));
    CHECK_THROWS_AS(mul(pow(z(1, 1), 6), zb(1, 1), 6), DegreeCapExceeded);
}

TEST_CASE("ring axioms on random polynomials")
{
    Rng rng(1);
    for (int t = 0; t < 40; ++t) {
        const Poly a = random_poly(rng, 2, 3, 4);
        const Poly b = random_poly(rng, 2, 3, 4);
        const Poly c = random_poly(rng, 2, 3, 4);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(conjugate(conjugate(a)) == a);
        CHECK(conjugate(a * b) == conjugate(a) * conjugate(b));
        CHECK(real_part(a).poly().is_hermitian());
        CHECK((a * conjugate(a)).is_hermitian());
    }
}

TEST_CASE("exact and binary64 evaluation agree")
{
    Rng rng(2);
    for (int t = 0; t < 40; ++t) {
        const Poly p = random_poly(rng, 3, 4, 6);
        const auto pt = random_rational_point(rng, 3, 1.0);
        std::vector<cdouble> ptd;
        for (const auto& c : pt) ptd.push_back(c.to_complex());
        const cdouble exact = evaluate_exact(p, pt).to_complex();
        CHECK(std::abs(evaluate(p, ptd) - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    }
    CHECK_THROWS_AS(evaluate(z(2, 1), std::vector<cdouble>{1.0}), ShapeError);
}

TEST_CASE("parser")
{
    const Poly p = parse_poly("abs2(z1)^2 + 1/10*Re(z1*zb1^2*z2) - 3*i*z2", 2);
    const Poly expect = pow(z(2, 1) * zb(2, 1), 2) +
                        Gaussian(Rational(1, 20)) * (z(2, 1) * zb(2, 1) * zb(2, 1) * z(2, 2)) +
                        Gaussian(Rational(1, 20)) * (zb(2, 1) * z(2, 1) * z(2, 1) * zb(2, 2)) -
                        Gaussian(0, 3) * z(2, 2);
    CHECK(p == expect);
    CHECK(parse_poly("Im(z1)", 1) == Gaussian(0, Rational(-1, 2)) * z(1, 1) + Gaussian(0, Rational(1, 2)) * zb(1, 1));
    CHECK(parse_poly("conj(i*z1)", 1) == Gaussian(0, -1) * zb(1, 1));
    CHECK(parse_poly("-(z1 - 2.5e-1)", 1) == Poly::constant(1, Rational(1, 4)) - z(1, 1));
    CHECK(parse_scalar("1/5 - 2/3*i") == Gaussian(Rational(1, 5), Rational(-2, 3)));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("1e-8") == Rational(1, 100000000));
    CHECK(parse_rational("3/4") == Rational(3, 4));
}

TEST_CASE("parser errors carry positions")
{
    auto position_of = [](const char* text, int nvars) -> long {
        try {
            parse_poly(text, nvars);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("z1 +", 1) == 4);
    CHECK(position_of("z1 + z3", 2) >= 5);
    CHECK(position_of("z1^-2", 1) == 3);
    CHECK(position_of("z1 $ z1", 1) == 3);
    CHECK(position_of("(z1", 1) == 3);
    CHECK(position_of("z1^200", 1) >= 0);
    CHECK_THROWS_AS(parse_real_poly("z1", 1), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("to_string re-parses to the same polynomial")
{
    Rng rng(3);
    for (int t = 0; t < 60; ++t) {
        const Poly p = random_poly(rng, 3, 4, 5);
        CHECK(parse_poly(to_string(p), 3) == p);
    }
    CHECK(to_string(Poly(2)) == "0");
    CHECK(to_decimal_string(parse_poly("1/3*z1*zb1", 1)) == "0.3333333333*z1*zb1");
}

TEST_CASE("wirtinger derivatives")
{
    const int n = 2;
    const Poly p = pow(z(n, 1), 3) * zb(n, 1) + Gaussian(2) * z(n, 2) * zb(n, 1);
    CHECK(wirtinger(p, 1, false) == Gaussian(3) * pow(z(n, 1), 2) * zb(n, 1));
    CHECK(wirtinger(p, 1, true) == pow(z(n, 1), 3) + Gaussian(2) * z(n, 2));
    CHECK(wirtinger(z(n, 1) * z(n, 2), 2, true).is_zero());
    CHECK_THROWS_AS(wirtinger(p, 3, false), ShapeError);

    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        const Poly a = random_poly(rng, 2, 3, 4);
        const Poly b = random_poly(rng, 2, 3, 4);
        for (int v = 1; v <= 2; ++v) {
            for (bool barred : {false, true}) {
                CHECK(wirtinger(a * b, v, barred) == wirtinger(a, v, barred) * b + a * wirtinger(b, v, barred));
            }
        }
        CHECK(conjugate(wirtinger(a, 1, false)) == wirtinger(conjugate(a), 1, true));
    }
}

TEST_CASE("wirtinger derivatives match central differences")
{
    Rng rng(5);
    for (int t = 0; t < 25; ++t) {
        const Poly p = random_poly(rng, 3, 4, 6);
        const auto at = random_point(rng, 3, 1.0);
        for (int v = 1; v <= 3; ++v) {
            for (bool barred : {false, true}) {
                const cdouble exact = evaluate(wirtinger(p, v, barred), at);
                const cdouble fd = fd_wirtinger(p, at, v, barred, 1e-5);
                CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("laplacian of |z1|^(2m)")
{
    for (int m = 1; m <= 6; ++m) {
        const Poly p = pow(z(2, 1) * zb(2, 1), m);
        const Poly expect = Gaussian(m * m) * pow(z(2, 1) * zb(2, 1), m - 1);
        CHECK(laplacian_z1(p) == expect);
    }
}

TEST_CASE("homogeneous parts, embedding and univariate restriction")
{
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        const Poly p = random_poly(rng, 2, 4, 8);
        Poly sum(2);
        for (int d = 0; d <= std::max(p.degree(), 0); ++d) sum += homogeneous_part(p, d);
        CHECK(sum == p);
        const Poly e = embed(p, 3);
        CHECK(e.nvars() == 3);
        CHECK(e.size() == p.size());
    }
    const Poly q = parse_poly("z1*zb1 + z1*zb2 + z2", 2);
    const Poly u = univariate_part(q, 1);
    CHECK(u.nvars() == 1);
    CHECK(u == parse_poly("z1*zb1", 1));
    CHECK(homogeneous_part(q, 2, 1) == parse_poly("z1*zb1", 2));
    CHECK_THROWS_AS(embed(q, 1), ShapeError);
}

TEST_CASE("real polynomials")
{
    CHECK_NOTHROW(RealPoly(parse_poly("Re(z1^2*zb1) + abs2(z1)", 1)));
    CHECK_THROWS_AS(RealPoly(parse_poly("z1^2*zb1", 1)), Error);
    const RealPoly r(parse_poly("abs2(z1)", 1));
    CHECK(r.evaluate(std::vector<cdouble>{{3, 4}}) == doctest::Approx(25.0));
}

TEST_CASE("holomorphic maps")
{
    const int n = 2;
    CHECK_THROWS_AS(HoloMap({zb(n, 1), z(n, 2)}), ShapeError);
    CHECK_THROWS_AS(HoloMap({z(n, 1)}), ShapeError);
    const HoloMap id = HoloMap::identity(n);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const Poly p = random_poly(rng, n, 3, 5);
        CHECK(substitute(p, id) == p);

        const HoloMap phi({z(n, 1) + Gaussian(Rational(1, 3)) * z(n, 2) * z(n, 2),
                           z(n, 2) - random_gaussian(rng) * z(n, 1) + Poly::constant(n, random_gaussian(rng))});
        const auto w = random_point(rng, n, 0.8);
        const auto zw = phi.apply(w);
        const cdouble lhs = evaluate(substitute(p, phi), w);
        const cdouble rhs = evaluate(p, zw);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));

        const HoloMap psi({z(n, 1) * z(n, 2) + z(n, 1), z(n, 2)});
        const auto composed = compose(phi, psi).apply(w);
        const auto nested = phi.apply(psi.apply(w));
        for (int k = 0; k < n; ++k) CHECK(std::abs(composed[k] - nested[k]) <= 1e-10);
    }
    const HoloMap shift({z(1, 1) + Poly::constant(1, 1)});
    const HoloMap back({z(1, 1) - Poly::constant(1, 1)});
    CHECK(compose(shift, back) == HoloMap::identity(1));
    const std::vector<Gaussian> at{Gaussian(Rational(1, 2), 1)};
    CHECK(shift.apply_exact(at)[0] == Gaussian(Rational(3, 2), 1));
}
