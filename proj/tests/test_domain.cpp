#include <doctest.h>

#include "pscale/parse.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

const std::vector<cdouble>& origin(int d)
{
    static std::map<int, std::vector<cdouble>> cache;
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, std::vector<cdouble>(d, cdouble(0))).first;
    return it->second;
}

}  // namespace

TEST_CASE("domain construction")
{
    CHECK_THROWS_AS(DomainSpec::from_text(1, "abs2(z1)"), ShapeError);
    CHECK_THROWS_AS(DomainSpec::from_text(3, "1 + abs2(z1)"), Error);
    CHECK_THROWS_AS(DomainSpec::from_text(3, "abs2(z1) + abs2(z3)"), Error);
    CHECK_THROWS_AS(DomainSpec::from_text(3, "z1^2"), Error);
    CHECK_THROWS_AS(DomainSpec::from_text(2, "abs2(z1) + abs2(z4)"), ParseError);
    CHECK_THROWS_AS(DomainSpec(3, RealPoly(parse_poly("abs2(z1)", 2))), ShapeError);

    const DomainSpec e2 = egg(2);
    CHECK(e2.n() == 3);
    CHECK(e2.rho().poly() == parse_poly("Re(z3) + abs2(z1)^2 + abs2(z2)", 3));
    const std::vector<Gaussian> p{Gaussian(Rational(1, 5)), Gaussian(0), Gaussian(Rational(-2, 625))};
    CHECK(e2.rho_at(p) == Gaussian(Rational(-1, 625)));
}

TEST_CASE("normal form validation")
{
    CHECK(validate_normal_form(egg(2)).all_passed());
    CHECK(validate_normal_form(egg(3, 2)).all_passed());

    const auto b = validate_normal_form(ball());
    CHECK(b.structure_ok());
    CHECK_FALSE(b.all_passed());
    CHECK_FALSE(b.passed("z1_levi_degenerate"));

    CHECK_FALSE(validate_normal_form(DomainSpec::from_text(3, "abs2(z1)^2 + abs2(z2) + Re(z1^2)"))
                    .passed("no_harmonic_z1_terms"));
    CHECK_FALSE(validate_normal_form(DomainSpec::from_text(3, "abs2(z1)^2 + 2*abs2(z2)"))
                    .passed("levi_block_identity"));
    CHECK_FALSE(validate_normal_form(DomainSpec::from_text(3, "abs2(z1)^2 + abs2(z2) + Re(z1*zb2)"))
                    .passed("levi_cross_terms_zero"));
    CHECK_FALSE(validate_normal_form(DomainSpec::from_text(3, "abs2(z1)^2 + abs2(z2) + Re(z2)"))
                    .passed("no_constant_or_linear"));
    CHECK(validate_normal_form(DomainSpec::from_text(2, "abs2(z1)^2")).passed("levi_block_identity"));
}

TEST_CASE("Levi form is Hermitian")
{
    Rng rng(21);
    for (int t = 0; t < 30; ++t) {
        Poly F = real_part(random_poly(rng, 3, 4, 6)).poly();
        // Drop constant and z3-dependent terms to keep the domain rigid.
        Poly G(4);
        for (const auto& [md, c] : F.terms()) {
            if (md.total() == 0) continue;
            Multidegree e(4);
            for (int k = 0; k < 3; ++k) {
                e.holo[k] = md.holo[k];
                e.anti[k] = md.anti[k];
            }
            G.add_term(e, c);
        }
        const DomainSpec spec(4, RealPoly(G));
        const auto pt = random_point(rng, 3, 1.0);
        const LeviData L = levi_form(spec, pt);
        CHECK((L.matrix - L.matrix.adjoint()).norm() <= 1e-12);
        CHECK(L.rank + L.corank == 3);
        CHECK(std::is_sorted(L.eigenvalues.begin(), L.eigenvalues.end()));
    }
}

TEST_CASE("egg type and corank")
{
    for (int n = 2; n <= 4; ++n) {
        for (int m = 1; m <= 4; ++m) {
            const DomainSpec spec = egg(m, n);
            const TypeResult t = dangelo_type_z1(spec);
            CHECK(t.value == 2 * m);
            CHECK(t.m() == m);
            CHECK(t.certified);
            const auto rc = levi_rank_corank(spec, origin(n - 1));
            CHECK(rc.corank == (m >= 2 ? 1 : 0));
            CHECK(rc.rank == n - 1 - rc.corank);
        }
    }
    CHECK_THROWS_AS(levi_form(egg(2), origin(3)), ShapeError);
    CHECK_THROWS_AS(levi_rank_corank(egg(2), origin(2), 0.0), Error);
}

TEST_CASE("type from the minimal mixed degree")
{
    CHECK_THROWS_AS(dangelo_type_z1(DomainSpec::from_text(3, "abs2(z2)")), HypothesisError);
    const TypeResult odd = dangelo_type_z1(DomainSpec::from_text(2, "abs2(z1)*Re(z1)"));
    CHECK(odd.value == 3);
    CHECK_FALSE(odd.certified);
    CHECK_FALSE(odd.warnings.empty());
    const TypeResult mixed = dangelo_type_z1(perturbed_egg());
    CHECK(mixed.value == 4);
    CHECK(mixed.certified);
    const TypeResult unnormal = dangelo_type_z1(DomainSpec::from_text(3, "abs2(z1)^2 + 2*abs2(z2)"));
    CHECK(unnormal.value == 4);
    CHECK_FALSE(unnormal.certified);
}

TEST_CASE("type is invariant under unitary rotations of the Levi block")
{
    const Poly F = parse_poly("abs2(z1)^3 + abs2(z2) + abs2(z3) + Re(z1^2*zb1*z2) + 1/3*Re(z1*zb1^3*z3)", 4);
    const int before = dangelo_type_z1(DomainSpec(4, RealPoly(F))).value;
    // Rational rotation (3/5, 4/5; -4/5, 3/5) in (z2, z3).
    const HoloMap rot({Poly::variable(4, 1),
                       parse_poly("3/5*z2 + 4/5*z3", 4),
                       parse_poly("-4/5*z2 + 3/5*z3", 4),
                       Poly::variable(4, 4)});
    const DomainSpec rotated(4, RealPoly(substitute(F, rot)));
    CHECK(validate_normal_form(rotated).passed("levi_block_identity"));
    CHECK(dangelo_type_z1(rotated).value == before);
    CHECK(before == 6);
}

TEST_CASE("pseudoconvexity sampling")
{
    const auto ball_report = pseudoconvexity_sample(ball(), 0.5, 200);
    CHECK(ball_report.pass);
    CHECK(ball_report.min_eigenvalue == doctest::Approx(1.0));

    const auto bad = pseudoconvexity_sample(DomainSpec::from_text(3, "-abs2(z1) + abs2(z2)"), 0.5, 50);
    CHECK_FALSE(bad.pass);
    CHECK(bad.min_eigenvalue == doctest::Approx(-1.0));

    CHECK(pseudoconvexity_sample(egg(2), 0.5, 200).pass);
    CHECK_THROWS_AS(pseudoconvexity_sample(ball(), 0.0, 10), Error);

    // Perturbed egg: the Levi determinant 4|z1|^2 + Re(zb1 z2)/5 - |z1|^4/100 is negative
    // inside the wedge z1 = -t, z2 = s, s > 20 t.
    const DomainSpec pe = perturbed_egg();
    const std::vector<cdouble> wedge{{-0.001, 0.0}, {0.1, 0.0}};
    CHECK(levi_form(pe, wedge).eigenvalues.front() < 0);
    const auto sampled = pseudoconvexity_sample(pe, 0.2, 1024);
    const auto again = pseudoconvexity_sample(pe, 0.2, 1024);
    CHECK(sampled.min_eigenvalue == again.min_eigenvalue);
    MESSAGE("perturbed egg, radius 0.2, 1024 samples: min eigenvalue " << sampled.min_eigenvalue
                                                                        << (sampled.pass ? " (pass)" : " (fail)"));
    const auto dense = pseudoconvexity_sample(pe, 0.02, 20000);
    MESSAGE("perturbed egg, radius 0.02, 20000 samples: min eigenvalue " << dense.min_eigenvalue);
}
