#pragma once

// Shared fixtures and hand-rolled generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "pscale/report.hpp"

namespace testing_support {

using namespace pscale;
using Rng = std::mt19937_64;

inline Rational frac(long num, long den)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational random_rational(Rng& rng, int max_num, int max_den)
{
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return frac(num(rng), den(rng));
}

inline Gaussian random_gaussian(Rng& rng, int max_num = 5, int max_den = 4)
{
    return {random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den)};
}

inline Poly random_poly(Rng& rng, int nvars, int max_degree, int terms)
{
    std::uniform_int_distribution<int> var(0, nvars - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Multidegree md(nvars);
        const int d = deg(rng);
        for (int e = 0; e < d; ++e) {
            (rng() & 1 ? md.holo : md.anti)[var(rng)] += 1;
        }
        p.add_term(md, random_gaussian(rng));
    }
    return p;
}

inline std::vector<cdouble> random_point(Rng& rng, int n, double radius)
{
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<cdouble> z(n);
    for (auto& c : z) c = {u(rng), u(rng)};
    return z;
}

/// Rational point with coordinates k/1000 inside the polydisc of the given radius.
inline std::vector<Gaussian> random_rational_point(Rng& rng, int n, double radius)
{
    const int bound = static_cast<int>(radius * 1000 / std::sqrt(2.0 * n));
    std::uniform_int_distribution<int> k(-bound, bound);
    std::vector<Gaussian> z(n);
    for (auto& c : z) c = {frac(k(rng), 1000), frac(k(rng), 1000)};
    return z;
}

inline DomainSpec egg(int m, int n = 3)
{
    std::string F = "abs2(z1)^" + std::to_string(m);
    for (int a = 2; a < n; ++a) F += " + abs2(z" + std::to_string(a) + ")";
    return DomainSpec::from_text(n, F, "E" + std::to_string(m));
}

inline DomainSpec perturbed_egg()
{
    return DomainSpec::from_text(3, "abs2(z1)^2 + abs2(z2) + 1/10*Re(z1*zb1^2*z2)", "perturbed egg");
}

inline DomainSpec ball(int n = 3) { return egg(1, n); }

/// Boundary point with the given z' and real z_n = -F(z').
inline std::vector<Gaussian> boundary_point(const DomainSpec& spec, std::vector<Gaussian> zprime)
{
    return complete_boundary_point(spec, std::move(zprime));
}

}  // namespace testing_support
