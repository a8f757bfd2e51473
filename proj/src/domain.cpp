#include "pscale/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "pscale/parse.hpp"

namespace pscale {

DomainSpec::DomainSpec(int n, RealPoly F, std::string label)
    : n_(n), F_(std::move(F)), label_(std::move(label))
{
    if (n_ < 2) {
        throw ShapeError("domain dimension must be at least 2");
    }
    if (F_.nvars() != n_) {
        throw ShapeError("F must be given in " + std::to_string(n_) + " variables");
    }
    for (const auto& [md, c] : F_.poly().terms()) {
        if (md.total() == 0) {
            throw Error("F must vanish at the origin (constant term present)");
        }
        if (md.holo[n_ - 1] != 0 || md.anti[n_ - 1] != 0) {
            throw Error("F must not depend on z" + std::to_string(n_) + " (rigid domain)");
        }
    }
    rho_ = RealPoly(real_part(Poly::variable(n_, n_)).poly() + F_.poly());
}

DomainSpec DomainSpec::from_text(int n, std::string_view F, std::string label)
{
    return DomainSpec(n, parse_real_poly(F, n), std::move(label));
}

// ---------------------------------------------------------------------------

bool NormalFormReport::passed(std::string_view name) const
{
    for (const auto& c : checks) {
        if (c.name == name) return c.passed;
    }
    return false;
}

bool NormalFormReport::structure_ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) {
        return c.passed || c.name == "z1_levi_degenerate";
    });
}

bool NormalFormReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.passed; });
}

namespace {

Multidegree mixed(int n, int a, int b)
{
    Multidegree md(n);
    md.holo[a] += 1;
    md.anti[b] += 1;
    return md;
}

}  // namespace

NormalFormReport validate_normal_form(const DomainSpec& spec)
{
    const int n = spec.n();
    const Poly& F = spec.F().poly();
    NormalFormReport report;

    {
        ConstraintCheck c{"no_constant_or_linear", true, {}};
        for (const auto& [md, v] : F.terms()) {
            if (md.total() <= 1) {
                c.passed = false;
                c.detail = "F has a term of degree " + std::to_string(md.total());
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        ConstraintCheck c{"levi_block_identity", true, {}};
        for (int a = 1; a < n - 1 && c.passed; ++a) {
            for (int b = 1; b < n - 1; ++b) {
                const Gaussian expect = a == b ? Gaussian(1) : Gaussian(0);
                if (!(F.coeff(mixed(n, a, b)) == expect)) {
                    c.passed = false;
                    c.detail = "coefficient of z" + std::to_string(a + 1) + "*zb" +
                               std::to_string(b + 1) + " is " + to_string(F.coeff(mixed(n, a, b)));
                    break;
                }
            }
        }
        if (n == 2) c.detail = "empty block";
        report.checks.push_back(std::move(c));
    }
    {
        ConstraintCheck c{"levi_cross_terms_zero", true, {}};
        for (int a = 1; a < n - 1; ++a) {
            if (!F.coeff(mixed(n, 0, a)).is_zero()) {
                c.passed = false;
                c.detail = "coefficient of z1*zb" + std::to_string(a + 1) + " is nonzero";
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        ConstraintCheck c{"no_harmonic_z1_terms", true, {}};
        const Poly u = univariate_part(F, 1);
        for (const auto& [md, v] : u.terms()) {
            if (md.holo[0] == 0 || md.anti[0] == 0) {
                c.passed = false;
                c.detail = "harmonic term " + to_string(Poly::monomial(md, v));
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        const bool degenerate = F.coeff(mixed(n, 0, 0)).is_zero();
        report.checks.push_back({"z1_levi_degenerate", degenerate,
                                 degenerate ? std::string() : std::string("type 2 at origin")});
    }
    return report;
}

// ---------------------------------------------------------------------------

LeviData levi_form(const DomainSpec& spec, std::span<const cdouble> point, double tol)
{
    const int n = spec.n();
    const int d = n - 1;
    if (static_cast<int>(point.size()) != d) {
        throw ShapeError("Levi form point must have n-1 coordinates");
    }
    std::vector<cdouble> full(point.begin(), point.end());
    full.push_back(0.0);

    LeviData out;
    out.matrix.resize(d, d);
    for (int j = 1; j <= d; ++j) {
        const Poly dj = wirtinger(spec.F().poly(), j, false);
        for (int k = 1; k <= d; ++k) {
            out.matrix(j - 1, k - 1) = evaluate(wirtinger(dj, k, true), full);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out.matrix, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    out.rank = static_cast<int>(
        std::count_if(out.eigenvalues.begin(), out.eigenvalues.end(),
                      [tol](double v) { return std::abs(v) > tol; }));
    out.corank = d - out.rank;
    return out;
}

RankCorank levi_rank_corank(const DomainSpec& spec, std::span<const cdouble> point, double tol)
{
    if (!(tol > 0)) {
        throw Error("rank tolerance must be positive");
    }
    const LeviData data = levi_form(spec, point, tol);
    return {data.rank, data.corank};
}

TypeResult dangelo_type_z1(const DomainSpec& spec, int degree_cap)
{
    TypeResult out;
    const Poly pure = univariate_part(spec.F().poly(), 1);
    int best = std::numeric_limits<int>::max();
    for (const auto& [md, c] : pure.terms()) {
        if (md.holo[0] > 0 && md.anti[0] > 0 && md.total() <= degree_cap) {
            best = std::min(best, md.total());
        }
    }
    if (best == std::numeric_limits<int>::max()) {
        throw HypothesisError("no finite type detected in z1 up to degree cap " +
                              std::to_string(degree_cap));
    }
    out.value = best;
    const bool normal = validate_normal_form(spec).structure_ok();
    if (best % 2 != 0) {
        out.warnings.push_back("minimal mixed degree " + std::to_string(best) +
                               " is odd; invalid input for the corank-1 normal form");
    }
    if (!normal) {
        out.warnings.push_back("normal form not satisfied; value is only a lower-bound certificate");
    }
    out.certified = normal && best % 2 == 0;
    return out;
}

PseudoconvexityReport pseudoconvexity_sample(const DomainSpec& spec, double radius, int count,
                                             std::uint64_t seed)
{
    if (!(radius > 0) || count < 1) {
        throw Error("pseudoconvexity sampling needs radius > 0 and count >= 1");
    }
    const int d = spec.n() - 1;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // For rigid rho the complex tangent space projects isomorphically onto z',
    // where the Levi form of rho is the Levi form of F; z_n never enters.
    PseudoconvexityReport out;
    out.radius = radius;
    out.count = count;
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    std::vector<cdouble> point(d);
    for (int s = 0; s < count; ++s) {
        for (int k = 0; k < d; ++k) {
            const double r = radius * std::sqrt(unit(rng));
            const double t = 2.0 * M_PI * unit(rng);
            point[k] = std::polar(r, t);
        }
        const LeviData levi = levi_form(spec, point);
        if (levi.eigenvalues.front() < out.min_eigenvalue) {
            out.min_eigenvalue = levi.eigenvalues.front();
            out.worst_point = point;
        }
    }
    out.pass = !(out.min_eigenvalue < -kPseudoconvexityMargin);
    return out;
}

}  // namespace pscale
