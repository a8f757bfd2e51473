#pragma once

// Rigid polynomial model domains rho = Re z_n + F(z', zb') and their Levi data.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "pscale/cpoly.hpp"

namespace pscale {

class DomainSpec {
public:
    /// F is given in n variables and must not involve z_n or zb_n.
    DomainSpec(int n, RealPoly F, std::string label = {});

    static DomainSpec from_text(int n, std::string_view F, std::string label = {});

    int n() const { return n_; }
    const RealPoly& F() const { return F_; }
    const std::string& label() const { return label_; }

    /// Re z_n + F.
    const RealPoly& rho() const { return rho_; }

    Gaussian rho_at(std::span<const Gaussian> z) const { return evaluate_exact(rho_.poly(), z); }

private:
    int n_;
    RealPoly F_;
    RealPoly rho_;
    std::string label_;
};

struct ConstraintCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct NormalFormReport {
    std::vector<ConstraintCheck> checks;

    bool passed(std::string_view name) const;
    /// Everything except z1-direction degeneracy; a domain of type 2 at the
    /// origin (strongly pseudoconvex model) is still a valid input.
    bool structure_ok() const;
    bool all_passed() const;
};

NormalFormReport validate_normal_form(const DomainSpec& spec);

inline constexpr double kDefaultRankTol = 1e-9;

struct LeviData {
    Eigen::MatrixXcd matrix;           // (n-1) x (n-1), H_jk = d^2F/dz_j dzb_k
    std::vector<double> eigenvalues;   // ascending
    int rank = 0;
    int corank = 0;
};

/// point has length n-1 (z_n does not enter a rigid F).
LeviData levi_form(const DomainSpec& spec, std::span<const cdouble> point,
                   double tol = kDefaultRankTol);

struct RankCorank {
    int rank;
    int corank;
};

RankCorank levi_rank_corank(const DomainSpec& spec, std::span<const cdouble> point,
                            double tol = kDefaultRankTol);

struct TypeResult {
    int value = 0;           // minimal mixed degree j+k of z1^j zb1^k in F
    bool certified = false;  // normal form holds and the value is even
    std::vector<std::string> warnings;

    /// value / 2, only meaningful when value is even.
    int m() const { return value / 2; }
};

/// Minimal j+k over nonzero coefficients of z1^j zb1^k (j,k > 0) in F.
/// Throws HypothesisError when F has no such term.
TypeResult dangelo_type_z1(const DomainSpec& spec, int degree_cap = kDefaultDegreeCap);

struct PseudoconvexityReport {
    double radius = 0;
    int count = 0;
    double min_eigenvalue = 0;
    std::vector<cdouble> worst_point;  // z' where the minimum was attained
    bool pass = false;
};

inline constexpr double kPseudoconvexityMargin = 1e-7;

/// Samples boundary points over the polydisc |z_k| <= radius (k < n) and reports the
/// smallest eigenvalue of the Levi form restricted to the complex tangent space.
PseudoconvexityReport pseudoconvexity_sample(const DomainSpec& spec, double radius, int count,
                                             std::uint64_t seed = 0x5eedULL);

}  // namespace pscale
