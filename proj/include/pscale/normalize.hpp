#pragma once

// Boundary normalization: a polynomial biholomorphism Phi of C^n with Phi(eta') = 0 and
//
//   rho(Phi^{-1}(w)) - rho(eta') = Re w_n + sum a_{j,k} w1^j wb1^k + sum_alpha |w_alpha|^2
//                                + sum Re(b^alpha_{j,k} w1^j wb1^k w_alpha) + remainder,
//
// with a over j,k > 0, j+k <= 2m and b over j,k > 0, j+k <= m.

#include <map>
#include <tuple>
#include <vector>

#include "pscale/domain.hpp"

namespace pscale {

struct BoundaryLift {
    std::vector<Gaussian> eta_prime;
    Rational epsilon;
};

/// epsilon = -rho(eta), eta' = eta + (0,...,0,epsilon). Exact for rigid rho.
BoundaryLift lift_to_boundary(const DomainSpec& spec, std::span<const Gaussian> eta);

struct NormalizationOptions {
    int degree_cap = kDefaultDegreeCap;
    /// Euclidean bound on (eta'_1, ..., eta'_{n-1}).
    double neighborhood_radius = 1.0;
    /// Monomial-absence tolerance used when the Levi step had to go through binary64.
    double inexact_tol = 1e-10;
};

using ATable = std::map<std::pair<int, int>, Gaussian>;
/// Keyed by (alpha, j, k), alpha in 2..n-1.
using BTable = std::map<std::tuple<int, int, int>, Gaussian>;

struct NormalizationResult {
    HoloMap phi;      // z -> w
    HoloMap phi_inv;  // w -> z
    ATable a_table;
    BTable b_table;
    RealPoly normalized;  // rho o phi_inv - rho(eta')
    RealPoly remainder;   // normalized - main part
    std::vector<Gaussian> base_point;
    int m = 0;
    /// False when the Levi block needed a binary64 eigen-decomposition.
    bool exact = true;
};

NormalizationResult normalize_at(const DomainSpec& spec, std::span<const Gaussian> eta_prime,
                                 int m, const NormalizationOptions& options = {});

/// The displayed main part assembled from the tables, in n variables.
Poly main_part(int n, const ATable& a, const BTable& b);

/// Main-part monomials (and their conjugates) whose coefficient in p has modulus > tol.
/// tol = 0 means an exact nonzero test.
std::vector<Multidegree> main_class_violations(const Poly& p, int n, int m, double tol = 0.0);

/// Low-order monomials that are neither main-part nor remainder-order classes: harmonic
/// terms in w' of degree <= 2m and w_alpha * wb1^k (or w_alpha * w1^k) with k <= m.
std::vector<Multidegree> unnormalized_low_order_terms(const Poly& p, int n, int m, double tol = 0.0);

}  // namespace pscale
