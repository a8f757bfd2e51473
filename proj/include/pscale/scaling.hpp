#pragma once

// Anisotropic rescaling of a normalized defining function.

#include <map>
#include <string>
#include <vector>

#include "pscale/normalize.hpp"

namespace pscale {

struct CoefficientMaxima {
    int m = 0;
    std::map<int, double> A;  // l = 2..2m: max |a_{j,k}| over j+k = l
    std::map<int, double> B;  // l = 2..m:  max |b^alpha_{j,k}| over j+k = l and alpha
    // Exact squares of the maxima, used for exact comparisons.
    std::map<int, Rational> A_squared;
    std::map<int, Rational> B_squared;
};

CoefficientMaxima coefficient_maxima(const NormalizationResult& norm, int m);

struct TauDetail {
    double value = 0;
    /// Set when the minimising candidate is an exact rational.
    std::optional<Rational> exact;
    /// Labels of the candidates attaining the minimum, e.g. "A2", "B3".
    std::vector<std::string> active;
    /// The rational actually used for rescaling (exact value or the binary64 value).
    Rational as_rational() const { return exact ? *exact : to_rational(value); }
};

/// min over nonzero A_l, B_l' of (delta / A_l)^{1/l} and (delta^{1/2} / B_l')^{1/l'}.
/// When the minimum is not rational, the binary64 result is nudged down until every
/// candidate inequality A_l tau^l <= delta, B_l' tau^l' <= delta^{1/2} holds exactly.
TauDetail tau_detail(const CoefficientMaxima& maxima, const Rational& delta, int m);
double tau(const CoefficientMaxima& maxima, double delta, int m);

/// Point form: (w_k / scales_k).
std::vector<cdouble> dilation(std::span<const double> scales, std::span<const cdouble> point);
/// Point form of the inverse: (w_k * scales_k).
std::vector<cdouble> inverse_dilation(std::span<const double> scales, std::span<const cdouble> point);
/// Polynomial form of the inverse dilation: substitutes w_k -> scales_k * w_k.
Poly inverse_dilation(const Poly& p, std::span<const Rational> scales);

struct ScalingData {
    Rational epsilon;
    double tau = 0;
    bool exact = false;  // tau and sqrt(epsilon) are exact rationals
    std::vector<Rational> scales;  // (tau, sqrt eps, ..., sqrt eps, eps)
    RealPoly P;                    // one variable
    std::map<int, Poly> Q;         // alpha -> polynomial in one variable
    RealPoly rescaled_rho;         // n variables
    CoefficientMaxima maxima;
    std::vector<std::string> active;
    int m = 0;

    std::vector<double> scales_d() const;
};

/// rescaled_rho = eps^{-1} (rho o phi_inv)(tau w_1, sqrt(eps) w_alpha, eps w_n).
ScalingData rescaled_rho(const DomainSpec& spec, const NormalizationResult& norm,
                         const Rational& epsilon, int m);

struct CoefficientBounds {
    double max_p = 0;
    double max_q = 0;
    bool within(double slack = 1e-12) const { return max_p <= 1 + slack && max_q <= 1 + slack; }
};

CoefficientBounds coefficient_bounds(const ScalingData& sd);

/// max |P-coefficient difference| between the direct formula and a coefficient scan of
/// rescaled_rho, and likewise for Q.
double pq_scan_discrepancy(const ScalingData& sd);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct QEstimateReport {
    double max_q = 0;
    double bound = 0;
    double tau = 0;
    Verdict verdict = Verdict::not_applicable;
};

inline constexpr double kTauSmall = 0.1;

/// Samples |w1| <= 1 and compares max_alpha |Q^alpha| with tau^exponent.
QEstimateReport check_q_estimate(const ScalingData& sd, double exponent = 0.1, int samples = 512,
                                 double small_threshold = kTauSmall);

/// Deterministic sample of the closed unit disc: rings of radius k/R, including the rim.
std::vector<cdouble> unit_disc_samples(int samples);

double max_abs_on_disc(const Poly& univariate, int samples);

}  // namespace pscale
