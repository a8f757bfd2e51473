#pragma once

// Interior sequences, limit model extraction and model classification.

#include <optional>
#include <string>
#include <vector>

#include "pscale/scaling.hpp"

namespace pscale {

struct SequenceSpec {
    enum class Kind { normal, cone, tangential, explicit_list };
    /// t_j = 1/j (harmonic) or 2^{-j} (geometric).
    enum class Rate { harmonic, geometric };

    Kind kind = Kind::normal;
    Rate rate = Rate::harmonic;
    int jmax = 64;
    std::vector<Gaussian> direction;  // cone: length n-1
    Rational aperture = 1;            // cone
    std::vector<int> powers;          // tangential: (p_1, p_n) or (p_1, ..., p_n)
    std::vector<std::vector<Gaussian>> points;  // explicit

    static SequenceSpec normal(int jmax = 64);
    static SequenceSpec tangential(std::vector<int> powers, int jmax = 64);
};

std::string to_string(SequenceSpec::Kind k);

/// The j-th interior point (1 <= j <= jmax), verified to satisfy rho < 0.
std::vector<Gaussian> generate_sequence(const DomainSpec& spec, const SequenceSpec& seq, int j);

struct ModelClass {
    bool is_subharmonic = false;
    bool laplacian_nontrivial = false;
    int degree = -1;
    bool is_homogeneous = false;
    bool is_strongly_pseudoconvex_model = false;
    double c = 0;  // P = c |z1|^2 when strongly pseudoconvex
    /// "exact" when every Laplacian term is c |z|^{2k} with c >= 0, otherwise "sampled".
    std::string subharmonic_mode;
    /// min over the unit circle of each homogeneous Laplacian component, scaled by its
    /// largest coefficient modulus; keyed by degree.
    std::map<int, double> component_min;
    double sampled_min = 0;
};

inline constexpr double kSubharmonicMargin = 1e-9;

/// P must be a real polynomial in one variable without harmonic terms.
ModelClass classify_model(const RealPoly& P, int samples = 4096);

struct MatchResult {
    double lambda = 0;
    double nu = 0;
    bool phase_free = false;
    double residual = 0;
};

/// Finds lambda > 0, nu in [0, 2pi) with top(Q) = lambda H(e^{i nu} z), if any.
/// Throws HypothesisError when H is not homogeneous subharmonic of even degree without
/// harmonic terms, or when deg Q exceeds deg H.
std::optional<MatchResult> match_top_homogeneous(const RealPoly& Q, const RealPoly& H,
                                                 double tol = 1e-9, int samples = 4096);

struct LimitOptions {
    double tol = 1e-9;
    int window = 3;
    int samples = 4096;     // classification
    int q_samples = 512;    // |Q| sampling on the unit disc
    NormalizationOptions normalization;
};

struct LimitReport {
    int m = 0;
    int jmax = 0;
    RealPoly P_limit;
    std::vector<std::pair<int, int>> coeff_keys;
    std::vector<std::vector<cdouble>> coeff_trace;
    std::vector<double> q_decay;
    std::vector<double> tau_trace;
    std::vector<double> eps_trace;
    std::vector<double> max_coeff_trace;  // max |coeff| over P and Q at each j
    std::vector<bool> exact_trace;
    bool converged = false;
    ModelClass model;
};

/// Runs lift -> normalize -> rescale at the j-th point of the sequence.
ScalingData scale_sequence_point(const DomainSpec& spec, const SequenceSpec& seq, int j, int m,
                                 const NormalizationOptions& options = {});

LimitReport limit_polynomial(const DomainSpec& spec, const SequenceSpec& seq,
                             const LimitOptions& options = {});

struct ProbePoint {
    std::vector<cdouble> point;
    double model_value = 0;
    bool interior = false;
    std::optional<int> j0;  // first j from which the sign agrees through jmax
};

struct ProbeReport {
    std::vector<ProbePoint> points;
    int skipped = 0;  // grid points closer than the margin to the model boundary
    bool pass = false;
};

/// Sampled check of the two domain-convergence conditions for the rescaled domains
/// {rescaled_rho_j < 0} against the model Re w_n + P(w1) + sum |w_alpha|^2 < 0.
ProbeReport domain_convergence_probe(const DomainSpec& spec, const SequenceSpec& seq,
                                     const RealPoly& candidate_P,
                                     const std::vector<std::vector<cdouble>>& grid,
                                     double margin = 1e-3, const NormalizationOptions& options = {});

/// Deterministic grid in the box |Re|,|Im| <= 1 for w', Re w_n in [-2, 1].
std::vector<std::vector<cdouble>> default_probe_grid(int n, int count, std::uint64_t seed = 7);

/// Re w_n + P(w1) + sum_alpha |w_alpha|^2 evaluated in binary64.
double model_rho(const RealPoly& P, std::span<const cdouble> w);

}  // namespace pscale
