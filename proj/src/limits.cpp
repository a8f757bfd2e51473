#include "pscale/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace pscale {

SequenceSpec SequenceSpec::normal(int jmax)
{
    SequenceSpec s;
    s.jmax = jmax;
    return s;
}

SequenceSpec SequenceSpec::tangential(std::vector<int> powers, int jmax)
{
    SequenceSpec s;
    s.kind = Kind::tangential;
    s.powers = std::move(powers);
    s.jmax = jmax;
    return s;
}

std::string to_string(SequenceSpec::Kind k)
{
    switch (k) {
    case SequenceSpec::Kind::normal: return "normal";
    case SequenceSpec::Kind::cone: return "cone";
    case SequenceSpec::Kind::tangential: return "tangential";
    case SequenceSpec::Kind::explicit_list: return "explicit";
    }
    return "unknown";
}

namespace {

Rational step_size(const SequenceSpec& seq, int j, int power = 1)
{
    if (seq.rate == SequenceSpec::Rate::harmonic) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(power));
        return Rational(mpz_class(1), den);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(j) * static_cast<unsigned long>(power));
    return Rational(mpz_class(1), den);
}

}  // namespace

std::vector<Gaussian> generate_sequence(const DomainSpec& spec, const SequenceSpec& seq, int j)
{
    if (j < 1 || j > seq.jmax) {
        throw Error("sequence index " + std::to_string(j) + " outside 1.." + std::to_string(seq.jmax));
    }
    const int n = spec.n();
    std::vector<Gaussian> z(n);
    switch (seq.kind) {
    case SequenceSpec::Kind::normal:
        z[n - 1] = Gaussian(Rational(-step_size(seq, j)));
        break;
    case SequenceSpec::Kind::cone: {
        if (static_cast<int>(seq.direction.size()) != n - 1) {
            throw ShapeError("cone direction must have n-1 coordinates");
        }
        const Rational t = step_size(seq, j);
        for (int k = 0; k < n - 1; ++k) {
            z[k] = seq.direction[k] * Gaussian(Rational(seq.aperture * t));
        }
        z[n - 1] = Gaussian(Rational(-t));
        break;
    }
    case SequenceSpec::Kind::tangential: {
        const auto& p = seq.powers;
        if (p.size() != 2 && static_cast<int>(p.size()) != n) {
            throw ShapeError("tangential powers must be (p_1, p_n) or have n entries");
        }
        if (std::any_of(p.begin(), p.end(), [](int e) { return e <= 0; })) {
            throw HypothesisError("bad powers: tangential powers must be positive");
        }
        z[0] = Gaussian(step_size(seq, j, p[0]));
        if (static_cast<int>(p.size()) == n) {
            for (int k = 1; k < n - 1; ++k) z[k] = Gaussian(step_size(seq, j, p[k]));
        }
        // Pick Re z_n so that rho = -t^{p_n}.
        const Gaussian F = evaluate_exact(spec.F().poly(), z);
        z[n - 1] = Gaussian(Rational(-F.re - step_size(seq, j, p.back())));
        break;
    }
    case SequenceSpec::Kind::explicit_list:
        if (j > static_cast<int>(seq.points.size())) {
            throw Error("explicit sequence has only " + std::to_string(seq.points.size()) + " points");
        }
        z = seq.points[j - 1];
        if (static_cast<int>(z.size()) != n) {
            throw ShapeError("explicit sequence point must have n coordinates");
        }
        break;
    }
    if (sgn(spec.rho_at(z).re) >= 0) {
        throw HypothesisError("generated point " + std::to_string(j) + " is not interior");
    }
    return z;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

bool has_harmonic_terms(const Poly& p)
{
    return std::any_of(p.terms().begin(), p.terms().end(), [](const auto& t) {
        return t.first.holo[0] == 0 || t.first.anti[0] == 0;
    });
}

double max_coeff(const Poly& p)
{
    double m = 0;
    for (const auto& [md, c] : p.terms()) m = std::max(m, c.abs());
    return m;
}

struct CompiledTerm {
    int j, k;
    cdouble c;
};

std::vector<CompiledTerm> compile_univariate(const Poly& p)
{
    std::vector<CompiledTerm> out;
    for (const auto& [md, c] : p.terms()) out.push_back({md.holo[0], md.anti[0], c.to_complex()});
    return out;
}

double eval_real(const std::vector<CompiledTerm>& terms, double r, double theta)
{
    double s = 0;
    for (const auto& t : terms) {
        // c z^j zb^k = c r^{j+k} e^{i (j-k) theta}
        const cdouble v = t.c * std::polar(std::pow(r, t.j + t.k), (t.j - t.k) * theta);
        s += v.real();
    }
    return s;
}

}  // namespace

ModelClass classify_model(const RealPoly& P, int samples)
{
    if (P.nvars() != 1) {
        throw ShapeError("model polynomial must be univariate in (z1, zb1)");
    }
    if (samples < 1) {
        throw Error("classification needs at least one sample");
    }
    const Poly& p = P.poly();
    if (has_harmonic_terms(p)) {
        throw HypothesisError("model polynomial has harmonic terms: " + to_string(p));
    }
    ModelClass mc;
    mc.degree = p.degree();
    mc.is_homogeneous = !p.is_zero() &&
                        std::all_of(p.terms().begin(), p.terms().end(),
                                    [&](const auto& t) { return t.first.total() == mc.degree; });
    if (p.size() == 1) {
        const auto& [md, c] = *p.terms().begin();
        if (md.holo[0] == 1 && md.anti[0] == 1 && c.is_real() && sgn(c.re) > 0) {
            mc.is_strongly_pseudoconvex_model = true;
            mc.c = to_double(c.re);
        }
    }

    const Poly L = laplacian_z1(p);
    mc.laplacian_nontrivial = !L.is_zero();

    std::map<int, double> comp_scale;
    for (int d = 0; d <= std::max(L.degree(), 0); ++d) {
        const Poly comp = homogeneous_part(L, d);
        if (comp.is_zero()) continue;
        const double s = max_coeff(comp);
        comp_scale[d] = s;
        const auto terms = compile_univariate(comp);
        double mn = std::numeric_limits<double>::infinity();
        for (int t = 0; t < samples; ++t) {
            mn = std::min(mn, eval_real(terms, 1.0, 2.0 * M_PI * t / samples) / s);
        }
        mc.component_min[d] = mn;
    }

    const bool exact = std::all_of(L.terms().begin(), L.terms().end(), [](const auto& t) {
        return t.first.holo[0] == t.first.anti[0] && t.second.is_real() && sgn(t.second.re) >= 0;
    });

    // Radii sweep: a geometric ladder plus fixed-seed random radii.
    std::vector<double> radii;
    for (int e = -12; e <= 12; ++e) radii.push_back(std::pow(10.0, e / 4.0));
    std::mt19937_64 rng(0xC1A55ULL);
    std::uniform_real_distribution<double> unit(0.0, 4.0);
    for (int k = 0; k < 16; ++k) radii.push_back(unit(rng));

    const auto L_terms = compile_univariate(L);
    mc.sampled_min = std::numeric_limits<double>::infinity();
    if (!L.is_zero()) {
        for (double r : radii) {
            double magnitude = 0;
            for (const auto& [d, s] : comp_scale) magnitude += s * std::pow(r, d);
            for (int t = 0; t < samples; ++t) {
                const double v = eval_real(L_terms, r, 2.0 * M_PI * t / samples) / magnitude;
                mc.sampled_min = std::min(mc.sampled_min, v);
            }
        }
    } else {
        mc.sampled_min = 0;
    }

    if (exact) {
        mc.subharmonic_mode = "exact";
        mc.is_subharmonic = true;
    } else {
        mc.subharmonic_mode = "sampled";
        const double top_min = mc.component_min.rbegin()->second;
        mc.is_subharmonic = top_min >= -kSubharmonicMargin && mc.sampled_min >= -kSubharmonicMargin;
    }
    return mc;
}

std::optional<MatchResult> match_top_homogeneous(const RealPoly& Q, const RealPoly& H, double tol,
                                                 int samples)
{
    if (Q.nvars() != 1 || H.nvars() != 1) {
        throw ShapeError("model polynomials must be univariate in (z1, zb1)");
    }
    const Poly& h = H.poly();
    if (h.is_zero()) throw HypothesisError("H is zero");
    if (has_harmonic_terms(h)) throw HypothesisError("H has harmonic terms");
    const ModelClass hc = classify_model(H, samples);
    if (!hc.is_homogeneous) throw HypothesisError("H is not homogeneous");
    if (hc.degree % 2 != 0) throw HypothesisError("H has odd degree " + std::to_string(hc.degree));
    if (!hc.is_subharmonic) throw HypothesisError("H is not subharmonic");
    if (has_harmonic_terms(Q.poly())) throw HypothesisError("Q has harmonic terms");
    const int dq = Q.degree();
    if (dq > hc.degree) {
        throw HypothesisError("degree mismatch: deg Q = " + std::to_string(dq) + " exceeds deg H = " +
                              std::to_string(hc.degree));
    }
    if (dq < hc.degree) return std::nullopt;

    const Poly top = homogeneous_part(Q.poly(), dq);
    for (const auto& [md, c] : top.terms()) {
        if (h.coeff(md).is_zero()) return std::nullopt;
    }

    struct Pair {
        int d;
        cdouble q, h;
    };
    std::vector<Pair> pairs;
    double num = 0, den = 0;
    for (const auto& [md, c] : h.terms()) {
        const cdouble hv = c.to_complex();
        const cdouble qv = top.coeff(md).to_complex();
        pairs.push_back({md.holo[0] - md.anti[0], qv, hv});
        num += std::abs(qv) * std::abs(hv);
        den += std::norm(hv);
    }
    const double lambda = num / den;
    if (!(lambda > 0)) return std::nullopt;

    auto residual = [&](double nu) {
        double worst = 0;
        for (const auto& p : pairs) {
            worst = std::max(worst, std::abs(p.q - lambda * std::polar(1.0, p.d * nu) * p.h));
        }
        return worst;
    };

    const Pair* pivot = nullptr;
    for (const auto& p : pairs) {
        if (p.d != 0 && (!pivot || std::abs(p.d) < std::abs(pivot->d))) pivot = &p;
    }
    if (!pivot) {
        const double r = residual(0.0);
        if (r > tol) return std::nullopt;
        return MatchResult{lambda, 0.0, true, r};
    }

    std::vector<double> candidates;
    const double base = std::arg(pivot->q / pivot->h);
    const int d = pivot->d;
    for (int t = 0; t < std::abs(d); ++t) {
        double nu = (base + 2.0 * M_PI * t) / d;
        nu = std::fmod(nu, 2.0 * M_PI);
        if (nu < 0) nu += 2.0 * M_PI;
        if (nu > 2.0 * M_PI - 1e-12) nu = 0.0;
        candidates.push_back(nu);
    }
    std::sort(candidates.begin(), candidates.end());
    for (double nu : candidates) {
        const double r = residual(nu);
        if (r <= tol) return MatchResult{lambda, nu, false, r};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Limits

ScalingData scale_sequence_point(const DomainSpec& spec, const SequenceSpec& seq, int j, int m,
                                 const NormalizationOptions& options)
{
    const auto eta = generate_sequence(spec, seq, j);
    const BoundaryLift lift = lift_to_boundary(spec, eta);
    const NormalizationResult norm = normalize_at(spec, lift.eta_prime, m, options);
    return rescaled_rho(spec, norm, lift.epsilon, m);
}

namespace {

int model_half_type(const DomainSpec& spec)
{
    if (!validate_normal_form(spec).structure_ok()) {
        throw HypothesisError("domain is not in normal form at the origin");
    }
    const TypeResult type = dangelo_type_z1(spec);
    if (type.value % 2 != 0) {
        throw HypothesisError("odd minimal mixed degree " + std::to_string(type.value));
    }
    return type.m();
}

}  // namespace

LimitReport limit_polynomial(const DomainSpec& spec, const SequenceSpec& seq, const LimitOptions& options)
{
    if (!(options.tol > 0) || options.window < 1) {
        throw Error("limit options need tol > 0 and window >= 1");
    }
    LimitReport report;
    report.m = model_half_type(spec);
    report.jmax = seq.jmax;
    const int two_m = 2 * report.m;
    for (int j = 1; j < two_m; ++j) {
        for (int k = 1; j + k <= two_m; ++k) report.coeff_keys.emplace_back(j, k);
    }

    for (int j = 1; j <= seq.jmax; ++j) {
        const ScalingData sd = scale_sequence_point(spec, seq, j, report.m, options.normalization);
        std::vector<cdouble> coeffs;
        for (const auto& [a, b] : report.coeff_keys) {
            coeffs.push_back(sd.P.poly().coeff(Multidegree({a}, {b})).to_complex());
        }
        report.coeff_trace.push_back(std::move(coeffs));
        double q = 0;
        for (const auto& [alpha, poly] : sd.Q) q = std::max(q, max_abs_on_disc(poly, options.q_samples));
        report.q_decay.push_back(q);
        report.tau_trace.push_back(sd.tau);
        report.eps_trace.push_back(to_double(sd.epsilon));
        const CoefficientBounds bounds = coefficient_bounds(sd);
        report.max_coeff_trace.push_back(std::max(bounds.max_p, bounds.max_q));
        report.exact_trace.push_back(sd.exact);
        if (j == seq.jmax) report.P_limit = sd.P;
    }

    const int total = static_cast<int>(report.coeff_trace.size());
    if (total >= options.window) {
        bool ok = true;
        for (int a = total - options.window; a < total && ok; ++a) {
            if (!(report.q_decay[a] < options.tol)) ok = false;
            for (int b = a + 1; b < total && ok; ++b) {
                for (std::size_t k = 0; k < report.coeff_keys.size(); ++k) {
                    if (std::abs(report.coeff_trace[a][k] - report.coeff_trace[b][k]) > options.tol) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        report.converged = ok;
    }
    report.model = classify_model(report.P_limit, options.samples);
    return report;
}

double model_rho(const RealPoly& P, std::span<const cdouble> w)
{
    const std::size_t n = w.size();
    if (n < 2) throw ShapeError("model point needs at least two coordinates");
    double v = w[n - 1].real() + P.evaluate(w.subspan(0, 1));
    for (std::size_t a = 1; a + 1 < n; ++a) v += std::norm(w[a]);
    return v;
}

std::vector<std::vector<cdouble>> default_probe_grid(int n, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::uniform_real_distribution<double> height(-2.0, 1.0);
    std::vector<std::vector<cdouble>> grid;
    for (int s = 0; s < count; ++s) {
        std::vector<cdouble> w(n);
        w[0] = {sym(rng), sym(rng)};
        for (int a = 1; a < n - 1; ++a) w[a] = {0.5 * sym(rng), 0.5 * sym(rng)};
        w[n - 1] = {height(rng), sym(rng)};
        grid.push_back(std::move(w));
    }
    return grid;
}

ProbeReport domain_convergence_probe(const DomainSpec& spec, const SequenceSpec& seq,
                                     const RealPoly& candidate_P,
                                     const std::vector<std::vector<cdouble>>& grid, double margin,
                                     const NormalizationOptions& options)
{
    const int n = spec.n();
    const int m = model_half_type(spec);
    ProbeReport report;
    std::vector<std::size_t> active;
    for (const auto& w : grid) {
        if (static_cast<int>(w.size()) != n) throw ShapeError("probe point must have n coordinates");
        const double v = model_rho(candidate_P, w);
        if (std::abs(v) < margin) {
            ++report.skipped;
            continue;
        }
        report.points.push_back({w, v, v < 0, std::nullopt});
    }

    // last_bad[p] = last j at which the sign disagreed with the model.
    std::vector<int> last_bad(report.points.size(), 0);
    for (int j = 1; j <= seq.jmax; ++j) {
        const ScalingData sd = scale_sequence_point(spec, seq, j, m, options);
        std::vector<std::pair<Multidegree, cdouble>> terms;
        for (const auto& [md, c] : sd.rescaled_rho.poly().terms()) terms.emplace_back(md, c.to_complex());
        for (std::size_t p = 0; p < report.points.size(); ++p) {
            const auto& w = report.points[p].point;
            cdouble sum = 0;
            for (const auto& [md, c] : terms) {
                cdouble t = c;
                for (int k = 0; k < n; ++k) {
                    for (int e = 0; e < md.holo[k]; ++e) t *= w[k];
                    for (int e = 0; e < md.anti[k]; ++e) t *= std::conj(w[k]);
                }
                sum += t;
            }
            const bool agrees = report.points[p].interior ? sum.real() < 0 : sum.real() > 0;
            if (!agrees) last_bad[p] = j;
        }
    }
    report.pass = true;
    for (std::size_t p = 0; p < report.points.size(); ++p) {
        if (last_bad[p] < seq.jmax) {
            report.points[p].j0 = last_bad[p] + 1;
        } else {
            report.pass = false;
        }
    }
    return report;
}

}  // namespace pscale
