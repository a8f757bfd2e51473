#include "pscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pscale {

CoefficientMaxima coefficient_maxima(const NormalizationResult& norm, int m)
{
    CoefficientMaxima out;
    out.m = m;
    for (int l = 2; l <= 2 * m; ++l) {
        out.A_squared[l] = 0;
    }
    for (int l = 2; l <= m; ++l) {
        out.B_squared[l] = 0;
    }
    for (const auto& [jk, c] : norm.a_table) {
        const int l = jk.first + jk.second;
        if (l < 2 || l > 2 * m) continue;
        out.A_squared[l] = std::max(out.A_squared[l], c.norm2());
    }
    for (const auto& [key, c] : norm.b_table) {
        const int l = std::get<1>(key) + std::get<2>(key);
        if (l < 2 || l > m) continue;
        out.B_squared[l] = std::max(out.B_squared[l], c.norm2());
    }
    for (const auto& [l, s] : out.A_squared) out.A[l] = std::sqrt(to_double(s));
    for (const auto& [l, s] : out.B_squared) out.B[l] = std::sqrt(to_double(s));
    return out;
}

namespace {

Rational rat_pow(const Rational& x, int e)
{
    Rational r(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

/// A_l tau^l <= delta and B_l' tau^l' <= delta^{1/2}, checked on squares.
bool tau_admissible(const CoefficientMaxima& mx, const Rational& delta, const Rational& tau)
{
    const Rational delta2 = delta * delta;
    for (const auto& [l, s] : mx.A_squared) {
        if (sgn(s) != 0 && s * rat_pow(tau, 2 * l) > delta2) return false;
    }
    for (const auto& [l, s] : mx.B_squared) {
        if (sgn(s) != 0 && s * rat_pow(tau, 2 * l) > delta) return false;
    }
    return true;
}

struct Candidate {
    std::string label;
    double value;
    std::optional<Rational> exact;
};

std::optional<Rational> exact_candidate(const Rational& numerator_sq_root_free,
                                        const Rational& coeff_squared, int l)
{
    auto c = rational_root(coeff_squared, 2);
    if (!c) return std::nullopt;
    Rational ratio = numerator_sq_root_free / *c;
    return rational_root(ratio, static_cast<unsigned int>(l));
}

}  // namespace

TauDetail tau_detail(const CoefficientMaxima& mx, const Rational& delta, int m)
{
    if (sgn(delta) <= 0) {
        throw Error("tau requires delta > 0");
    }
    auto top = mx.A_squared.find(2 * m);
    if (top == mx.A_squared.end() || sgn(top->second) == 0) {
        throw HypothesisError("finite-type hypothesis violated at this point (A_" +
                              std::to_string(2 * m) + " = 0)");
    }
    const double d = to_double(delta);
    const std::optional<Rational> sqrt_delta = rational_root(delta, 2);

    std::vector<Candidate> cands;
    for (const auto& [l, s] : mx.A_squared) {
        if (l > 2 * m || sgn(s) == 0) continue;
        cands.push_back({"A" + std::to_string(l), std::pow(d / mx.A.at(l), 1.0 / l),
                         exact_candidate(delta, s, l)});
    }
    for (const auto& [l, s] : mx.B_squared) {
        if (l > m || sgn(s) == 0) continue;
        std::optional<Rational> ex;
        if (sqrt_delta) ex = exact_candidate(*sqrt_delta, s, l);
        cands.push_back({"B" + std::to_string(l), std::pow(std::sqrt(d) / mx.B.at(l), 1.0 / l), ex});
    }

    const auto best = std::min_element(cands.begin(), cands.end(),
                                       [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    TauDetail out;
    out.value = best->value;
    for (const auto& c : cands) {
        if (c.value <= best->value * (1 + 1e-12)) out.active.push_back(c.label);
    }
    if (best->exact && tau_admissible(mx, delta, *best->exact)) {
        out.exact = best->exact;
        out.value = to_double(*best->exact);
        return out;
    }
    while (!tau_admissible(mx, delta, to_rational(out.value))) {
        out.value = std::nextafter(out.value, 0.0);
    }
    return out;
}

double tau(const CoefficientMaxima& maxima, double delta, int m)
{
    if (!(delta > 0)) {
        throw Error("tau requires delta > 0");
    }
    return tau_detail(maxima, to_rational(delta), m).value;
}

std::vector<cdouble> dilation(std::span<const double> scales, std::span<const cdouble> point)
{
    if (scales.size() != point.size()) throw ShapeError("dilation: scale/point length mismatch");
    std::vector<cdouble> out(point.size());
    for (std::size_t k = 0; k < point.size(); ++k) {
        if (!(scales[k] > 0)) throw Error("dilation scales must be positive");
        out[k] = point[k] / scales[k];
    }
    return out;
}

std::vector<cdouble> inverse_dilation(std::span<const double> scales, std::span<const cdouble> point)
{
    if (scales.size() != point.size()) throw ShapeError("dilation: scale/point length mismatch");
    std::vector<cdouble> out(point.size());
    for (std::size_t k = 0; k < point.size(); ++k) {
        if (!(scales[k] > 0)) throw Error("dilation scales must be positive");
        out[k] = point[k] * scales[k];
    }
    return out;
}

Poly inverse_dilation(const Poly& p, std::span<const Rational> scales)
{
    if (static_cast<int>(scales.size()) != p.nvars()) {
        throw ShapeError("dilation: scale count does not match nvars");
    }
    for (const auto& s : scales) {
        if (sgn(s) <= 0) throw Error("dilation scales must be positive");
    }
    Poly out(p.nvars());
    for (const auto& [md, c] : p.terms()) {
        Rational f(1);
        for (int k = 0; k < p.nvars(); ++k) {
            f *= rat_pow(scales[k], md.holo[k] + md.anti[k]);
        }
        out.add_term(md, c * Gaussian(f));
    }
    return out;
}

std::vector<double> ScalingData::scales_d() const
{
    std::vector<double> out;
    for (const auto& s : scales) out.push_back(to_double(s));
    return out;
}

ScalingData rescaled_rho(const DomainSpec& spec, const NormalizationResult& norm,
                         const Rational& epsilon, int m)
{
    if (sgn(epsilon) <= 0) {
        throw Error("epsilon must be positive");
    }
    const int n = spec.n();
    ScalingData sd;
    sd.m = m;
    sd.epsilon = epsilon;
    sd.maxima = coefficient_maxima(norm, m);
    const TauDetail td = tau_detail(sd.maxima, epsilon, m);
    sd.tau = td.value;
    sd.active = td.active;
    const Rational tau_q = td.as_rational();

    std::optional<Rational> sqrt_eps = rational_root(epsilon, 2);
    sd.exact = td.exact.has_value() && sqrt_eps.has_value();
    const Rational root_eps = sqrt_eps ? *sqrt_eps : to_rational(std::sqrt(to_double(epsilon)));

    sd.scales.assign(n, root_eps);
    sd.scales[0] = tau_q;
    sd.scales[n - 1] = epsilon;

    const Rational inv_eps = 1 / epsilon;
    sd.rescaled_rho = RealPoly(scale(inverse_dilation(norm.normalized.poly(), sd.scales), Gaussian(inv_eps)));

    Poly P(1);
    for (const auto& [jk, c] : norm.a_table) {
        const auto [j, k] = jk;
        P.add_term(Multidegree({j}, {k}), c * Gaussian(Rational(inv_eps * rat_pow(tau_q, j + k))));
    }
    sd.P = RealPoly(std::move(P));
    for (int alpha = 2; alpha < n; ++alpha) sd.Q.emplace(alpha, Poly(1));
    for (const auto& [key, c] : norm.b_table) {
        const auto [alpha, j, k] = key;
        sd.Q.at(alpha).add_term(Multidegree({j}, {k}),
                                c * Gaussian(Rational(inv_eps * root_eps * rat_pow(tau_q, j + k))));
    }
    return sd;
}

CoefficientBounds coefficient_bounds(const ScalingData& sd)
{
    CoefficientBounds out;
    for (const auto& [md, c] : sd.P.poly().terms()) out.max_p = std::max(out.max_p, c.abs());
    for (const auto& [alpha, q] : sd.Q) {
        for (const auto& [md, c] : q.terms()) out.max_q = std::max(out.max_q, c.abs());
    }
    return out;
}

double pq_scan_discrepancy(const ScalingData& sd)
{
    const Poly& rr = sd.rescaled_rho.poly();
    const int n = rr.nvars();
    double worst = 0;
    const int two_m = 2 * sd.m;
    for (int j = 1; j < two_m; ++j) {
        for (int k = 1; j + k <= two_m; ++k) {
            Multidegree md(n);
            md.holo[0] = j;
            md.anti[0] = k;
            const Gaussian scanned = rr.coeff(md);
            const Gaussian direct = sd.P.poly().coeff(Multidegree({j}, {k}));
            worst = std::max(worst, std::abs(scanned.to_complex() - direct.to_complex()));
        }
    }
    for (const auto& [alpha, q] : sd.Q) {
        for (int j = 1; j < sd.m; ++j) {
            for (int k = 1; j + k <= sd.m; ++k) {
                Multidegree md(n);
                md.holo[0] = j;
                md.anti[0] = k;
                md.holo[alpha - 1] = 1;
                const cdouble scanned = 2.0 * rr.coeff(md).to_complex();
                const cdouble direct = q.coeff(Multidegree({j}, {k})).to_complex();
                worst = std::max(worst, std::abs(scanned - direct));
            }
        }
    }
    return worst;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
    }
    return "unknown";
}

std::vector<cdouble> unit_disc_samples(int samples)
{
    samples = std::max(samples, 1);
    const int rings = std::max(1, static_cast<int>(std::sqrt(samples / 4.0)));
    const int per_ring = std::max(1, samples / rings);
    std::vector<cdouble> out;
    out.reserve(static_cast<std::size_t>(rings) * per_ring);
    for (int r = 1; r <= rings; ++r) {
        const double radius = static_cast<double>(r) / rings;
        for (int t = 0; t < per_ring; ++t) {
            out.push_back(std::polar(radius, 2.0 * M_PI * t / per_ring));
        }
    }
    return out;
}

double max_abs_on_disc(const Poly& univariate, int samples)
{
    if (univariate.is_zero()) return 0.0;
    double worst = 0;
    for (const cdouble& w : unit_disc_samples(samples)) {
        worst = std::max(worst, std::abs(evaluate(univariate, std::span<const cdouble>(&w, 1))));
    }
    return worst;
}

QEstimateReport check_q_estimate(const ScalingData& sd, double exponent, int samples,
                                 double small_threshold)
{
    QEstimateReport out;
    out.tau = sd.tau;
    out.bound = std::pow(sd.tau, exponent);
    for (const auto& [alpha, q] : sd.Q) {
        out.max_q = std::max(out.max_q, max_abs_on_disc(q, samples));
    }
    if (!(sd.tau < small_threshold)) {
        out.verdict = Verdict::not_applicable;
    } else {
        out.verdict = out.max_q <= out.bound ? Verdict::pass : Verdict::fail;
    }
    return out;
}

}  // namespace pscale
