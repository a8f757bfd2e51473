#include "pscale/cpoly.hpp"

#include <cstdio>
#include <cstring>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pscale {

// ---------------------------------------------------------------------------
// Gaussian

Gaussian& Gaussian::operator+=(const Gaussian& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o)
{
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o)
{
    Rational d = o.norm2();
    if (sgn(d) == 0) {
        throw Error("division by zero");
    }
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

double to_double(const Rational& q)
{
    const double d = q.get_d();
    if (!std::isfinite(d)) return d;
    const Rational qd = to_rational(d);
    if (qd == q) return d;
    const double other = std::nextafter(d, sgn(q) > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(other)) return d;
    const Rational e1 = abs(q - qd);
    const Rational e2 = abs(q - to_rational(other));
    if (e2 < e1) return other;
    if (e1 < e2) return d;
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    return (bits & 1U) == 0 ? d : other;
}

Rational to_rational(double x)
{
    if (!std::isfinite(x)) {
        throw Error("cannot convert non-finite value to a rational");
    }
    // mpq_set_d is exact for finite doubles.
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

Gaussian to_gaussian(cdouble z)
{
    return {to_rational(z.real()), to_rational(z.imag())};
}

namespace {

std::optional<mpz_class> integer_root(const mpz_class& x, unsigned int degree)
{
    if (sgn(x) < 0) {
        if (degree % 2 == 0) {
            return std::nullopt;
        }
        auto r = integer_root(-x, degree);
        if (!r) {
            return std::nullopt;
        }
        return mpz_class(-*r);
    }
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), x.get_mpz_t(), degree) == 0) {
        return std::nullopt;
    }
    return root;
}

}  // namespace

std::optional<Rational> rational_root(const Rational& x, unsigned int degree)
{
    if (degree == 0) {
        throw Error("zeroth root requested");
    }
    auto num = integer_root(x.get_num(), degree);
    auto den = integer_root(x.get_den(), degree);
    if (!num || !den) {
        return std::nullopt;
    }
    Rational r(*num, *den);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Multidegree

int Multidegree::holo_total() const
{
    int s = 0;
    for (int e : holo) s += e;
    return s;
}

int Multidegree::anti_total() const
{
    int s = 0;
    for (int e : anti) s += e;
    return s;
}

int Multidegree::total() const { return holo_total() + anti_total(); }

bool GradedLex::operator()(const Multidegree& a, const Multidegree& b) const
{
    const int ta = a.total();
    const int tb = b.total();
    if (ta != tb) {
        return ta < tb;
    }
    if (a.holo != b.holo) {
        return a.holo < b.holo;
    }
    return a.anti < b.anti;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(int nvars, const Gaussian& c)
{
    Poly p(nvars);
    p.add_term(Multidegree(nvars), c);
    return p;
}

Poly Poly::variable(int nvars, int index, bool barred)
{
    if (index < 1 || index > nvars) {
        throw ShapeError("variable index " + std::to_string(index) + " out of range 1.." +
                         std::to_string(nvars));
    }
    Multidegree md(nvars);
    (barred ? md.anti : md.holo)[index - 1] = 1;
    Poly p(nvars);
    p.add_term(md, Gaussian(1));
    return p;
}

Poly Poly::monomial(const Multidegree& md, const Gaussian& c)
{
    if (md.holo.size() != md.anti.size()) {
        throw ShapeError("multidegree holo/anti length mismatch");
    }
    for (std::size_t k = 0; k < md.holo.size(); ++k) {
        if (md.holo[k] < 0 || md.anti[k] < 0) {
            throw ShapeError("negative exponent");
        }
    }
    Poly p(md.nvars());
    p.add_term(md, c);
    return p;
}

int Poly::degree() const
{
    if (terms_.empty()) {
        return -1;
    }
    // The map is graded, so the last key carries the top degree.
    return terms_.rbegin()->first.total();
}

Gaussian Poly::coeff(const Multidegree& md) const
{
    auto it = terms_.find(md);
    return it == terms_.end() ? Gaussian() : it->second;
}

bool Poly::is_holomorphic() const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.anti_total() == 0; });
}

bool Poly::is_hermitian() const
{
    for (const auto& [md, c] : terms_) {
        if (!(coeff(md.swapped()) == c.conj())) {
            return false;
        }
    }
    return true;
}

void Poly::add_term(const Multidegree& md, const Gaussian& c)
{
    if (md.nvars() != nvars_) {
        throw ShapeError("monomial has " + std::to_string(md.nvars()) + " variables, polynomial has " +
                         std::to_string(nvars_));
    }
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(md, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

namespace {

void require_same_nvars(const Poly& a, const Poly& b)
{
    if (a.nvars() != b.nvars()) {
        throw ShapeError("nvars mismatch: " + std::to_string(a.nvars()) + " vs " +
                         std::to_string(b.nvars()));
    }
}

void check_cap(int degree, int cap)
{
    if (degree > cap) {
        throw DegreeCapExceeded("polynomial degree " + std::to_string(degree) +
                                " exceeds cap " + std::to_string(cap));
    }
}

}  // namespace

Poly& Poly::operator+=(const Poly& o)
{
    require_same_nvars(*this, o);
    for (const auto& [md, c] : o.terms_) {
        add_term(md, c);
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    require_same_nvars(*this, o);
    for (const auto& [md, c] : o.terms_) {
        add_term(md, -c);
    }
    return *this;
}

Poly Poly::operator-() const
{
    Poly r(nvars_);
    for (const auto& [md, c] : terms_) {
        r.terms_.emplace(md, -c);
    }
    return r;
}

Poly mul(const Poly& a, const Poly& b, int degree_cap)
{
    require_same_nvars(a, b);
    if (a.is_zero() || b.is_zero()) {
        return Poly(a.nvars());
    }
    check_cap(a.degree() + b.degree(), degree_cap);
    const int n = a.nvars();
    Poly r(n);
    Multidegree md(n);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            for (int k = 0; k < n; ++k) {
                md.holo[k] = ma.holo[k] + mb.holo[k];
                md.anti[k] = ma.anti[k] + mb.anti[k];
            }
            r.add_term(md, ca * cb);
        }
    }
    return r;
}

Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }

Poly operator*(const Gaussian& c, const Poly& p) { return scale(p, c); }

Poly scale(const Poly& p, const Gaussian& c)
{
    Poly r(p.nvars());
    if (c.is_zero()) {
        return r;
    }
    for (const auto& [md, v] : p.terms()) {
        r.add_term(md, v * c);
    }
    return r;
}

Poly pow(const Poly& p, int exponent, int degree_cap)
{
    if (exponent < 0) {
        throw Error("negative exponent");
    }
    if (p.degree() > 0) {
        check_cap(p.degree() * exponent, degree_cap);
    }
    Poly result = Poly::constant(p.nvars(), Gaussian(1));
    Poly base = p;
    while (exponent > 0) {
        if (exponent & 1) {
            result = mul(result, base, degree_cap);
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = mul(base, base, degree_cap);
        }
    }
    return result;
}

Poly conjugate(const Poly& p)
{
    Poly r(p.nvars());
    for (const auto& [md, c] : p.terms()) {
        r.add_term(md.swapped(), c.conj());
    }
    return r;
}

Poly wirtinger(const Poly& p, int var, bool barred)
{
    if (var < 1 || var > p.nvars()) {
        throw ShapeError("derivative index " + std::to_string(var) + " out of range 1.." +
                         std::to_string(p.nvars()));
    }
    Poly r(p.nvars());
    for (const auto& [md, c] : p.terms()) {
        const auto& exps = barred ? md.anti : md.holo;
        const int e = exps[var - 1];
        if (e == 0) {
            continue;
        }
        Multidegree d = md;
        (barred ? d.anti : d.holo)[var - 1] = e - 1;
        r.add_term(d, c * Gaussian(e));
    }
    return r;
}

Poly laplacian_z1(const Poly& p) { return wirtinger(wirtinger(p, 1, false), 1, true); }

Poly homogeneous_part(const Poly& p, int d, std::optional<int> var_restricted)
{
    if (d < 0) {
        throw Error("homogeneous degree must be nonnegative");
    }
    if (var_restricted && (*var_restricted < 1 || *var_restricted > p.nvars())) {
        throw ShapeError("restricted variable out of range");
    }
    Poly r(p.nvars());
    for (const auto& [md, c] : p.terms()) {
        if (md.total() != d) {
            continue;
        }
        if (var_restricted) {
            const int v = *var_restricted - 1;
            if (md.holo[v] + md.anti[v] != d) {
                continue;
            }
        }
        r.add_term(md, c);
    }
    return r;
}

Poly embed(const Poly& p, int nvars)
{
    if (nvars < p.nvars()) {
        throw ShapeError("embed target has fewer variables than source");
    }
    Poly r(nvars);
    for (const auto& [md, c] : p.terms()) {
        Multidegree e(nvars);
        std::copy(md.holo.begin(), md.holo.end(), e.holo.begin());
        std::copy(md.anti.begin(), md.anti.end(), e.anti.begin());
        r.add_term(e, c);
    }
    return r;
}

Poly univariate_part(const Poly& p, int var)
{
    if (var < 1 || var > p.nvars()) {
        throw ShapeError("variable index out of range");
    }
    const int v = var - 1;
    Poly r(1);
    for (const auto& [md, c] : p.terms()) {
        if (md.holo[v] + md.anti[v] != md.total()) {
            continue;
        }
        r.add_term(Multidegree({md.holo[v]}, {md.anti[v]}), c);
    }
    return r;
}

namespace {

template <class T>
T int_pow(const T& base, int e)
{
    T r(1);
    for (int k = 0; k < e; ++k) {
        r *= base;
    }
    return r;
}

}  // namespace

cdouble evaluate(const Poly& p, std::span<const cdouble> point)
{
    if (static_cast<int>(point.size()) != p.nvars()) {
        throw ShapeError("evaluation point has wrong length");
    }
    const int n = p.nvars();
    std::vector<cdouble> conj_point(n);
    for (int k = 0; k < n; ++k) {
        conj_point[k] = std::conj(point[k]);
    }
    cdouble sum = 0.0;
    for (const auto& [md, c] : p.terms()) {
        cdouble t = c.to_complex();
        for (int k = 0; k < n; ++k) {
            if (md.holo[k]) t *= int_pow(point[k], md.holo[k]);
            if (md.anti[k]) t *= int_pow(conj_point[k], md.anti[k]);
        }
        sum += t;
    }
    return sum;
}

Gaussian evaluate_exact(const Poly& p, std::span<const Gaussian> point)
{
    if (static_cast<int>(point.size()) != p.nvars()) {
        throw ShapeError("evaluation point has wrong length");
    }
    const int n = p.nvars();
    Gaussian sum;
    for (const auto& [md, c] : p.terms()) {
        Gaussian t = c;
        for (int k = 0; k < n; ++k) {
            if (md.holo[k]) t *= int_pow(point[k], md.holo[k]);
            if (md.anti[k]) t *= int_pow(point[k].conj(), md.anti[k]);
        }
        sum += t;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// RealPoly, HoloMap

RealPoly::RealPoly(Poly p) : poly_(std::move(p))
{
    if (!poly_.is_hermitian()) {
        throw Error("polynomial is not real-valued (coefficients lack Hermitian symmetry): " +
                    to_string(poly_));
    }
}

RealPoly real_part(const Poly& p)
{
    return RealPoly(scale(p + conjugate(p), Gaussian(Rational(1, 2))));
}

HoloMap::HoloMap(std::vector<Poly> components) : components_(std::move(components))
{
    const int n = static_cast<int>(components_.size());
    for (const auto& c : components_) {
        if (c.nvars() != n) {
            throw ShapeError("holomorphic map component has " + std::to_string(c.nvars()) +
                             " variables, expected " + std::to_string(n));
        }
        if (!c.is_holomorphic()) {
            throw ShapeError("holomorphic map component depends on conjugate variables");
        }
    }
}

HoloMap HoloMap::identity(int n)
{
    std::vector<Poly> comps;
    comps.reserve(n);
    for (int k = 1; k <= n; ++k) {
        comps.push_back(Poly::variable(n, k));
    }
    return HoloMap(std::move(comps));
}

std::vector<cdouble> HoloMap::apply(std::span<const cdouble> w) const
{
    std::vector<cdouble> out;
    out.reserve(components_.size());
    for (const auto& c : components_) {
        out.push_back(evaluate(c, w));
    }
    return out;
}

std::vector<Gaussian> HoloMap::apply_exact(std::span<const Gaussian> w) const
{
    std::vector<Gaussian> out;
    out.reserve(components_.size());
    for (const auto& c : components_) {
        out.push_back(evaluate_exact(c, w));
    }
    return out;
}

int HoloMap::degree() const
{
    int d = -1;
    for (const auto& c : components_) d = std::max(d, c.degree());
    return d;
}

Poly substitute(const Poly& p, const HoloMap& phi, int degree_cap)
{
    const int n = p.nvars();
    if (phi.nvars() != n) {
        throw ShapeError("substitution map has " + std::to_string(phi.nvars()) +
                         " components, polynomial has " + std::to_string(n) + " variables");
    }
    std::vector<Poly> conj_phi;
    conj_phi.reserve(n);
    for (int k = 0; k < n; ++k) conj_phi.push_back(conjugate(phi[k]));
    // Power caches, grown on demand.
    std::vector<std::vector<Poly>> holo_pows(n), anti_pows(n);
    auto power = [&](int k, int e, bool barred) -> const Poly& {
        auto& cache = barred ? anti_pows[k] : holo_pows[k];
        if (cache.empty()) {
            cache.push_back(Poly::constant(n, Gaussian(1)));
        }
        while (static_cast<int>(cache.size()) <= e) {
            cache.push_back(mul(cache.back(), barred ? conj_phi[k] : phi[k], degree_cap));
        }
        return cache[e];
    };

    Poly result(n);
    for (const auto& [md, c] : p.terms()) {
        Poly term = Poly::constant(n, c);
        for (int k = 0; k < n; ++k) {
            if (md.holo[k]) term = mul(term, power(k, md.holo[k], false), degree_cap);
            if (md.anti[k]) term = mul(term, power(k, md.anti[k], true), degree_cap);
        }
        result += term;
    }
    return result;
}

HoloMap compose(const HoloMap& outer, const HoloMap& inner, int degree_cap)
{
    if (outer.nvars() != inner.nvars()) {
        throw ShapeError("cannot compose maps of different dimension");
    }
    std::vector<Poly> comps;
    comps.reserve(outer.nvars());
    for (const auto& c : outer.components()) {
        comps.push_back(substitute(c, inner, degree_cap));
    }
    return HoloMap(std::move(comps));
}

// ---------------------------------------------------------------------------
// Formatting

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

using RationalFormat = std::string (*)(const Rational&);

std::string decimal_text(const Rational& q)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", to_double(q));
    return buf;
}

std::string gaussian_text(const Gaussian& c, RationalFormat fmt)
{
    if (c.is_real()) {
        return fmt(c.re);
    }
    if (sgn(c.re) == 0) {
        if (c.im == 1) return "i";
        if (c.im == -1) return "-i";
        return fmt(c.im) + "*i";
    }
    std::string s = "(" + fmt(c.re);
    if (sgn(c.im) < 0) {
        Rational a = -c.im;
        s += " - " + (a == 1 ? std::string("i") : fmt(a) + "*i");
    } else {
        s += " + " + (c.im == 1 ? std::string("i") : fmt(c.im) + "*i");
    }
    return s + ")";
}

std::string monomial_text(const Multidegree& md)
{
    std::string s;
    auto append = [&](const char* prefix, int k, int e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += prefix + std::to_string(k + 1);
        if (e > 1) s += "^" + std::to_string(e);
    };
    for (int k = 0; k < md.nvars(); ++k) append("z", k, md.holo[k]);
    for (int k = 0; k < md.nvars(); ++k) append("zb", k, md.anti[k]);
    return s;
}

std::string poly_text(const Poly& p, RationalFormat fmt)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [md, c] : p.terms()) {
        const std::string mono = monomial_text(md);
        bool negative = false;
        Gaussian coef = c;
        // Pull a leading minus out of real or purely imaginary coefficients.
        if ((c.is_real() && sgn(c.re) < 0) || (sgn(c.re) == 0 && sgn(c.im) < 0)) {
            negative = true;
            coef = -c;
        }
        const std::string ctext = gaussian_text(coef, fmt);
        std::string body;
        if (mono.empty()) {
            body = ctext;
        } else if (ctext == "1") {
            body = mono;
        } else {
            body = ctext + "*" + mono;
        }
        if (first) {
            out += negative ? "-" + body : body;
            first = false;
        } else {
            out += negative ? " - " + body : " + " + body;
        }
    }
    return out;
}

}  // namespace

std::string to_string(const Gaussian& c) { return gaussian_text(c, to_string); }

std::string to_string(const Poly& p) { return poly_text(p, to_string); }

std::string to_decimal_string(const Poly& p) { return poly_text(p, decimal_text); }

}  // namespace pscale
