#pragma once

// Exact sparse polynomials in z_1..z_n and their conjugates zb_1..zb_n with
// Gaussian-rational coefficients.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pscale/error.hpp"

namespace pscale {

using Rational = mpq_class;
using cdouble = std::complex<double>;

inline constexpr int kDefaultDegreeCap = 64;

/// Exact complex rational re + i*im.
/// Nearest binary64 value (ties to even); mpq_get_d truncates instead.
double to_double(const Rational& q);

struct Gaussian {
    Rational re;
    Rational im;

    Gaussian() = default;
    Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
    Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Gaussian(long r) : re(r) {}  // NOLINT(implicit)
    Gaussian(int r) : re(r) {}   // NOLINT(implicit)

    static Gaussian imag_unit() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Gaussian conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    cdouble to_complex() const { return {to_double(re), to_double(im)}; }
    double abs() const { return std::abs(to_complex()); }

    Gaussian operator-() const { return {-re, -im}; }
    Gaussian& operator+=(const Gaussian& o);
    Gaussian& operator-=(const Gaussian& o);
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o);

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend bool operator==(const Gaussian& a, const Gaussian& b)
    {
        return a.re == b.re && a.im == b.im;
    }
};

/// Exact conversion of a binary64 value (every finite double is a dyadic rational).
Rational to_rational(double x);
Gaussian to_gaussian(cdouble z);

/// Exact rational root, when one exists.
std::optional<Rational> rational_root(const Rational& x, unsigned int degree);

/// Exponents of z (holo) and zb (anti); both have length nvars.
struct Multidegree {
    std::vector<int> holo;
    std::vector<int> anti;

    Multidegree() = default;
    explicit Multidegree(int nvars) : holo(nvars, 0), anti(nvars, 0) {}
    Multidegree(std::vector<int> h, std::vector<int> a) : holo(std::move(h)), anti(std::move(a)) {}

    int nvars() const { return static_cast<int>(holo.size()); }
    int total() const;
    int holo_total() const;
    int anti_total() const;
    Multidegree swapped() const { return {anti, holo}; }

    friend bool operator==(const Multidegree&, const Multidegree&) = default;
};

/// Graded lexicographic: total degree first, then holo exponents, then anti exponents.
struct GradedLex {
    bool operator()(const Multidegree& a, const Multidegree& b) const;
};

class Poly {
public:
    using TermMap = std::map<Multidegree, Gaussian, GradedLex>;

    explicit Poly(int nvars = 0) : nvars_(nvars) {}

    static Poly constant(int nvars, const Gaussian& c);
    /// z_index (or zb_index when barred); index is 1-based.
    static Poly variable(int nvars, int index, bool barred = false);
    static Poly monomial(const Multidegree& md, const Gaussian& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /// Maximum total degree; -1 for the zero polynomial.
    int degree() const;
    Gaussian coeff(const Multidegree& md) const;

    /// No zb exponents anywhere.
    bool is_holomorphic() const;
    /// coeff(J,K) == conj(coeff(K,J)) for every term, i.e. real-valued on C^n.
    bool is_hermitian() const;

    /// Adds c to the coefficient of md, pruning zeros.
    void add_term(const Multidegree& md, const Gaussian& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator-() const;

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Gaussian& c, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    int nvars_;
    TermMap terms_;
};

Poly mul(const Poly& a, const Poly& b, int degree_cap = kDefaultDegreeCap);
Poly scale(const Poly& p, const Gaussian& c);
Poly pow(const Poly& p, int exponent, int degree_cap = kDefaultDegreeCap);
Poly conjugate(const Poly& p);

/// Formal d/dz_var, or d/dzb_var when barred. var is 1-based.
Poly wirtinger(const Poly& p, int var, bool barred);
/// d^2 P / dz_1 dzb_1 (a quarter of the Euclidean Laplacian in z_1).
Poly laplacian_z1(const Poly& p);

/// Terms of total degree d; with var_restricted, only terms built from z_var and zb_var.
Poly homogeneous_part(const Poly& p, int d, std::optional<int> var_restricted = std::nullopt);

/// Re-indexes a polynomial into a larger (or equal) variable count, keeping z_k as z_k.
Poly embed(const Poly& p, int nvars);
/// Terms that involve only z_var/zb_var, returned as a polynomial in one variable.
Poly univariate_part(const Poly& p, int var);

cdouble evaluate(const Poly& p, std::span<const cdouble> point);
Gaussian evaluate_exact(const Poly& p, std::span<const Gaussian> point);

/// Real-valued polynomial: Hermitian coefficient symmetry is checked on construction.
class RealPoly {
public:
    RealPoly() = default;
    explicit RealPoly(Poly p);

    const Poly& poly() const { return poly_; }
    int nvars() const { return poly_.nvars(); }
    int degree() const { return poly_.degree(); }
    bool is_zero() const { return poly_.is_zero(); }
    double evaluate(std::span<const cdouble> point) const { return pscale::evaluate(poly_, point).real(); }

    friend bool operator==(const RealPoly&, const RealPoly&) = default;

private:
    Poly poly_;
};

/// (P + conj P)/2, always Hermitian.
RealPoly real_part(const Poly& p);

/// Holomorphic polynomial self-map of C^n: z_k -> components[k-1](w).
class HoloMap {
public:
    HoloMap() = default;
    explicit HoloMap(std::vector<Poly> components);

    static HoloMap identity(int n);

    int nvars() const { return static_cast<int>(components_.size()); }
    const std::vector<Poly>& components() const { return components_; }
    const Poly& operator[](int k) const { return components_.at(k); }

    std::vector<cdouble> apply(std::span<const cdouble> w) const;
    std::vector<Gaussian> apply_exact(std::span<const Gaussian> w) const;
    int degree() const;

    friend bool operator==(const HoloMap&, const HoloMap&) = default;

private:
    std::vector<Poly> components_;
};

/// z_k -> phi_k, zb_k -> conj(phi_k).
Poly substitute(const Poly& p, const HoloMap& phi, int degree_cap = kDefaultDegreeCap);
/// (outer o inner)(w) = outer(inner(w)).
HoloMap compose(const HoloMap& outer, const HoloMap& inner, int degree_cap = kDefaultDegreeCap);

std::string to_string(const Rational& q);
std::string to_string(const Gaussian& c);
/// Expression text accepted by parse_poly.
std::string to_string(const Poly& p);
/// Coefficients rounded to 10 significant digits; for display only.
std::string to_decimal_string(const Poly& p);

}  // namespace pscale
