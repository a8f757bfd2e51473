#include "pscale/normalize.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace pscale {

BoundaryLift lift_to_boundary(const DomainSpec& spec, std::span<const Gaussian> eta)
{
    const int n = spec.n();
    if (static_cast<int>(eta.size()) != n) {
        throw ShapeError("point must have " + std::to_string(n) + " coordinates");
    }
    const Gaussian value = spec.rho_at(eta);
    if (sgn(value.re) >= 0) {
        throw HypothesisError("point is not interior: rho = " + to_string(value.re));
    }
    BoundaryLift out;
    out.epsilon = -value.re;
    out.eta_prime.assign(eta.begin(), eta.end());
    out.eta_prime[n - 1] += Gaussian(out.epsilon);
    return out;
}

namespace {

using Matrix = std::vector<std::vector<Gaussian>>;

Multidegree md_of(int n, std::initializer_list<std::pair<int, int>> holo,
                  std::initializer_list<std::pair<int, int>> anti)
{
    Multidegree md(n);
    for (auto [v, e] : holo) md.holo[v] += e;
    for (auto [v, e] : anti) md.anti[v] += e;
    return md;
}

/// Exact inverse by Gauss-Jordan elimination.
Matrix invert(Matrix a)
{
    const std::size_t d = a.size();
    Matrix inv(d, std::vector<Gaussian>(d));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = Gaussian(1);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && a[pivot][col].is_zero()) ++pivot;
        if (pivot == d) {
            throw HypothesisError("singular linear change of coordinates");
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Gaussian p = a[col][col];
        for (std::size_t k = 0; k < d; ++k) {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Gaussian f = a[r][col];
            for (std::size_t k = 0; k < d; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

/// Linear map acting on the block w_2..w_{n-1}: v_alpha = sum_beta M[alpha][beta] w_beta.
HoloMap block_linear_map(int n, const Matrix& M)
{
    std::vector<Poly> comps;
    for (int k = 1; k <= n; ++k) comps.push_back(Poly::variable(n, k));
    for (int a = 0; a < n - 2; ++a) {
        Poly c(n);
        for (int b = 0; b < n - 2; ++b) {
            c += scale(Poly::variable(n, b + 2), M[a][b]);
        }
        comps[a + 1] = c;
    }
    return HoloMap(std::move(comps));
}

class Normalizer {
public:
    Normalizer(const DomainSpec& spec, std::span<const Gaussian> eta, int m,
               const NormalizationOptions& opt)
        : n_(spec.n()), m_(m), opt_(opt), R_(spec.n()), phi_(HoloMap::identity(spec.n())),
          phi_inv_(HoloMap::identity(spec.n()))
    {
        base_.assign(eta.begin(), eta.end());
        translate(spec);
        align_gradient();
        normalize_levi_block();
        remove_levi_cross_terms();
        remove_harmonic_terms();
    }

    NormalizationResult finish() &&
    {
        NormalizationResult out;
        const Poly& R = R_;
        for (int j = 1; j < 2 * m_; ++j) {
            for (int k = 1; j + k <= 2 * m_; ++k) {
                out.a_table[{j, k}] = R.coeff(md_of(n_, {{0, j}}, {{0, k}}));
            }
        }
        for (int a = 1; a < n_ - 1; ++a) {
            for (int j = 1; j < m_; ++j) {
                for (int k = 1; j + k <= m_; ++k) {
                    out.b_table[{a + 1, j, k}] =
                        Gaussian(2) * R.coeff(md_of(n_, {{0, j}, {a, 1}}, {{0, k}}));
                }
            }
        }
        const double tol = exact_ ? 0.0 : opt_.inexact_tol;
        Poly rem = R - main_part(n_, out.a_table, out.b_table);
        if (!main_class_violations(rem, n_, m_, tol).empty() ||
            !unnormalized_low_order_terms(R, n_, m_, tol).empty()) {
            throw Error("normalization did not reach the normal form");
        }
        out.normalized = RealPoly(std::move(R_));
        out.remainder = RealPoly(std::move(rem));
        out.phi = std::move(phi_);
        out.phi_inv = std::move(phi_inv_);
        out.base_point = std::move(base_);
        out.m = m_;
        out.exact = exact_;
        return out;
    }

private:
    /// Current coordinates = step(new coordinates); step_inv is its inverse.
    void apply(const HoloMap& step, const HoloMap& step_inv)
    {
        R_ = substitute(R_, step, opt_.degree_cap);
        phi_inv_ = compose(phi_inv_, step, opt_.degree_cap);
        phi_ = compose(step_inv, phi_, opt_.degree_cap);
    }

    void translate(const DomainSpec& spec)
    {
        std::vector<Poly> fwd, inv;
        for (int k = 1; k <= n_; ++k) {
            const Poly v = Poly::variable(n_, k);
            fwd.push_back(v + Poly::constant(n_, base_[k - 1]));
            inv.push_back(v - Poly::constant(n_, base_[k - 1]));
        }
        const HoloMap T(std::move(fwd)), T_inv(std::move(inv));
        R_ = substitute(spec.rho().poly(), T, opt_.degree_cap) -
             Poly::constant(n_, spec.rho_at(base_));
        phi_inv_ = T;
        phi_ = T_inv;
    }

    /// Makes the holomorphic linear part of R equal to w_n / 2, i.e. Re w_n.
    void align_gradient()
    {
        const Gaussian cn = R_.coeff(md_of(n_, {{n_ - 1, 1}}, {}));
        if (!(cn == Gaussian(Rational(1, 2)))) {
            throw Error("defining function is not rigid in z_n");
        }
        Poly shift(n_);
        for (int k = 0; k < n_ - 1; ++k) {
            const Gaussian ck = R_.coeff(md_of(n_, {{k, 1}}, {}));
            shift += scale(Poly::variable(n_, k + 1), Gaussian(2) * ck);
        }
        if (shift.is_zero()) return;
        std::vector<Poly> fwd, inv;
        for (int k = 1; k <= n_; ++k) {
            fwd.push_back(Poly::variable(n_, k));
            inv.push_back(Poly::variable(n_, k));
        }
        fwd[n_ - 1] -= shift;
        inv[n_ - 1] += shift;
        apply(HoloMap(std::move(fwd)), HoloMap(std::move(inv)));
    }

    /// Makes the Hermitian block of w_alpha * wb_beta (2 <= alpha,beta <= n-1) the identity.
    void normalize_levi_block()
    {
        const int d = n_ - 2;
        if (d <= 0) return;
        Matrix L(d, std::vector<Gaussian>(d));
        bool identity = true;
        bool diagonal = true;
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                L[a][b] = R_.coeff(md_of(n_, {{a + 1, 1}}, {{b + 1, 1}}));
                const Gaussian expect = a == b ? Gaussian(1) : Gaussian(0);
                if (!(L[a][b] == expect)) identity = false;
                if (a != b && !L[a][b].is_zero()) diagonal = false;
            }
        }
        if (identity) return;

        Matrix M(d, std::vector<Gaussian>(d));
        bool exact_scaling = diagonal;
        if (diagonal) {
            for (int a = 0; a < d && exact_scaling; ++a) {
                if (!L[a][a].is_real() || sgn(L[a][a].re) <= 0) {
                    throw HypothesisError("Levi block over (w_2..w_{n-1}) is not positive definite");
                }
                auto root = rational_root(L[a][a].re, 2);
                if (!root) {
                    exact_scaling = false;
                } else {
                    M[a][a] = Gaussian(Rational(1 / *root));
                }
            }
        }
        if (!exact_scaling) {
            Eigen::MatrixXcd H(d, d);
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    // Quadratic form sum L_ab v_a vb_b has Hermitian matrix L^T.
                    H(b, a) = L[a][b].to_complex();
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
            const auto& ev = solver.eigenvalues();
            if (!(ev.minCoeff() > 1e-12 * std::max(1.0, ev.maxCoeff()))) {
                throw HypothesisError("Levi block over (w_2..w_{n-1}) is singular or indefinite");
            }
            const Eigen::MatrixXcd U = solver.eigenvectors();
            // v = U D^{-1/2} x turns sum L_ab v_a vb_b into |x|^2.
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    M[a][b] = to_gaussian(U(a, b) / std::sqrt(ev(b)));
                }
            }
            exact_ = false;
        }
        apply(block_linear_map(n_, M), block_linear_map(n_, invert(M)));
    }

    Gaussian cross_coeff(int alpha, int k) const
    {
        return R_.coeff(md_of(n_, {{alpha, 1}}, {{0, k}}));
    }

    /// Shears w_alpha -> w_alpha + q_alpha(w1) removing w_alpha * wb1^k for k <= m.
    void remove_levi_cross_terms()
    {
        if (n_ < 3) return;
        for (int pass = 0; pass < 4; ++pass) {
            bool changed = false;
            for (int k = 1; k <= m_; ++k) {
                std::vector<Poly> fwd, inv;
                for (int v = 1; v <= n_; ++v) {
                    fwd.push_back(Poly::variable(n_, v));
                    inv.push_back(Poly::variable(n_, v));
                }
                bool any = false;
                for (int a = 1; a < n_ - 1; ++a) {
                    const Gaussian c = cross_coeff(a, k);
                    if (c.is_zero()) continue;
                    const Poly q = scale(pow(Poly::variable(n_, 1), k), -c.conj());
                    fwd[a] += q;
                    inv[a] -= q;
                    any = true;
                }
                if (any) {
                    apply(HoloMap(std::move(fwd)), HoloMap(std::move(inv)));
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }

    /// Shear w_n -> w_n + h(w') cancelling harmonic terms of degree <= 2m.
    void remove_harmonic_terms()
    {
        Poly h(n_);
        for (const auto& [md, c] : R_.terms()) {
            if (md.anti_total() != 0 || md.holo[n_ - 1] != 0) continue;
            if (md.total() < 1 || md.total() > 2 * m_) continue;
            h.add_term(md, Gaussian(-2) * c);
        }
        if (h.is_zero()) return;
        std::vector<Poly> fwd, inv;
        for (int v = 1; v <= n_; ++v) {
            fwd.push_back(Poly::variable(n_, v));
            inv.push_back(Poly::variable(n_, v));
        }
        fwd[n_ - 1] += h;
        inv[n_ - 1] -= h;
        apply(HoloMap(std::move(fwd)), HoloMap(std::move(inv)));
    }

    int n_;
    int m_;
    NormalizationOptions opt_;
    Poly R_;
    HoloMap phi_;
    HoloMap phi_inv_;
    std::vector<Gaussian> base_;
    bool exact_ = true;
};

bool over_tol(const Gaussian& c, double tol)
{
    return tol == 0.0 ? !c.is_zero() : c.abs() > tol;
}

bool is_main_class(const Multidegree& md, int n, int m)
{
    const int total = md.total();
    // Linear w_n / wb_n.
    if (total == 1 && (md.holo[n - 1] == 1 || md.anti[n - 1] == 1)) return true;
    if (md.holo[n - 1] || md.anti[n - 1]) return false;

    int star_holo = 0, star_anti = 0;
    for (int a = 1; a < n - 1; ++a) {
        star_holo += md.holo[a];
        star_anti += md.anti[a];
    }
    const int j = md.holo[0];
    const int k = md.anti[0];
    if (star_holo == 0 && star_anti == 0) {
        return j > 0 && k > 0 && j + k <= 2 * m;
    }
    if (star_holo == 1 && star_anti == 1 && j == 0 && k == 0) {
        return true;  // w_alpha * wb_beta
    }
    if (star_holo + star_anti == 1) {
        return j > 0 && k > 0 && j + k <= m;
    }
    return false;
}

}  // namespace

NormalizationResult normalize_at(const DomainSpec& spec, std::span<const Gaussian> eta_prime, int m,
                                 const NormalizationOptions& options)
{
    const int n = spec.n();
    if (static_cast<int>(eta_prime.size()) != n) {
        throw ShapeError("boundary point must have " + std::to_string(n) + " coordinates");
    }
    if (m < 1) {
        throw Error("half-type m must be at least 1");
    }
    const Gaussian rho = spec.rho_at(eta_prime);
    if (!rho.is_zero()) {
        throw HypothesisError("point is not on the boundary: rho = " + to_string(rho));
    }
    double norm2 = 0;
    for (int k = 0; k < n - 1; ++k) norm2 += to_double(eta_prime[k].norm2());
    if (std::sqrt(norm2) > options.neighborhood_radius) {
        throw HypothesisError("boundary point lies outside the normalization neighborhood");
    }
    return Normalizer(spec, eta_prime, m, options).finish();
}

Poly main_part(int n, const ATable& a, const BTable& b)
{
    Poly out = real_part(Poly::variable(n, n)).poly();
    for (const auto& [jk, c] : a) {
        out.add_term(md_of(n, {{0, jk.first}}, {{0, jk.second}}), c);
    }
    for (int alpha = 1; alpha < n - 1; ++alpha) {
        out.add_term(md_of(n, {{alpha, 1}}, {{alpha, 1}}), Gaussian(1));
    }
    const Gaussian half(Rational(1, 2));
    for (const auto& [key, c] : b) {
        const auto [alpha, j, k] = key;
        // Re(c w1^j wb1^k w_alpha)
        out.add_term(md_of(n, {{0, j}, {alpha - 1, 1}}, {{0, k}}), half * c);
        out.add_term(md_of(n, {{0, k}}, {{0, j}, {alpha - 1, 1}}), half * c.conj());
    }
    return out;
}

std::vector<Multidegree> main_class_violations(const Poly& p, int n, int m, double tol)
{
    std::vector<Multidegree> out;
    for (const auto& [md, c] : p.terms()) {
        if (is_main_class(md, n, m) && over_tol(c, tol)) out.push_back(md);
    }
    return out;
}

std::vector<Multidegree> unnormalized_low_order_terms(const Poly& p, int n, int m, double tol)
{
    std::vector<Multidegree> out;
    for (const auto& [md, c] : p.terms()) {
        if (!over_tol(c, tol) || md.holo[n - 1] || md.anti[n - 1]) continue;
        const int total = md.total();
        if ((md.anti_total() == 0 || md.holo_total() == 0) && total >= 1 && total <= 2 * m) {
            out.push_back(md);
            continue;
        }
        int star_holo = 0, star_anti = 0;
        for (int a = 1; a < n - 1; ++a) {
            star_holo += md.holo[a];
            star_anti += md.anti[a];
        }
        const int j = md.holo[0];
        const int k = md.anti[0];
        const bool w_alpha_wb1 = star_holo == 1 && star_anti == 0 && j == 0 && k >= 1 && k <= m;
        const bool wb_alpha_w1 = star_holo == 0 && star_anti == 1 && k == 0 && j >= 1 && j <= m;
        if (w_alpha_wb1 || wb_alpha_w1) out.push_back(md);
    }
    return out;
}

}  // namespace pscale
