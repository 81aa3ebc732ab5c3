#pragma once

// The two counterexample families with embedded eigenvalue 1:
//   - anisotropic family on R^nu, decay 1/(n + |x1| + |x'|^2), eigenfunction
//     w(x) sin x1
//   - radial family on R^nu, decay 1/(n + |x|), eigenfunction phi(r) w(r)
// plus finite-difference residual verification of (-Delta + V - 1) psi = 0.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "embeig/bessel.hpp"
#include "embeig/quadrature.hpp"

namespace embeig {

// ---------------------------------------------------------------------------
// anisotropic (IJ) family

struct IjPotential {
    int nu;
    double n;
    double alpha;
    IjPotential(int nu_, double n_, double alpha_) : nu(nu_), n(n_), alpha(alpha_)
    {
        if (nu < 2) throw std::invalid_argument("IjPotential: nu >= 2 required");
        if (!(n >= 1.0)) throw std::invalid_argument("IjPotential: n >= 1 required");
        if (!(alpha > nu / 4.0))
            throw std::invalid_argument("IjPotential: alpha > nu/4 required for L^2");
    }
};

struct ReducedPoint {
    double x1 = 0.0;  // first coordinate
    double s = 0.0;   // |x'| transverse radius
};

inline double ij_g(double x1) { return 2.0 * x1 - std::sin(2.0 * x1); }
inline double ij_g_prime(double x1) { return 2.0 - 2.0 * std::cos(2.0 * x1); }
inline double ij_g_second(double x1) { return 4.0 * std::sin(2.0 * x1); }

inline double ij_m(const IjPotential& p, double x1, double s)
{
    const double g = ij_g(x1);
    return p.n * p.n + g * g + s * s * s * s;
}

inline double ij_w(const IjPotential& p, double x1, double s)
{
    return std::pow(ij_m(p, x1, s), -p.alpha);
}

// g' cot x1 is evaluated as 4 sin x1 cos x1 = 2 sin 2x1 (removable singularity).
inline double ij_potential(const IjPotential& p, double x1, double s)
{
    const double a = p.alpha;
    const double g = ij_g(x1), gp = ij_g_prime(x1), gpp = ij_g_second(x1);
    const double s2 = s * s;
    const double m = p.n * p.n + g * g + s2 * s2;
    const double t1 = -(4.0 * a / m) * g * (2.0 * std::sin(2.0 * x1));
    const double t2 = (4.0 * a * (a + 1.0) / (m * m)) * (g * g * gp * gp + 4.0 * s2 * s2 * s2);
    const double t3 = -(2.0 * a / m) * (gp * gp + g * gpp + 2.0 * (p.nu + 1.0) * s2);
    return t1 + t2 + t3;
}

inline double ij_eigenfunction(const IjPotential& p, double x1, double s)
{
    return ij_w(p, x1, s) * std::sin(x1);
}

inline double ij_potential(const IjPotential& p, const ReducedPoint& pt)
{
    return ij_potential(p, pt.x1, pt.s);
}
inline double ij_eigenfunction(const IjPotential& p, const ReducedPoint& pt)
{
    return ij_eigenfunction(p, pt.x1, pt.s);
}

// ---------------------------------------------------------------------------
// radial (WvN) family

struct WvnPotential {
    int nu;
    double n;
    double alpha;
    WvnPotential(int nu_, double n_, double alpha_) : nu(nu_), n(n_), alpha(alpha_)
    {
        if (nu < 1) throw std::invalid_argument("WvnPotential: nu >= 1 required");
        if (!(n >= 1.0)) throw std::invalid_argument("WvnPotential: n >= 1 required");
        if (!(alpha > nu / 4.0))
            throw std::invalid_argument("WvnPotential: alpha > nu/4 required for L^2");
    }
};

// phi(r) = r^{-(nu-2)/2} J_{(nu-2)/2}(r), the regular radial solution of
// -Delta phi = phi; phi(0) = 2^{-(nu-2)/2}/Gamma(nu/2).
inline double wvn_phi(int nu, double r)
{
    if (nu < 2) throw std::invalid_argument("wvn_phi: nu >= 2");
    const double m = 0.5 * (nu - 2);
    if (r <= 0.0) return std::pow(2.0, -m) / std::tgamma(0.5 * nu);
    if (r < 1e-7) {
        // leading series: phi = 2^{-m}/Gamma(nu/2) (1 - r^2/(2 nu) + ...)
        return std::pow(2.0, -m) / std::tgamma(0.5 * nu) * (1.0 - r * r / (2.0 * nu));
    }
    return std::pow(r, -m) * bessel_j(Order(m), r).value;
}

// phi'(r) = -r^{-(nu-2)/2} J_{(nu-2)/2 + 1}(r)
inline double wvn_phi_prime(int nu, double r)
{
    if (nu < 2) throw std::invalid_argument("wvn_phi_prime: nu >= 2");
    const double m = 0.5 * (nu - 2);
    if (r <= 0.0) return 0.0;
    if (r < 1e-7)
        return -std::pow(2.0, -m) / std::tgamma(0.5 * nu) * (r / nu);
    return -std::pow(r, -m) * bessel_j(Order(m + 1.0), r).value;
}

// Cumulative g(r) = int_0^r J_{(nu-2)/2}(s)^2 s ds on a knot cache; repeated
// evaluations cost one short quadrature from the nearest knot below r.
class GFunction {
  public:
    explicit GFunction(int nu, double rmax_hint = 64.0)
        : m_(0.5 * (nu - 2)), knot_h_(0.5)
    {
        if (nu < 2) throw std::invalid_argument("GFunction: nu >= 2");
        knots_.push_back(0.0);
        reserve(rmax_hint);
    }

    // extend the knot table; not safe against concurrent value() calls
    void reserve(double rmax)
    {
        while (knot_h_ * (double)(knots_.size() - 1) < rmax) {
            double a = knot_h_ * (double)(knots_.size() - 1);
            knots_.push_back(knots_.back() + segment(a, a + knot_h_));
        }
    }

    double value(double r) const
    {
        if (r <= 0.0) return 0.0;
        std::size_t i = (std::size_t)(r / knot_h_);
        if (i >= knots_.size()) {
            const_cast<GFunction*>(this)->reserve(r + knot_h_);
            i = (std::size_t)(r / knot_h_);
        }
        double a = knot_h_ * (double)i;
        return knots_[i] + segment(a, r);
    }

    double order() const { return m_; }

  private:
    double segment(double a, double b) const
    {
        if (b <= a) return 0.0;
        return integrate_gl(
            [this](double s) {
                if (s <= 0.0) return 0.0;
                double j = bessel_j(Order(m_), s).value;
                return j * j * s;
            },
            a, b, 16);
    }

    double m_;
    double knot_h_;
    std::vector<double> knots_;
};

inline double wvn_g(int nu, double r, const GFunction& cache)
{
    (void)nu;
    return cache.value(r);
}

// Field evaluator owning the g cache. For nu = 1 the radial nu = 3
// construction is evaluated at |x| (even extension of V, odd of r psi).
class WvnField {
  public:
    explicit WvnField(const WvnPotential& p, double rmax_hint = 64.0)
        : p_(p), nu_eff_(p.nu == 1 ? 3 : p.nu), g_(nu_eff_, rmax_hint)
    {
    }

    const WvnPotential& params() const { return p_; }
    int effective_nu() const { return nu_eff_; }
    GFunction& gcache() const { return g_; }

    double g(double r) const { return g_.value(std::abs(r)); }

    double potential(double r) const
    {
        r = std::abs(r);
        if (r == 0.0) r = 1e-12;
        const double a = p_.alpha;
        const double m = 0.5 * (nu_eff_ - 2);
        BesselJY b = bessel_jy(Order(m), r);
        const double gv = g_.value(r);
        const double gp = b.j * b.j * r;                    // g' = r J^2
        const double gpp = b.j * b.j + 2.0 * r * b.j * b.jp;  // also (r^{nu-1} phi^2)'
        const double mn = p_.n * p_.n + gv * gv;
        return 4.0 * a * (a + 1.0) / (mn * mn) * gv * gv * gp * gp
               - (2.0 * a / mn) * (gp * gp + 2.0 * gv * gpp);
    }

    double eigenfunction(double r) const
    {
        r = std::abs(r);
        const double gv = g_.value(r);
        const double w = std::pow(p_.n * p_.n + gv * gv, -p_.alpha);
        return wvn_phi(nu_eff_, r) * w;
    }

  private:
    WvnPotential p_;
    int nu_eff_;
    mutable GFunction g_;
};

inline double wvn_potential(const WvnField& f, double r) { return f.potential(r); }
inline double wvn_eigenfunction(const WvnField& f, double r) { return f.eigenfunction(r); }

// ---------------------------------------------------------------------------
// finite-difference residual verification

struct ResidualNorms {
    double max_rel = 0.0;
    double l2_rel = 0.0;
};

struct RatioTest {
    ResidualNorms coarse;  // at h
    ResidualNorms fine;    // at h/2
    double ratio = 0.0;    // l2 coarse / l2 fine; ~4 for a second-order scheme
    bool ok = false;       // ratio within [3.5, 4.5]
};

// Radial operator (-psi'' - (nu-1)/r psi' + (V-1) psi) on a half-offset grid
// r_j = (j+1/2)h, with even reflection at the origin. psi_scale checks the
// scale invariance of the relative residual.
inline ResidualNorms residual_wvn(const WvnField& f, double rmax, double h,
                                  double psi_scale = 1.0)
{
    if (!(h > 0.0)) throw std::invalid_argument("residual_wvn: h > 0");
    const int nu = f.params().nu;
    if (nu == 1) {
        // 1D: u(x) = x phi(|x|) w(|x|) extended oddly; V extended evenly
        const int J = (int)std::floor(rmax / h);
        std::vector<double> u(J + 1), V(J + 1);
        for (int j = 0; j <= J; ++j) {
            double x = (j + 0.5) * h;
            u[j] = psi_scale * x * f.eigenfunction(x);
            V[j] = f.potential(x);
        }
        double maxr = 0.0, l2r = 0.0, maxu = 0.0, l2u = 0.0;
        for (int j = 0; j + 1 <= J; ++j) {
            double um = (j == 0) ? -u[0] : u[j - 1];  // odd reflection
            double lap = (u[j + 1] - 2.0 * u[j] + um) / (h * h);
            double res = -lap + (V[j] - 1.0) * u[j];
            maxr = std::max(maxr, std::abs(res));
            l2r += res * res;
            maxu = std::max(maxu, std::abs(u[j]));
            l2u += u[j] * u[j];
        }
        return {maxr / maxu, std::sqrt(l2r / l2u)};
    }
    const int J = (int)std::floor(rmax / h);
    std::vector<double> psi(J + 1), V(J + 1), r(J + 1);
    for (int j = 0; j <= J; ++j) {
        r[j] = (j + 0.5) * h;
        psi[j] = psi_scale * f.eigenfunction(r[j]);
        V[j] = f.potential(r[j]);
    }
    double maxr = 0.0, l2r = 0.0, maxp = 0.0, l2p = 0.0;
    for (int j = 0; j + 1 <= J; ++j) {
        double pm = (j == 0) ? psi[0] : psi[j - 1];  // even reflection through 0
        double lap = (psi[j + 1] - 2.0 * psi[j] + pm) / (h * h);
        double der = (psi[j + 1] - pm) / (2.0 * h);
        double res = -lap - (nu - 1.0) / r[j] * der + (V[j] - 1.0) * psi[j];
        maxr = std::max(maxr, std::abs(res));
        l2r += res * res;
        maxp = std::max(maxp, std::abs(psi[j]));
        l2p += psi[j] * psi[j];
    }
    return {maxr / maxp, std::sqrt(l2r / l2p)};
}

// Reduced 2D operator on (x1, s): -(Dxx + Dss + (nu-2)/s Ds) + (V-1),
// s on a half-offset grid with even reflection.
inline ResidualNorms residual_ij(const IjPotential& p, double x1max, double smax, double h,
                                 double psi_scale = 1.0)
{
    if (!(h > 0.0)) throw std::invalid_argument("residual_ij: h > 0");
    const int nx = 2 * (int)std::floor(x1max / h) + 1;
    const int ns = (int)std::floor(smax / h);
    std::vector<double> psi((std::size_t)nx * ns), V((std::size_t)nx * ns);
    std::vector<double> sg(ns);
    for (int j = 0; j < ns; ++j) sg[j] = (j + 0.5) * h;
    for (int i = 0; i < nx; ++i) {
        double x1 = -x1max + i * h;
        for (int j = 0; j < ns; ++j) {
            psi[(std::size_t)i * ns + j] = psi_scale * ij_eigenfunction(p, x1, sg[j]);
            V[(std::size_t)i * ns + j] = ij_potential(p, x1, sg[j]);
        }
    }
    auto at = [&](int i, int j) { return psi[(std::size_t)i * ns + j]; };
    double maxr = 0.0, l2r = 0.0, maxp = 0.0, l2p = 0.0;
    for (int i = 1; i + 1 < nx; ++i) {
        for (int j = 0; j + 1 < ns; ++j) {
            double pm = (j == 0) ? at(i, 0) : at(i, j - 1);
            double lap = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (h * h)
                         + (at(i, j + 1) - 2.0 * at(i, j) + pm) / (h * h);
            double ds = (at(i, j + 1) - pm) / (2.0 * h);
            double res = -lap - (p.nu - 2.0) / sg[j] * ds
                         + (V[(std::size_t)i * ns + j] - 1.0) * at(i, j);
            maxr = std::max(maxr, std::abs(res));
            l2r += res * res;
            maxp = std::max(maxp, std::abs(at(i, j)));
            l2p += at(i, j) * at(i, j);
        }
    }
    return {maxr / maxp, std::sqrt(l2r / l2p)};
}

inline RatioTest ratio_test_wvn(const WvnField& f, double rmax, double h)
{
    RatioTest t;
    t.coarse = residual_wvn(f, rmax, h);
    t.fine = residual_wvn(f, rmax, 0.5 * h);
    t.ratio = t.coarse.l2_rel / t.fine.l2_rel;
    t.ok = (t.ratio >= 3.5 && t.ratio <= 4.5);
    return t;
}

inline RatioTest ratio_test_ij(const IjPotential& p, double x1max, double smax, double h)
{
    RatioTest t;
    t.coarse = residual_ij(p, x1max, smax, h);
    t.fine = residual_ij(p, x1max, smax, 0.5 * h);
    t.ratio = t.coarse.l2_rel / t.fine.l2_rel;
    t.ok = (t.ratio >= 3.5 && t.ratio <= 4.5);
    return t;
}

// Default decay exponent used when one is not supplied: safely inside L^2.
inline double default_alpha(int nu) { return std::max(nu / 4.0 + 0.5, 1.0); }

}  // namespace embeig
