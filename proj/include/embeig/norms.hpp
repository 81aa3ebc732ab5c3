#pragma once

// Norm functionals: full-space L^p (as the integral int |V|^p), mixed
// L^p(r^{nu-1}dr; L^2 or L^inf over the sphere), Lorentz L^{nu,1}, the
// Mizohata-Takeuchi norm, the dyadic sum norm, and the eigenvalue-bound
// quotients built from them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "embeig/potentials.hpp"
#include "embeig/quadrature.hpp"

namespace embeig {

class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& functional, const std::string& condition)
        : std::runtime_error(functional + ": divergent (" + condition + ")"),
          condition_(condition)
    {
    }
    const std::string& condition() const { return condition_; }

  private:
    std::string condition_;
};

inline double sphere_area(int nu)
{
    if (nu < 1) throw std::invalid_argument("sphere_area: nu >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * nu) / std::tgamma(0.5 * nu);
}

struct NormReport {
    std::string functional;
    double value = 0.0;
    double error = 0.0;
    std::string note;  // e.g. maximization warnings
};

// Sampled ess-sup-over-sphere profile. Between grid points v is linear; below
// the first point v is constant v[0]; beyond the last point
// v(r) = v.back() * (r / r.back())^{tail_exponent} (no tail when v.back()==0).
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> v;
    int nu = 3;
    double tail_exponent = -2.0;

    void validate() const
    {
        if (r.size() != v.size() || r.size() < 2)
            throw std::invalid_argument("RadialProfile: need matching grids, >= 2 points");
        if (!(r.front() > 0.0)) throw std::invalid_argument("RadialProfile: r > 0");
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            if (!(r[i] < r[i + 1]))
                throw std::invalid_argument("RadialProfile: r strictly increasing");
        for (double x : v)
            if (!(x >= 0.0) || !std::isfinite(x))
                throw std::invalid_argument("RadialProfile: v finite and >= 0");
        if (nu < 2) throw std::invalid_argument("RadialProfile: nu >= 2");
    }

    bool has_tail() const { return v.back() > 0.0; }

    double value_at(double rr) const
    {
        if (rr <= r.front()) return v.front();
        if (rr >= r.back()) {
            if (!has_tail()) return 0.0;
            return v.back() * std::pow(rr / r.back(), tail_exponent);
        }
        auto it = std::upper_bound(r.begin(), r.end(), rr);
        std::size_t i = (std::size_t)(it - r.begin()) - 1;
        double t = (rr - r[i]) / (r[i + 1] - r[i]);
        return v[i] + t * (v[i + 1] - v[i]);
    }

    double vmax() const { return *std::max_element(v.begin(), v.end()); }
};

namespace norms_detail {

// int_a^b f(r) dr with a GL16/GL8 error estimate
template <class F>
QuadResult seg_quad(F&& f, double a, double b)
{
    QuadResult q;
    if (b <= a) return q;
    double c = integrate_gl(f, a, b, 8);
    q.value = integrate_gl(f, a, b, 16);
    q.error = std::abs(q.value - c);
    return q;
}

}  // namespace norms_detail

// ---------------------------------------------------------------------------
// full-space L^p integral: int_{R^nu} |V|^p dx

// radial profile: |S^{nu-1}| int_0^inf v(r)^p r^{nu-1} dr
inline NormReport lp_fullspace(const RadialProfile& prof, double p)
{
    prof.validate();
    if (!(p > 0.0)) throw std::invalid_argument("lp_fullspace: p > 0");
    if (prof.has_tail() && !(p * prof.tail_exponent + prof.nu < 0.0))
        throw DivergenceError("lp_fullspace", "tail: p*tail_exponent + nu >= 0");
    const int nu = prof.nu;
    QuadResult acc;
    auto f = [&](double rr) { return std::pow(prof.value_at(rr), p) * std::pow(rr, nu - 1); };
    QuadResult q0 = norms_detail::seg_quad(f, 0.0, prof.r.front());
    acc.value += q0.value;
    acc.error += q0.error;
    for (std::size_t i = 0; i + 1 < prof.r.size(); ++i) {
        QuadResult q = norms_detail::seg_quad(f, prof.r[i], prof.r[i + 1]);
        acc.value += q.value;
        acc.error += q.error;
    }
    if (prof.has_tail()) {
        double a = prof.tail_exponent;
        double rn = prof.r.back();
        acc.value += -std::pow(prof.v.back(), p) * std::pow(rn, nu) / (p * a + nu);
    }
    return {"lp_fullspace", sphere_area(nu) * acc.value, sphere_area(nu) * acc.error, ""};
}

// radial family: oscillation-aligned panels to K*max(1,n), envelope tail bound
inline NormReport lp_fullspace(const WvnField& field, double p, double domain_scale = 400.0)
{
    const WvnPotential& pp = field.params();
    if (!(p > pp.nu)) throw DivergenceError("lp_fullspace", "p <= nu at 1/(n+r) decay");
    const double R = domain_scale * std::max(1.0, pp.n);
    field.gcache().reserve(R + 1.0);
    const int nu = pp.nu;
    auto f = [&](double rr) {
        return std::pow(std::abs(field.potential(rr)), p) * std::pow(rr, nu - 1);
    };
    double val = 0.0;
    std::vector<double> edges = linear_edges(0.0, R, M_PI / 4.0);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) val += integrate_gl(f, edges[i], edges[i + 1], 8);
    // envelope tail: |V| <= C/(n+r) with C estimated over the last decade
    double c_emp = 0.0;
    for (int s = 0; s < 64; ++s) {
        double rr = R * (0.5 + 0.5 * (s + 0.5) / 64.0);
        c_emp = std::max(c_emp, std::abs(field.potential(rr)) * (pp.n + rr));
    }
    c_emp *= 1.3;
    // int_R^inf (n+r)^{-p} r^{nu-1} dr <= (1 + n/R)^{nu-1}-ish; use r <= (n+r)
    double tail = std::pow(c_emp, p) * std::pow(pp.n + R, nu - p) / (p - nu);
    return {"lp_fullspace", sphere_area(nu) * val, sphere_area(nu) * tail, ""};
}

// anisotropic family: 2 |S^{nu-2}| int_0^X int_0^S |V|^p s^{nu-2} ds dx1
inline NormReport lp_fullspace(const IjPotential& pot, double p, double domain_scale = 400.0)
{
    if (!(p > 0.5 * (pot.nu + 1)))
        throw DivergenceError("lp_fullspace", "p <= (nu+1)/2 at 1/(n+|x1|+s^2) decay");
    const double X = domain_scale * std::max(1.0, pot.n);
    const double S = 2.5 * std::sqrt(X);
    const int nu = pot.nu;
    // s panels: geometric-ish growth; x1 panels: quarter oscillation period
    std::vector<double> sedges{0.0};
    while (sedges.back() < S) sedges.push_back(sedges.back() + std::max(0.25, 0.06 * sedges.back()));
    const GaussRule& g8 = gauss_legendre(8);
    std::vector<double> snodes, sw;
    for (std::size_t i = 0; i + 1 < sedges.size(); ++i) {
        double mid = 0.5 * (sedges[i] + sedges[i + 1]), half = 0.5 * (sedges[i + 1] - sedges[i]);
        for (int k = 0; k < 8; ++k) {
            snodes.push_back(mid + half * g8.x[k]);
            sw.push_back(half * g8.w[k] * std::pow(mid + half * g8.x[k], nu - 2));
        }
    }
    double val = 0.0;
    std::vector<double> xedges = linear_edges(0.0, X, M_PI / 4.0);
    for (std::size_t i = 0; i + 1 < xedges.size(); ++i) {
        double mid = 0.5 * (xedges[i] + xedges[i + 1]), half = 0.5 * (xedges[i + 1] - xedges[i]);
        for (int k = 0; k < 8; ++k) {
            double x1 = mid + half * g8.x[k];
            double wk = half * g8.w[k];
            double inner = 0.0;
            for (std::size_t j = 0; j < snodes.size(); ++j)
                inner += sw[j] * std::pow(std::abs(ij_potential(pot, x1, snodes[j])), p);
            val += wk * inner;
        }
    }
    // envelope tail bound with empirical C over the far boundary
    double c_emp = 0.0;
    for (int s = 0; s < 48; ++s) {
        double x1 = X * (0.5 + 0.5 * (s + 0.5) / 48.0);
        c_emp = std::max(c_emp, std::abs(ij_potential(pot, x1, 1.0)) * (pot.n + x1 + 1.0));
        double ss = S * (0.5 + 0.5 * (s + 0.5) / 48.0);
        c_emp = std::max(c_emp,
                         std::abs(ij_potential(pot, 0.25 * X, ss)) * (pot.n + 0.25 * X + ss * ss));
    }
    c_emp *= 1.3;
    // int_X^inf dx int_0^inf (n+x+s^2)^{-p} s^{nu-2} ds  (Beta-function inner integral)
    double beta = 0.5 * std::tgamma(0.5 * (nu - 1)) * std::tgamma(p - 0.5 * (nu - 1))
                  / std::tgamma(p);
    double t1 = beta * std::pow(pot.n + X, 0.5 * (nu - 1) - p + 1.0) / (p - 0.5 * (nu - 1) - 1.0);
    // int_0^inf dx int_S^inf ... <= int_S s^{nu-2} (n+s^2)^{1-p}/(p-1) ds
    auto ftail2 = [&](double ss) {
        return std::pow(ss, nu - 2) * std::pow(pot.n + ss * ss, 1.0 - p) / (p - 1.0);
    };
    double t2 = integrate_gl(ftail2, S, 4.0 * S, 16) + integrate_gl(ftail2, 4.0 * S, 64.0 * S, 16);
    double tail = std::pow(c_emp, p) * (t1 + t2);
    double area = 2.0 * sphere_area(nu - 1);
    return {"lp_fullspace", area * val, area * tail, ""};
}

// ---------------------------------------------------------------------------
// mixed norms: int_0^inf inner(r)^p r^{nu-1} dr

enum class InnerNorm { L2_SPHERE, LINF_SPHERE };

// radial profile: inner is |S^{nu-1}|^{1/2} v (L2) or v (Linf)
inline NormReport mixed_norm(const RadialProfile& prof, double p, InnerNorm inner)
{
    NormReport base = lp_fullspace(prof, p);
    double scale = (inner == InnerNorm::L2_SPHERE)
                       ? std::pow(sphere_area(prof.nu), 0.5 * p)
                       : 1.0;
    scale /= sphere_area(prof.nu);
    return {"mixed_norm", base.value * scale, base.error * scale, ""};
}

namespace norms_detail {

// inner sphere functional for a function F(x1, s) of the reduced coordinates,
// at radius r, over the polar angle. F must be even in x1.
template <class F>
double inner_l2_sphere(F&& f, double r, int nu)
{
    // int_{S^{nu-1}} |F|^2 domega = 2 |S^{nu-2}| int_0^{pi/2} F(r cos, r sin)^2 sin^{nu-2}
    int npan = std::max(8, (int)std::ceil(r));
    auto g = [&](double th) {
        double val = f(r * std::cos(th), r * std::sin(th));
        return val * val * std::pow(std::sin(th), nu - 2);
    };
    double s = integrate_panels(g, linear_edges(0.0, 0.5 * M_PI, 0.5 * M_PI / npan), 8);
    return std::sqrt(2.0 * sphere_area(nu - 1) * s);
}

// dense scan + golden-section refinement; flags non-unimodal objectives
template <class F>
double inner_linf_sphere(F&& f, double r, bool* multimodal)
{
    const int N = 256;
    std::vector<double> vals(N + 1);
    int best = 0;
    for (int i = 0; i <= N; ++i) {
        double th = 0.5 * M_PI * i / N;
        vals[i] = std::abs(f(r * std::cos(th), r * std::sin(th)));
        if (vals[i] > vals[best]) best = i;
    }
    if (multimodal) {
        int peaks = 0;
        for (int i = 1; i < N; ++i)
            if (vals[i] >= vals[i - 1] && vals[i] > vals[i + 1]) ++peaks;
        if (peaks > 1) *multimodal = true;
    }
    double lo = 0.5 * M_PI * std::max(0, best - 1) / N;
    double hi = 0.5 * M_PI * std::min(N, best + 1) / N;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    auto h = [&](double th) { return std::abs(f(r * std::cos(th), r * std::sin(th))); };
    double fc = h(c), fd = h(d);
    for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = h(d);
        }
    }
    return std::max({vals[best], fc, fd});
}

}  // namespace norms_detail

// function of the reduced coordinates (x1, s), even in x1 (e.g. the
// anisotropic potential); outer radial quadrature to rmax + envelope tail
template <class F>
NormReport mixed_norm_2d(F&& f, double p, InnerNorm inner, int nu, double rmax,
                         double envelope_decay = 1.0)
{
    if (!(p * envelope_decay > 1.0))
        throw DivergenceError("mixed_norm", "outer integral: p * decay <= nu-dimensional rate");
    bool multimodal = false;
    auto outer = [&](double r) {
        double in = (inner == InnerNorm::L2_SPHERE)
                        ? norms_detail::inner_l2_sphere(f, r, nu)
                        : norms_detail::inner_linf_sphere(f, r, &multimodal);
        return std::pow(in, p) * std::pow(r, nu - 1);
    };
    double val = 0.0;
    std::vector<double> edges = linear_edges(1e-6, rmax, M_PI / 4.0);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) val += integrate_gl(outer, edges[i], edges[i + 1], 6);
    double last = outer(rmax);
    double tail_est = last * rmax / std::max(1.0, (p * envelope_decay - nu));
    NormReport rep{"mixed_norm", val, tail_est, ""};
    if (multimodal) rep.note = "angular objective non-unimodal; dense-scan maximum used";
    return rep;
}

inline NormReport mixed_norm(const IjPotential& pot, double p, InnerNorm inner,
                             double domain_scale = 60.0)
{
    double rmax = domain_scale * std::max(1.0, pot.n);
    return mixed_norm_2d([&](double x1, double s) { return ij_potential(pot, x1, s); }, p,
                         inner, pot.nu, rmax, 1.0);
}

// ---------------------------------------------------------------------------
// Lorentz L^{nu,1}: int_0^inf |{v > tau}|_nu^{1/nu} dtau

namespace norms_detail {

// nu-measure |S^{nu-1}| int r^{nu-1} dr of the superlevel set {v > tau}
inline double superlevel_measure(const RadialProfile& prof, double tau)
{
    if (tau < 0.0) throw std::invalid_argument("superlevel_measure: tau >= 0");
    const int nu = prof.nu;
    auto shell = [nu](double a, double b) {
        return (std::pow(b, nu) - std::pow(a, nu)) / nu;
    };
    double m = 0.0;
    if (prof.v.front() > tau) m += shell(0.0, prof.r.front());
    for (std::size_t i = 0; i + 1 < prof.r.size(); ++i) {
        double va = prof.v[i], vb = prof.v[i + 1];
        double ra = prof.r[i], rb = prof.r[i + 1];
        if (va > tau && vb > tau) m += shell(ra, rb);
        else if (va > tau || vb > tau) {
            double rc = ra + (tau - va) * (rb - ra) / (vb - va);
            if (va > tau) m += shell(ra, rc);
            else m += shell(rc, rb);
        }
    }
    if (prof.has_tail() && tau < prof.v.back() && tau > 0.0) {
        double rtau = prof.r.back() * std::pow(tau / prof.v.back(), 1.0 / prof.tail_exponent);
        m += shell(prof.r.back(), rtau);
    }
    return sphere_area(nu) * m;
}

}  // namespace norms_detail

inline NormReport lorentz_nu1(const RadialProfile& prof)
{
    prof.validate();
    if (prof.has_tail() && !(prof.tail_exponent < -1.0))
        throw DivergenceError("lorentz_nu1", "tail decays no faster than r^{-1}");
    const int nu = prof.nu;
    auto f = [&](double tau) {
        return std::pow(norms_detail::superlevel_measure(prof, tau), 1.0 / nu);
    };
    // integrate over tau with panels at the profile's level values
    std::set<double> lv(prof.v.begin(), prof.v.end());
    lv.insert(0.0);
    std::vector<double> levels(lv.begin(), lv.end());
    QuadResult acc;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        double a = levels[i], b = levels[i + 1];
        if (!(b > a)) continue;
        if (i == 0 && prof.has_tail()) {
            // graded panels toward tau=0 where m^{1/nu} ~ tau^{1/tail}
            std::vector<double> ge = graded_edges(0.0, b, b * 1e-9);
            for (std::size_t k = 0; k + 1 < ge.size(); ++k) {
                QuadResult q = norms_detail::seg_quad(f, ge[k], ge[k + 1]);
                acc.value += q.value;
                acc.error += q.error;
            }
            // analytic remainder below the smallest graded edge
            double delta = ge.size() >= 2 ? ge[1] : 0.0;
            if (delta > 0.0) {
                double a_t = prof.tail_exponent;
                double lead = std::pow(sphere_area(nu) / nu, 1.0 / nu) * prof.r.back()
                              * std::pow(1.0 / prof.v.back(), 1.0 / a_t);
                double expval = 1.0 + 1.0 / a_t;  // in (0,1) for a_t < -1
                acc.value += lead * std::pow(delta, expval) / expval;
                acc.error += 0.05 * lead * std::pow(delta, expval) / expval;
            }
        } else {
            QuadResult q = norms_detail::seg_quad(f, a, b);
            acc.value += q.value;
            acc.error += q.error;
        }
    }
    return {"lorentz_nu1", acc.value, acc.error, ""};
}

// ---------------------------------------------------------------------------
// Mizohata-Takeuchi norm: sup_R int_R^inf v(r) r (r^2-R^2)^{-1/2} dr

namespace norms_detail {

// one R-slice via r = R cosh t (kills the inverse square root)
inline double mt_slice(const RadialProfile& prof, double R)
{
    std::vector<double> tknots{0.0};
    if (prof.r.front() > R) tknots.push_back(std::acosh(prof.r.front() / R));
    for (double rr : prof.r)
        if (rr > R) tknots.push_back(std::acosh(rr / R));
    std::sort(tknots.begin(), tknots.end());
    tknots.erase(std::unique(tknots.begin(), tknots.end()), tknots.end());
    auto f = [&](double t) {
        double rr = R * std::cosh(t);
        return prof.value_at(rr) * R * std::cosh(t);
    };
    double val = 0.0;
    for (std::size_t i = 0; i + 1 < tknots.size(); ++i) {
        // subdivide wide panels
        std::vector<double> e = linear_edges(tknots[i], tknots[i + 1], 0.5);
        for (std::size_t k = 0; k + 1 < e.size(); ++k) val += integrate_gl(f, e[k], e[k + 1], 10);
    }
    // tail in t beyond the grid end: integrand ~ e^{(tail+1) t}
    if (prof.has_tail()) {
        double t0 = tknots.back();
        for (int k = 0; k < 400; ++k) {
            double inc = integrate_gl(f, t0, t0 + 0.5, 10);
            val += inc;
            t0 += 0.5;
            if (inc < 1e-14 * std::max(val, 1e-300)) break;
        }
    }
    return val;
}

}  // namespace norms_detail

inline NormReport mt_norm(const RadialProfile& prof)
{
    prof.validate();
    if (prof.has_tail() && !(prof.tail_exponent < -1.0))
        throw DivergenceError("mt_norm", "v r / sqrt(r^2-R^2) not integrable at infinity");
    // R -> 0 limit: plain int_0^inf v dr
    double r0lim = prof.v.front() * prof.r.front();
    for (std::size_t i = 0; i + 1 < prof.r.size(); ++i)
        r0lim += 0.5 * (prof.v[i] + prof.v[i + 1]) * (prof.r[i + 1] - prof.r[i]);
    if (prof.has_tail())
        r0lim += prof.v.back() * prof.r.back() / (-prof.tail_exponent - 1.0);
    double best = r0lim;
    // 60 log-spaced R per decade from r_min/100 to r_max
    double lo = prof.r.front() * 1e-2, hi = prof.r.back();
    int nper = 60;
    int nR = (int)std::ceil(std::log10(hi / lo) * nper);
    for (int i = 0; i <= nR; ++i) {
        double R = lo * std::pow(hi / lo, (double)i / nR);
        best = std::max(best, norms_detail::mt_slice(prof, R));
    }
    return {"mt_norm", best, 1e-8 * best, ""};
}

// ---------------------------------------------------------------------------
// dyadic sum norm: sum_j ( int_{2^j}^{2^{j+1}} v^p r^{p-1} dr )^{1/p}, p in (2, inf]

inline NormReport dyadic_sum_norm(const RadialProfile& prof, double p)
{
    prof.validate();
    const bool pinf = std::isinf(p);
    if (!pinf && !(p > 2.0)) throw std::invalid_argument("dyadic_sum_norm: p in (2, inf]");
    if (prof.has_tail() && !(prof.tail_exponent < -1.0))
        throw DivergenceError("dyadic_sum_norm", "upper dyadic blocks not summable");
    const double r0 = prof.r.front(), rn = prof.r.back();
    const int jmin = (int)std::floor(std::log2(r0));
    const int jmax = (int)std::ceil(std::log2(rn));
    double total = 0.0;
    // analytic sum of flat blocks fully below the grid (v = v0): blocks j < jmin
    if (prof.v.front() > 0.0) {
        double v0 = prof.v.front();
        if (pinf) {
            total += v0 * std::pow(2.0, jmin + 1);  // sum_{j<jmin} v0 2^{j+1}
        } else {
            double c = std::pow((std::pow(2.0, p) - 1.0) / p, 1.0 / p);
            total += v0 * c * std::pow(2.0, jmin);  // geometric sum ratio 1/2
        }
    }
    // analytic sum of tail blocks fully above the grid: blocks j >= jmax
    if (prof.has_tail()) {
        double a = prof.tail_exponent;
        double amp = prof.v.back() * std::pow(rn, -a);
        double ratio = std::pow(2.0, a + 1.0);  // < 1
        double first;
        if (pinf) {
            first = amp * std::pow(2.0, jmax * (a + 1.0));  // sup at left edge
        } else {
            double c = std::pow((std::pow(2.0, p * (a + 1.0)) - 1.0) / (p * (a + 1.0)), 1.0 / p);
            first = amp * c * std::pow(2.0, jmax * (a + 1.0));
        }
        total += first / (1.0 - ratio);
    }
    // middle blocks: numeric
    double err = 0.0;
    for (int j = jmin; j < jmax; ++j) {
        double a = std::pow(2.0, j), b = std::pow(2.0, j + 1);
        // split at grid knots inside the block
        std::vector<double> cuts{a, b};
        for (double rr : prof.r)
            if (rr > a && rr < b) cuts.push_back(rr);
        std::sort(cuts.begin(), cuts.end());
        if (pinf) {
            double blk = 0.0;
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                double x0 = cuts[k], x1 = cuts[k + 1];
                blk = std::max({blk, x0 * prof.value_at(x0), x1 * prof.value_at(x1)});
                // interior extremum of the quadratic r*(alpha + beta r)
                double v0 = prof.value_at(x0), v1 = prof.value_at(x1);
                double beta = (v1 - v0) / (x1 - x0);
                if (beta != 0.0) {
                    double alpha = v0 - beta * x0;
                    double rs = -alpha / (2.0 * beta);
                    if (rs > x0 && rs < x1) blk = std::max(blk, rs * prof.value_at(rs));
                }
            }
            total += blk;
        } else {
            QuadResult blk;
            auto f = [&](double rr) {
                return std::pow(prof.value_at(rr), p) * std::pow(rr, p - 1.0);
            };
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                QuadResult q = norms_detail::seg_quad(f, cuts[k], cuts[k + 1]);
                blk.value += q.value;
                blk.error += q.error;
            }
            if (blk.value > 0.0) {
                total += std::pow(blk.value, 1.0 / p);
                err += std::pow(blk.value, 1.0 / p - 1.0) * blk.error / p;
            }
        }
    }
    return {"dyadic_sum_norm", total, err, ""};
}

// ---------------------------------------------------------------------------
// eigenvalue-bound quotients

// |E|^gamma / norm_value: the empirical candidate for the constant in
// |E|^gamma <= C int |V|^{gamma+nu/2}
inline double keller_quotient(std::complex<double> E, double norm_value, double gamma)
{
    if (!(norm_value > 0.0)) throw std::invalid_argument("keller_quotient: norm_value > 0");
    double a = std::abs(E);
    if (a == 0.0) return 0.0;
    return std::pow(a, gamma) / norm_value;
}

// |E|^{-gamma1} N1 + |E|^{-gamma2} N2 (left side of the two-exponent bound)
inline double split_bound_quotient(std::complex<double> E, double norm1, double gamma1,
                                   double norm2, double gamma2)
{
    double a = std::abs(E);
    if (!(a > 0.0)) throw std::invalid_argument("split_bound_quotient: E != 0");
    return std::pow(a, -gamma1) * norm1 + std::pow(a, -gamma2) * norm2;
}

// ---------------------------------------------------------------------------
// decay slope of log ||V_n||_p vs log n

struct DecaySlope {
    std::vector<double> n;
    std::vector<double> norm;  // (int |V_n|^p)^{1/p}
    double slope = 0.0;
};

enum class Family { IJ, WVN };

inline DecaySlope decay_slope(Family fam, int nu, double alpha, double p,
                              const std::vector<double>& ns, double domain_scale = 400.0)
{
    DecaySlope out;
    std::vector<double> lx, ly;
    for (double n : ns) {
        NormReport rep = (fam == Family::IJ)
                             ? lp_fullspace(IjPotential(nu, n, alpha), p, domain_scale)
                             : lp_fullspace(WvnField(WvnPotential(nu, n, alpha),
                                                     domain_scale * std::max(1.0, n)),
                                            p, domain_scale);
        double nrm = std::pow(rep.value, 1.0 / p);
        out.n.push_back(n);
        out.norm.push_back(nrm);
        lx.push_back(std::log(n));
        ly.push_back(std::log(nrm));
    }
    out.slope = ls_slope(lx, ly);
    return out;
}

}  // namespace embeig
