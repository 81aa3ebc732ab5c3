#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace embeig {

// Gauss-Legendre rule on [-1,1]. Nodes by Newton iteration on P_n; cached per order.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline const GaussRule& gauss_legendre(int n)
{
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1 || n > 200) throw std::invalid_argument("gauss_legendre: order out of range");

    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-16) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

template <class F>
double integrate_gl(F&& f, double a, double b, int n)
{
    const GaussRule& g = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += g.w[i] * f(mid + half * g.x[i]);
    return s * half;
}

// Composite rule over explicit panel edges.
template <class F>
double integrate_panels(F&& f, const std::vector<double>& edges, int n)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        s += integrate_gl(f, edges[i], edges[i + 1], n);
    return s;
}

inline std::vector<double> linear_edges(double a, double b, double max_width)
{
    if (!(b > a)) return {a, a};
    int np = std::max(1, (int)std::ceil((b - a) / max_width));
    std::vector<double> e(np + 1);
    for (int i = 0; i <= np; ++i) e[i] = a + (b - a) * i / np;
    return e;
}

// Geometrically graded edges from b down toward a>=0, ratio 2 per panel,
// stopping at width `floor_width`. Returned ascending, starting at `a`.
inline std::vector<double> graded_edges(double a, double b, double floor_width)
{
    std::vector<double> e{b};
    double hi = b;
    while (hi - a > floor_width) {
        double lo = a + 0.5 * (hi - a);
        e.push_back(lo);
        hi = lo;
    }
    e.push_back(a);
    std::reverse(e.begin(), e.end());
    return e;
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {
template <class F>
void adapt_rec(F& f, double a, double b, double tol, int depth, QuadResult& out)
{
    double c = integrate_gl(f, a, b, 8);
    double fine = integrate_gl(f, a, 0.5 * (a + b), 8) + integrate_gl(f, 0.5 * (a + b), b, 8);
    double err = std::abs(fine - c);
    if (err < tol || depth > 48) {
        out.value += fine;
        out.error += err;
        return;
    }
    adapt_rec(f, a, 0.5 * (a + b), 0.5 * tol, depth + 1, out);
    adapt_rec(f, 0.5 * (a + b), b, 0.5 * tol, depth + 1, out);
}
}  // namespace detail

// Adaptive bisection with an embedded GL8 / 2xGL8 error estimate.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol)
{
    QuadResult out;
    if (b <= a) return out;
    detail::adapt_rec(f, a, b, abs_tol, 0, out);
    return out;
}

// Least-squares slope of y vs x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ls_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = (double)x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace embeig
