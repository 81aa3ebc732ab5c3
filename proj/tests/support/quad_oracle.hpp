#pragma once

// Extended-precision (__float128) reference oracle for J, Y, I, K, independent
// of the library's evaluation paths: ascending series with cancellation
// tracking, large-argument asymptotic expansions with minimum-term tracking,
// and an exponentially convergent integral for K. Each value carries a bound
// on its absolute error; the dispatcher picks the route with the smaller one.

#include <cmath>
#include <limits>
#include <stdexcept>

#include <quadmath.h>

namespace oracle {

using q128 = __float128;

struct OVal {
    double value = 0.0;
    double err = 0.0;  // absolute error bound
    bool ok = false;
};

constexpr double QEPS = 1.9e-34;

namespace detail {

inline q128 qpow_int(q128 b, int n)
{
    q128 r = 1;
    for (int i = 0; i < n; ++i) r *= b;
    return r;
}

// J_mu via the ascending series; cancel_out reports sum|terms| / |sum|.
inline bool j_series(double mu, double x, q128& out, double& cancel_out)
{
    const q128 xq = x, muq = mu;
    const q128 quarter = -xq * xq / 4;
    q128 term = 1, sum = 1, asum = 1;
    for (int k = 1; k < 20000; ++k) {
        term *= quarter / (q128(k) * (muq + k));
        sum += term;
        asum += fabsq(term);
        if (fabsq(term) < 1e-40q * asum) break;
    }
    q128 pref = expq(muq * logq(xq / 2) - lgammaq(muq + 1));
    out = pref * sum;
    cancel_out = (double)(asum / (fabsq(sum) + 1e-4900q));
    return true;
}

// P/Q Hankel asymptotics; returns minimum-term ratio reached.
inline bool jy_asym(double mu, double x, q128& jout, q128& yout, double& minterm_out)
{
    const q128 xq = x;
    const q128 m2 = 4.0q * mu * mu;
    q128 t = 1, p = 1, qq = 0;
    q128 minterm = 1;
    for (int k = 1; k < 400; ++k) {
        t *= (m2 - q128(2 * k - 1) * (2 * k - 1)) / (q128(k) * 8 * xq);
        int ph = k % 4;
        if (ph == 1) qq += t;
        else if (ph == 2) p -= t;
        else if (ph == 3) qq -= t;
        else p += t;
        q128 a = fabsq(t);
        if (a < 1e-38q) {
            minterm = a;
            break;
        }
        if (a > minterm && k > 6) break;
        minterm = a;
    }
    minterm_out = (double)minterm;
    q128 amp = sqrtq(2.0q / (q128(M_PI) * xq));
    q128 w = xq - (0.5q * mu + 0.25q) * q128(M_PI);
    jout = amp * (p * cosq(w) - qq * sinq(w));
    yout = amp * (p * sinq(w) + qq * cosq(w));
    return true;
}

// J_{-mu} for non-integer mu (reflection route for Y)
inline q128 j_neg_series(double mu, double x)
{
    const q128 xq = x, muq = mu;
    const q128 quarter = -xq * xq / 4;
    const q128 spi = sinq(q128(M_PI) * muq);
    q128 sum = 0, pk = 1;  // pk = (-x^2/4)^k / k!
    for (int k = 0; k < 20000; ++k) {
        q128 rg;  // 1/Gamma(k+1-mu)
        q128 zq = q128(k) + 1 - muq;
        if (zq > 0) rg = expq(-lgammaq(zq));
        else {
            // reflection: 1/Gamma(k+1-mu) = Gamma(mu-k) (-1)^k sin(pi mu)/pi
            q128 g = expq(lgammaq(muq - k));
            rg = g * ((k % 2) ? -spi : spi) / q128(M_PI);
        }
        q128 term = pk * rg;
        sum += term;
        if (k > 4 && fabsq(term) < 1e-40q * (fabsq(sum) + 1e-4900q) && fabsq(quarter) < q128(k) * k)
            break;
        pk *= quarter / q128(k + 1);
    }
    return expq(-muq * logq(xq / 2)) * sum;
}

// Y_n for integer n via the log/digamma series; cancel_out as in j_series.
inline q128 y_int_series(int n, double x, double& cancel_out)
{
    const q128 xq = x;
    const q128 x2 = xq / 2;
    const q128 egamma = 0.5772156649015328606065120900824024Q;
    // J_n in quad
    q128 jn;
    double cJ;
    j_series((double)n, x, jn, cJ);
    q128 s1 = (2.0q / q128(M_PI)) * (logq(x2) + egamma) * jn;
    // finite descending sum
    q128 s2 = 0;
    if (n > 0) {
        q128 fact = expq(lgammaq(q128(n)));  // (n-1)!
        q128 xp = expq(-q128(n) * logq(x2)); // (x/2)^{-n}
        q128 kfac = 1;
        for (int k = 0; k <= n - 1; ++k) {
            // (n-k-1)!/k! (x/2)^{2k-n}
            s2 += fact / kfac * xp;
            fact /= q128(n - 1 - k);
            kfac *= q128(k + 1);
            xp *= x2 * x2;
        }
        s2 /= q128(M_PI);
    }
    // ascending correction: term_k = (-1)^k (H_k + H_{n+k}) / (k! (n+k)!) (x/2)^{2k+n}
    q128 s3 = 0, asum = 0;
    q128 hk = 0, hnk = 0;
    for (int j = 1; j <= n; ++j) hnk += 1.0q / j;  // H_n
    q128 tk = expq(q128(n) * logq(x2) - lgammaq(q128(n) + 1));  // (x/2)^n / (0! n!)
    for (int k = 0; k < 20000; ++k) {
        q128 term = ((k % 2) ? -1.0q : 1.0q) * (hk + hnk) * tk;
        s3 += term;
        asum += fabsq(term);
        if (k > 4 && fabsq(tk) * (hk + hnk + 1) < 1e-40q * (asum + 1e-4900q)) break;
        tk *= (x2 * x2) / (q128(k + 1) * q128(n + k + 1));
        hk += 1.0q / (k + 1);
        hnk += 1.0q / (n + k + 1);
    }
    s3 /= q128(M_PI);
    cancel_out = (double)((fabsq(s1) + fabsq(s2) + asum) / (fabsq(s1 - s2 - s3) + 1e-4900q));
    return s1 - s2 - s3;
}

}  // namespace detail

inline OVal bessel_j(double mu, double x)
{
    q128 js;
    double cancel;
    detail::j_series(mu, x, js, cancel);
    OVal series{(double)js, (std::abs((double)js) + 1e-320) * QEPS * cancel * 4.0, true};
    q128 ja, ya;
    double minterm;
    detail::jy_asym(mu, x, ja, ya, minterm);
    double amp = std::sqrt(2.0 / (M_PI * x));
    OVal asym{(double)ja, amp * (minterm * 2.0 + QEPS * 10.0), true};
    return (series.err <= asym.err) ? series : asym;
}

inline OVal bessel_y(double mu, double x)
{
    // asymptotic route
    q128 ja, ya;
    double minterm;
    detail::jy_asym(mu, x, ja, ya, minterm);
    double amp = std::sqrt(2.0 / (M_PI * x));
    OVal asym{(double)ya, amp * (minterm * 2.0 + QEPS * 10.0), true};
    // series route
    OVal series;
    double nr = std::round(mu);
    if (std::abs(mu - nr) < 1e-13) {
        double cancel;
        q128 y = detail::y_int_series((int)nr, x, cancel);
        series = {(double)y, std::abs((double)y + 1e-300) * QEPS * cancel * 8.0, true};
        series.err = (std::abs((double)y) + 1e-300) * QEPS * cancel * 8.0;
    } else {
        q128 jpos;
        double cancel;
        detail::j_series(mu, x, jpos, cancel);
        q128 jneg = detail::j_neg_series(mu, x);
        q128 spi = sinq(q128(M_PI) * q128(mu));
        q128 y = (jpos * cosq(q128(M_PI) * q128(mu)) - jneg) / spi;
        double scale = std::max(std::abs((double)jneg), std::abs((double)jpos) * cancel)
                       / std::abs((double)spi);
        series = {(double)y, (scale + std::abs((double)y)) * QEPS * 8.0, true};
    }
    return (series.err <= asym.err) ? series : asym;
}

inline OVal bessel_i(double mu, double x)
{
    const q128 xq = x, muq = mu;
    const q128 quarter = xq * xq / 4;
    q128 term = 1, sum = 1;
    for (int k = 1; k < 20000; ++k) {
        term *= quarter / (q128(k) * (muq + k));
        sum += term;
        if (term < 1e-40q * sum) break;
    }
    q128 v = expq(muq * logq(xq / 2) - lgammaq(muq + 1)) * sum;
    return {(double)v, std::abs((double)v) * QEPS * 20.0 + 1e-320, true};
}

// K via int_0^inf e^{-x cosh t} cosh(mu t) dt, trapezoid in t (exponentially
// convergent for this integrand).
inline OVal bessel_k(double mu, double x)
{
    const q128 xq = x, muq = mu;
    const double h = 0.02;
    const q128 LN2 = 0.6931471805599453094172321214581766Q;
    q128 sum = expq(-xq) / 2;  // t = 0 term, halved
    q128 peak = sum;
    for (int k = 1; k < 400000; ++k) {
        q128 t = q128(h) * k;
        // log(cosh(mu t)) without overflowing cosh
        q128 a = muq * t;
        q128 lc = (a > 30.0q) ? (a - LN2) : logq(coshq(a));
        q128 f = expq(-xq * coshq(t) + lc);
        sum += f;
        if (f > peak) peak = f;
        if (k > 10 && f < peak * 1e-45q) break;
    }
    q128 v = sum * q128(h);
    return {(double)v, std::abs((double)v) * 1e-25 + 1e-320, true};
}

}  // namespace oracle
