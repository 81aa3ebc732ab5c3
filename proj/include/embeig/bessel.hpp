#pragma once

// Bessel J, Y, Hankel H1 and modified I, K for real order mu >= 0, real
// argument r > 0. Evaluation strategy per regime:
//   - half-integer orders: spherical-function recurrences (exact closed forms)
//   - small r: ascending power series (J, I)
//   - moderate r: continued fractions CF1/CF2 with Temme's series below r=2,
//     plus stable order recurrences (Steed's method)
//   - large r (r >= max(30, mu^2)): Hankel asymptotic expansions
// Each value carries a conservative forward error estimate.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace embeig {

struct Order {
    double mu;
    Order(double m) : mu(m)
    {
        if (!(m >= 0.0) || !std::isfinite(m))
            throw std::invalid_argument("Order: mu must be finite and >= 0");
    }
};

struct Eval {
    double value = 0.0;
    double abs_err = 0.0;
};

struct EvalC {
    std::complex<double> value{0.0, 0.0};
    double abs_err = 0.0;
};

// Value/derivative bundle for one order; err is a shared absolute estimate
// scaled to the oscillation modulus.
struct BesselJY {
    double j, y, jp, yp;
    double abs_err;
};

struct BesselIK {
    double i, k, ip, kp;
    double abs_err;
};

// e^{-r} I_mu and e^{+r} K_mu
struct BesselIKScaled {
    double ie, ke;
    double abs_err;
};

namespace bessel_detail {

constexpr double EPS = std::numeric_limits<double>::epsilon();
constexpr double FPMIN = 1e-290;
constexpr int MAXIT = 200000;

// Taylor coefficients of 1/Gamma(1+x) about x=0.
constexpr double RG[28] = {
    1.0,
    0.577215664901532861,
    -0.655878071520253881,
    -0.0420026350340952355,
    0.16653861138229149,
    -0.0421977345555443367,
    -0.00962197152787697356,
    0.00721894324666309954,
    -0.00116516759185906511,
    -0.000215241674114950973,
    0.000128050282388116186,
    -0.0000201348547807882387,
    -1.25049348214267066e-6,
    1.13302723198169588e-6,
    -2.0563384169776071e-7,
    6.11609510448141582e-9,
    5.00200764446922293e-9,
    -1.18127457048702014e-9,
    1.04342671169110051e-10,
    7.78226343990507125e-12,
    -3.69680561864220571e-12,
    5.10037028745447598e-13,
    -2.05832605356650678e-14,
    -5.34812253942301798e-15,
    1.22677862823826079e-15,
    -1.18125930169745877e-16,
    1.18669225475160033e-18,
    1.41238065531803178e-18,
};

inline double recip_gamma1p(double mu)  // 1/Gamma(1+mu), |mu| <= 0.5
{
    double s = 0.0, p = 1.0;
    for (int k = 0; k < 28; ++k) {
        s += RG[k] * p;
        p *= mu;
    }
    return s;
}

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2 mu) and
// gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)]/2, as even series in mu (no
// cancellation at mu -> 0).
inline void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi)
{
    const double m2 = mu * mu;
    double s1 = 0.0, s2 = 0.0, p = 1.0;
    for (int k = 0; 2 * k + 1 < 28; ++k) {
        s1 += RG[2 * k + 1] * p;          // odd-index coeffs -> gam1
        s2 += RG[2 * k] * p;              // even-index coeffs -> gam2
        p *= m2;
    }
    gam1 = -s1;
    gam2 = s2;
    gampl = recip_gamma1p(mu);
    gammi = recip_gamma1p(-mu);
}

inline bool is_half_integer(double mu)
{
    double t = 2.0 * mu;
    double n = std::round(t);
    return std::abs(t - n) <= 1e-12 && (long long)n % 2 != 0;
}

// ---------------------------------------------------------------------------
// spherical Bessel functions j_l, y_l (for half-integer orders)

struct SphJY {
    double j, y, jp, yp;
};

inline SphJY sph_jy(int l, double x)
{
    SphJY r{};
    const double sx = std::sin(x), cx = std::cos(x);
    const double j0 = sx / x, j1 = sx / (x * x) - cx / x;
    const double y0 = -cx / x, y1 = -cx / (x * x) - sx / x;
    // y: upward recurrence (stable, |y| grows with l)
    double ym = y0, yc = (l == 0) ? y0 : y1;
    for (int k = 1; k < l; ++k) {
        double yn = (2.0 * k + 1.0) / x * yc - ym;
        ym = yc;
        yc = yn;
    }
    r.y = yc;
    // j: upward is stable only for l <= x; otherwise Miller downward.
    double jc, jm;
    if (l == 0) {
        jc = j0;
        jm = j0;
    } else if ((double)l <= x) {
        double a = j0, b = j1;
        for (int k = 1; k < l; ++k) {
            double c = (2.0 * k + 1.0) / x * b - a;
            a = b;
            b = c;
        }
        jc = b;
        jm = a;  // j_{l-1}
    } else {
        int lstart = l + (int)std::ceil(std::sqrt(40.0 * (l + 1))) + 20;
        double jp1 = 0.0, jcur = FPMIN;
        double save_l = 0.0, save_lm1 = 0.0, j0acc = 0.0, j1acc = 0.0;
        for (int k = lstart; k >= 0; --k) {
            double jm1 = (2.0 * k + 3.0) / x * jcur - jp1;
            jp1 = jcur;
            jcur = jm1;
            if (k == l) save_l = jcur;
            if (k == l - 1) save_lm1 = jcur;
            if (std::abs(jcur) > 1e250) {
                jcur *= 1e-250;
                jp1 *= 1e-250;
                save_l *= 1e-250;
                save_lm1 *= 1e-250;
                j1acc *= 1e-250;
            }
            if (k == 1) j1acc = jcur;
            if (k == 0) j0acc = jcur;
        }
        double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / j0acc : j1 / j1acc;
        jc = save_l * scale;
        jm = save_lm1 * scale;
    }
    r.j = jc;
    r.jp = (l == 0) ? (cx / x - sx / (x * x)) : (jm - (l + 1.0) / x * jc);
    // y derivative from the same recurrence form: y_l' = y_{l-1} - (l+1)/x y_l
    r.yp = (l == 0) ? (sx / x + cx / (x * x)) : (ym - (l + 1.0) / x * yc);
    return r;
}

inline BesselJY jy_half_integer(double mu, double x)
{
    int l = (int)std::lround(mu - 0.5);
    SphJY s = sph_jy(l, x);
    const double c = std::sqrt(2.0 * x / M_PI);
    BesselJY out{};
    out.j = c * s.j;
    out.y = c * s.y;
    // d/dx [sqrt(2x/pi) f(x)] = sqrt(2x/pi) (f' + f/(2x))
    out.jp = c * (s.jp + s.j / (2.0 * x));
    out.yp = c * (s.yp + s.y / (2.0 * x));
    out.abs_err = 20.0 * EPS * (std::hypot(out.j, out.y) + std::abs(out.j) + std::abs(out.y));
    return out;
}

// modified spherical: scaled ie_l = e^{-x} i_l, ke_l = e^{x} k_l
inline BesselIKScaled ik_half_integer_scaled(double mu, double x, double* ie1 = nullptr,
                                             double* ke1 = nullptr)
{
    int l = (int)std::lround(mu - 0.5);
    const double pref = std::sqrt(M_PI / (2.0 * x));
    // ke_l: upward from ke_0 = pi/(2x) e^{x} e^{-x} ... spherical k_0 = (pi/(2x)) e^{-x}
    double k0 = M_PI / (2.0 * x);
    double k1 = M_PI / (2.0 * x) * (1.0 + 1.0 / x);
    double km = k0, kc = (l == 0) ? k0 : k1;
    for (int n = 1; n < l; ++n) {
        double kn = (2.0 * n + 1.0) / x * kc + km;
        km = kc;
        kc = kn;
    }
    double knext = (l == 0) ? k1 : (2.0 * l + 1.0) / x * kc + km;
    // ie_l: Miller downward on i recurrence i_{n-1} = i_{n+1} + (2n+1)/x i_n,
    // normalized by ie_0 = (1 - e^{-2x})/(2x).
    const double ie0 = (x < 1e-8) ? (1.0 - x + 2.0 * x * x / 3.0) : ((1.0 - std::exp(-2.0 * x)) / (2.0 * x));
    double ic, inext;
    if (l == 0) {
        ic = ie0;
        // i_1 = (x cosh x - sinh x)/x^2; series below x=0.5 to dodge cancellation
        double i1 = (x < 0.5) ? (x / 3.0 + x * x * x / 30.0 + std::pow(x, 5) / 840.0)
                              : ((x * std::cosh(x) - std::sinh(x)) / (x * x));
        inext = i1 * std::exp(-x);
    } else {
        int lstart = l + (int)std::ceil(std::sqrt(40.0 * (l + 1))) + 20 + (int)(x / 4);
        double ip1 = 0.0, icur = FPMIN;
        double save_l = 0.0, save_lp1 = 0.0, i0acc = 0.0;
        for (int n = lstart; n >= 0; --n) {
            double im1 = ip1 + (2.0 * n + 3.0) / x * icur;
            ip1 = icur;
            icur = im1;
            if (n == l + 1) save_lp1 = icur;
            if (n == l) save_l = icur;
            if (std::abs(icur) > 1e250) {
                icur *= 1e-250;
                ip1 *= 1e-250;
                save_l *= 1e-250;
                save_lp1 *= 1e-250;
            }
            if (n == 0) i0acc = icur;
        }
        double scale = ie0 / i0acc;
        ic = save_l * scale;
        inext = save_lp1 * scale;
    }
    BesselIKScaled out{};
    out.ie = std::sqrt(2.0 * x / M_PI) * ic;          // e^{-x} I_{l+1/2}
    out.ke = kc / pref;                               // e^{x} K_{l+1/2} = ke_l / sqrt(pi/2x)
    if (ie1) *ie1 = std::sqrt(2.0 * x / M_PI) * inext;
    if (ke1) *ke1 = knext / pref;
    out.abs_err = 20.0 * EPS * (std::abs(out.ie) + std::abs(out.ke));
    return out;
}

// ---------------------------------------------------------------------------
// ascending series for J (also usable in log form)

struct LogVal {
    double log_abs;  // log of |value|; -inf if value == 0
    double sign;     // +1 / -1
};

// J series: J_mu(x) = (x/2)^mu / Gamma(mu+1) * sum_k (-x^2/4)^k / (k! (mu+1)_k)
// Returns the O(1) reduced sum and the log prefactor separately.
inline void j_series_core(double mu, double x, double& red_sum, double& log_pref,
                          double& cond)
{
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0, asum = 1.0;
    for (int k = 1; k < 3000; ++k) {
        term *= q / (k * (mu + k));
        sum += term;
        asum += std::abs(term);
        if (std::abs(term) < EPS * asum) break;
    }
    red_sum = sum;
    cond = asum / std::max(std::abs(sum), 1e-300);
    log_pref = mu * std::log(0.5 * x) - std::lgamma(mu + 1.0);
}

inline Eval j_series(double mu, double x)
{
    double s, lp, cond;
    j_series_core(mu, x, s, lp, cond);
    Eval e;
    e.value = s * std::exp(lp);
    e.abs_err = std::abs(e.value) * EPS * (4.0 * cond + 10.0);
    return e;
}

inline LogVal j_series_log(double mu, double x)
{
    double s, lp, cond;
    j_series_core(mu, x, s, lp, cond);
    LogVal lv;
    if (s == 0.0) {
        lv.log_abs = -std::numeric_limits<double>::infinity();
        lv.sign = 1.0;
    } else {
        lv.log_abs = lp + std::log(std::abs(s));
        lv.sign = (s > 0) ? 1.0 : -1.0;
    }
    return lv;
}

// I series (all terms positive)
inline Eval i_series(double mu, double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 3000; ++k) {
        term *= q / (k * (mu + k));
        sum += term;
        if (term < EPS * sum) break;
    }
    double lp = mu * std::log(0.5 * x) - std::lgamma(mu + 1.0);
    Eval e;
    e.value = sum * std::exp(lp);
    e.abs_err = std::abs(e.value) * EPS * 14.0;
    return e;
}

// Descending series for |Y_mu| at small x, large mu (log form; used where the
// plain value would overflow). Y_mu(x) ~ -(1/pi) sum_{k} Gamma(mu-k)/k! (x/2)^{2k-mu}.
inline double y_log_abs_deep(double mu, double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    int kmax = (int)std::max(1.0, std::floor(mu - 1.0));
    for (int k = 1; k <= std::min(kmax, 60); ++k) {
        term *= q / ((mu - k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return std::lgamma(mu) - std::log(M_PI) + mu * std::log(2.0 / x) + std::log(sum);
}

// ---------------------------------------------------------------------------
// Hankel asymptotic expansions (x >= max(30, mu^2))

inline bool jy_asymptotic(double mu, double x, BesselJY& out)
{
    const double mu2 = 4.0 * mu * mu;
    double t = 1.0;
    double p = 1.0, q = 0.0;
    double pd = 1.0, qd = 0.0;  // for order mu+1 (derivatives via recurrence)
    const double mup2 = 4.0 * (mu + 1.0) * (mu + 1.0);
    double t2 = 1.0;
    double minterm = 1.0;
    int k = 1;
    for (; k < 60; ++k) {
        double num = mu2 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        t *= num / (k * 8.0 * x);
        double num2 = mup2 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        t2 *= num2 / (k * 8.0 * x);
        int phase = k % 4;
        if (phase == 1) { q += t; qd += t2; }
        else if (phase == 2) { p -= t; pd -= t2; }
        else if (phase == 3) { q -= t; qd -= t2; }
        else { p += t; pd += t2; }
        double m = std::max(std::abs(t), std::abs(t2));
        if (m < 1e-17) { minterm = m; break; }
        if (m > minterm && k > 4) return false;  // series not converging enough
        minterm = m;
    }
    if (minterm > 1e-14) return false;
    const double amp = std::sqrt(2.0 / (M_PI * x));
    const double w = x - (0.5 * mu + 0.25) * M_PI;
    const double w2 = x - (0.5 * (mu + 1.0) + 0.25) * M_PI;
    double cw = std::cos(w), sw = std::sin(w);
    double cw2 = std::cos(w2), sw2 = std::sin(w2);
    out.j = amp * (p * cw - q * sw);
    out.y = amp * (p * sw + q * cw);
    double j1 = amp * (pd * cw2 - qd * sw2);
    double y1 = amp * (pd * sw2 + qd * cw2);
    out.jp = (mu / x) * out.j - j1;
    out.yp = (mu / x) * out.y - y1;
    out.abs_err = amp * (minterm * 4.0 + 30.0 * EPS);
    return true;
}

inline bool ik_asymptotic(double mu, double x, bool scaled, BesselIK& out)
{
    const double mu2 = 4.0 * mu * mu;
    double t = 1.0, sk = 1.0, si = 1.0;
    double t2 = 1.0, sk2 = 1.0, si2 = 1.0;
    const double mup2 = 4.0 * (mu + 1.0) * (mu + 1.0);
    double minterm = 1.0;
    for (int k = 1; k < 60; ++k) {
        t *= (mu2 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        t2 *= (mup2 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        sk += t;
        si += (k % 2 ? -t : t);
        sk2 += t2;
        si2 += (k % 2 ? -t2 : t2);
        double m = std::max(std::abs(t), std::abs(t2));
        if (m < 1e-17) { minterm = m; break; }
        if (m > minterm && k > 4) return false;
        minterm = m;
    }
    if (minterm > 1e-14) return false;
    const double ka = std::sqrt(M_PI / (2.0 * x));
    const double ia = 1.0 / std::sqrt(2.0 * M_PI * x);
    double ex = scaled ? 1.0 : std::exp(x);
    double emx = scaled ? 1.0 : std::exp(-x);
    if (!scaled && x > 700.0) return false;  // caller handles overflow
    double i0 = ia * ex * si, i1 = ia * ex * si2;
    double k0 = ka * emx * sk, k1 = ka * emx * sk2;
    out.i = i0;
    out.k = k0;
    out.ip = i1 + (mu / x) * i0;   // derivative of the unscaled function
    out.kp = (mu / x) * k0 - k1;
    out.abs_err = (std::abs(i0) + std::abs(k0)) * (minterm * 4.0 + 30.0 * EPS);
    return true;
}

// ---------------------------------------------------------------------------
// Steed's method for J, Y (CF1 + Temme below x=2, CF2 above), any mu >= 0.

inline BesselJY jy_steed(double mu, double x)
{
    const double xi = 1.0 / x, xi2 = 2.0 * xi;
    const double w = xi2 / M_PI;  // Wronskian 2/(pi x)
    const double XMIN = 2.0;
    int nl = (x < XMIN) ? (int)(mu + 0.5) : std::max(0, (int)(mu - x + 1.5));
    const double xmu = mu - nl, xmu2 = xmu * xmu;

    // CF1: h = J'_mu / J_mu, isign tracks sign of J_mu
    int isign = 1;
    double h = mu * xi;
    if (std::abs(h) < FPMIN) h = FPMIN;
    double b = xi2 * mu, d = 0.0, c = h;
    int it = 0;
    for (; it < MAXIT; ++it) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < FPMIN) d = FPMIN;
        c = b - 1.0 / c;
        if (std::abs(c) < FPMIN) c = FPMIN;
        d = 1.0 / d;
        double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= EPS) break;
    }
    if (it >= MAXIT) throw std::runtime_error("bessel_jy: CF1 failed to converge");

    double rjl = isign * FPMIN, rjpl = h * rjl;
    double rjl1 = rjl, rjp1 = rjpl;
    double renorm = 0.0;  // accumulated log10 rescaling of (rjl, rjpl)
    double fact = mu * xi;
    for (int l = nl; l >= 1; --l) {
        double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if (std::abs(rjl) > 1e250) {
            rjl *= 1e-250;
            rjpl *= 1e-250;
            renorm += 250.0;
        }
    }
    if (rjl == 0.0) rjl = EPS;
    double f = rjpl / rjl;  // J'_{xmu}/J_{xmu}

    double rjmu, rymu, ry1, rymup;
    if (x < XMIN) {
        // Temme's series for Y_{xmu}, Y_{xmu+1}
        const double x2 = 0.5 * x;
        const double pimu = M_PI * xmu;
        double fct = (std::abs(pimu) < 1e-30) ? 1.0 : pimu / std::sin(pimu);
        double dlg = -std::log(x2);
        double e = xmu * dlg;
        double fact2 = (std::abs(e) < 1e-30) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(xmu, gam1, gam2, gampl, gammi);
        double ff = 2.0 / M_PI * fct * (gam1 * std::cosh(e) + gam2 * fact2 * dlg);
        e = std::exp(e);
        double p = e / (gampl * M_PI);
        double q = 1.0 / (e * gammi * M_PI);
        double pimu2 = 0.5 * pimu;
        double fact3 = (std::abs(pimu2) < 1e-30) ? 1.0 : std::sin(pimu2) / pimu2;
        double rr = M_PI * pimu2 * fact3 * fact3;
        double cc = 1.0;
        double dd = -x2 * x2;
        double sum = ff + rr * q, sum1 = p;
        int i = 1;
        for (; i < MAXIT; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            cc *= dd / i;
            p /= (i - xmu);
            q /= (i + xmu);
            double del = cc * (ff + rr * q);
            sum += del;
            double del1 = cc * p - i * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * EPS) break;
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + i q = (J' + iY')/(J + iY) at order xmu
        double a = 0.25 - xmu2;
        double p = -0.5 * xi, q = 1.0;
        double br = 2.0 * x, bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct, ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int i = 2;
        for (; i <= MAXIT; ++i) {
            a += 2 * (i - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < FPMIN) dr = FPMIN;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < FPMIN) cr = FPMIN;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) < EPS) break;
        }
        if (i > MAXIT) throw std::runtime_error("bessel_jy: CF2 failed to converge");
        double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    // rescale J back to the target order
    double fct2 = rjmu / rjl;
    BesselJY out{};
    double scale = std::pow(10.0, -renorm);
    out.j = rjl1 * fct2 * scale;
    out.jp = rjp1 * fct2 * scale;
    // Y upward recurrence to the target order
    for (int i = 1; i <= nl; ++i) {
        double rytemp = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.y = rymu;
    out.yp = mu * xi * rymu - ry1;
    out.abs_err = 40.0 * EPS * (std::hypot(out.j, out.y) + std::abs(out.j) + std::abs(out.y));
    return out;
}

// Steed / Temme for I, K. If scaled, returns e^{-x} I and e^{+x} K (and
// derivatives of the unscaled functions are then not populated).
inline BesselIK ik_steed(double mu, double x, bool scaled)
{
    const double xi = 1.0 / x;
    const double XMIN = 2.0;
    int nl = (int)(mu + 0.5);
    const double xmu = mu - nl, xmu2 = xmu * xmu;

    // CF1 for I'_mu/I_mu
    double h = mu * xi;
    if (h < FPMIN) h = FPMIN;
    double b = 2.0 * xi * mu, d = 0.0, c = h;
    int it = 0;
    for (; it < MAXIT; ++it) {
        b += 2.0 * xi;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= EPS) break;
    }
    if (it >= MAXIT) throw std::runtime_error("bessel_ik: CF1 failed to converge");

    double ril = FPMIN, ripl = h * ril;
    double ril1 = ril, rip1 = ripl;
    double renorm = 0.0;
    double fact = mu * xi;
    for (int l = nl; l >= 1; --l) {
        double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if (std::abs(ril) > 1e250) {
            ril *= 1e-250;
            ripl *= 1e-250;
            renorm += 250.0;
        }
    }
    double f = ripl / ril;  // I'_{xmu}/I_{xmu}

    double rkmu, rk1;  // K_{xmu}, K_{xmu+1}; scaled by e^{x} if `scaled` or x>=XMIN path
    bool k_scaled_internal;
    if (x < XMIN) {
        const double x2 = 0.5 * x;
        const double pimu = M_PI * xmu;
        double fct = (std::abs(pimu) < 1e-30) ? 1.0 : pimu / std::sin(pimu);
        double dlg = -std::log(x2);
        double e = xmu * dlg;
        double fact2 = (std::abs(e) < 1e-30) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(xmu, gam1, gam2, gampl, gammi);
        double ff = fct * (gam1 * std::cosh(e) + gam2 * fact2 * dlg);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;
        double q = 0.5 / (e * gammi);
        double cc = 1.0, dd = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i < MAXIT; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            cc *= dd / i;
            p /= (i - xmu);
            q /= (i + xmu);
            double del = cc * ff;
            sum += del;
            double del1 = cc * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * EPS) break;
        }
        rkmu = sum;
        rk1 = sum1 * 2.0 * xi;
        k_scaled_internal = false;
    } else {
        // Steed CF2; produces e^{x}-scaled K directly
        double bb = 2.0 * (1.0 + x);
        double dd = 1.0 / bb;
        double delh = dd, hh = delh;
        double q1 = 0.0, q2 = 1.0;
        double a1 = 0.25 - xmu2;
        double qq = a1, cc = a1;
        double a = -a1;
        double s = 1.0 + qq * delh;
        int i = 2;
        for (; i <= MAXIT; ++i) {
            a -= 2 * (i - 1);
            cc = -a * cc / i;
            double qnew = (q1 - bb * q2) / a;
            q1 = q2;
            q2 = qnew;
            qq += cc * qnew;
            bb += 2.0;
            dd = 1.0 / (bb + a * dd);
            delh = (bb * dd - 1.0) * delh;
            hh += delh;
            double dels = qq * delh;
            s += dels;
            if (std::abs(dels / s) <= EPS) break;
        }
        if (i > MAXIT) throw std::runtime_error("bessel_ik: CF2 failed to converge");
        hh = a1 * hh;
        rkmu = std::sqrt(M_PI / (2.0 * x)) / s;  // e^{x} K_{xmu}
        rk1 = rkmu * (xmu + x + 0.5 - hh) * xi;
        k_scaled_internal = true;
    }

    // I_{xmu} from the Wronskian (valid in either consistent scaling):
    // I = 1 / (x K_{mu+1} + K_mu (f x - mu))
    double rimu = 1.0 / (x * rk1 + rkmu * (f * x - xmu));
    // rimu carries the opposite scaling of K: if K is e^{x}-scaled, rimu = e^{-x} I.

    // K upward recurrence to target order
    for (int i = 1; i <= nl; ++i) {
        double rktemp = (xmu + i) * 2.0 * xi * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    // now rkmu = K_mu, rk1 = K_{mu+1} (in internal scaling)

    double fct_scale = rimu / ril * std::pow(10.0, -renorm);
    double imu = ril1 * fct_scale;   // I_mu in internal scaling
    double imup = rip1 * fct_scale;  // I'_mu in internal scaling

    BesselIK out{};
    if (scaled) {
        double toscale = k_scaled_internal ? 1.0 : std::exp(x);  // want e^{x}K, e^{-x}I
        out.k = rkmu * toscale;
        out.i = imu / toscale;
        out.kp = (mu * xi) * out.k - rk1 * toscale;  // derivative of scaled pair (formal)
        out.ip = imup / toscale;
        out.abs_err = 40.0 * EPS * (std::abs(out.i) + std::abs(out.k));
    } else {
        double unscale = k_scaled_internal ? std::exp(-x) : 1.0;
        if (k_scaled_internal && x > 700.0)
            throw std::range_error("bessel_ik: e^{x} overflow; request scaled output");
        out.k = rkmu * unscale;
        out.kp = (mu * xi) * out.k - rk1 * unscale;
        out.i = imu / unscale;
        out.ip = imup / unscale;
        out.abs_err = 40.0 * EPS * (std::abs(out.i) + std::abs(out.k));
    }
    return out;
}

}  // namespace bessel_detail

// ---------------------------------------------------------------------------
// public surface

inline void check_positive_arg(double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("bessel: argument must be finite and > 0");
}

// Full (J, Y, J', Y') bundle with regime dispatch.
inline BesselJY bessel_jy(Order mu, double r)
{
    using namespace bessel_detail;
    check_positive_arg(r);
    if (is_half_integer(mu.mu)) return jy_half_integer(mu.mu, r);
    if (r >= 30.0 && r >= mu.mu * mu.mu) {
        BesselJY out{};
        if (jy_asymptotic(mu.mu, r, out)) return out;
    }
    return jy_steed(mu.mu, r);
}

inline BesselIK bessel_ik(Order mu, double r, bool scaled = false)
{
    using namespace bessel_detail;
    check_positive_arg(r);
    if (is_half_integer(mu.mu)) {
        double ie1, ke1;
        BesselIKScaled s = ik_half_integer_scaled(mu.mu, r, &ie1, &ke1);
        BesselIK out{};
        if (scaled) {
            out.i = s.ie;
            out.k = s.ke;
            out.ip = ie1 + (mu.mu / r) * s.ie;  // formal; same scaling convention as ik_steed
            out.kp = (mu.mu / r) * s.ke - ke1;
            out.abs_err = s.abs_err;
        } else {
            if (r > 700.0) throw std::range_error("bessel_ik: overflow; request scaled output");
            double ex = std::exp(r);
            out.i = s.ie * ex;
            out.k = s.ke / ex;
            out.ip = (ie1 + (mu.mu / r) * s.ie) * ex;
            out.kp = ((mu.mu / r) * s.ke - ke1) / ex;
            out.abs_err = s.abs_err * ex;
        }
        return out;
    }
    if (r >= 30.0 && r >= mu.mu * mu.mu) {
        BesselIK out{};
        if (ik_asymptotic(mu.mu, r, scaled, out)) return out;
    }
    return ik_steed(mu.mu, r, scaled);
}

inline Eval bessel_j(Order mu, double r)
{
    using namespace bessel_detail;
    check_positive_arg(r);
    if (is_half_integer(mu.mu)) {
        BesselJY b = jy_half_integer(mu.mu, r);
        return {b.j, b.abs_err};
    }
    if (r <= std::max(8.0, 0.5 * mu.mu)) return j_series(mu.mu, r);
    BesselJY b = bessel_jy(mu, r);
    return {b.j, b.abs_err};
}

inline Eval bessel_y(Order mu, double r)
{
    BesselJY b = bessel_jy(mu, r);
    return {b.y, b.abs_err};
}

inline EvalC hankel1(Order mu, double r)
{
    BesselJY b = bessel_jy(mu, r);
    return {std::complex<double>(b.j, b.y), 2.0 * b.abs_err};
}

inline Eval bessel_i(Order mu, double r, bool scaled = false)
{
    using namespace bessel_detail;
    check_positive_arg(r);
    if (!scaled && !is_half_integer(mu.mu) && r <= std::max(8.0, 0.5 * mu.mu))
        return i_series(mu.mu, r);
    BesselIK b = bessel_ik(mu, r, scaled);
    return {b.i, b.abs_err};
}

inline Eval bessel_k(Order mu, double r, bool scaled = false)
{
    BesselIK b = bessel_ik(mu, r, scaled);
    return {b.k, b.abs_err};
}

// log|J_mu(r)| with sign; usable where the value underflows.
inline bessel_detail::LogVal bessel_j_log(Order mu, double r)
{
    using namespace bessel_detail;
    check_positive_arg(r);
    if (r <= std::max(8.0, 0.5 * mu.mu)) return j_series_log(mu.mu, r);
    BesselJY b = bessel_jy(mu, r);
    LogVal lv;
    lv.log_abs = std::log(std::abs(b.j));
    lv.sign = (b.j >= 0) ? 1.0 : -1.0;
    return lv;
}

// log |H^1_mu(r)|; usable where |Y| overflows (large mu, small r).
inline double hankel1_log_abs(Order mu, double r)
{
    using namespace bessel_detail;
    check_positive_arg(r);
    // deep region: |Y| dominates and may overflow
    if (mu.mu >= 8.0 && r * r <= 0.1 * mu.mu) return y_log_abs_deep(mu.mu, r);
    BesselJY b = bessel_jy(mu, r);
    return std::log(std::hypot(b.j, b.y));
}

}  // namespace embeig
