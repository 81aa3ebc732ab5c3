#pragma once

// WKB phase, the five-region partition of (0,inf) for mu >= 1/2, the C-free
// bound envelopes per region, and the empirical-constant certifier.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "embeig/bessel.hpp"

namespace embeig {

enum class RegionTag { SMALL_ARG, OSCILL_BELOW, TRANSITION_BELOW, TURNING, ABOVE };

inline const char* region_name(RegionTag t)
{
    switch (t) {
        case RegionTag::SMALL_ARG: return "SMALL_ARG";
        case RegionTag::OSCILL_BELOW: return "OSCILL_BELOW";
        case RegionTag::TRANSITION_BELOW: return "TRANSITION_BELOW";
        case RegionTag::TURNING: return "TURNING";
        case RegionTag::ABOVE: return "ABOVE";
    }
    return "?";
}

struct BoundRegion {
    RegionTag tag;
    double mu;
    double alpha0;
};

enum class BoundKind { J, H1 };

// phi_mu(mu sech a) = a - tanh a, i.e. phi_mu(r) = arccosh(mu/r) - sqrt(1-(r/mu)^2).
inline double phase_phi(Order mu, double r)
{
    if (!(r >= 1.0) || r > mu.mu * (1.0 + 1e-14))
        throw std::invalid_argument("phase_phi: need 1 <= r <= mu");
    double t = std::min(1.0, r / mu.mu);
    return std::acosh(1.0 / t) - std::sqrt((1.0 - t) * (1.0 + t));
}

inline void check_alpha0(double alpha0)
{
    if (!(alpha0 > 0.0 && alpha0 < 0.5))
        throw std::invalid_argument("alpha0 must lie in (0, 1/2)");
}

// Left-closed partition: (0,1], (1, mu sech a0], (mu sech a0, mu-mu^{1/3}],
// (mu-mu^{1/3}, mu+mu^{1/3}], (mu+mu^{1/3}, inf). Boundaries are checked in
// order, so regions emptied by overlapping boundaries are skipped.
inline BoundRegion classify_region(Order mu, double r, double alpha0)
{
    if (mu.mu < 0.5) throw std::invalid_argument("classify_region: requires mu >= 1/2");
    check_alpha0(alpha0);
    check_positive_arg(r);
    const double m = mu.mu;
    const double c13 = std::cbrt(m);
    RegionTag tag;
    if (r <= 1.0) tag = RegionTag::SMALL_ARG;
    else if (r <= m / std::cosh(alpha0)) tag = RegionTag::OSCILL_BELOW;
    else if (r <= m - c13) tag = RegionTag::TRANSITION_BELOW;
    else if (r <= m + c13) tag = RegionTag::TURNING;
    else tag = RegionTag::ABOVE;
    return {tag, m, alpha0};
}

// log of the bound expression without the constant C.
inline double envelope_log(const BoundRegion& region, Order mu, double r, BoundKind kind)
{
    const double m = mu.mu;
    BoundRegion chk = classify_region(mu, r, region.alpha0);
    if (chk.tag != region.tag)
        throw std::invalid_argument("envelope: r lies outside the given region");
    switch (region.tag) {
        case RegionTag::SMALL_ARG: {
            double t = m * std::log(0.5 * r);
            return (kind == BoundKind::J) ? t - std::lgamma(m + 1.0) : std::lgamma(m) - t;
        }
        case RegionTag::OSCILL_BELOW: {
            double p = m * phase_phi(mu, r);
            return ((kind == BoundKind::J) ? -p : p) - 0.5 * std::log(m);
        }
        case RegionTag::TRANSITION_BELOW: {
            double p = m * phase_phi(mu, r);
            double amp = -0.25 * std::log(m) - 0.25 * std::log(m - r);
            return ((kind == BoundKind::J) ? -p : p) + amp;
        }
        case RegionTag::TURNING:
            return -std::log(m) / 3.0;
        case RegionTag::ABOVE:
            return -0.25 * std::log(r) - 0.25 * std::log(r - m);
    }
    throw std::logic_error("envelope: unreachable");
}

inline double envelope(const BoundRegion& region, Order mu, double r, BoundKind kind)
{
    return std::exp(envelope_log(region, mu, r, kind));
}

struct CertRow {
    RegionTag region;
    BoundKind kind;
    double empirical_c;  // max over samples of |f| / envelope
    int samples;
};

// Sample |J|/envelope and |H1|/envelope over each nonempty region for each mu
// on the grid; returns the per-(region, kind) empirical constants.
inline std::vector<CertRow> certify_bounds(const std::vector<double>& mu_grid,
                                           int samples_per_region, double alpha0)
{
    check_alpha0(alpha0);
    for (double m : mu_grid)
        if (m < 0.5) throw std::invalid_argument("certify_bounds: all mu must be >= 1/2");
    double best[5][2] = {};
    int counts[5] = {};
    for (double m : mu_grid) {
        Order mu(m);
        const double c13 = std::cbrt(m);
        const double b[6] = {1e-3, 1.0, m / std::cosh(alpha0), m - c13, m + c13,
                             std::max(4.0 * m, m + c13 + 50.0)};
        for (int reg = 0; reg < 5; ++reg) {
            double lo = std::max(b[reg], (reg == 0) ? 1e-3 : b[reg]);
            double hi = b[reg + 1];
            if (reg > 0) lo = std::max(lo, 1.0);
            for (int rr = reg - 1; rr >= 0; --rr) lo = std::max(lo, b[rr + 1]);
            if (!(hi > lo)) continue;  // region empty for this mu
            for (int s = 0; s < samples_per_region; ++s) {
                double u = (s + 0.5) / samples_per_region;
                double r = (reg == 0 || reg == 4) ? lo * std::pow(hi / lo, u)
                                                  : lo + (hi - lo) * u;
                BoundRegion breg = classify_region(mu, r, alpha0);
                if ((int)breg.tag != reg) continue;  // boundary rounding
                double le = envelope_log(breg, mu, r, BoundKind::J);
                double lj = bessel_j_log(mu, r).log_abs;
                double ratio_j = std::exp(lj - le);
                double lh = hankel1_log_abs(mu, r);
                double leh = envelope_log(breg, mu, r, BoundKind::H1);
                double ratio_h = std::exp(lh - leh);
                if (std::isfinite(ratio_j) && ratio_j > best[reg][0]) best[reg][0] = ratio_j;
                if (std::isfinite(ratio_h) && ratio_h > best[reg][1]) best[reg][1] = ratio_h;
                ++counts[reg];
            }
        }
    }
    std::vector<CertRow> rows;
    for (int reg = 0; reg < 5; ++reg)
        for (int kind = 0; kind < 2; ++kind)
            rows.push_back({(RegionTag)reg, (BoundKind)kind, best[reg][kind], counts[reg]});
    return rows;
}

}  // namespace embeig
