#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/core.hpp"

namespace hardy {

/// Root of tan(alpha L) + alpha q = 0 on (pi/(2L), pi/L).
struct AlphaRoot {
    double alpha = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;  // |sin(alpha L) + alpha q cos(alpha L)|
    double L = 0.0;
    double q = 0.0;
    int iterations = 0;
};

/// Pole-free form of the frequency equation; tan has a pole at the left
/// bracket end, this has none and vanishes at the same alpha.
inline double frequency_residual(double alpha, double L, double q)
{
    const double t = alpha * L;
    return std::sin(t) + alpha * q * std::cos(t);
}

inline AlphaRoot solve_alpha_extremal(double L, double q)
{
    if (!(L > 0.0) || !std::isfinite(L))
        throw DomainError("L must be positive");
    if (!(q > 1.0) || !std::isfinite(q))
        throw DomainError("solve_alpha_extremal: q must be > 1");

    AlphaRoot r;
    r.L = L;
    r.q = q;
    r.bracket_lo = std::numbers::pi / (2.0 * L);
    r.bracket_hi = std::numbers::pi / L;

    const double shrink = 1e-12 * (r.bracket_hi - r.bracket_lo);
    double lo = r.bracket_lo + shrink;
    double hi = r.bracket_hi - shrink;
    double hlo = frequency_residual(lo, L, q);
    double hhi = frequency_residual(hi, L, q);
    if (!(hlo > 0.0 && hhi < 0.0))
        throw std::logic_error("solve_alpha_extremal: bracket lost its sign change");

    constexpr int max_bisections = 200;
    int it = 0;
    while (it < max_bisections) {
        ++it;
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            break;
        const double hm = frequency_residual(mid, L, q);
        if (hm == 0.0) {
            lo = hi = mid;
            hlo = hhi = 0.0;
            break;
        }
        if (hm > 0.0) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
            hhi = hm;
        }
        if (std::fabs(hm) <= 1e-16)
            break;
    }

    // secant polish between the bracket ends, kept only if it stays inside
    double best = std::fabs(hlo) < std::fabs(hhi) ? lo : hi;
    double best_res = std::fabs(frequency_residual(best, L, q));
    if (hlo != hhi) {
        const double s = lo - hlo * (hi - lo) / (hhi - hlo);
        if (s >= lo && s <= hi) {
            const double rs = std::fabs(frequency_residual(s, L, q));
            if (rs < best_res) {
                best = s;
                best_res = rs;
            }
        }
    }

    r.alpha = best;
    r.residual = best_res;
    r.iterations = it;
    // h scales like alpha q when L is small, so the floor is relative to it.
    if (!(r.residual <= 1e-13 * std::max(1.0, best * q)) || !(r.alpha > r.bracket_lo && r.alpha < r.bracket_hi))
        throw std::logic_error("solve_alpha_extremal: failed to converge");
    return r;
}

/// The p = 2 frequency, tan(alpha L) + 2 alpha = 0.
inline AlphaRoot solve_alpha_p2(double L) { return solve_alpha_extremal(L, 2.0); }

/// arctan(1/p) / L, so that tan(alpha L) = 1/p.
inline double alpha_upper_weight(double L, double p)
{
    if (!(L > 0.0) || !std::isfinite(L))
        throw DomainError("L must be positive");
    if (!(p >= 2.0) || !std::isfinite(p))
        throw DomainError("alpha_upper_weight: p must be >= 2");
    return std::atan(1.0 / p) / L;
}

}  // namespace hardy
