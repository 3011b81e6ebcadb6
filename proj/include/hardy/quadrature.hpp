#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hardy/core.hpp"

namespace hardy {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // sum of per-panel Richardson estimates
    std::size_t evaluations = 0;
    bool converged = true;
};

namespace detail {

template <class F>
struct SimpsonRun {
    const F& f;
    int max_depth;
    CompensatedSum value;
    CompensatedSum error;
    std::size_t evaluations = 0;
    bool converged = true;

    double eval(double x)
    {
        ++evaluations;
        return f(x);
    }

    void panel(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth)
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double h = b - a;
        const double left = h / 12.0 * (fa + 4.0 * flm + fm);
        const double right = h / 12.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const bool degenerate = !(m > a && m < b);
        if (std::fabs(delta) <= 15.0 * tol || depth >= max_depth || degenerate) {
            if (depth >= max_depth && std::fabs(delta) > 15.0 * tol)
                converged = false;
            value.add(left + right + delta / 15.0);
            error.add(std::fabs(delta) / 15.0);
            return;
        }
        panel(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
        panel(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace detail

/// Adaptive Simpson with Richardson correction on [lo, hi].
///
/// The range is first cut into max(1, ceil(hi - lo)) panels, each given its
/// share of `abs_tol`; integrands here live in u = ln x, where unit panels
/// track the oscillation scale. Non-convergence at `max_depth` is flagged in
/// the result rather than thrown.
template <class F>
QuadResult adaptive_simpson(const F& f, double lo, double hi, double abs_tol, int max_depth = 48)
{
    QuadResult out;
    if (!(hi > lo))
        return out;
    detail::SimpsonRun<F> run{f, max_depth, {}, {}, 0, true};
    const double width = hi - lo;
    const auto panels = static_cast<std::size_t>(std::clamp(std::ceil(width), 1.0, 4096.0));
    const double step = width / static_cast<double>(panels);
    double a = lo;
    double fa = run.eval(a);
    for (std::size_t i = 0; i < panels; ++i) {
        const double b = (i + 1 == panels) ? hi : lo + step * static_cast<double>(i + 1);
        const double m = 0.5 * (a + b);
        const double fm = run.eval(m);
        const double fb = run.eval(b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        run.panel(a, b, fa, fm, fb, whole, abs_tol * (b - a) / width, 0);
        a = b;
        fa = fb;
    }
    out.value = run.value.value();
    out.error = run.error.value();
    out.evaluations = run.evaluations;
    out.converged = run.converged;
    return out;
}

}  // namespace hardy
