#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "hardy/certificate.hpp"
#include "hardy/core.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/roots.hpp"

namespace hardy {

enum class WitnessKind { fstar, f_ab_p2, weight_g };

inline const char* to_string(WitnessKind k)
{
    switch (k) {
    case WitnessKind::fstar: return "fstar";
    case WitnessKind::f_ab_p2: return "f_ab_p2";
    case WitnessKind::weight_g: return "weight_g";
    }
    return "?";
}

/// One of the closed-form witnesses on (1, e^L).
///
///   fstar:    x^{-1/p} (alpha q cos(alpha ln x) + sin(alpha ln x)), alpha from the
///             extremal frequency equation; positive on [1, b), zero at b.
///   f_ab_p2:  the same with p = q = 2, the exact extremizer at p = 2.
///   weight_g: x^{-1/(pq)} cos(alpha ln x)^{1/q}, alpha = arctan(1/p)/L.
class ExtremalFunction {
public:
    static ExtremalFunction fstar(double L, const Exponent& e)
    {
        const AlphaRoot r = solve_alpha_extremal(L, e.q());
        return ExtremalFunction(WitnessKind::fstar, e, L, r.alpha, r);
    }

    static ExtremalFunction f_ab_p2(double L)
    {
        const AlphaRoot r = solve_alpha_p2(L);
        return ExtremalFunction(WitnessKind::f_ab_p2, Exponent(2.0), L, r.alpha, r);
    }

    static ExtremalFunction weight_g(double L, const Exponent& e)
    {
        return ExtremalFunction(WitnessKind::weight_g, e, L, alpha_upper_weight(L, e.p()), std::nullopt);
    }

    WitnessKind kind() const noexcept { return kind_; }
    const Exponent& exponent() const noexcept { return exp_; }
    double log_length() const noexcept { return L_; }
    double alpha() const noexcept { return alpha_; }
    const std::optional<AlphaRoot>& root() const noexcept { return root_; }
    bool has_closed_form_prefix() const noexcept { return kind_ != WitnessKind::weight_g; }

    /// The trigonometric factor alpha q cos(alpha u) + sin(alpha u) of fstar.
    double numerator_at_log(double u) const
    {
        const double t = alpha_ * u;
        return alpha_ * exp_.q() * std::cos(t) + std::sin(t);
    }

    /// Value at x = e^u.
    double at_log(double u) const
    {
        if (kind_ == WitnessKind::weight_g) {
            const double c = std::cos(alpha_ * u);
            return std::exp(-u / (exp_.p() * exp_.q())) * std::pow(c, 1.0 / exp_.q());
        }
        return std::exp(-u / exp_.p()) * numerator_at_log(u);
    }

    double operator()(double x) const { return at_log(std::log(x)); }

private:
    ExtremalFunction(WitnessKind k, const Exponent& e, double L, double alpha, std::optional<AlphaRoot> r)
        : kind_(k), exp_(e), L_(L), alpha_(alpha), root_(std::move(r))
    {
    }

    WitnessKind kind_;
    Exponent exp_;
    double L_;
    double alpha_;
    std::optional<AlphaRoot> root_;
};

/// \int_1^x f* = q x^{1/q} sin(alpha ln x) for 1 <= x <= e^{root.L}.
inline double prefix_fstar(double x, const AlphaRoot& root, const Exponent& e)
{
    const double u = std::log(x);
    if (!(x >= 1.0) || u > root.L * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
        throw DomainError("prefix_fstar: x outside [1, b]");
    if (std::fabs(root.q - e.q()) > 1e-12 * e.q())
        throw DomainError("prefix_fstar: root was solved for a different exponent");
    return e.q() * std::exp(u / e.q()) * std::sin(root.alpha * u);
}

/// 4/(1 + 4 alpha^2): the sharp constant at p = 2.
inline double exact_constant_p2(const Interval& iv)
{
    const double alpha = solve_alpha_p2(iv.log_length()).alpha;
    return 4.0 / (1.0 + 4.0 * alpha * alpha);
}

struct RatioResult {
    double value = 0.0;
    double error_budget = 0.0;
};

namespace detail {

inline void check_tolerance(double tol)
{
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw DomainError("quadrature tolerance must lie in [1e-12, 1e-4]");
}

inline double relative_budget(const QuadResult& r)
{
    return r.value != 0.0 ? std::fabs(r.error / r.value) : r.error;
}

inline void require_converged(const QuadResult& r, const char* what)
{
    if (!r.converged)
        throw QuadratureError(std::string(what) + ": adaptive quadrature did not converge", r.error);
}

}  // namespace detail

/// Hardy ratio of an arbitrary nonnegative f on [a, b], with f > 0 at every
/// interior node. Integrates in u = ln(x/a); the inner prefix is accumulated
/// panel by panel so the nested quadrature stays linear in the panel count.
template <class F>
RatioResult ratio_continuous_generic(const F& f, const Interval& iv, const Exponent& e, double tol)
{
    detail::check_tolerance(tol);
    const double a = iv.a();
    const double L = iv.log_length();
    const double p = e.p();

    auto density = [&](double u) {
        const double v = f(a * std::exp(u));
        const bool interior = u > 0.0 && u < L;
        if (!(v >= 0.0) || (interior && !(v > 0.0)))
            throw WitnessInvalid("ratio_continuous: witness is not positive on the interval");
        return v * a * std::exp(u);
    };

    const auto panels = static_cast<std::size_t>(std::max(64.0, 16.0 * std::ceil(L)));
    const double h = L / static_cast<double>(panels);
    const double panel_tol = tol / static_cast<double>(panels);

    CompensatedSum numerator, num_err;
    double prefix = 0.0;
    for (std::size_t j = 0; j < panels; ++j) {
        const double u0 = h * static_cast<double>(j);
        const double u1 = (j + 1 == panels) ? L : h * static_cast<double>(j + 1);
        const double base = prefix;
        auto outer = [&](double u) {
            const double inner = base + adaptive_simpson(density, u0, u, 0.1 * panel_tol).value;
            const double x = a * std::exp(u);
            return std::pow(inner / x, p) * x;
        };
        const QuadResult piece = adaptive_simpson(outer, u0, u1, panel_tol);
        detail::require_converged(piece, "ratio_continuous");
        numerator.add(piece.value);
        num_err.add(piece.error);
        prefix += adaptive_simpson(density, u0, u1, 0.1 * panel_tol).value;
    }

    const QuadResult den = adaptive_simpson(
        [&](double u) {
            const double v = density(u) / (a * std::exp(u));
            return std::pow(v, p) * a * std::exp(u);
        },
        0.0, L, tol);
    detail::require_converged(den, "ratio_continuous");

    RatioResult out;
    out.value = numerator.value() / den.value;
    out.error_budget = out.value * (num_err.value() / numerator.value() + detail::relative_budget(den));
    return out;
}

/// Hardy ratio of a closed-form witness over `iv`, which must have the
/// witness's log-length. fstar and f_ab_p2 use their closed-form prefix, which
/// collapses the ratio to q^p \int sin^p(alpha u) du / \int h(u)^p du.
inline RatioResult ratio_continuous_detail(const ExtremalFunction& f, const Interval& iv, double tol)
{
    detail::check_tolerance(tol);
    const double L = iv.log_length();
    if (std::fabs(L - f.log_length()) > 1e-12 * L)
        throw DomainError("ratio_continuous: interval does not match the witness's log-length");

    if (!f.has_closed_form_prefix()) {
        const Interval unit = Interval::from_log_length(L);
        return ratio_continuous_generic(f, unit, f.exponent(), tol);
    }

    const double p = f.exponent().p();
    const double alpha = f.alpha();
    const double interior_end = L * (1.0 - 1e-12);

    const QuadResult num = adaptive_simpson(
        [&](double u) { return std::pow(std::max(0.0, std::sin(alpha * u)), p); }, 0.0, L, tol);
    const QuadResult den = adaptive_simpson(
        [&](double u) {
            const double h = f.numerator_at_log(u);
            if (!(h > 0.0) && u < interior_end)
                throw WitnessInvalid("ratio_continuous: witness is not positive on the interval");
            return std::pow(std::max(0.0, h), p);
        },
        0.0, L, tol);
    detail::require_converged(num, "ratio_continuous");
    detail::require_converged(den, "ratio_continuous");

    RatioResult out;
    out.value = f.exponent().qp() * num.value / den.value;
    out.error_budget = out.value * (detail::relative_budget(num) + detail::relative_budget(den));
    return out;
}

inline double ratio_continuous(const ExtremalFunction& f, const Interval& iv, double tol)
{
    return ratio_continuous_detail(f, iv, tol).value;
}

namespace detail {

constexpr std::size_t certificate_grid = 2048;

/// Tail integrals T(t) = \int_t^end w(u) e^{-(u-t)/q} du on a uniform grid
/// over [0, grid_end], via T_i = e^{-du/q} T_{i+1} + \int_{u_i}^{u_{i+1}}.
/// The exponential keeps every value O(1) whatever L is.
template <class W>
struct TailTable {
    const W& w;
    double q;
    double end;
    double tol;
    std::vector<double> u;
    std::vector<double> tail;
    std::vector<double> err;

    TailTable(const W& weight, double q_, double grid_end, double end_, double tol_, std::size_t n)
        : w(weight), q(q_), end(end_), tol(tol_), u(n), tail(n), err(n)
    {
        for (std::size_t i = 0; i < n; ++i)
            u[i] = grid_end * static_cast<double>(i) / static_cast<double>(n - 1);
        const QuadResult last = piece(u[n - 1], end);
        tail[n - 1] = last.value;
        err[n - 1] = last.error;
        for (std::size_t i = n - 1; i-- > 0;) {
            const double decay = std::exp(-(u[i + 1] - u[i]) / q);
            const QuadResult r = piece(u[i], u[i + 1]);
            tail[i] = decay * tail[i + 1] + r.value;
            err[i] = decay * err[i + 1] + r.error;
        }
    }

    QuadResult piece(double t, double s) const
    {
        QuadResult r = adaptive_simpson([&](double x) { return w(x) * std::exp(-(x - t) / q); }, t, s,
                                        tol * std::max(s - t, 1e-300) / std::max(end, 1.0));
        require_converged(r, "certificate");
        return r;
    }

    /// T(t) for t between grid points, reusing the nearest tabulated tail.
    std::pair<double, double> at(double t) const
    {
        auto it = std::upper_bound(u.begin(), u.end(), t);
        if (it == u.end()) {
            const QuadResult r = piece(t, end);
            return {r.value, r.error};
        }
        const auto j = static_cast<std::size_t>(it - u.begin());
        const QuadResult r = piece(t, u[j]);
        const double decay = std::exp(-(u[j] - t) / q);
        return {r.value + decay * tail[j], r.error + decay * err[j]};
    }
};

/// Scan an M-functional on the table grid and polish the best three grid
/// points with Brent's method on the neighbouring cells. `sign` = +1 finds
/// the minimum, -1 the maximum.
template <class Table, class M>
std::pair<double, double> extremize(const Table& table, const M& m_at, double sign, double hi_limit)
{
    const std::size_t n = table.u.size();
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i)
        vals[i] = sign * m_at(table.u[i], table.tail[i]);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                      [&](std::size_t x, std::size_t y) { return vals[x] < vals[y] || (vals[x] == vals[y] && x < y); });

    double best_u = table.u[order[0]];
    double best_v = vals[order[0]];
    for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t i = order[r];
        const double lo = table.u[i == 0 ? 0 : i - 1];
        const double hi = std::min(table.u[std::min(i + 1, n - 1)], hi_limit);
        if (!(hi > lo))
            continue;
        auto obj = [&](double t) { return sign * m_at(t, table.at(t).first); };
        const auto res = boost::math::tools::brent_find_minima(obj, lo, hi, 40);
        if (res.second < best_v) {
            best_v = res.second;
            best_u = res.first;
        }
    }
    return {best_u, sign * best_v};
}

}  // namespace detail

/// Lower bound min_t M(t) built from f*, where
///   M(t) = f*(t)^{-p/q} \int_t^b (\int_1^x f*)^{p/q} x^{-p} dx
///        = q^{p/q} \int_{ln t}^{L} sin^{p/q}(alpha u) e^{-(u - ln t)/q} du / h(ln t)^{p/q}.
/// M(b) is 0/0 since f*(b) = 0, so the scan stops at u = L(1 - 1e-6).
inline CertificateResult lower_certificate_continuous(const Interval& iv, const Exponent& e, double tol)
{
    detail::check_tolerance(tol);
    const double L = iv.log_length();
    const ExtremalFunction f = ExtremalFunction::fstar(L, e);
    const double alpha = f.alpha();
    const double pq = e.p_over_q();
    const double scale = std::pow(e.q(), pq);
    const double grid_end = L * (1.0 - 1e-6);

    auto w = [&](double u) { return std::pow(std::max(0.0, std::sin(alpha * u)), pq); };
    const detail::TailTable table(w, e.q(), grid_end, L, tol, detail::certificate_grid);

    auto m_at = [&](double t, double tail) {
        const double h = f.numerator_at_log(t);
        if (!(h > 0.0))
            throw WitnessInvalid("lower_certificate_continuous: f* vanished inside the scan range");
        return scale * tail / std::pow(h, pq);
    };
    const auto [u_best, value] = detail::extremize(table, m_at, 1.0, grid_end);

    CertificateResult c;
    c.side = Side::lower;
    c.value = value;
    c.extremizer_location = u_best;
    c.grid_points = static_cast<int>(detail::certificate_grid);
    c.error_budget = scale * table.at(u_best).second / std::pow(f.numerator_at_log(u_best), pq);
    c.witness = "fstar alpha=" + std::to_string(alpha) + " scan u<=L(1-1e-6)";
    return c;
}

/// Upper bound max_t M(g, t) built from g, using the closed form
///   \int_1^x g^q = q/(1 + alpha^2 q^2) [x^{1/q}(cos(alpha ln x) + alpha q sin(alpha ln x)) - 1],
/// so that M(g, t) = \int_{ln t}^L Ghat(u)^{p/q} e^{-(u - ln t)/q} du / cos^{p/q}(alpha ln t)
/// with Ghat = e^{-u/q} \int_1^{e^u} g^q.
inline CertificateResult upper_certificate_continuous(const Interval& iv, const Exponent& e, double tol)
{
    detail::check_tolerance(tol);
    if (!e.theorems_supported())
        throw DomainError("upper_certificate_continuous: p must be >= 2");
    const double L = iv.log_length();
    const double q = e.q();
    const double alpha = alpha_upper_weight(L, e.p());
    const double pq = e.p_over_q();
    const double norm = q / (1.0 + alpha * alpha * q * q);

    auto w = [&](double u) {
        const double t = alpha * u;
        const double g = norm * (std::cos(t) + alpha * q * std::sin(t) - std::exp(-u / q));
        return std::pow(std::max(0.0, g), pq);
    };
    const detail::TailTable table(w, q, L, L, tol, detail::certificate_grid);

    auto m_at = [&](double t, double tail) { return tail / std::pow(std::cos(alpha * t), pq); };
    const auto [u_best, value] = detail::extremize(table, m_at, -1.0, L);

    CertificateResult c;
    c.side = Side::upper;
    c.value = value;
    c.extremizer_location = u_best;
    c.grid_points = static_cast<int>(detail::certificate_grid);
    c.error_budget = table.at(u_best).second / std::pow(std::cos(alpha * u_best), pq);
    c.witness = "weight_g alpha=" + std::to_string(alpha);
    return c;
}

struct ClassicalBound {
    double B = 0.0;
    double lower = 0.0;  // B/(p-1)
    double upper = 0.0;  // q^p B
    double argmax_u = 0.0;
};

/// B = sup (x-a)^{p-1}(x^{1-p} - b^{1-p}) and the classical two-sided bound.
/// Scale-free form on (1, e^L): (1 - e^{-u})^{p-1} (1 - e^{-(p-1)(L-u)}).
inline ClassicalBound b_bound_classical(const Interval& iv, const Exponent& e)
{
    const double L = iv.log_length();
    const double pm1 = e.p() - 1.0;
    auto phi = [&](double u) { return std::pow(-std::expm1(-u), pm1) * -std::expm1(-pm1 * (L - u)); };

    constexpr std::size_t grid = 1000;
    std::size_t best = 1;
    double best_v = -1.0;
    for (std::size_t i = 1; i <= grid; ++i) {
        const double u = L * static_cast<double>(i) / static_cast<double>(grid + 1);
        const double v = phi(u);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    const double lo = L * static_cast<double>(best - 1) / static_cast<double>(grid + 1);
    const double hi = L * static_cast<double>(best + 1) / static_cast<double>(grid + 1);
    const auto res = boost::math::tools::brent_find_minima([&](double u) { return -phi(u); }, lo, hi, 52);

    ClassicalBound out;
    out.B = std::max(best_v, -res.second);
    out.argmax_u = -res.second >= best_v ? res.first : L * static_cast<double>(best) / static_cast<double>(grid + 1);
    out.lower = out.B / pm1;
    out.upper = e.qp() * out.B;
    return out;
}

}  // namespace hardy
