#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hardy/certificate.hpp"
#include "hardy/core.hpp"
#include "hardy/roots.hpp"

namespace hardy {

enum class Provenance { astar, mu_weight, default_weight, custom, power_method_output };

inline const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::astar: return "astar";
    case Provenance::mu_weight: return "mu_weight";
    case Provenance::default_weight: return "default_weight";
    case Provenance::custom: return "custom";
    case Provenance::power_method_output: return "power_method_output";
    }
    return "?";
}

struct WitnessSequence {
    std::vector<double> values;
    Provenance provenance = Provenance::custom;
    double p = 2.0;
    /// alpha for astar, A for mu_weight, unused otherwise.
    double param = 0.0;

    std::size_t n() const noexcept { return values.size(); }
};

/// a*_k = F(k+1) - F(k), F(x) = q x^{1/q} sin(alpha ln x), alpha solved on ln(n+1).
///
/// The difference is expanded with expm1 and a product-to-sum identity so the
/// entries keep full relative accuracy for large k.
inline WitnessSequence build_astar(std::size_t n, const Exponent& e)
{
    if (n < 1)
        throw DomainError("build_astar: n must be >= 1");
    const double q = e.q();
    const double alpha = solve_alpha_extremal(std::log1p(static_cast<double>(n)), q).alpha;

    WitnessSequence w;
    w.provenance = Provenance::astar;
    w.p = e.p();
    w.param = alpha;
    w.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i + 1);
        const double u0 = std::log(k);
        const double d = std::log1p(1.0 / k);
        const double s1 = std::sin(alpha * (u0 + d));
        const double dsin = 2.0 * std::cos(alpha * (u0 + 0.5 * d)) * std::sin(0.5 * alpha * d);
        const double v = q * std::exp(u0 / q) * (std::expm1(d / q) * s1 + dsin);
        if (!(v > 0.0))
            throw WitnessInvalid("build_astar: nonpositive entry");
        w.values[i] = v;
    }
    return w;
}

/// mu_k = (A k^{-1/p} - (I(k+1) - I(k)) / ln^2(n+1))^{1/q}, I the ln^2-weight
/// antiderivative.
inline WitnessSequence build_mu_weight(std::size_t n, const Exponent& e, double A)
{
    if (n < 1)
        throw DomainError("build_mu_weight: n must be >= 1");
    if (!(A > 2.0) || !std::isfinite(A))
        throw DomainError("build_mu_weight: A must be > 2");
    const double ln2n = std::pow(std::log1p(static_cast<double>(n)), 2);

    WitnessSequence w;
    w.provenance = Provenance::mu_weight;
    w.p = e.p();
    w.param = A;
    w.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i + 1);
        const double radicand = A * std::pow(k, -1.0 / e.p()) - log_weight_increment(k, e) / ln2n;
        if (!(radicand > 0.0))
            throw InvalidWeight("build_mu_weight: nonpositive radicand, A too small for this n");
        w.values[i] = std::pow(radicand, 1.0 / e.q());
    }
    return w;
}

/// mu_k = k^{-1/(pq)}, the weight that reproduces the unrestricted constant.
inline WitnessSequence build_default_weight(std::size_t n, const Exponent& e)
{
    if (n < 1)
        throw DomainError("build_default_weight: n must be >= 1");
    WitnessSequence w;
    w.provenance = Provenance::default_weight;
    w.p = e.p();
    w.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        w.values[i] = std::pow(static_cast<double>(i + 1), -1.0 / (e.p() * e.q()));
    return w;
}

/// b_k = (1/k) sum_{j<=k} a_j in one compensated prefix pass.
inline std::vector<double> hardy_average(std::span<const double> a)
{
    if (a.empty())
        throw DomainError("hardy_average: empty sequence");
    std::vector<double> b(a.size());
    CompensatedSum s;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s.add(a[k]);
        b[k] = s.value() / static_cast<double>(k + 1);
    }
    return b;
}

namespace detail {

inline double max_entry(std::span<const double> a)
{
    double m = 0.0;
    for (double v : a) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("sequence entries must be finite and nonnegative");
        m = std::max(m, v);
    }
    return m;
}

/// sum b_k^p / sum a_k^p for a already scaled to max 1.
inline double ratio_of_scaled(std::span<const double> a, std::span<const double> b, double p)
{
    CompensatedSum num, den;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num.add(std::pow(b[k], p));
        den.add(std::pow(a[k], p));
    }
    return num.value() / den.value();
}

}  // namespace detail

/// sum_k ((1/k) sum_{j<=k} a_j)^p / sum_k a_k^p: a lower bound for d_n for any a.
inline double hardy_ratio_discrete(std::span<const double> a, const Exponent& e)
{
    const double m = detail::max_entry(a);
    if (!(m > 0.0))
        throw DomainError("hardy_ratio_discrete: all-zero sequence");
    std::vector<double> scaled(a.begin(), a.end());
    for (double& v : scaled)
        v /= m;
    const std::vector<double> b = hardy_average(scaled);
    return detail::ratio_of_scaled(scaled, b, e.p());
}

namespace detail {

/// M_i = suffix_i / denom_i with suffix_i = sum_{k>=i} k^{-p} W_k^{p/q}, where
/// W_k is the prefix sum of `mass`. Suffix sums run in descending index order.
inline std::vector<double> m_functional(std::span<const double> mass, std::span<const double> denom_power_base,
                                        double denom_exponent, const Exponent& e)
{
    const std::size_t n = mass.size();
    std::vector<double> terms(n);
    CompensatedSum prefix;
    for (std::size_t k = 0; k < n; ++k) {
        prefix.add(mass[k]);
        const double W = prefix.value();
        terms[k] = std::exp(e.p_over_q() * std::log(W) - e.p() * std::log(static_cast<double>(k + 1)));
    }
    std::vector<double> M(n);
    CompensatedSum suffix;
    for (std::size_t k = n; k-- > 0;) {
        suffix.add(terms[k]);
        M[k] = suffix.value() / std::pow(denom_power_base[k], denom_exponent);
    }
    return M;
}

inline std::vector<double> scaled_positive(std::span<const double> a, const char* what)
{
    double m = 0.0;
    for (double v : a) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw WitnessInvalid(std::string(what) + ": entries must be strictly positive");
        m = std::max(m, v);
    }
    std::vector<double> s(a.begin(), a.end());
    for (double& v : s)
        v /= m;
    return s;
}

constexpr double discrete_budget_ulps = 64.0;

}  // namespace detail

/// M_i = a_i^{-p/q} sum_{k>=i} k^{-p} (sum_{j<=k} a_j)^{p/q} for every i, in O(n).
inline std::vector<double> lower_m_values(std::span<const double> a, const Exponent& e)
{
    const std::vector<double> s = detail::scaled_positive(a, "lower_certificate_discrete");
    return detail::m_functional(s, s, e.p_over_q(), e);
}

/// M_i = mu_i^{-p} sum_{k>=i} k^{-p} (sum_{j<=k} mu_j^q)^{p/q} for every i, in O(n).
inline std::vector<double> upper_m_values(std::span<const double> mu, const Exponent& e)
{
    const std::vector<double> s = detail::scaled_positive(mu, "upper_certificate_discrete");
    std::vector<double> mass(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        mass[k] = std::pow(s[k], e.q());
    return detail::m_functional(mass, s, e.p(), e);
}

/// d_n >= min_i M_i.
inline CertificateResult lower_certificate_discrete(std::span<const double> a, const Exponent& e)
{
    const std::vector<double> M = lower_m_values(a, e);
    const auto it = std::min_element(M.begin(), M.end());
    CertificateResult c;
    c.side = Side::lower;
    c.value = a.size() == 1 ? 1.0 : *it;
    c.extremizer_location = static_cast<double>(it - M.begin() + 1);
    c.error_budget = detail::discrete_budget_ulps * std::numeric_limits<double>::epsilon() * c.value;
    c.witness = "sequence n=" + std::to_string(a.size());
    return c;
}

/// d_n <= max_i M_i.
inline CertificateResult upper_certificate_discrete(std::span<const double> mu, const Exponent& e)
{
    const std::vector<double> M = upper_m_values(mu, e);
    const auto it = std::max_element(M.begin(), M.end());
    CertificateResult c;
    c.side = Side::upper;
    c.value = mu.size() == 1 ? 1.0 : *it;
    c.extremizer_location = static_cast<double>(it - M.begin() + 1);
    c.error_budget = detail::discrete_budget_ulps * std::numeric_limits<double>::epsilon() * c.value;
    c.witness = "weight n=" + std::to_string(mu.size());
    return c;
}

struct PowerMethodResult {
    double value = 0.0;
    WitnessSequence witness;
    int iterations = 0;
    double residual = 0.0;  // relative change of the normalized iterate at the last step
    bool converged = false;
};

namespace detail {

inline void normalize_max(std::vector<double>& a)
{
    const double m = *std::max_element(a.begin(), a.end());
    for (double& v : a)
        v /= m;
}

/// Nonlinear power iteration for the l_p -> l_p norm of the averaging operator H:
///   y = H a,  z_j = sum_{k>=j} y_k^{p-1} / k,  a <- z^{1/(p-1)}.
/// The Rayleigh-type ratio |Ha|_p^p / |a|_p^p never decreases along the
/// iteration; a decrease beyond rounding is a logic error.
inline PowerMethodResult power_iterate(std::vector<double> a, const Exponent& e, double tol, int max_iter)
{
    const double p = e.p();
    const std::size_t n = a.size();
    normalize_max(a);

    PowerMethodResult out;
    double prev = -1.0;
    double residual = std::numeric_limits<double>::infinity();
    std::vector<double> z(n);
    for (int it = 1; it <= max_iter; ++it) {
        const std::vector<double> y = hardy_average(a);
        const double r = ratio_of_scaled(a, y, p);
        if (prev > 0.0 && r < prev * (1.0 - 1e-12))
            throw std::logic_error("dn_power_method: ratio decreased along the iteration");
        out.value = std::max(out.value, r);
        out.iterations = it;
        if (prev > 0.0 && std::fabs(r - prev) <= tol * r && residual < std::sqrt(tol)) {
            out.converged = true;
            break;
        }
        prev = r;

        CompensatedSum s;
        for (std::size_t k = n; k-- > 0;) {
            s.add(std::pow(y[k], p - 1.0) / static_cast<double>(k + 1));
            z[k] = s.value();
        }
        for (std::size_t k = 0; k < n; ++k)
            z[k] = std::pow(z[k], 1.0 / (p - 1.0));
        normalize_max(z);

        CompensatedSum diff, norm;
        for (std::size_t k = 0; k < n; ++k) {
            diff.add((z[k] - a[k]) * (z[k] - a[k]));
            norm.add(a[k] * a[k]);
        }
        residual = std::sqrt(diff.value() / norm.value());
        a.swap(z);
    }
    out.residual = residual;
    out.witness.values = std::move(a);
    out.witness.provenance = Provenance::power_method_output;
    out.witness.p = p;
    return out;
}

}  // namespace detail

/// d_n by nonlinear power iteration from a_k = k^{-1/p} and from one seeded
/// random positive start; the larger converged value wins.
///
/// Stops when the relative ratio change is below `tol` and the relative
/// change of the iterate is below sqrt(tol). Exceeding `max_iter` returns the
/// best value so far with `converged == false`.
inline PowerMethodResult dn_power_method(std::size_t n, const Exponent& e, double tol = 1e-10, int max_iter = 10000)
{
    if (n < 1)
        throw DomainError("dn_power_method: n must be >= 1");
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw DomainError("dn_power_method: tol must lie in [1e-13, 1e-6]");
    if (max_iter < 1)
        throw DomainError("dn_power_method: max_iter must be >= 1");

    if (n == 1) {
        PowerMethodResult r;
        r.value = 1.0;
        r.converged = true;
        r.witness.values = {1.0};
        r.witness.provenance = Provenance::power_method_output;
        r.witness.p = e.p();
        return r;
    }

    std::vector<double> shaped(n);
    for (std::size_t k = 0; k < n; ++k)
        shaped[k] = std::pow(static_cast<double>(k + 1), -1.0 / e.p());
    PowerMethodResult best = detail::power_iterate(std::move(shaped), e, tol, max_iter);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n));
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::vector<double> random(n);
    for (double& v : random)
        v = unit(rng);
    PowerMethodResult other = detail::power_iterate(std::move(random), e, tol, max_iter);

    if (other.converged && (!best.converged || other.value > best.value))
        best = std::move(other);
    return best;
}

/// One row of a d_n sweep.
struct SweepRecord {
    std::size_t n = 0;
    double p = 0.0;
    double alpha = 0.0;
    double dn_numeric = 0.0;
    double lower_cert = 0.0;
    double upper_cert = 0.0;
    double qp = 0.0;
    std::optional<bool> sandwich_lo_pass;
    std::optional<bool> sandwich_hi_pass;
    int iterations = 0;
    double residual = 0.0;
    double seconds = 0.0;
    bool converged = true;
};

inline const std::vector<double>& default_a_grid()
{
    static const std::vector<double> grid{4.0, 8.0, 16.0, 32.0, 64.0};
    return grid;
}

/// Two-sided estimates for d_n at p = 2 (n >= 3):
///   4(1 - 4/(ln n + 4)) <= d_n,  4 - 16 pi^2 / ln^2(n+1) <= d_n,
///   d_n <= 4(1 - 8/(ln n + 4)^2) = 4 - 32/(ln n + 4)^2.
struct P2Sandwich {
    double log_bound_lower = 0.0;
    double sharp_lower = 0.0;
    double upper = 0.0;
};

inline P2Sandwich p2_sandwich(std::size_t n)
{
    const double ln = std::log(static_cast<double>(n));
    const double ln1 = std::log1p(static_cast<double>(n));
    P2Sandwich s;
    s.log_bound_lower = 4.0 * (1.0 - 4.0 / (ln + 4.0));
    s.sharp_lower = 4.0 - 16.0 * std::numbers::pi * std::numbers::pi / (ln1 * ln1);
    s.upper = 4.0 * (1.0 - 8.0 / ((ln + 4.0) * (ln + 4.0)));
    return s;
}

/// d_n by power iteration, bracketed by the a* ratio below and the best of the
/// default weight and the mu(A) scan above.
inline SweepRecord dn_bounds_report(std::size_t n, const Exponent& e, double tol = 1e-10, int max_iter = 10000,
                                    const std::vector<double>& a_grid = default_a_grid(), double slack = 1e-8)
{
    const auto t0 = std::chrono::steady_clock::now();
    SweepRecord r;
    r.n = n;
    r.p = e.p();
    r.qp = e.qp();

    const PowerMethodResult pm = dn_power_method(n, e, tol, max_iter);
    r.dn_numeric = pm.value;
    r.iterations = pm.iterations;
    r.residual = pm.residual;
    r.converged = pm.converged;

    const WitnessSequence astar = build_astar(n, e);
    r.alpha = astar.param;
    r.lower_cert = n == 1 ? 1.0 : hardy_ratio_discrete(astar.values, e);

    double upper = upper_certificate_discrete(build_default_weight(n, e).values, e).value;
    for (double A : a_grid) {
        try {
            upper = std::min(upper, upper_certificate_discrete(build_mu_weight(n, e, A).values, e).value);
        } catch (const InvalidWeight&) {
        }
    }
    r.upper_cert = upper;

    if (e.p() == 2.0 && n >= 3) {
        const P2Sandwich s = p2_sandwich(n);
        r.sandwich_lo_pass = s.log_bound_lower <= r.dn_numeric + slack && s.sharp_lower <= r.dn_numeric + slack;
        r.sandwich_hi_pass = r.dn_numeric <= s.upper + slack;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace hardy
