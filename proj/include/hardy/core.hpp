#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

/// q = p/(p-1), the conjugate exponent.
inline double conjugate(double p)
{
    if (!(p > 1.0) || !std::isfinite(p))
        throw DomainError("conjugate: p must be > 1");
    return p / (p - 1.0);
}

/// (p/(p-1))^p, the constant of the unrestricted inequality.
inline double hardy_constant(double p)
{
    const double q = conjugate(p);
    return std::pow(q, p);
}

/// Conjugate pair (p, q) with q^p cached.
///
/// Construction accepts any p > 1. The finite-interval and finite-sequence
/// estimates are only proved for p >= 2; `theorems_supported()` is false
/// below that and callers must not assert theorem-derived invariants there.
class Exponent {
public:
    explicit Exponent(double p) : p_(p), q_(conjugate(p)), qp_(std::pow(q_, p)) {}

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    double qp() const noexcept { return qp_; }
    /// p/q, which equals p - 1.
    double p_over_q() const noexcept { return p_ - 1.0; }
    bool theorems_supported() const noexcept { return p_ >= 2.0; }

private:
    double p_;
    double q_;
    double qp_;
};

/// Domain (a, b) of the continuous problem. Only L = ln(b/a) matters for the
/// sharp constant, so every computation rescales to (1, b/a).
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b)
    {
        if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
            throw DomainError("interval: require 0 < a < b < inf");
        L_ = std::log(b) - std::log(a);
        if (!(L_ > 0.0))
            throw DomainError("interval: ln(b/a) underflows to zero");
    }

    /// Interval (1, e^L), built directly from its log-length.
    static Interval from_log_length(double L)
    {
        if (!(L > 0.0) || !std::isfinite(L))
            throw DomainError("L must be positive");
        Interval iv;
        iv.a_ = 1.0;
        iv.b_ = std::exp(L);
        iv.L_ = L;
        return iv;
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double log_length() const noexcept { return L_; }

private:
    Interval() = default;

    double a_ = 1.0;
    double b_ = 1.0;
    double L_ = 0.0;
};

namespace detail {

inline double log_poly(double u, double q) { return u * u - 2.0 * q * u + 2.0 * q * q; }

}  // namespace detail

/// I(k) = q k^{1/q} (ln^2 k - 2q ln k + 2q^2) - 2q^3 = \int_1^k ln^2 x * x^{-1/p} dx.
inline double log_weight_antiderivative(double k, const Exponent& e)
{
    if (!(k >= 1.0))
        throw DomainError("log_weight_antiderivative: k must be >= 1");
    const double q = e.q();
    const double u = std::log(k);
    return q * std::exp(u / q) * detail::log_poly(u, q) - 2.0 * q * q * q;
}

/// I(k+1) - I(k) without the cancellation of subtracting two large values.
inline double log_weight_increment(double k, const Exponent& e)
{
    if (!(k >= 1.0))
        throw DomainError("log_weight_increment: k must be >= 1");
    const double q = e.q();
    const double u0 = std::log(k);
    const double d = std::log1p(1.0 / k);
    const double u1 = u0 + d;
    const double poly_step = d * (2.0 * u0 + d - 2.0 * q);
    return q * std::exp(u0 / q) * (std::expm1(d / q) * detail::log_poly(u1, q) + poly_step);
}

/// Neumaier-compensated running sum. Order of `add` calls fixes the result.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated sum in index order. Non-finite inputs are a domain error and a
/// non-finite total is reported as overflow.
inline double compensated_sum(std::span<const double> values)
{
    CompensatedSum acc;
    for (double v : values) {
        if (!std::isfinite(v))
            throw DomainError("compensated_sum: non-finite input");
        acc.add(v);
    }
    const double s = acc.value();
    if (!std::isfinite(s))
        throw OverflowError("compensated_sum: overflow");
    return s;
}

}  // namespace hardy
