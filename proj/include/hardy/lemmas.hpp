#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/core.hpp"
#include "hardy/parallel.hpp"
#include "hardy/roots.hpp"

// Executable forms of the auxiliary inequalities behind the certificates.
// Every predicate reports a signed margin oriented so that margin >= 0 means
// the inequality holds; L2_15 is an asymptotic identity and is only measured.

namespace hardy::lemmas {

enum class LemmaId { L2_1, L2_2, L2_3, L2_4, L2_5, L2_6, L2_7, L2_8, L2_9, L2_10, L2_11, L2_12, L2_13, L2_14, L2_15 };

enum class Strictness { strict, diagnostic };

inline constexpr std::array<LemmaId, 15> all_ids{
    LemmaId::L2_1, LemmaId::L2_2,  LemmaId::L2_3,  LemmaId::L2_4,  LemmaId::L2_5,
    LemmaId::L2_6, LemmaId::L2_7,  LemmaId::L2_8,  LemmaId::L2_9,  LemmaId::L2_10,
    LemmaId::L2_11, LemmaId::L2_12, LemmaId::L2_13, LemmaId::L2_14, LemmaId::L2_15};

inline std::string to_string(LemmaId id)
{
    return "L2_" + std::to_string(static_cast<int>(id) + 1);
}

inline const char* to_string(Strictness s) { return s == Strictness::strict ? "strict" : "diagnostic"; }

inline LemmaId parse_id(std::string_view s)
{
    for (LemmaId id : all_ids)
        if (s == to_string(id))
            return id;
    throw DomainError("unknown lemma id: " + std::string(s));
}

inline Strictness strictness(LemmaId id)
{
    return id == LemmaId::L2_15 ? Strictness::diagnostic : Strictness::strict;
}

/// Free variables of a lemma. Each lemma reads only the fields it needs.
struct LemmaSample {
    double p = 2.0;
    double x = 0.0;
    double alpha = 0.0;  // exponent in L2_1..L2_3, derived frequency in L2_4/L2_5
    double L = 0.0;      // ln b
    double u = 0.0;      // ln x for the pointwise lemmas on [1, b]
    double eps = 0.0;
    double A = 0.0;
    std::int64_t i = 1;
    std::int64_t n = 1;
};

struct LemmaCheck {
    LemmaId id = LemmaId::L2_1;
    LemmaSample sample;
    bool holds = true;
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    Strictness strictness = Strictness::strict;
};

/// Relative rounding allowance granted to every margin.
inline constexpr double rounding_allowance = 1e-12;

inline std::string describe(LemmaId id, const LemmaSample& s)
{
    std::ostringstream os;
    os.precision(17);
    switch (id) {
    case LemmaId::L2_1:
    case LemmaId::L2_2:
    case LemmaId::L2_3: os << "x=" << s.x << ";alpha=" << s.alpha; break;
    case LemmaId::L2_4: os << "p=" << s.p << ";L=" << s.L << ";u=" << s.u; break;
    case LemmaId::L2_5: os << "p=" << s.p << ";eps=" << s.eps << ";L=" << s.L << ";u=" << s.u; break;
    case LemmaId::L2_10: os << "p=" << s.p << ";i=" << s.i; break;
    case LemmaId::L2_11:
    case LemmaId::L2_13:
    case LemmaId::L2_14: os << "p=" << s.p << ";n=" << s.n; break;
    case LemmaId::L2_15: os << "p=" << s.p << ";A=" << s.A << ";i=" << s.i << ";n=" << s.n; break;
    default: os << "p=" << s.p << ";i=" << s.i << ";n=" << s.n; break;
    }
    return os.str();
}

namespace detail {

struct Pq {
    double p, q;
    explicit Pq(double p_) : p(p_), q(conjugate(p_)) {}
    double r() const { return p - 1.0; }  // p/q
};

inline double P(double u, double q) { return u * u - 2.0 * q * u + 2.0 * q * q; }
inline double P3(double u, double q) { return u * u - q * u + 1.5 * q * q; }
inline double kpow(double k, double e) { return std::exp(e * std::log(k)); }

// summands ------------------------------------------------------------------

inline double s6(double k, const Pq& c)
{
    return kpow(k, -1.0 - 1.0 / c.q) * std::pow(1.0 - 1.0 / (c.p * kpow(k, 1.0 / c.q)), c.r());
}

inline double s7(double k, const Pq& c) { return P(std::log(k), c.q) * kpow(k, -1.0 - 1.0 / c.q); }

inline double s8(double k, const Pq& c) { return P(std::log(k), c.q) * kpow(k, -1.0 - 2.0 / c.q); }

inline double bracket(double k, const Pq& c)
{
    return kpow(k, 1.0 / c.q) * P(std::log(k), c.q) - 2.0 * c.q * c.q;
}

// k^{-p}[(k^{1/q})^{p/q-1} - (k^{1/q} - 1/p)^{p/q-1}][k^{1/q} P(ln k) - 2q^2]
inline double s9(double k, const Pq& c)
{
    const double e = c.r() - 1.0;
    const double shrink = -std::expm1(e * std::log1p(-1.0 / (c.p * kpow(k, 1.0 / c.q))));
    return kpow(k, -c.p + e / c.q) * shrink * bracket(k, c);
}

// k^{-p}(k^{1/q} - 1/p)^{p/q-1}[k^{1/q} P(ln k) - 2q^2]
inline double s12(double k, const Pq& c)
{
    const double e = c.r() - 1.0;
    const double factor = std::pow(1.0 - 1.0 / (c.p * kpow(k, 1.0 / c.q)), e);
    return kpow(k, -c.p + e / c.q) * factor * bracket(k, c);
}

inline double t2q(double k, const Pq& c) { return kpow(k, -1.0 - 2.0 / c.q); }

/// sum_{j>=2} (-1)^j C(r, j) x^j and sum_{j>=2} j (-1)^j C(r, j) x^j, 0 <= x < 1.
inline std::pair<double, double> binomial_tails(double r, double x)
{
    if (x == 0.0)
        return {0.0, 0.0};
    if (x < 0.05) {
        double coef = -r;  // (-1)^1 C(r, 1)
        double xp = x;
        double s0 = 0.0, s1 = 0.0;
        for (int j = 2; j < 400; ++j) {
            coef *= -(r - j + 1) / j;
            xp *= x;
            const double t = coef * xp;
            s0 += t;
            s1 += j * t;
            if (std::fabs(t) * j <= 1e-18 * (std::fabs(s1) + 1e-300))
                break;
        }
        return {s0, s1};
    }
    const double lg = std::log1p(-x);
    return {std::expm1(r * lg) + r * x, -r * x * std::expm1((r - 1.0) * lg)};
}

inline double s15(double k, const Pq& c, double A, double ln2n1)
{
    if (k < 2.0)
        return 0.0;
    const double lk = std::log(k);
    const auto [t0, t1] = binomial_tails(c.r(), lk * lk / (A * ln2n1));
    return kpow(k, -1.0 - 1.0 / c.q) * (t0 - 2.0 * c.q / lk * t1);
}

// right-hand sides --------------------------------------------------------

inline double rhs6(double i, double n, const Pq& c)
{
    return -c.q * kpow(i, -1.0 / c.q) * std::expm1(-std::log1p((n + 1.0 - i) / i) / c.q);
}

inline double rhs7(double i, double n, const Pq& c)
{
    const double li = std::log(i), ln = std::log(n), q = c.q;
    return q * (li * li + 2 * q * q) * kpow(i, -1.0 / q) + P(li, q) / (2.0 * kpow(i, 1.0 + 1.0 / q)) -
           q * (ln * ln + 2 * q * q) * kpow(n, -1.0 / q);
}

inline double rhs8(double i, const Pq& c)
{
    const double li = std::log(i), q = c.q;
    return P(li, q) * kpow(i, -1.0 - 2.0 / q) + q * P3(li, q) / (2.0 * kpow(i, 2.0 / q));
}

inline double rhs9(double i, double n, const Pq& c)
{
    const double li = std::log(i), q = c.q;
    return P(li, q) / (q * kpow(i, 1.0 + 2.0 / q)) + P3(li, q) / (2.0 * kpow(i, 2.0 / q)) -
           2.0 * q * q / (3.0 * kpow(i, 3.0 / q)) + 2.0 * q * q / (3.0 * kpow(n, 3.0 / q));
}

inline double expr10(double i, const Pq& c)
{
    const double li = std::log(i), q = c.q;
    return 2 * q * q - 0.75 + 2 * q / (3 * kpow(i, 2 / q)) - 2 * q / kpow(i, 1 + 1 / q) - q * q / kpow(i, 1 / q) -
           P3(li, q) / (2 * q * kpow(i, 1 / q));
}

/// `tail` = sum_{k=2}^{n} k^{-1-2/q}.
inline double expr11(double tail, const Pq& c)
{
    const double l2 = std::numbers::ln2, q = c.q;
    return (l2 * l2 + 2 * q * q) / kpow(2, 1 / q) + (2.0 / 3.0) * q / kpow(2, 3 / q) - l2 * l2 - 2 * q * tail -
           P3(l2, q) / (q * kpow(2, 1 + 2 / q));
}

/// `tail` = sum_{k=i}^{n} k^{-1-2/q}.
inline double rhs12(double i, double n, double tail, const Pq& c)
{
    const double li = std::log(i), ln = std::log(n), q = c.q;
    return q * (li * li + 2 * q * q) / kpow(i, 1 / q) - q * (ln * ln + 2 * q * q) / kpow(n, 1 / q) -
           2 * q * q * tail - P3(li, q) / (2 * kpow(i, 2 / q)) + 2 * q * q / (3 * kpow(i, 3 / q)) -
           2 * q * q / (3 * kpow(n, 3 / q));
}

inline double main15(double i, const Pq& c, double A, double ln2n1)
{
    const double li = std::log(i);
    return c.q * kpow(i, -1.0 / c.q) * binomial_tails(c.r(), li * li / (A * ln2n1)).first;
}

inline double norm15(double i, double n, const Pq& c, double A, double ln2n1)
{
    return 1.0 / (A * A * ln2n1 * kpow(i, 1.0 / c.q)) + 1.0 / (A * A * kpow(n, 1.0 / c.q));
}

template <class S>
double sum_range(std::int64_t lo, std::int64_t hi, S&& term)
{
    CompensatedSum acc;
    for (std::int64_t k = hi; k >= lo; --k)
        acc.add(term(static_cast<double>(k)));
    return acc.value();
}

inline double log_b0(double p, double eps)
{
    const Pq c(p);
    const double pq = c.p * c.q;
    const double second = 4.0 / (pq * pq);
    const double first = c.p > c.q ? c.q / ((c.p - c.q) * (pq + 1.0) * (pq + 1.0)) : std::numeric_limits<double>::infinity();
    return std::numbers::pi / std::sqrt(std::min(first, second) * eps);
}

inline void require(bool ok, const char* msg)
{
    if (!ok)
        throw DomainError(msg);
}

inline void require_p(double p) { require(p >= 2.0 && std::isfinite(p), "lemma sample: p must be >= 2"); }

inline void require_in(std::int64_t i, std::int64_t n, std::int64_t lo)
{
    require(i >= lo && i <= n, "lemma sample: need lo <= i <= n");
}

inline LemmaCheck finish(LemmaId id, const LemmaSample& s, double lhs, double rhs, bool lhs_below)
{
    LemmaCheck c;
    c.id = id;
    c.sample = s;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lhs_below ? rhs - lhs : lhs - rhs;
    c.strictness = Strictness::strict;
    c.holds = c.margin >= -rounding_allowance * (std::fabs(lhs) + std::fabs(rhs));
    return c;
}

inline double pointwise_alpha_4(const LemmaSample& s) { return std::atan(1.0 / s.p) / s.L; }

inline LemmaCheck check_4(const LemmaSample& in)
{
    require_p(in.p);
    require(in.L > 0.0 && std::isfinite(in.L), "L2_4: need L = ln b > 0");
    require(in.u >= 0.0 && in.u <= in.L, "L2_4: need 1 <= x <= b");
    LemmaSample s = in;
    const Pq c(s.p);
    const double a = pointwise_alpha_4(s);
    s.alpha = a;
    const double t = a * s.u;
    const double cst = std::min(c.q * c.q, (c.p * c.q - 1.0) / 2.0);
    const double lhs = std::pow((std::cos(t) + a * c.q * std::sin(t)) / (1.0 + a * a * c.q * c.q), c.r());
    const double rhs = std::pow(std::cos(t), c.r() - 1.0) * (std::cos(t) + a * c.p * std::sin(t)) / (1.0 + cst * a * a);
    return finish(LemmaId::L2_4, s, lhs, rhs, true);
}

inline LemmaCheck check_5(const LemmaSample& in)
{
    require_p(in.p);
    require(in.eps > 0.0 && in.eps < 1.0, "L2_5: need 0 < eps < 1");
    require(in.L > log_b0(in.p, in.eps), "L2_5: need b > b0(eps)");
    require(in.u >= 0.0 && in.u <= in.L, "L2_5: need 1 <= x <= b");
    LemmaSample s = in;
    const Pq c(s.p);
    const double a = solve_alpha_extremal(s.L, c.q).alpha;
    s.alpha = a;
    const double t = a * s.u;
    const double h = std::max(0.0, a * c.q * std::cos(t) + std::sin(t));
    const double lhs = std::pow(std::max(0.0, std::sin(t)), c.r());
    const double rhs = std::pow(h, c.r() - 1.0) * ((1.0 + c.p * c.q * a * a) * std::sin(t) - a * (c.p - c.q) * std::cos(t)) /
                       (1.0 + (c.p * c.q + s.eps) * a * a);
    return finish(LemmaId::L2_5, s, lhs, rhs, false);
}

}  // namespace detail

/// Evaluate one lemma at one sample. Out-of-domain samples throw DomainError.
inline LemmaCheck check_lemma(LemmaId id, const LemmaSample& s)
{
    using namespace detail;
    switch (id) {
    case LemmaId::L2_1: {
        require(s.x >= 0.0 && s.x <= 1.0 && s.alpha >= 0.0, "L2_1: need 0 <= x <= 1, alpha >= 0");
        const double ax = s.alpha * s.x;
        return finish(id, s, std::pow(1.0 - s.x, s.alpha), 1.0 - ax + 0.5 * ax * ax, true);
    }
    case LemmaId::L2_2:
        require(s.x >= -1.0 && s.alpha >= 0.0 && s.alpha <= 1.0, "L2_2: need x >= -1, 0 <= alpha <= 1");
        return finish(id, s, std::pow(1.0 + s.x, s.alpha), 1.0 + s.alpha * s.x, true);
    case LemmaId::L2_3: {
        require(s.x >= 0.0 && s.alpha >= 0.0 && s.alpha * s.x < 1.0, "L2_3: need x >= 0, alpha >= 0, alpha x < 1");
        const double ax = s.alpha * s.x;
        return finish(id, s, std::pow(1.0 + s.x, s.alpha), 1.0 + ax + ax * ax, true);
    }
    case LemmaId::L2_4: return check_4(s);
    case LemmaId::L2_5: return check_5(s);
    case LemmaId::L2_6:
    case LemmaId::L2_7:
    case LemmaId::L2_8:
    case LemmaId::L2_9: {
        require_p(s.p);
        require_in(s.i, s.n, 1);
        const Pq c(s.p);
        const double i = static_cast<double>(s.i), n = static_cast<double>(s.n);
        if (id == LemmaId::L2_6)
            return finish(id, s, sum_range(s.i, s.n, [&](double k) { return s6(k, c); }), rhs6(i, n, c), true);
        if (id == LemmaId::L2_7)
            return finish(id, s, sum_range(s.i, s.n, [&](double k) { return s7(k, c); }), rhs7(i, n, c), false);
        if (id == LemmaId::L2_8)
            return finish(id, s, sum_range(s.i, s.n, [&](double k) { return s8(k, c); }), rhs8(i, c), true);
        return finish(id, s, sum_range(s.i, s.n, [&](double k) { return s9(k, c); }), rhs9(i, n, c), true);
    }
    case LemmaId::L2_10: {
        require_p(s.p);
        require(s.i >= 2, "L2_10: need i >= 2");
        return finish(id, s, expr10(static_cast<double>(s.i), Pq(s.p)), 0.0, false);
    }
    case LemmaId::L2_11: {
        require_p(s.p);
        require(s.n >= 1, "L2_11: need n >= 1");
        const Pq c(s.p);
        return finish(id, s, expr11(sum_range(2, s.n, [&](double k) { return t2q(k, c); }), c), 0.0, false);
    }
    case LemmaId::L2_12: {
        require_p(s.p);
        require_in(s.i, s.n, 2);
        const Pq c(s.p);
        const double tail = sum_range(s.i, s.n, [&](double k) { return t2q(k, c); });
        return finish(id, s, sum_range(s.i, s.n, [&](double k) { return s12(k, c); }),
                      rhs12(static_cast<double>(s.i), static_cast<double>(s.n), tail, c), false);
    }
    case LemmaId::L2_13:
    case LemmaId::L2_14: {
        require_p(s.p);
        require(s.n >= 1, "L2_13: need n >= 1");
        const Pq c(s.p);
        const double tail = sum_range(2, s.n, [&](double k) { return t2q(k, c); });
        return finish(id, s, sum_range(1, s.n, [&](double k) { return s12(k, c); }),
                      rhs12(2.0, static_cast<double>(s.n), tail, c), false);
    }
    case LemmaId::L2_15: {
        require_p(s.p);
        require(s.A > 1.0, "L2_15: need A > 1");
        require_in(s.i, s.n, 1);
        const Pq c(s.p);
        const double l = std::log1p(static_cast<double>(s.n));
        const double ln2n1 = l * l;
        const double i = static_cast<double>(s.i), n = static_cast<double>(s.n);
        const double lhs = sum_range(s.i, s.n, [&](double k) { return s15(k, c, s.A, ln2n1); });
        const double main = main15(i, c, s.A, ln2n1);
        LemmaCheck out;
        out.id = id;
        out.sample = s;
        out.lhs = lhs;
        out.rhs = main;
        out.margin = (lhs - main) / norm15(i, n, c, s.A, ln2n1);
        out.holds = std::isfinite(out.margin);
        out.strictness = Strictness::diagnostic;
        return out;
    }
    }
    throw DomainError("check_lemma: unknown id");
}

struct HuntSummary {
    LemmaId id = LemmaId::L2_1;
    Strictness strictness = Strictness::strict;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    LemmaCheck worst;
    /// L2_15 only: largest |residual| / (O-term scale) seen.
    double calibrated_constant = 0.0;

    bool passed() const { return strictness == Strictness::diagnostic || failures == 0; }
};

namespace detail {

constexpr std::int64_t max_index = 1'000'000;

inline std::int64_t log_uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    std::uniform_real_distribution<double> d(std::log(static_cast<double>(lo)), std::log(static_cast<double>(hi) + 1.0));
    const auto v = static_cast<std::int64_t>(std::floor(std::exp(d(rng))));
    return std::clamp(v, lo, hi);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Suffix sums sfx[k] = sum_{j=k}^{n} term(j), 1-based, descending order.
template <class T>
std::vector<double> suffix_sums(std::int64_t n, T&& term)
{
    std::vector<double> out(static_cast<std::size_t>(n) + 2, 0.0);
    CompensatedSum acc;
    for (std::int64_t k = n; k >= 1; --k) {
        acc.add(term(static_cast<double>(k)));
        out[static_cast<std::size_t>(k)] = acc.value();
    }
    return out;
}

/// Prefix sums pfx[k] = sum_{j=lo}^{k} term(j) (0 for k < lo).
template <class T>
std::vector<double> prefix_sums(std::int64_t n, std::int64_t lo, T&& term)
{
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    CompensatedSum acc;
    for (std::int64_t k = lo; k <= n; ++k) {
        acc.add(term(static_cast<double>(k)));
        out[static_cast<std::size_t>(k)] = acc.value();
    }
    return out;
}

inline bool is_summation_lemma(LemmaId id)
{
    switch (id) {
    case LemmaId::L2_6:
    case LemmaId::L2_7:
    case LemmaId::L2_8:
    case LemmaId::L2_9:
    case LemmaId::L2_11:
    case LemmaId::L2_12:
    case LemmaId::L2_13:
    case LemmaId::L2_14:
    case LemmaId::L2_15: return true;
    default: return false;
    }
}

/// One group of samples that share their expensive parameters.
inline std::vector<LemmaCheck> run_group(LemmaId id, std::uint64_t seed, std::size_t group, std::size_t count)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(group)};
    std::mt19937_64 rng(seq);
    std::vector<LemmaCheck> out;
    out.reserve(count);

    const double p = uniform(rng, 2.0, 16.0);
    const Pq c(p);
    LemmaSample s;
    s.p = p;

    switch (id) {
    case LemmaId::L2_1:
    case LemmaId::L2_2:
    case LemmaId::L2_3:
    case LemmaId::L2_4:
    case LemmaId::L2_5:
    case LemmaId::L2_10:
        for (std::size_t j = 0; j < count; ++j) {
            LemmaSample t;
            t.p = uniform(rng, 2.0, 16.0);
            if (id == LemmaId::L2_1) {
                t.x = uniform(rng, 0.0, 1.0);
                t.alpha = uniform(rng, 0.0, 16.0);
            } else if (id == LemmaId::L2_2) {
                t.x = -1.0 + log_uniform(rng, 1e-6, 1e6);
                t.alpha = uniform(rng, 0.0, 1.0);
            } else if (id == LemmaId::L2_3) {
                t.alpha = uniform(rng, 0.0, 16.0);
                t.x = t.alpha > 0.0 ? uniform(rng, 0.0, 1.0) / t.alpha * (1.0 - 1e-12) : uniform(rng, 0.0, 10.0);
            } else if (id == LemmaId::L2_4) {
                t.L = log_uniform(rng, 1e-2, 1e3);
                t.u = uniform(rng, 0.0, t.L);
            } else if (id == LemmaId::L2_5) {
                t.eps = uniform(rng, 0.1, 1.0);
                t.L = (log_b0(t.p, t.eps) + std::log(1.01)) * log_uniform(rng, 1.0, 4.0);
                t.u = uniform(rng, 0.0, t.L);
            } else {
                t.i = log_uniform_int(rng, 2, max_index);
            }
            out.push_back(check_lemma(id, t));
        }
        return out;
    default: break;
    }

    if (id == LemmaId::L2_11 || id == LemmaId::L2_13 || id == LemmaId::L2_14) {
        const std::int64_t n_max = log_uniform_int(rng, 1, max_index);
        const auto tail = prefix_sums(n_max, 2, [&](double k) { return t2q(k, c); });
        std::vector<double> lhs;
        if (id != LemmaId::L2_11)
            lhs = prefix_sums(n_max, 1, [&](double k) { return s12(k, c); });
        for (std::size_t j = 0; j < count; ++j) {
            s.n = log_uniform_int(rng, 1, n_max);
            const auto n = static_cast<std::size_t>(s.n);
            if (id == LemmaId::L2_11)
                out.push_back(finish(id, s, expr11(tail[n], c), 0.0, false));
            else
                out.push_back(finish(id, s, lhs[n], rhs12(2.0, static_cast<double>(s.n), tail[n], c), false));
        }
        return out;
    }

    const std::int64_t lo = id == LemmaId::L2_12 ? 2 : 1;
    s.n = log_uniform_int(rng, std::max<std::int64_t>(lo, 1), max_index);
    const double n = static_cast<double>(s.n);
    if (id == LemmaId::L2_15)
        s.A = log_uniform(rng, 1.5, 64.0);
    const double ln1 = std::log1p(n);
    const double ln2n1 = ln1 * ln1;

    std::vector<double> sums;
    std::vector<double> tails;
    switch (id) {
    case LemmaId::L2_6: sums = suffix_sums(s.n, [&](double k) { return s6(k, c); }); break;
    case LemmaId::L2_7: sums = suffix_sums(s.n, [&](double k) { return s7(k, c); }); break;
    case LemmaId::L2_8: sums = suffix_sums(s.n, [&](double k) { return s8(k, c); }); break;
    case LemmaId::L2_9: sums = suffix_sums(s.n, [&](double k) { return s9(k, c); }); break;
    case LemmaId::L2_12:
        sums = suffix_sums(s.n, [&](double k) { return s12(k, c); });
        tails = suffix_sums(s.n, [&](double k) { return t2q(k, c); });
        break;
    case LemmaId::L2_15: sums = suffix_sums(s.n, [&](double k) { return s15(k, c, s.A, ln2n1); }); break;
    default: break;
    }

    for (std::size_t j = 0; j < count; ++j) {
        s.i = log_uniform_int(rng, lo, s.n);
        const auto ii = static_cast<std::size_t>(s.i);
        const double i = static_cast<double>(s.i);
        switch (id) {
        case LemmaId::L2_6: out.push_back(finish(id, s, sums[ii], rhs6(i, n, c), true)); break;
        case LemmaId::L2_7: out.push_back(finish(id, s, sums[ii], rhs7(i, n, c), false)); break;
        case LemmaId::L2_8: out.push_back(finish(id, s, sums[ii], rhs8(i, c), true)); break;
        case LemmaId::L2_9: out.push_back(finish(id, s, sums[ii], rhs9(i, n, c), true)); break;
        case LemmaId::L2_12: out.push_back(finish(id, s, sums[ii], rhs12(i, n, tails[ii], c), false)); break;
        case LemmaId::L2_15: {
            LemmaCheck r;
            r.id = id;
            r.sample = s;
            r.lhs = sums[ii];
            r.rhs = main15(i, c, s.A, ln2n1);
            r.margin = (r.lhs - r.rhs) / norm15(i, n, c, s.A, ln2n1);
            r.holds = std::isfinite(r.margin);
            r.strictness = Strictness::diagnostic;
            out.push_back(r);
            break;
        }
        default: break;
        }
    }
    return out;
}

}  // namespace detail

/// Draw `count` samples from the lemma's domain and report the smallest margin.
///
/// p is uniform on [2, 16]; i, n are log-uniform up to 1e6; continuous
/// variables are uniform over their stated ranges. Samples come in groups that
/// share (p, n) and differ in i (or in n for the prefix-sum lemmas), so a
/// group's sums cost one O(n) pass. Results depend only on (id, count, seed),
/// never on `threads`.
inline HuntSummary hunt(LemmaId id, std::size_t count, std::uint64_t seed, unsigned threads = 1)
{
    if (count < 1)
        throw DomainError("hunt: count must be >= 1");
    const std::size_t group_size = detail::is_summation_lemma(id) ? 200 : 1000;
    const std::size_t groups = (count + group_size - 1) / group_size;
    std::vector<std::vector<LemmaCheck>> results(groups);
    parallel_for(groups, threads, [&](std::size_t g) {
        const std::size_t this_count = std::min(group_size, count - g * group_size);
        results[g] = detail::run_group(id, seed, g, this_count);
    });

    HuntSummary h;
    h.id = id;
    h.strictness = strictness(id);
    for (const auto& group : results) {
        for (const LemmaCheck& c : group) {
            ++h.samples;
            if (h.strictness == Strictness::diagnostic) {
                const double v = std::fabs(c.margin);
                if (v > h.calibrated_constant || h.samples == 1) {
                    h.calibrated_constant = v;
                    h.worst = c;
                }
                continue;
            }
            if (!c.holds)
                ++h.failures;
            if (c.margin < h.min_margin) {
                h.min_margin = c.margin;
                h.worst = c;
            }
        }
    }
    if (h.strictness == Strictness::diagnostic)
        h.min_margin = std::numeric_limits<double>::quiet_NaN();
    return h;
}

}  // namespace hardy::lemmas
