#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hardy/errors.hpp"

namespace hardy {

enum class RateModel { c_over_log2, two_term };

inline const char* to_string(RateModel m) { return m == RateModel::c_over_log2 ? "c_over_log2" : "two_term"; }

inline RateModel parse_rate_model(std::string_view s)
{
    if (s == "c_over_log2")
        return RateModel::c_over_log2;
    if (s == "two_term")
        return RateModel::two_term;
    throw DomainError("unknown rate model: " + std::string(s));
}

struct RatePoint {
    double n = 0.0;
    double deficit = 0.0;
};

/// deficit ~ c2/ln^2(n+1)            (c_over_log2)
/// deficit ~ c2/ln^2(n+1) + c3/ln^3(n+1)  (two_term)
struct RateFit {
    RateModel model = RateModel::two_term;
    std::vector<double> coefficients;
    double residual_norm = 0.0;  // Euclidean norm of the relative residuals
    double n_min = 0.0;
    double n_max = 0.0;
    std::size_t points = 0;
};

inline constexpr std::size_t min_rate_points = 5;

/// Least-squares fit weighted by 1/deficit, so every point counts relatively.
inline RateFit fit_rate(std::span<const RatePoint> pts, RateModel model)
{
    if (pts.size() < min_rate_points)
        throw DomainError("rate fit needs at least 5 points");
    const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index cols = model == RateModel::c_over_log2 ? 1 : 2;
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    RateFit fit;
    fit.model = model;
    fit.points = pts.size();
    fit.n_min = pts.front().n;
    fit.n_max = pts.front().n;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const RatePoint& pt = pts[static_cast<std::size_t>(r)];
        if (!(pt.deficit > 0.0) || !std::isfinite(pt.deficit))
            throw DomainError("rate fit needs positive finite deficits");
        const double l = std::log1p(pt.n);
        const double w = 1.0 / pt.deficit;
        X(r, 0) = w / (l * l);
        if (cols == 2)
            X(r, 1) = w / (l * l * l);
        y(r) = 1.0;
        fit.n_min = std::min(fit.n_min, pt.n);
        fit.n_max = std::max(fit.n_max, pt.n);
    }
    const Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
    fit.coefficients.assign(c.data(), c.data() + c.size());
    fit.residual_norm = (X * c - y).norm();
    return fit;
}

}  // namespace hardy
