#pragma once

#include <string>

namespace hardy {

enum class Side { lower, upper };

inline const char* to_string(Side s) { return s == Side::lower ? "lower" : "upper"; }

/// A one-sided bound on a sharp constant, read off an M-functional.
struct CertificateResult {
    double value = 0.0;
    Side side = Side::lower;
    std::string witness;
    double error_budget = 0.0;
    /// Position of the extremum: u = ln t for the continuous problem, the
    /// 1-based index i for sequences.
    double extremizer_location = 0.0;
    /// Number of grid points scanned before refinement (0 for exact scans).
    int grid_points = 0;
};

/// lower.value <= upper.value once both error budgets are granted.
inline bool sandwich_holds(const CertificateResult& lower, const CertificateResult& upper, double slack = 0.0)
{
    return lower.value <= upper.value + lower.error_budget + upper.error_budget + slack;
}

}  // namespace hardy
