#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/continuous.hpp"
#include "hardy/core.hpp"
#include "hardy/discrete.hpp"
#include "hardy/lemmas.hpp"
#include "hardy/parallel.hpp"
#include "hardy/rate_fit.hpp"
#include "hardy/roots.hpp"

// Front end for the hardy_sharp tool. Everything is reachable through run(),
// which never calls exit() and writes only to the streams it is given.

namespace hardy::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

/// Bumped whenever a change can alter a cached d_n value.
inline constexpr const char* algorithm_version = "dn-power-2";
inline constexpr const char* cache_env = "HARDY_SHARP_CACHE";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// formatting ---------------------------------------------------------------

inline std::string fmt_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_flag(const std::optional<bool>& b)
{
    return b ? (*b ? "true" : "false") : "";
}

inline Json json_real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline const char* sweep_header = "n,p,alpha,dn_numeric,lower_cert,upper_cert,qp,sandwich_lo_pass,sandwich_hi_pass,"
                                  "iterations,residual,seconds";

inline std::string sweep_row(const SweepRecord& r)
{
    std::string s = std::to_string(r.n);
    for (double v : {r.p, r.alpha, r.dn_numeric, r.lower_cert, r.upper_cert, r.qp})
        s += ',' + fmt_real(v);
    s += ',' + fmt_flag(r.sandwich_lo_pass) + ',' + fmt_flag(r.sandwich_hi_pass);
    s += ',' + std::to_string(r.iterations) + ',' + fmt_real(r.residual) + ',' + fmt_real(r.seconds);
    return s;
}

inline Json sweep_json(const SweepRecord& r)
{
    Json j;
    j["n"] = r.n;
    j["p"] = json_real(r.p);
    j["alpha"] = json_real(r.alpha);
    j["dn_numeric"] = json_real(r.dn_numeric);
    j["lower_cert"] = json_real(r.lower_cert);
    j["upper_cert"] = json_real(r.upper_cert);
    j["qp"] = json_real(r.qp);
    j["sandwich_lo_pass"] = r.sandwich_lo_pass ? Json(*r.sandwich_lo_pass) : Json(nullptr);
    j["sandwich_hi_pass"] = r.sandwich_hi_pass ? Json(*r.sandwich_hi_pass) : Json(nullptr);
    j["iterations"] = r.iterations;
    j["residual"] = json_real(r.residual);
    j["seconds"] = json_real(r.seconds);
    return j;
}

// parsing helpers ------------------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

inline double parse_real(const std::string& s, const char* what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v))
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": not a number: " + s);
    }
}

inline std::size_t parse_count(const std::string& s, const char* what)
{
    const double v = parse_real(s, what);
    if (v < 1.0 || v != std::floor(v) || v > 1e12)
        throw UsageError(std::string(what) + " must be a positive integer");
    return static_cast<std::size_t>(v);
}

/// "start:stop:count" (geometric, rounded to integers, duplicates dropped) or
/// a comma-separated list.
inline std::vector<std::size_t> parse_n_grid(const std::string& s)
{
    std::vector<std::size_t> out;
    const auto parts = split(s, ':');
    if (s.find(':') != std::string::npos) {
        if (parts.size() != 3)
            throw UsageError("--n-grid: expected start:stop:count");
        const double a = static_cast<double>(parse_count(parts[0], "--n-grid start"));
        const double b = static_cast<double>(parse_count(parts[1], "--n-grid stop"));
        const std::size_t c = parse_count(parts[2], "--n-grid count");
        if (b < a)
            throw UsageError("--n-grid: stop must be >= start");
        for (std::size_t i = 0; i < c; ++i) {
            const double t = c == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(c - 1);
            const auto n = static_cast<std::size_t>(std::llround(a * std::pow(b / a, t)));
            if (out.empty() || out.back() != n)
                out.push_back(n);
        }
    } else {
        for (const auto& tok : split(s, ','))
            out.push_back(parse_count(tok, "--n-grid"));
    }
    if (out.empty())
        throw UsageError("--n-grid is empty");
    return out;
}

inline std::vector<double> parse_a_grid(const std::string& s)
{
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) {
        const double A = parse_real(tok, "--A-grid");
        if (!(A > 2.0))
            throw UsageError("--A-grid entries must be > 2");
        out.push_back(A);
    }
    if (out.empty())
        throw UsageError("--A-grid is empty");
    return out;
}

inline std::string a_grid_key(const std::vector<double>& g)
{
    std::string s;
    for (double A : g)
        s += (s.empty() ? "" : ";") + fmt_real(A);
    return s;
}

// configuration ----------------------------------------------------------------

struct RunConfig {
    std::string command;
    double p = 2.0;
    std::optional<double> L, a, b;
    std::optional<std::string> n;
    std::optional<std::string> n_grid;
    double tol = 1e-10;
    bool tol_set = false;
    int max_iter = 10000;
    std::string a_grid = "4,8,16,32,64";
    std::uint64_t seed = 42;
    unsigned threads = default_threads();
    std::string format = "csv";
    std::optional<std::string> cache;
    std::string model = "two_term";
    std::string ids = "all";
    std::string samples = "100000";
    std::optional<std::string> out;
    std::optional<std::string> points;
    bool no_timing = false;
};

inline void require_p(double p)
{
    if (!(p > 1.0) || !std::isfinite(p))
        throw UsageError("p must be > 1");
}

inline double log_length(const RunConfig& c)
{
    if (c.L) {
        if (!(*c.L > 0.0))
            throw UsageError("L must be positive");
        return *c.L;
    }
    if (!c.a || !c.b)
        throw UsageError("give either --L or both --a and --b");
    if (!(*c.a > 0.0) || !(*c.b > *c.a))
        throw UsageError("need 0 < a < b");
    return std::log(*c.b) - std::log(*c.a);
}

inline std::optional<std::string> cache_path(const RunConfig& c)
{
    if (const char* env = std::getenv(cache_env); env && *env)
        return std::string(env);
    return c.cache;
}

// result cache -------------------------------------------------------------------
//
// Append-only CSV. The first line fingerprints the writer; every row repeats
// the algorithm version so rows written by other versions are skipped.

class SweepCache {
public:
    explicit SweepCache(std::optional<std::string> path) : path_(std::move(path))
    {
        if (!path_)
            return;
        std::ifstream in(*path_);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("version,", 0) == 0)
                continue;
            const auto f = split_keep_empty(line);
            if (f.size() != 18 || f[0] != algorithm_version)
                continue;
            try {
                SweepRecord r;
                r.n = std::stoull(f[5]);
                r.p = std::stod(f[6]);
                r.alpha = std::stod(f[7]);
                r.dn_numeric = std::stod(f[8]);
                r.lower_cert = std::stod(f[9]);
                r.upper_cert = std::stod(f[10]);
                r.qp = std::stod(f[11]);
                r.sandwich_lo_pass = parse_flag(f[12]);
                r.sandwich_hi_pass = parse_flag(f[13]);
                r.iterations = std::stoi(f[14]);
                r.residual = std::stod(f[15]);
                r.seconds = std::stod(f[16]);
                r.converged = f[17] == "1";
                rows_[key_of(f[1], f[2], f[3], f[4])] = r;
            } catch (const std::exception&) {
                // a torn trailing line from an interrupted run; ignore it
            }
        }
    }

    static std::string key(std::size_t n, double p, double tol, const std::vector<double>& grid)
    {
        return key_of(std::to_string(n), fmt_real(p), fmt_real(tol), a_grid_key(grid));
    }

    const SweepRecord* find(const std::string& k) const
    {
        auto it = rows_.find(k);
        return it == rows_.end() ? nullptr : &it->second;
    }

    void append(const std::vector<std::pair<std::string, SweepRecord>>& fresh)
    {
        if (!path_ || fresh.empty())
            return;
        bool need_header = true;
        {
            std::ifstream probe(*path_);
            need_header = !probe || probe.peek() == std::ifstream::traits_type::eof();
        }
        std::ofstream out(*path_, std::ios::app | std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open cache file: " + *path_);
        if (need_header) {
            out << "# hardy_sharp sweep cache; algorithm " << algorithm_version << '\n';
            out << "version,n,p,tol,a_grid," << sweep_header << ",converged\n";
        }
        for (const auto& [k, r] : fresh) {
            const auto parts = split_keep_empty(k, '|');
            out << algorithm_version << ',' << parts[0] << ',' << parts[1] << ',' << parts[2] << ',' << parts[3] << ','
                << sweep_row(r) << ',' << (r.converged ? '1' : '0') << '\n';
            rows_[k] = r;
        }
    }

private:
    static std::string key_of(const std::string& n, const std::string& p, const std::string& tol, const std::string& g)
    {
        return n + '|' + p + '|' + tol + '|' + g;
    }

    static std::vector<std::string> split_keep_empty(const std::string& s, char sep = ',')
    {
        std::vector<std::string> out(1);
        for (char ch : s) {
            if (ch == sep)
                out.emplace_back();
            else
                out.back() += ch;
        }
        return out;
    }

    static std::optional<bool> parse_flag(const std::string& s)
    {
        if (s.empty())
            return std::nullopt;
        return s == "true";
    }

    std::optional<std::string> path_;
    std::map<std::string, SweepRecord> rows_;
};

/// Computes (or reuses) one record per n, in input order. Only converged
/// records are cached.
inline std::vector<SweepRecord> sweep(const std::vector<std::size_t>& ns, const RunConfig& c, const Exponent& e,
                                      const std::vector<double>& grid)
{
    SweepCache cache(cache_path(c));
    std::vector<SweepRecord> out(ns.size());
    std::vector<std::string> keys(ns.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        keys[i] = SweepCache::key(ns[i], e.p(), c.tol, grid);
        if (const SweepRecord* hit = cache.find(keys[i]))
            out[i] = *hit;
        else
            todo.push_back(i);
    }
    parallel_for(todo.size(), c.threads, [&](std::size_t j) {
        const std::size_t i = todo[j];
        out[i] = dn_bounds_report(ns[i], e, c.tol, c.max_iter, grid);
    });
    std::vector<std::pair<std::string, SweepRecord>> fresh;
    for (std::size_t i : todo)
        if (out[i].converged)
            fresh.emplace_back(keys[i], out[i]);
    cache.append(fresh);
    if (c.no_timing)
        for (auto& r : out)
            r.seconds = 0.0;
    return out;
}

// commands -----------------------------------------------------------------------

inline int cmd_alpha(const RunConfig& c, std::ostream& out)
{
    require_p(c.p);
    const double L = log_length(c);
    const Exponent e(c.p);
    const AlphaRoot r = solve_alpha_extremal(L, e.q());
    if (c.format == "json") {
        Json j;
        j["L"] = L;
        j["p"] = e.p();
        j["q"] = e.q();
        j["alpha"] = r.alpha;
        j["bracket"] = {r.bracket_lo, r.bracket_hi};
        j["residual"] = r.residual;
        j["iterations"] = r.iterations;
        out << j.dump(2) << '\n';
    } else {
        out << "L,p,q,alpha,bracket_lo,bracket_hi,residual,iterations\n";
        out << fmt_real(L) << ',' << fmt_real(e.p()) << ',' << fmt_real(e.q()) << ',' << fmt_real(r.alpha) << ','
            << fmt_real(r.bracket_lo) << ',' << fmt_real(r.bracket_hi) << ',' << fmt_real(r.residual) << ','
            << r.iterations << '\n';
    }
    return ok;
}

inline int cmd_continuous(const RunConfig& c, std::ostream& out)
{
    require_p(c.p);
    const double tol = c.tol_set ? c.tol : 1e-9;
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw UsageError("--tol must lie in [1e-12, 1e-4] for continuous");
    const double L = log_length(c);
    const double a = c.L ? 1.0 : *c.a;
    const double b = c.L ? std::exp(L) : *c.b;
    const Exponent e(c.p);
    const Interval iv = Interval::from_log_length(L);

    const CertificateResult lo = lower_certificate_continuous(iv, e, tol);
    std::optional<CertificateResult> up;
    if (e.theorems_supported())
        up = upper_certificate_continuous(iv, e, tol);
    std::optional<double> exact;
    if (e.p() == 2.0)
        exact = exact_constant_p2(iv);
    const ClassicalBound B = b_bound_classical(iv, e);

    if (c.format == "json") {
        Json j;
        j["p"] = e.p();
        j["a"] = a;
        j["b"] = json_real(b);
        j["L"] = L;
        j["lower"] = lo.value;
        j["upper"] = up ? Json(up->value) : Json(nullptr);
        if (exact)
            j["exact_p2"] = *exact;
        j["B_lower"] = B.lower;
        j["B_upper"] = B.upper;
        j["budgets"] = {{"lower", lo.error_budget}, {"upper", up ? Json(up->error_budget) : Json(nullptr)}};
        out << j.dump(2) << '\n';
    } else {
        out << "p,a,b,L,lower,upper,exact_p2,B_lower,B_upper,lower_budget,upper_budget\n";
        out << fmt_real(e.p()) << ',' << fmt_real(a) << ',' << fmt_real(b) << ',' << fmt_real(L) << ','
            << fmt_real(lo.value) << ',' << (up ? fmt_real(up->value) : "") << ',' << (exact ? fmt_real(*exact) : "")
            << ',' << fmt_real(B.lower) << ',' << fmt_real(B.upper) << ',' << fmt_real(lo.error_budget) << ','
            << (up ? fmt_real(up->error_budget) : "") << '\n';
    }
    return ok;
}

inline void check_discrete_config(const RunConfig& c)
{
    require_p(c.p);
    if (!(c.tol >= 1e-13 && c.tol <= 1e-6))
        throw UsageError("--tol must lie in [1e-13, 1e-6] for d_n");
    if (c.max_iter < 1)
        throw UsageError("--max-iter must be >= 1");
    if (c.threads < 1)
        throw UsageError("--threads must be >= 1");
}

inline int cmd_discrete(const RunConfig& c, std::ostream& out)
{
    check_discrete_config(c);
    std::vector<std::size_t> ns;
    if (c.n && c.n_grid)
        throw UsageError("give --n or --n-grid, not both");
    if (c.n)
        ns.push_back(parse_count(*c.n, "n"));
    else if (c.n_grid)
        ns = parse_n_grid(*c.n_grid);
    else
        throw UsageError("--n is required");
    const auto grid = parse_a_grid(c.a_grid);
    const Exponent e(c.p);
    const auto rows = sweep(ns, c, e, grid);

    if (c.format == "json") {
        Json j = Json::array();
        for (const auto& r : rows)
            j.push_back(sweep_json(r));
        out << (rows.size() == 1 ? j[0] : j).dump(2) << '\n';
    } else {
        out << sweep_header << '\n';
        for (const auto& r : rows)
            out << sweep_row(r) << '\n';
    }
    return std::all_of(rows.begin(), rows.end(), [](const SweepRecord& r) { return r.converged; }) ? ok : failure;
}

inline int cmd_rate(const RunConfig& c, std::ostream& out)
{
    check_discrete_config(c);
    const RateModel model = [&] {
        try {
            return parse_rate_model(c.model);
        } catch (const DomainError& ex) {
            throw UsageError(ex.what());
        }
    }();
    if (!c.n_grid)
        throw UsageError("--n-grid is required");
    const auto ns = parse_n_grid(*c.n_grid);
    if (ns.size() < min_rate_points)
        throw UsageError("rate fit needs at least 5 grid points");
    const auto grid = parse_a_grid(c.a_grid);
    const Exponent e(c.p);
    const auto rows = sweep(ns, c, e, grid);

    if (c.points) {
        std::ofstream pf(*c.points, std::ios::binary);
        if (!pf)
            throw std::runtime_error("cannot open " + *c.points);
        pf << sweep_header << '\n';
        for (const auto& r : rows)
            pf << sweep_row(r) << '\n';
    }

    std::vector<RatePoint> pts;
    std::vector<std::size_t> excluded;
    for (const auto& r : rows) {
        const double deficit = e.qp() - r.dn_numeric;
        if (r.converged && deficit > 0.0)
            pts.push_back({static_cast<double>(r.n), deficit});
        else
            excluded.push_back(r.n);
    }
    if (pts.size() < min_rate_points) {
        out << "error,too few converged points for a fit\n";
        return failure;
    }
    const RateFit fit = fit_rate(pts, model);
    const double ref = 16.0 * std::numbers::pi * std::numbers::pi;
    const bool has_ref = e.p() == 2.0;

    if (c.format == "json") {
        Json j;
        j["p"] = e.p();
        j["model"] = to_string(model);
        j["c2"] = fit.coefficients[0];
        if (fit.coefficients.size() > 1)
            j["c3"] = fit.coefficients[1];
        j["residual_norm"] = fit.residual_norm;
        j["n_min"] = fit.n_min;
        j["n_max"] = fit.n_max;
        j["points"] = fit.points;
        j["reference_16pi2"] = has_ref ? Json(ref) : Json(nullptr);
        j["excluded"] = excluded;
        Json arr = Json::array();
        for (const auto& pt : pts) {
            const double l = std::log1p(pt.n);
            arr.push_back({{"n", pt.n}, {"deficit", pt.deficit}, {"deficit_log2", pt.deficit * l * l}});
        }
        j["data"] = arr;
        out << j.dump(2) << '\n';
    } else {
        out << "field,value\n";
        out << "p," << fmt_real(e.p()) << '\n';
        out << "model," << to_string(model) << '\n';
        out << "c2," << fmt_real(fit.coefficients[0]) << '\n';
        if (fit.coefficients.size() > 1)
            out << "c3," << fmt_real(fit.coefficients[1]) << '\n';
        out << "residual_norm," << fmt_real(fit.residual_norm) << '\n';
        out << "n_min," << fmt_real(fit.n_min) << '\n';
        out << "n_max," << fmt_real(fit.n_max) << '\n';
        out << "points," << fit.points << '\n';
        out << "reference_16pi2," << (has_ref ? fmt_real(ref) : "") << '\n';
        std::string ex;
        for (std::size_t n : excluded)
            ex += (ex.empty() ? "" : ";") + std::to_string(n);
        out << "excluded," << ex << '\n';
        for (const auto& pt : pts) {
            const double l = std::log1p(pt.n);
            out << "deficit_log2@" << static_cast<std::size_t>(pt.n) << ',' << fmt_real(pt.deficit * l * l) << '\n';
        }
    }
    return ok;
}

inline int cmd_lemmas(const RunConfig& c, std::ostream& out)
{
    std::vector<lemmas::LemmaId> ids;
    if (c.ids == "all") {
        ids.assign(lemmas::all_ids.begin(), lemmas::all_ids.end());
    } else {
        for (const auto& tok : split(c.ids, ',')) {
            try {
                ids.push_back(lemmas::parse_id(tok));
            } catch (const DomainError& ex) {
                throw UsageError(ex.what());
            }
        }
        if (ids.empty())
            throw UsageError("--ids is empty");
    }
    const std::size_t samples = parse_count(c.samples, "--samples");
    if (c.threads < 1)
        throw UsageError("--threads must be >= 1");

    bool all_ok = true;
    Json arr = Json::array();
    if (c.format != "json")
        out << "id,strictness,samples,min_margin,calibrated_constant,worst_sample,status\n";
    for (lemmas::LemmaId id : ids) {
        const lemmas::HuntSummary h = lemmas::hunt(id, samples, c.seed, c.threads);
        const bool strict = h.strictness == lemmas::Strictness::strict;
        const char* status = !strict ? "reported" : (h.passed() ? "pass" : "fail");
        all_ok = all_ok && h.passed();
        const std::string worst = lemmas::describe(id, h.worst.sample);
        if (c.format == "json") {
            arr.push_back({{"id", lemmas::to_string(id)},
                           {"strictness", lemmas::to_string(h.strictness)},
                           {"samples", h.samples},
                           {"min_margin", strict ? json_real(h.min_margin) : Json(nullptr)},
                           {"calibrated_constant", strict ? Json(nullptr) : json_real(h.calibrated_constant)},
                           {"worst_sample", worst},
                           {"status", status}});
        } else {
            out << lemmas::to_string(id) << ',' << lemmas::to_string(h.strictness) << ',' << h.samples << ','
                << (strict ? fmt_real(h.min_margin) : "") << ',' << (strict ? "" : fmt_real(h.calibrated_constant))
                << ',' << worst << ',' << status << '\n';
        }
    }
    if (c.format == "json")
        out << arr.dump(2) << '\n';
    return all_ok ? ok : failure;
}

// entry point --------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"Sharp constants in finite Hardy inequalities", "hardy_sharp"};
    app.require_subcommand(1, 1);

    auto add_p = [&](CLI::App* s) { s->add_option("--p", c.p, "Exponent p > 1 (default 2)"); };
    auto add_format = [&](CLI::App* s) {
        s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--out", c.out, "Write the report to this file instead of stdout");
    };
    auto add_interval = [&](CLI::App* s) {
        auto* L = s->add_option("--L", c.L, "Log-length ln(b/a)");
        auto* a = s->add_option("--a", c.a, "Left endpoint a > 0");
        auto* b = s->add_option("--b", c.b, "Right endpoint b > a");
        L->excludes(a)->excludes(b);
    };
    auto add_sweep = [&](CLI::App* s) {
        add_p(s);
        s->add_option("--tol", c.tol, "Power-method tolerance (default 1e-10)");
        s->add_option("--max-iter", c.max_iter, "Power-method iteration cap (default 10000)");
        s->add_option("--A-grid", c.a_grid, "Comma list of A > 2 for the weighted upper certificate");
        s->add_option("--n-grid", c.n_grid, "start:stop:count (geometric) or comma list");
        s->add_option("--threads", c.threads, "Worker threads");
        s->add_option("--cache", c.cache, std::string("Result cache file (overridden by ") + cache_env + ")");
        s->add_flag("--no-timing", c.no_timing, "Report seconds as 0 for reproducible output");
        add_format(s);
    };

    auto* alpha = app.add_subcommand("alpha", "Solve the frequency equation for the extremal alpha");
    add_interval(alpha);
    add_p(alpha);
    add_format(alpha);

    auto* cont = app.add_subcommand("continuous", "Certificates for the continuous constant on (a, b)");
    add_interval(cont);
    add_p(cont);
    cont->add_option("--tol", c.tol, "Quadrature tolerance (default 1e-9)");
    add_format(cont);

    auto* disc = app.add_subcommand("discrete", "d_n with its certificates");
    disc->add_option("--n", c.n, "Sequence length");
    add_sweep(disc);

    auto* rate = app.add_subcommand("rate", "Fit the deficit q^p - d_n against 1/ln^2 n");
    add_sweep(rate);
    rate->add_option("--model", c.model, "c_over_log2 or two_term");
    rate->add_option("--points", c.points, "Also write the sweep rows to this CSV file");

    auto* lem = app.add_subcommand("lemmas", "Randomized checks of the auxiliary inequalities");
    lem->add_option("--ids", c.ids, "Comma list of ids or 'all'");
    lem->add_option("--samples", c.samples, "Samples per lemma (default 1e5)");
    lem->add_option("--seed", c.seed, "RNG seed (default 42)");
    lem->add_option("--threads", c.threads, "Worker threads");
    add_format(lem);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return usage;
    }
    const CLI::App* sub = app.get_subcommands().front();
    const CLI::Option* tol = sub->get_option_no_throw("--tol");
    c.tol_set = tol != nullptr && tol->count() > 0;
    c.command = sub->get_name();

    std::ofstream file;
    std::ostream* sink = &out;
    try {
        if (c.out) {
            file.open(*c.out, std::ios::binary);
            if (!file)
                throw UsageError("cannot open " + *c.out);
            sink = &file;
        }
        if (c.command == "alpha")
            return cmd_alpha(c, *sink);
        if (c.command == "continuous")
            return cmd_continuous(c, *sink);
        if (c.command == "discrete")
            return cmd_discrete(c, *sink);
        if (c.command == "rate")
            return cmd_rate(c, *sink);
        return cmd_lemmas(c, *sink);
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << '\n';
        return usage;
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << '\n';
        return usage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return failure;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace hardy::cli
