/*
   Copyright 2026 The relaysel Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaysel/relaysel.h"

namespace relaysel::cli {

namespace {

constexpr double kGridSnap = 1e9;  // grid points are snapped to 1e-9 dB
constexpr std::size_t kMaxGridPoints = 100000;

struct ConfigFree {
    void operator()(rsel_config* p) const { rsel_config_destroy(p); }
};
struct SweepFree {
    void operator()(rsel_sweep* p) const { rsel_sweep_destroy(p); }
};
struct ReportFree {
    void operator()(rsel_report* p) const { rsel_report_destroy(p); }
};
using ConfigPtr = std::unique_ptr<rsel_config, ConfigFree>;
using SweepPtr = std::unique_ptr<rsel_sweep, SweepFree>;
using ReportPtr = std::unique_ptr<rsel_report, ReportFree>;

// A library call failed on input the spec validation let through.
class LibraryError : public std::runtime_error {
public:
    LibraryError(rsel_status status, const std::string& what)
        : std::runtime_error(what), status_(status) {}
    rsel_status status() const noexcept { return status_; }

private:
    rsel_status status_;
};

void check(rsel_status status) {
    if (status != RSEL_OK) {
        throw LibraryError(status, std::string(rsel_status_string(status)) + ": " + rsel_last_error());
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw UsageError(what + ": expected a finite number, got '" + text + "'");
    }
    return v;
}

template <typename Int>
Int to_integer(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw UsageError(what + ": expected an integer in range, got '" + text + "'");
    }
    return v;
}

bool to_bool(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
    if (t == "0" || t == "false" || t == "no" || t == "off") return false;
    throw UsageError(what + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) {
        parts.push_back(trim(cur));
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::simulate: return "simulate";
        case Mode::analytic: return "analytic";
        case Mode::compare: return "compare";
        case Mode::verify: return "verify";
    }
    return "";
}

rsel_scheme scheme_id(const std::string& name) {
    rsel_scheme s{};
    check(rsel_parse_scheme(name.c_str(), &s));
    return s;
}

Row analytic_row(double p_db, const std::string& scheme, const std::string& series, std::optional<long> user,
                 double value) {
    Row r;
    r.p_db = p_db;
    r.scheme = scheme;
    r.series = series;
    r.user = user;
    r.value = value;
    return r;
}

Row estimate_row(double p_db, const std::string& scheme, const std::string& series, std::optional<long> user,
                 const rsel_estimate& e) {
    Row r;
    r.p_db = p_db;
    r.scheme = scheme;
    r.series = series;
    r.user = user;
    r.value = e.p_hat;
    r.std_err = e.std_err;
    r.trials = e.trials;
    r.flag = e.reliable ? "ok" : "unreliable";
    return r;
}

// Slope rows sit at the top of the fitted window. A curve that cannot be
// fitted (zero outage, or fewer than three points in the window) gets an
// empty value and the unreliable flag.
Row slope_row(const ExperimentSpec& spec, const std::vector<double>& grid, const std::vector<double>& curve,
              const std::string& scheme, std::optional<long> user, std::uint64_t trials) {
    Row r;
    r.scheme = scheme;
    r.series = "slope";
    r.user = user;
    r.trials = trials;
    r.p_db = spec.slope_window_db ? spec.slope_window_db->second : grid.back();
    double slope = 0.0;
    const auto& w = spec.slope_window_db;
    const rsel_status st = rsel_diversity_slope(grid.data(), curve.data(), grid.size(), w ? 1 : 0,
                                                w ? w->first : 0.0, w ? w->second : 0.0, &slope);
    if (st == RSEL_OK) {
        r.value = slope;
    } else if (st == RSEL_ERR_DOMAIN || st == RSEL_ERR_INVALID_ARGUMENT) {
        r.flag = "unreliable";
    } else {
        check(st);
    }
    return r;
}

ConfigPtr make_config(const ExperimentSpec& spec, double p_db) {
    const double p = db_to_linear(p_db);
    const double q = spec.q_db ? db_to_linear(*spec.q_db) : p;
    rsel_config* raw = nullptr;
    check(rsel_config_create(spec.users, spec.relays, p, q, db_to_linear(spec.threshold_db), &raw));
    return ConfigPtr(raw);
}

void simulated_rows(const ExperimentSpec& spec, const std::vector<double>& grid, bool with_slopes,
                    std::vector<Row>& rows) {
    const ConfigPtr cfg = make_config(spec, grid.front());
    rsel_sweep_options opt{spec.trials, spec.seed, spec.workers, spec.q_db ? 0 : 1, spec.ranks ? 1 : 0};
    for (const std::string& name : spec.schemes) {
        rsel_sweep* raw = nullptr;
        check(rsel_sweep_run(cfg.get(), scheme_id(name), grid.data(), grid.size(), &opt, &raw));
        const SweepPtr sweep(raw);
        std::vector<std::vector<double>> user_curves(static_cast<std::size_t>(spec.users));
        std::vector<double> min_curve;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            rsel_estimate e{};
            for (int u = 0; u < spec.users; ++u) {
                check(rsel_sweep_user_outage(sweep.get(), u, g, &e));
                rows.push_back(estimate_row(grid[g], name, "sim_user", u + 1, e));
                user_curves[static_cast<std::size_t>(u)].push_back(e.p_hat);
            }
            check(rsel_sweep_min_outage(sweep.get(), g, &e));
            rows.push_back(estimate_row(grid[g], name, "sim_min", std::nullopt, e));
            min_curve.push_back(e.p_hat);
            if (spec.ranks) {
                const int entries = spec.users * spec.relays;
                for (int k = 1; k <= entries; ++k) {
                    std::uint64_t count = 0;
                    check(rsel_sweep_rank_count(sweep.get(), g, k, &count));
                    const double f = static_cast<double>(count) / static_cast<double>(spec.trials);
                    const rsel_estimate re{spec.trials, count, f,
                                           std::sqrt(f * (1.0 - f) / static_cast<double>(spec.trials)),
                                           count >= 10 ? 1 : 0};
                    rows.push_back(estimate_row(grid[g], name, "rank_freq", k, re));
                }
            }
        }
        if (with_slopes) {
            for (int u = 0; u < spec.users; ++u) {
                rows.push_back(slope_row(spec, grid, user_curves[static_cast<std::size_t>(u)], name, u + 1,
                                         spec.trials));
            }
            rows.push_back(slope_row(spec, grid, min_curve, name, std::nullopt, spec.trials));
        }
    }
}

void analytic_rows(const ExperimentSpec& spec, const std::vector<double>& grid, std::vector<Row>& rows) {
    const double threshold = db_to_linear(spec.threshold_db);
    for (const std::string& name : spec.schemes) {
        const rsel_scheme scheme = scheme_id(name);
        std::vector<double> bound;
        std::vector<double> asym;
        std::vector<std::vector<double>> per_user;
        if (scheme == RSEL_SCHEME_NAIVE) {
            per_user.resize(static_cast<std::size_t>(spec.users));
        }
        for (double p_db : grid) {
            const ConfigPtr cfg = make_config(spec, p_db);
            double v = 0.0;
            rsel_status st = rsel_outage_bound(scheme, cfg.get(), &v);
            if (st == RSEL_OK) {
                rows.push_back(analytic_row(p_db, name, "bound_exact", std::nullopt, v));
                bound.push_back(v);
            } else if (st != RSEL_ERR_UNSUPPORTED) {
                check(st);
            }
            if (!spec.q_db) {
                st = rsel_outage_asymptotic(scheme, spec.users, spec.relays, threshold, db_to_linear(p_db), &v);
                if (st == RSEL_OK) {
                    rows.push_back(analytic_row(p_db, name, "bound_asymptotic", std::nullopt, v));
                    asym.push_back(v);
                } else if (st != RSEL_ERR_UNSUPPORTED) {
                    check(st);
                }
            }
            for (std::size_t u = 0; u < per_user.size(); ++u) {
                const double p = db_to_linear(p_db);
                check(rsel_outage_naive_user(threshold, p, spec.q_db ? db_to_linear(*spec.q_db) : p,
                                             static_cast<int>(u), spec.relays, &v));
                rows.push_back(analytic_row(p_db, name, "bound_exact", static_cast<long>(u) + 1, v));
                per_user[u].push_back(v);
            }
        }
        for (std::size_t u = 0; u < per_user.size(); ++u) {
            rows.push_back(slope_row(spec, grid, per_user[u], name, static_cast<long>(u) + 1, 0));
        }
        if (!bound.empty()) {
            rows.push_back(slope_row(spec, grid, bound, name, std::nullopt, 0));
        }
    }
}

// Closed-form array-gain constants (empty p_db: the high-power limit) next to
// the same ratios of the exact curves at the top grid point.
void array_gain_rows(const ExperimentSpec& spec, const std::vector<double>& grid, std::vector<Row>& rows) {
    if (spec.users != 2 || spec.relays < 2) {
        return;
    }
    double ors_single = 0.0;
    double naive_srs_db = 0.0;
    check(rsel_array_gain_ratios(spec.relays, &ors_single, &naive_srs_db));
    const double top = grid.back();
    const ConfigPtr cfg = make_config(spec, top);
    double p = 0.0, q = 0.0, th = 0.0;
    check(rsel_config_get(cfg.get(), nullptr, nullptr, &p, &q, &th));
    double ors = 0.0, srs = 0.0, naive = 0.0, single = 0.0;
    check(rsel_outage_bound(RSEL_SCHEME_ORS, cfg.get(), &ors));
    check(rsel_outage_bound(RSEL_SCHEME_SRS, cfg.get(), &srs));
    check(rsel_outage_bound(RSEL_SCHEME_NAIVE, cfg.get(), &naive));
    check(rsel_outage_single_user(th, p, q, spec.relays, &single));

    Row predicted_ors = analytic_row(0.0, "ors", "array_gain", std::nullopt, ors_single);
    predicted_ors.p_db.reset();
    Row predicted_naive = analytic_row(0.0, "naive", "array_gain", std::nullopt, naive_srs_db);
    predicted_naive.p_db.reset();
    rows.push_back(predicted_ors);
    rows.push_back(analytic_row(top, "ors", "array_gain", std::nullopt, ors / single));
    rows.push_back(predicted_naive);
    rows.push_back(analytic_row(top, "naive", "array_gain", std::nullopt, 10.0 * std::log10(naive / srs)));
}

std::string render_json(const ExperimentSpec& spec, const std::vector<Row>& rows) {
    using nlohmann::ordered_json;
    ordered_json doc;
    ordered_json s;
    s["mode"] = mode_name(*spec.mode);
    s["users"] = spec.users;
    s["relays"] = spec.relays;
    s["threshold_db"] = spec.threshold_db;
    s["p_db"] = {spec.grid.start_db, spec.grid.stop_db, spec.grid.step_db};
    s["q_db"] = spec.q_db ? ordered_json(*spec.q_db) : ordered_json(nullptr);
    s["trials"] = spec.trials;
    s["seed"] = spec.seed;
    s["schemes"] = spec.schemes;
    doc["spec"] = s;
    ordered_json out = ordered_json::array();
    auto opt = [](const auto& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    for (const Row& r : rows) {
        ordered_json j;
        j["p_db"] = opt(r.p_db);
        j["scheme"] = r.scheme;
        j["series"] = r.series;
        j["user"] = opt(r.user);
        j["value"] = opt(r.value);
        j["std_err"] = opt(r.std_err);
        j["trials"] = r.trials;
        j["flag"] = r.flag;
        out.push_back(std::move(j));
    }
    doc["rows"] = std::move(out);
    return doc.dump(2) + "\n";
}

RunOutput execute_verify(const ExperimentSpec& spec) {
    rsel_report* raw = nullptr;
    check(rsel_verify_run(spec.verify_max_users, spec.verify_max_relays, spec.verify_matrices, spec.seed, &raw));
    const ReportPtr report(raw);
    std::size_t n = 0;
    check(rsel_report_size(report.get(), &n));
    int all = 0;
    check(rsel_report_passed(report.get(), &all));

    RunOutput result;
    result.exit_code = all ? kExitOk : kExitVerifyFailed;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    std::string csv = "check,status,detail\n";
    for (std::size_t i = 0; i < n; ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        int info = 0;
        check(rsel_report_entry(report.get(), i, &name, &passed, &info, &detail));
        const char* status = passed ? "pass" : (info ? "known_discrepancy" : "fail");
        csv += std::string(name) + "," + status + ",\"" + detail + "\"\n";
        checks.push_back({{"check", name}, {"status", status}, {"detail", detail}});
    }
    if (spec.format == Format::json) {
        nlohmann::ordered_json doc;
        doc["passed"] = all != 0;
        doc["checks"] = std::move(checks);
        result.text = doc.dump(2) + "\n";
    } else {
        result.text = std::move(csv);
    }
    return result;
}

}  // namespace

std::vector<double> PowerGrid::points() const {
    const double span = (stop_db - start_db) / step_db;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = std::round((start_db + static_cast<double>(i) * step_db) * kGridSnap) / kGridSnap;
    }
    return pts;
}

PowerGrid parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw UsageError("p-db: expected start:stop:step, got '" + text + "'");
    }
    return {to_double(parts[0], "p-db start"), to_double(parts[1], "p-db stop"), to_double(parts[2], "p-db step")};
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) {
        throw UsageError("slope-window: expected lo:hi, got '" + text + "'");
    }
    const double lo = to_double(parts[0], "slope-window lo");
    const double hi = to_double(parts[1], "slope-window hi");
    if (!(lo < hi)) {
        throw UsageError("slope-window: lo must be below hi");
    }
    return {lo, hi};
}

std::vector<std::string> parse_scheme_list(const std::string& text) {
    std::vector<std::string> out;
    for (const std::string& name : split(text, ',')) {
        rsel_scheme s{};
        if (rsel_parse_scheme(name.c_str(), &s) != RSEL_OK) {
            throw UsageError("schemes: unknown scheme '" + name + "' (expected ors, srs, naive, random)");
        }
        if (std::find(out.begin(), out.end(), name) != out.end()) {
            throw UsageError("schemes: '" + name + "' listed twice");
        }
        out.push_back(name);
    }
    return out;
}

Mode parse_mode(const std::string& text) {
    const std::string t = trim(text);
    for (Mode m : {Mode::simulate, Mode::analytic, Mode::compare, Mode::verify}) {
        if (t == mode_name(m)) {
            return m;
        }
    }
    throw UsageError("mode: expected simulate, analytic, compare or verify, got '" + text + "'");
}

void apply_setting(ExperimentSpec& spec, const std::string& raw_key, const std::string& value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "mode") {
        spec.mode = parse_mode(value);
    } else if (key == "users") {
        spec.users = to_integer<int>(value, key);
    } else if (key == "relays") {
        spec.relays = to_integer<int>(value, key);
    } else if (key == "threshold-db") {
        spec.threshold_db = to_double(value, key);
    } else if (key == "p-db") {
        spec.grid = parse_grid(value);
    } else if (key == "q-db") {
        spec.q_db = to_double(value, key);
    } else if (key == "q-equals-p") {
        if (to_bool(value, key)) {
            spec.q_db.reset();
        }
    } else if (key == "trials") {
        spec.trials = to_integer<std::uint64_t>(value, key);
    } else if (key == "seed") {
        spec.seed = to_integer<std::uint64_t>(value, key);
    } else if (key == "schemes") {
        spec.schemes = parse_scheme_list(value);
    } else if (key == "slope-window") {
        spec.slope_window_db = parse_window(value);
    } else if (key == "ranks") {
        spec.ranks = to_bool(value, key);
    } else if (key == "workers") {
        spec.workers = to_integer<unsigned>(value, key);
    } else if (key == "out") {
        spec.out = trim(value);
    } else if (key == "format") {
        const std::string f = trim(value);
        if (f == "csv") {
            spec.format = Format::csv;
        } else if (f == "json") {
            spec.format = Format::json;
        } else {
            throw UsageError("format: expected csv or json, got '" + value + "'");
        }
    } else if (key == "max-users") {
        spec.verify_max_users = to_integer<int>(value, key);
    } else if (key == "max-relays") {
        spec.verify_max_relays = to_integer<int>(value, key);
    } else if (key == "matrices") {
        spec.verify_matrices = to_integer<std::uint64_t>(value, key);
    } else {
        throw UsageError("unknown setting '" + raw_key + "'");
    }
}

void load_spec_file(ExperimentSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read spec file '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        try {
            apply_setting(spec, line.substr(0, eq), line.substr(eq + 1));
        } catch (const UsageError& e) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void validate(const ExperimentSpec& spec) {
    if (!spec.mode) {
        throw UsageError("no mode given; use a subcommand or mode= in the spec file");
    }
    if (*spec.mode == Mode::verify) {
        if (spec.verify_max_users < 1 || spec.verify_max_relays < spec.verify_max_users) {
            throw UsageError("verify: need 1 <= max-users <= max-relays");
        }
        if (spec.verify_matrices < 1) {
            throw UsageError("verify: matrices must be at least 1");
        }
        return;
    }
    if (spec.users < 1) {
        throw UsageError("users must be at least 1");
    }
    if (spec.relays < spec.users) {
        throw UsageError("relays must be at least users");
    }
    if (!(spec.grid.step_db > 0.0) || !(spec.grid.start_db < spec.grid.stop_db)) {
        throw UsageError("p-db: need start < stop and step > 0");
    }
    if ((spec.grid.stop_db - spec.grid.start_db) / spec.grid.step_db >= static_cast<double>(kMaxGridPoints)) {
        throw UsageError("p-db: too many grid points");
    }
    if (spec.trials < 1) {
        throw UsageError("trials must be at least 1");
    }
    if (spec.schemes.empty()) {
        throw UsageError("schemes must not be empty");
    }
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string render_csv(const std::vector<Row>& rows) {
    std::string s = "p_db,scheme,series,user,value,std_err,trials,flag\n";
    for (const Row& r : rows) {
        s += r.p_db ? format_number(*r.p_db) : "";
        s += ',' + r.scheme + ',' + r.series + ',';
        s += r.user ? std::to_string(*r.user) : "";
        s += ',';
        s += r.value ? format_number(*r.value) : "";
        s += ',';
        s += r.std_err ? format_number(*r.std_err) : "";
        s += ',' + std::to_string(r.trials) + ',' + r.flag + '\n';
    }
    return s;
}

RunOutput execute(const ExperimentSpec& spec) {
    validate(spec);
    try {
        if (*spec.mode == Mode::verify) {
            return execute_verify(spec);
        }
        const std::vector<double> grid = spec.grid.points();
        RunOutput result;
        switch (*spec.mode) {
            case Mode::simulate:
                simulated_rows(spec, grid, false, result.rows);
                break;
            case Mode::analytic:
                analytic_rows(spec, grid, result.rows);
                array_gain_rows(spec, grid, result.rows);
                break;
            case Mode::compare:
                analytic_rows(spec, grid, result.rows);
                simulated_rows(spec, grid, true, result.rows);
                array_gain_rows(spec, grid, result.rows);
                break;
            case Mode::verify:
                break;
        }
        result.text = spec.format == Format::json ? render_json(spec, result.rows) : render_csv(result.rows);
        return result;
    } catch (const LibraryError& e) {
        throw UsageError(e.what());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relay selection for multi-user amplify-and-forward networks: simulation, closed forms, checks",
                 "relaysel"};
    app.require_subcommand(0, 1);
    struct Flag {
        const char* name;
        const char* type;
        const char* help;
        std::string value;
    };
    std::vector<Flag> flags{
        {"users", "N", "number of users", {}},
        {"relays", "NR", "number of relays", {}},
        {"threshold-db", "DB", "outage SNR threshold (default 5)", {}},
        {"p-db", "START:STOP:STEP", "user power grid in dB", {}},
        {"q-db", "DB", "fixed relay power (default: Q = P)", {}},
        {"trials", "INT", "Monte Carlo trials per grid point", {}},
        {"seed", "INT", "experiment seed", {}},
        {"schemes", "LIST", "comma list of ors,srs,naive,random", {}},
        {"slope-window", "LO:HI", "diversity slope window in dB (default: top third of grid)", {}},
        {"workers", "INT", "worker threads (results do not depend on this)", {}},
        {"out", "FILE", "output file (default stdout)", {}},
        {"format", "csv|json", "output format", {}},
        {"max-users", "INT", "verify: largest N checked (default 3)", {}},
        {"max-relays", "INT", "verify: largest Nr checked (default 5)", {}},
        {"matrices", "INT", "verify: random matrices per size (default 10000)", {}},
    };
    std::vector<CLI::Option*> options;
    for (Flag& f : flags) {
        options.push_back(app.add_option(std::string("--") + f.name, f.value, f.help)->type_name(f.type));
    }
    std::string spec_path;
    app.add_option("--spec", spec_path, "key=value spec file; flags override it")->type_name("FILE");
    bool q_equals_p = false;
    auto* q_equals_p_opt = app.add_flag("--q-equals-p", q_equals_p, "relay power follows user power (default)");
    bool ranks = false;
    auto* ranks_opt = app.add_flag("--ranks", ranks, "simulate: also tally the rank of the minimum SNR");
    q_equals_p_opt->excludes(options[4]);

    std::vector<std::pair<Mode, CLI::App*>> subs;
    for (auto [m, help] : {std::pair{Mode::simulate, "Monte Carlo outage per user and of the minimum SNR"},
                           std::pair{Mode::analytic, "closed-form outage bounds, asymptotes and slopes"},
                           std::pair{Mode::compare, "analytic and simulated curves with slopes and array gains"},
                           std::pair{Mode::verify, "oracle, enumeration and operation-count self checks"}}) {
        CLI::App* sub = app.add_subcommand(mode_name(m), help);
        sub->fallthrough();
        subs.emplace_back(m, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "relaysel: " << e.what() << "\n";
        return kExitUsage;
    }

    RunOutput result;
    ExperimentSpec spec;
    try {
        if (!spec_path.empty()) {
            load_spec_file(spec, spec_path);
        }
        for (const auto& [m, sub] : subs) {
            if (sub->parsed()) {
                spec.mode = m;
            }
        }
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (options[i]->count() > 0) {
                apply_setting(spec, flags[i].name, flags[i].value);
            }
        }
        if (q_equals_p_opt->count() > 0) {
            spec.q_db.reset();
        }
        if (ranks_opt->count() > 0) {
            spec.ranks = ranks;
        }
        result = execute(spec);
    } catch (const UsageError& e) {
        err << "relaysel: " << e.what() << "\n";
        return kExitUsage;
    }

    if (spec.out.empty()) {
        out << result.text;
        out.flush();
        if (!out) {
            err << "relaysel: failed writing output\n";
            return kExitIo;
        }
    } else {
        std::ofstream file(spec.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "relaysel: cannot open '" << spec.out << "' for writing\n";
            return kExitIo;
        }
        file << result.text;
        file.close();
        if (!file) {
            err << "relaysel: failed writing '" << spec.out << "'\n";
            return kExitIo;
        }
    }
    if (result.exit_code == kExitVerifyFailed) {
        err << "relaysel: verification failed\n";
    }
    return result.exit_code;
}

}  // namespace relaysel::cli
