#pragma once

// Command-line front end. Kept in a header so the test suite can drive the
// same entry point the executable uses.

#include "wgrate/capacity.hpp"
#include "wgrate/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgrate::cli {

enum ExitCode : int { ok = 0, usage_error = 1, solver_error = 2, verification_failed = 3 };

enum class Spacing { log, linear };
enum class Format { csv, json };

struct SweepSpec {
    double gamma_min = 1.0;
    double gamma_max = 1e4;
    int points = 50;
    Spacing spacing = Spacing::log;

    void validate() const {
        if (!(gamma_min > 0.0) || !(gamma_max > 0.0)) throw std::invalid_argument("gamma bounds must be positive");
        if (!(gamma_min < gamma_max)) throw std::invalid_argument("gamma-min must be below gamma-max");
        if (points < 2 || points > 100000) throw std::invalid_argument("points must lie in [2, 100000]");
    }
};

struct OutputRecord {
    double gamma = 0.0;
    double beta0 = 0.0;
    double w = 0.0;
    double rate = 0.0;
    double rate_asym = 0.0;
    double ratio = 0.0;
    double residual = 0.0;
};

inline constexpr const char* csv_header = "gamma,beta0,w,rate,rate_asym,ratio,residual";

class sweep_failure : public std::runtime_error {
public:
    sweep_failure(std::size_t row, const std::string& what)
        : std::runtime_error("sweep row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

inline std::vector<double> gamma_grid(const SweepSpec& spec) {
    spec.validate();
    std::vector<double> g(spec.points);
    const double last = spec.points - 1;
    for (int i = 0; i < spec.points; ++i) {
        if (spec.spacing == Spacing::log)
            g[i] = spec.gamma_min * std::pow(spec.gamma_max / spec.gamma_min, i / last);
        else
            g[i] = spec.gamma_min + (spec.gamma_max - spec.gamma_min) * (i / last);
    }
    g.front() = spec.gamma_min;
    g.back() = spec.gamma_max;
    return g;
}

inline std::vector<OutputRecord> run_sweep(const SweepSpec& spec, const ToleranceConfig& tol = {}, int species = 2) {
    const auto grid = gamma_grid(spec);
    std::vector<OutputRecord> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            const auto s = capacity::rate_dimensionless(grid[i], tol, {.species = species});
            rows.push_back({s.gamma, s.beta0, s.w_at_beta0, s.rate_dimensionless, s.rate_asymptotic, s.ratio, s.residual});
        } catch (const std::exception& e) {
            throw sweep_failure(i, e.what());
        }
    }
    return rows;
}

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const std::vector<OutputRecord>& rows, std::ostream& os) {
    os << csv_header << '\n';
    for (const auto& r : rows) {
        os << format_number(r.gamma) << ',' << format_number(r.beta0) << ',' << format_number(r.w) << ','
           << format_number(r.rate) << ',' << format_number(r.rate_asym) << ',' << format_number(r.ratio) << ','
           << format_number(r.residual) << '\n';
    }
}

inline void write_json(const std::vector<OutputRecord>& rows, std::ostream& os) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"gamma", r.gamma},
                       {"beta0", r.beta0},
                       {"w", r.w},
                       {"rate", r.rate},
                       {"rate_asym", r.rate_asym},
                       {"ratio", r.ratio},
                       {"residual", r.residual}});
    }
    os << arr.dump(2) << '\n';
}

// Below this gamma the continuum closed form is outside its regime.
inline constexpr double asymptotic_regime_gamma = 100.0;

struct RateReport {
    double gamma = 0.0;
    double rate = 0.0;  // bits/s
    RateMethod method = RateMethod::exact;
    std::string warning;
};

inline RateReport cmd_rate(double area, double power, RateMethod method, int species, const ToleranceConfig& tol = {},
                           const PhysicalConstants& k = {}) {
    if (!(area > 0.0) || !(power > 0.0)) throw std::invalid_argument("area and power must be positive");
    PhysicalChannelSpec spec{ChannelGeometry::square_of_area(area), power, species, k};
    RateReport r;
    r.gamma = capacity::gamma_of(spec);
    r.method = method;
    r.rate = capacity::rate_multimode_physical(spec, tol, method);
    if (method == RateMethod::asymptotic && r.gamma < asymptotic_regime_gamma) {
        r.warning = "gamma = " + format_number(r.gamma) +
                    " is below 100; the asymptotic rate is outside its high-power regime";
    }
    return r;
}

struct DirectionReport {
    double power = 0.0;
    double theta = 0.0;
    int species = 1;
    double rate = 0.0;  // bits/s
};

inline DirectionReport cmd_single_direction(double power, double theta, int species, const PhysicalConstants& k = {}) {
    if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
    DirectionReport r{power, theta, species, 0.0};
    r.rate = capacity::rate_single_direction(power / k.hbar, {.theta = theta, .phi = 0.0, .species = species});
    return r;
}

/// Runs the oracle suite, lets the caller adjust the reports (tests use this
/// to inject a wrong expected value), and prints the table.
inline int cmd_verify(const ToleranceConfig& tol, Format format, std::ostream& out,
                      const std::function<void(std::vector<OracleReport>&)>& adjust = {}) {
    auto reports = verify::default_suite(tol);
    if (adjust) adjust(reports);
    for (auto& r : reports) r.abs_error = std::abs(r.computed - r.expected);
    if (format == Format::json) {
        auto arr = nlohmann::json::array();
        for (const auto& r : reports) {
            arr.push_back({{"name", r.name},
                           {"computed", r.computed},
                           {"expected", r.expected},
                           {"abs_error", r.abs_error},
                           {"bound", r.bound},
                           {"passed", r.passed()},
                           {"method", r.method}});
        }
        out << arr.dump(2) << '\n';
    } else {
        out << "name,computed,expected,abs_error,bound,status,method\n";
        for (const auto& r : reports) {
            out << r.name << ',' << format_number(r.computed) << ',' << format_number(r.expected) << ','
                << format_number(r.abs_error) << ',' << format_number(r.bound) << ','
                << (r.passed() ? "pass" : "FAIL") << ",\"" << r.method << "\"\n";
        }
    }
    return verify::all_passed(reports) ? ok : verification_failed;
}

/// Parses argv and dispatches. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
               const std::function<void(std::vector<OracleReport>&)>& verify_adjust = {}) {
    CLI::App app{"Information rate of an ideal lossless rectangular metallic waveguide", "wgrate"};
    app.require_subcommand(1);

    SweepSpec sweep;
    std::string spacing = "log", format = "csv", method = "exact", out_path;
    double tol_value = 1e-10, area = 1e-4, power = 1e-3, theta = 0.0;
    int species = 2, direction_species = 1;
    bool phi_table = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", tol_value, "relative tolerance for quadrature, mode-sum tail and root solve")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "write the table to this file instead of stdout");
        sub->add_flag("--phi-table", phi_table, "evaluate mode sums from the tabulated phi");
    };

    auto* s = app.add_subcommand("sweep", "exact and asymptotic dimensionless rate over a gamma grid");
    s->add_option("--gamma-min", sweep.gamma_min)->check(CLI::PositiveNumber);
    s->add_option("--gamma-max", sweep.gamma_max)->check(CLI::PositiveNumber);
    s->add_option("--points", sweep.points)->check(CLI::Range(2, 100000));
    s->add_option("--spacing", spacing)->check(CLI::IsMember({"log", "linear"}));
    s->add_option("--species", species)->check(CLI::IsMember({1, 2}));
    add_common(s);

    auto* r = app.add_subcommand("rate", "multimode rate in bits/s for a square guide");
    r->add_option("--area", area, "cross-sectional area in m^2")->required();
    r->add_option("--power", power, "average power in W")->required();
    r->add_option("--method", method)->check(CLI::IsMember({"exact", "asymptotic"}));
    r->add_option("--species", species)->check(CLI::IsMember({1, 2}));
    add_common(r);

    auto* d = app.add_subcommand("single-direction", "rate in bits/s for one propagation direction");
    d->add_option("--power", power, "average power in W")->required();
    d->add_option("--theta", theta, "polar angle in radians, [0, pi/2)");
    d->add_option("--species", direction_species)->check(CLI::IsMember({1, 2}));
    d->add_option("--area", area, "ignored: the single-direction rate does not depend on area");
    add_common(d);

    auto* v = app.add_subcommand("verify", "run the numerical oracle suite");
    add_common(v);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    ToleranceConfig tol;
    tol.quad_rel_tol = tol.sum_tail_rel = tol.root_rel_tol = tol_value;
    tol.use_phi_table = phi_table;
    const Format fmt = format == "json" ? Format::json : Format::csv;

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "error: cannot open " << out_path << '\n';
            return usage_error;
        }
    }
    std::ostream& os = out_path.empty() ? out : file;

    try {
        if (s->parsed()) {
            sweep.spacing = spacing == "linear" ? Spacing::linear : Spacing::log;
            try {
                sweep.validate();
            } catch (const std::invalid_argument& e) {
                err << "error: " << e.what() << '\n';
                return usage_error;
            }
            const auto rows = run_sweep(sweep, tol, species);
            fmt == Format::json ? write_json(rows, os) : write_csv(rows, os);
            return ok;
        }
        if (r->parsed()) {
            if (!(area > 0.0) || !(power > 0.0)) {
                err << "error: --area and --power must be positive\n";
                return usage_error;
            }
            const auto rep = cmd_rate(area, power, method == "asymptotic" ? RateMethod::asymptotic : RateMethod::exact,
                                      species, tol);
            if (!rep.warning.empty()) err << "warning: " << rep.warning << '\n';
            if (fmt == Format::json) {
                os << nlohmann::json{{"gamma", rep.gamma}, {"rate", rep.rate}, {"method", method}}.dump(2) << '\n';
            } else {
                os << "gamma,rate,method\n"
                   << format_number(rep.gamma) << ',' << format_number(rep.rate) << ',' << method << '\n';
            }
            return ok;
        }
        if (d->parsed()) {
            if (!(power > 0.0) || !(theta >= 0.0 && theta < 0.5 * std::numbers::pi)) {
                err << "error: --power must be positive and --theta must lie in [0, pi/2)\n";
                return usage_error;
            }
            const auto rep = cmd_single_direction(power, theta, direction_species);
            if (fmt == Format::json) {
                os << nlohmann::json{{"power", rep.power}, {"theta", rep.theta}, {"species", rep.species},
                                     {"rate", rep.rate}}
                          .dump(2)
                   << '\n';
            } else {
                os << "power,theta,species,rate\n"
                   << format_number(rep.power) << ',' << format_number(rep.theta) << ',' << rep.species << ','
                   << format_number(rep.rate) << '\n';
            }
            return ok;
        }
        return cmd_verify(tol, fmt, os, verify_adjust);
    } catch (const sweep_failure& e) {
        err << "error: " << e.what() << '\n';
        return solver_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return solver_error;
    }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace wgrate::cli
