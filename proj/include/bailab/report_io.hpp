#pragma once

/*
 * Deterministic report serialization.
 *
 * Floats are printed with %.12g (12 significant digits, shortest form within
 * that precision) and files always end with a newline, so rerunning a command
 * with the same config and seed reproduces output files byte for byte.
 */

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bailab/complexity.hpp"
#include "bailab/errors.hpp"
#include "bailab/simulate.hpp"

namespace bailab {

inline std::string fmt_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open output file for writing: " + path);
    out << content;
    if (!out) throw error("failed writing output file: " + path);
}

namespace jsonio {

// Minimal JSON text builder with fixed float formatting. Field order is the
// insertion order, which keeps report bytes stable.
inline std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

class Object;

class Value {
public:
    static Value number(double v) { return Value(fmt_g12(v)); }
    static Value integer(std::int64_t v) { return Value(std::to_string(v)); }
    static Value uinteger(std::uint64_t v) { return Value(std::to_string(v)); }
    static Value boolean(bool v) { return Value(v ? "true" : "false"); }
    static Value string(const std::string& s) { return Value(quoted(s)); }
    static Value raw(std::string s) { return Value(std::move(s)); }

    template <typename T, typename Fn>
    static Value array(const std::vector<T>& xs, const Fn& fn) {
        std::string out = "[";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out += ",";
            out += fn(xs[i]).text();
        }
        out += "]";
        return Value(std::move(out));
    }

    static Value number_array(const std::vector<double>& xs) {
        return array(xs, [](double v) { return number(v); });
    }
    static Value integer_array(const std::vector<std::int64_t>& xs) {
        return array(xs, [](std::int64_t v) { return integer(v); });
    }

    const std::string& text() const { return text_; }

private:
    explicit Value(std::string text) : text_(std::move(text)) {}
    std::string text_;
};

class Object {
public:
    Object& field(const std::string& key, Value v) {
        if (!fields_.empty()) fields_ += ",";
        fields_ += quoted(key) + ":" + v.text();
        return *this;
    }
    Value value() const { return Value::raw("{" + fields_ + "}"); }
    std::string document() const { return "{" + fields_ + "}\n"; }

private:
    std::string fields_;
};

} // namespace jsonio

// --- report pieces -----------------------------------------------------

inline jsonio::Value rate_estimate_json(const RateEstimate& est) {
    return jsonio::Object()
        .field("slope", jsonio::Value::number(est.slope))
        .field("intercept", jsonio::Value::number(est.intercept))
        .field("r_squared", jsonio::Value::number(est.r_squared))
        .field("slope_stderr", jsonio::Value::number(est.slope_stderr))
        .field("inv_slope", jsonio::Value::number(1.0 / est.slope))
        .field("budgets_used", jsonio::Value::integer_array(est.budgets_used))
        .field("window", jsonio::Value::number_array({est.window.p_min, est.window.p_max}))
        .value();
}

inline jsonio::Value transport_costs_json(const std::vector<TransportCost>& costs) {
    return jsonio::Value::array(costs, [](const TransportCost& c) {
        return jsonio::Object()
            .field("challenger", jsonio::Value::integer(c.challenger))
            .field("value", jsonio::Value::number(c.value))
            .field("minimizer", jsonio::Value::number(c.minimizer))
            .value();
    });
}

inline jsonio::Value solver_diagnostics_json(const SolverDiagnostics& d) {
    return jsonio::Object()
        .field("iterations", jsonio::Value::integer(d.iterations))
        .field("achieved_tol", jsonio::Value::number(d.achieved_tol))
        .field("equalization_residual", jsonio::Value::number(d.equalization_residual))
        .field("exact", jsonio::Value::boolean(d.exact))
        .value();
}

// CSV for a fixed-budget report; header bytes are part of the contract.
inline std::string fixed_budget_csv(const FixedBudgetReport& report) {
    std::string out = "n,replications,errors,p_hat,ci_low,ci_high\n";
    for (const BudgetRow& row : report.rows) {
        out += std::to_string(row.budget) + "," + std::to_string(row.replications) + "," +
               std::to_string(row.errors) + "," + fmt_g12(row.p_hat) + "," +
               fmt_g12(row.ci_low) + "," + fmt_g12(row.ci_high) + "\n";
    }
    return out;
}

} // namespace bailab
