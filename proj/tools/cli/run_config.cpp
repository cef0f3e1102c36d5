#include "cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

#include "mfrls/dataset_io.hpp"

namespace mfrls::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        items.push_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return items;
}

template <class T>
T parse_integer(std::string_view text, std::string_view field) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(field) + ": expected a non-negative integer, got '" +
                          std::string(text) + "'");
    }
    return value;
}

double parse_number(std::string_view text, std::string_view field) {
    try {
        return parse_real(text);
    } catch (const ParseError&) {
        throw ConfigError(std::string(field) + ": expected a number, got '" + std::string(text) + "'");
    }
}

struct GridSpec {
    std::size_t points = 20;
    double lo = 0.1;
    double hi = 1.0;
    bool explicit_list = false;
};

// Grid keys collect into a GridSpec, resolved once the whole file is read.
using Setter = std::function<void(RunConfig&, GridSpec&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table{
        {"n", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.orders.n = parse_integer<std::size_t>(v, "n"); }},
        {"m", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.orders.m = parse_integer<std::size_t>(v, "m"); }},
        {"N", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.horizon = parse_integer<std::size_t>(v, "N"); }},
        {"sigma2", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.sigma2 = parse_number(v, "sigma2"); }},
        {"filter_order", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.filter_order = parse_integer<int>(v, "filter_order"); }},
        {"filter_cutoff", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.filter_cutoff = parse_number(v, "filter_cutoff"); }},
        {"filter_warmup", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.simulation.filter_warmup = parse_integer<std::size_t>(v, "filter_warmup"); }},
        {"bank", [](RunConfig& c, GridSpec&, std::string_view v) {
             if (v == "default") {
                 c.study.simulation.bank_source = BankSource::Default;
             } else if (v == "regenerate") {
                 c.study.simulation.bank_source = BankSource::Regenerate;
             } else {
                 throw ConfigError("bank: expected 'default' or 'regenerate', got '" + std::string(v) + "'");
             }
         }},
        {"grid_points", [](RunConfig&, GridSpec& g, std::string_view v) { g.points = parse_integer<std::size_t>(v, "grid_points"); }},
        {"grid_min", [](RunConfig&, GridSpec& g, std::string_view v) { g.lo = parse_number(v, "grid_min"); }},
        {"grid_max", [](RunConfig&, GridSpec& g, std::string_view v) { g.hi = parse_number(v, "grid_max"); }},
        {"grid", [](RunConfig& c, GridSpec& g, std::string_view v) {
             c.study.grid = parse_real_list(v, "grid");
             g.explicit_list = true;
         }},
        {"runs", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.runs = parse_integer<std::size_t>(v, "runs"); }},
        {"master_seed", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.master_seed = parse_integer<std::uint64_t>(v, "master_seed"); }},
        {"methods", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.methods = parse_method_list(v, "methods"); }},
        {"jobs", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.jobs = parse_integer<std::size_t>(v, "jobs"); }},
        {"out", [](RunConfig& c, GridSpec&, std::string_view v) { c.out_dir = std::string(v); }},
        {"delta", [](RunConfig& c, GridSpec&, std::string_view v) { c.study.estimation.delta = parse_number(v, "delta"); }},
        {"form", [](RunConfig& c, GridSpec&, std::string_view v) {
             if (v == "information") {
                 c.study.estimation.form = InfoForm::Information;
             } else if (v == "covariance") {
                 c.study.estimation.form = InfoForm::Covariance;
             } else {
                 throw ConfigError("form: expected 'information' or 'covariance', got '" + std::string(v) + "'");
             }
         }},
    };
    return table;
}

}  // namespace

std::vector<double> parse_real_list(std::string_view text, std::string_view field) {
    std::vector<double> out;
    for (const auto item : split_commas(text)) {
        if (item.empty()) throw ConfigError(std::string(field) + ": empty list item");
        out.push_back(parse_number(item, field));
    }
    return out;
}

std::vector<Method> parse_method_list(std::string_view text, std::string_view field) {
    std::vector<Method> out;
    for (const auto item : split_commas(text)) {
        try {
            out.push_back(parse_method(item));
        } catch (const Error&) {
            throw ConfigError(std::string(field) + ": unknown method '" + std::string(item) + "'");
        }
    }
    return out;
}

RunConfig parse_run_config(std::istream& in, std::string_view source) {
    RunConfig config;
    GridSpec grid;
    const auto& table = setters();
    std::map<std::string, std::size_t, std::less<>> seen;
    std::string line;
    std::size_t lineno = 0;
    auto where = [&](std::size_t l) {
        return l == 0 ? std::string(source) + ": " : std::string(source) + ":" + std::to_string(l) + ": ";
    };
    auto line_of = [&](std::string_view key) -> std::size_t {
        const auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where(lineno) + "expected 'key = value'");
        const std::string_view key = trim(text.substr(0, eq));
        const std::string_view value = trim(text.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError(where(lineno) + "unknown key '" + std::string(key) + "'");
        if (const auto prev = seen.find(key); prev != seen.end()) {
            throw ConfigError(where(lineno) + std::string(key) + ": already set on line " +
                              std::to_string(prev->second));
        }
        seen.emplace(std::string(key), lineno);
        if (value.empty()) throw ConfigError(where(lineno) + std::string(key) + ": missing value");
        try {
            it->second(config, grid, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where(lineno) + e.what());
        }
    }
    if (grid.explicit_list) {
        for (const char* key : {"grid_points", "grid_min", "grid_max"}) {
            if (seen.count(key)) {
                throw ConfigError(where(line_of(key)) + key + ": conflicts with 'grid' on line " +
                                  std::to_string(line_of("grid")));
            }
        }
    } else {
        if (grid.points == 0) throw ConfigError(where(line_of("grid_points")) + "grid_points: must be at least 1");
        if (!(grid.lo > 0.0 && grid.lo <= 1.0)) {
            throw ConfigError(where(line_of("grid_min")) + "grid_min: must lie in (0, 1], got " + format_real(grid.lo));
        }
        if (!(grid.hi >= grid.lo && grid.hi <= 1.0)) {
            throw ConfigError(where(line_of("grid_max")) + "grid_max: must lie in [grid_min, 1], got " + format_real(grid.hi));
        }
        config.study.grid = even_grid(grid.points, grid.lo, grid.hi);
    }
    // Field checks report the line that set the field.
    try {
        validate_run_config(config);
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        const std::string field = msg.substr(0, msg.find(':'));
        throw ConfigError(where(line_of(field)) + msg);
    }
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_run_config(in, path);
}

void validate_run_config(const RunConfig& config) {
    const SimulationConfig& s = config.study.simulation;
    const StudyConfig& st = config.study;
    auto fail = [](std::string_view field, const std::string& why) {
        throw ConfigError(std::string(field) + ": " + why);
    };
    if (s.orders.n == 0 && s.orders.m == 0) fail("n", "n and m cannot both be 0");
    if (s.horizon <= s.orders.max_lag() + 1) fail("N", "must exceed max(n, m) + 1, got " + std::to_string(s.horizon));
    if (!(s.sigma2 >= 0.0) || !std::isfinite(s.sigma2)) fail("sigma2", "must be finite and >= 0, got " + format_real(s.sigma2));
    if (s.filter_order < 2 || s.filter_order % 2 != 0) {
        fail("filter_order", "must be even and >= 2, got " + std::to_string(s.filter_order));
    }
    if (!(s.filter_cutoff > 0.0 && s.filter_cutoff < 1.0)) {
        fail("filter_cutoff", "must lie in (0, 1), got " + format_real(s.filter_cutoff));
    }
    if (st.grid.empty()) fail("grid", "must not be empty");
    for (const double v : st.grid) {
        if (!(v > 0.0 && v <= 1.0)) fail("grid", "values must lie in (0, 1], got " + format_real(v));
    }
    if (st.runs == 0) fail("runs", "must be at least 1");
    if (st.methods.empty()) fail("methods", "must not be empty");
    if (st.jobs == 0) fail("jobs", "must be at least 1");
    if (!(st.estimation.delta > 0.0) || !std::isfinite(st.estimation.delta)) {
        fail("delta", "must be finite and > 0, got " + format_real(st.estimation.delta));
    }
    if (config.out_dir.empty()) fail("out", "must not be empty");
    try {
        st.validate();
    } catch (const DomainError& e) {
        fail("config", e.what());
    }
}

}  // namespace mfrls::cli
