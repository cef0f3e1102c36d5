#include "mfrls/report_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "mfrls/dataset_io.hpp"
#include "mfrls/errors.hpp"

namespace mfrls {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::string_view strip_cr(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    return s;
}

std::size_t parse_index(std::string_view token, std::size_t lineno) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": bad integer '" + std::string(token) + "'");
    }
    return v;
}

nlohmann::json real_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

nlohmann::json quartiles_json(const Quartiles& q) {
    return {{"min", real_or_null(q.min)},       {"q1", real_or_null(q.q1)},
            {"median", real_or_null(q.median)}, {"q3", real_or_null(q.q3)},
            {"max", real_or_null(q.max)}};
}

}  // namespace

void write_study_header(std::ostream& out) { out << kStudyCsvHeader << '\n'; }

void write_study_records(std::ostream& out, std::span<const StudyRecord> records) {
    for (const auto& r : records) {
        out << r.run << ',' << method_name(r.method) << ',' << format_real(r.lambda1) << ','
            << format_real(r.lambda2) << ',' << format_real(r.cod) << ',' << format_real(r.atf)
            << ',' << (r.failed ? 1 : 0) << '\n';
    }
}

std::vector<StudyRecord> read_study_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || strip_cr(line) != kStudyCsvHeader) {
        throw ParseError("study csv: expected header '" + std::string(kStudyCsvHeader) + "'");
    }
    std::vector<StudyRecord> records;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view sv = strip_cr(line);
        if (sv.empty()) continue;
        const auto cells = split(sv, ',');
        if (cells.size() != 7) {
            throw ParseError("study csv line " + std::to_string(lineno) + ": expected 7 fields");
        }
        StudyRecord r;
        r.run = parse_index(cells[0], lineno);
        r.method = parse_method(cells[1]);
        r.lambda1 = parse_real(cells[2]);
        r.lambda2 = parse_real(cells[3]);
        r.cod = parse_real(cells[4]);
        r.atf = parse_real(cells[5]);
        if (cells[6] != "0" && cells[6] != "1") {
            throw ParseError("study csv line " + std::to_string(lineno) + ": failed must be 0 or 1");
        }
        r.failed = cells[6] == "1";
        records.push_back(r);
    }
    return records;
}

std::string study_summary_json(const StudyReport& report) {
    const StudyConfig& c = report.config;
    const SimulationConfig& s = c.simulation;
    nlohmann::json methods = nlohmann::json::object();
    for (const auto& m : report.summary) {
        methods[std::string(method_name(m.method))] = {
            {"records", m.records},
            {"failures", m.failures},
            {"lambda1", quartiles_json(m.lambda1)},
            {"lambda2", quartiles_json(m.lambda2)},
            {"cod", quartiles_json(m.cod)},
            {"atf", quartiles_json(m.atf)},
            {"mean_cod", real_or_null(m.mean_cod)},
            {"mean_atf", real_or_null(m.mean_atf)},
        };
    }
    std::vector<std::string> method_names;
    for (const Method m : c.methods) method_names.emplace_back(method_name(m));
    std::size_t failures = 0;
    for (const auto& r : report.records) failures += r.failed ? 1 : 0;
    const nlohmann::json doc = {
        {"master_seed", c.master_seed},
        {"runs", c.runs},
        {"records", report.records.size()},
        {"failed_records", failures},
        {"methods", methods},
        {"config",
         {{"n", s.orders.n},
          {"m", s.orders.m},
          {"N", s.horizon},
          {"sigma2", s.sigma2},
          {"filter_order", s.filter_order},
          {"filter_cutoff", s.filter_cutoff},
          {"filter_warmup", s.filter_warmup},
          {"bank", s.bank_source == BankSource::Default ? "default" : "regenerate"},
          {"grid", c.grid},
          {"methods", method_names},
          {"delta", c.estimation.delta}}},
    };
    return doc.dump(2) + "\n";
}

void write_estimation(std::ostream& out, const EstimationResult& result, std::optional<double> cod,
                      std::optional<double> atf) {
    out << "# mfrls-estimate 1\n# scheme: " << kind_name(result.scheme.kind) << "\n# lambda: ";
    for (std::size_t i = 0; i < result.scheme.lambda.size(); ++i) {
        out << (i ? "," : "") << format_real(result.scheme.lambda[i]);
    }
    out << "\n# cod: " << (cod ? format_real(*cod) : std::string("unavailable"))
        << "\n# atf: " << (atf ? format_real(*atf) : std::string("unavailable"))
        << "\n# failed_step: " << (result.failed ? result.failure_step : 0) << '\n';
    const std::size_t p = result.theta_hat.empty() ? 0 : static_cast<std::size_t>(result.theta_hat.front().size());
    out << "t,y,y_pred";
    for (std::size_t i = 1; i <= p; ++i) out << ",theta_hat_" << i;
    out << '\n';
    for (std::size_t k = 0; k < result.theta_hat.size(); ++k) {
        out << result.first_t + k << ',' << format_real(result.y[k]) << ','
            << format_real(result.y_pred[k]);
        for (Eigen::Index i = 0; i < result.theta_hat[k].size(); ++i) {
            out << ',' << format_real(result.theta_hat[k][i]);
        }
        out << '\n';
    }
}

EstimationFile read_estimation(std::istream& in) {
    EstimationFile f;
    std::string line;
    std::size_t lineno = 0;
    bool magic = false;
    std::vector<double> lambda;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = strip_cr(line);
        if (sv.empty()) continue;
        if (sv.front() != '#') break;
        sv.remove_prefix(1);
        while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
        if (sv == "mfrls-estimate 1") {
            magic = true;
            continue;
        }
        const std::size_t colon = sv.find(':');
        if (colon == std::string_view::npos) throw ParseError("estimate: bad header line " + std::to_string(lineno));
        const std::string_view key = sv.substr(0, colon);
        std::string_view value = sv.substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
        if (key == "scheme") {
            f.scheme.kind = parse_kind(value);
        } else if (key == "lambda") {
            for (const auto tok : split(value, ',')) lambda.push_back(parse_real(tok));
        } else if (key == "cod") {
            if (value != "unavailable") f.cod = parse_real(value);
        } else if (key == "atf") {
            if (value != "unavailable") f.atf = parse_real(value);
        } else if (key == "failed_step") {
            f.failure_step = parse_index(value, lineno);
            f.failed = f.failure_step != 0;
        }
    }
    if (!magic) throw ParseError("estimate: missing '# mfrls-estimate 1' header");
    f.scheme.lambda = std::move(lambda);
    f.scheme.validate();

    const auto columns = split(strip_cr(line), ',');
    if (columns.size() < 3 || columns[0] != "t") throw ParseError("estimate: bad column header");
    const std::size_t p = columns.size() - 3;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view sv = strip_cr(line);
        if (sv.empty()) continue;
        const auto cells = split(sv, ',');
        if (cells.size() != columns.size()) {
            throw ParseError("estimate line " + std::to_string(lineno) + ": wrong field count");
        }
        EstimationRow row;
        row.t = parse_index(cells[0], lineno);
        row.y = parse_real(cells[1]);
        row.y_pred = parse_real(cells[2]);
        row.theta_hat.resize(static_cast<Eigen::Index>(p));
        for (std::size_t i = 0; i < p; ++i) row.theta_hat[static_cast<Eigen::Index>(i)] = parse_real(cells[3 + i]);
        f.rows.push_back(std::move(row));
    }
    return f;
}

}  // namespace mfrls
