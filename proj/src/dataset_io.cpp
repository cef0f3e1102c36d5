#include "mfrls/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "mfrls/errors.hpp"

namespace mfrls {
namespace {

constexpr std::string_view kMagic = "mfrls-dataset 1";

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

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class Int>
Int parse_int(std::string_view token, const std::string& what) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("dataset: bad integer for " + what + ": '" + std::string(token) + "'");
    }
    return v;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_real(std::string_view token) {
    token = trim(token);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        throw ParseError("bad real number '" + std::string(token) + "'");
    }
    return v;
}

void write_dataset(std::ostream& out, const Dataset& ds) {
    if (ds.u.size() != ds.y.size()) throw DimensionMismatch("dataset: u and y lengths differ");
    const std::size_t p = ds.orders.p();
    out << "# " << kMagic << '\n'
        << "# n: " << ds.orders.n << '\n'
        << "# m: " << ds.orders.m << '\n'
        << "# N: " << ds.size() << '\n'
        << "# sigma2: " << format_real(ds.sigma2) << '\n'
        << "# seed: " << ds.seed << '\n'
        << "# filter_order: " << ds.filter_order << '\n'
        << "# filter_cutoff: " << format_real(ds.filter_cutoff) << '\n';
    out << "t,u,y";
    if (ds.trajectory) {
        for (std::size_t i = 1; i <= p; ++i) out << ",theta_" << i;
    }
    out << '\n';
    for (std::size_t t = 1; t <= ds.size(); ++t) {
        out << t << ',' << format_real(ds.u[t - 1]) << ',' << format_real(ds.y[t - 1]);
        if (ds.trajectory) {
            const Vector& th = ds.trajectory->theta[t - 1];
            for (Eigen::Index i = 0; i < th.size(); ++i) out << ',' << format_real(th[i]);
        }
        out << '\n';
    }
}

Dataset read_dataset(std::istream& in) {
    std::string line;
    std::map<std::string, std::string, std::less<>> header;
    bool magic = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() != '#') break;
        const std::string_view body = trim(sv.substr(1));
        if (body == kMagic) {
            magic = true;
            continue;
        }
        const std::size_t colon = body.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("dataset line " + std::to_string(lineno) + ": expected 'key: value'");
        }
        header.emplace(std::string(trim(body.substr(0, colon))),
                       std::string(trim(body.substr(colon + 1))));
    }
    if (!magic) throw ParseError("dataset: missing '# mfrls-dataset 1' header");
    for (const char* key : {"n", "m", "N", "sigma2", "seed", "filter_order", "filter_cutoff"}) {
        if (!header.count(key)) throw ParseError(std::string("dataset: missing header field '") + key + "'");
    }
    Dataset ds;
    ds.orders.n = parse_int<std::size_t>(header["n"], "n");
    ds.orders.m = parse_int<std::size_t>(header["m"], "m");
    ds.orders.validate();
    const auto horizon = parse_int<std::size_t>(header["N"], "N");
    ds.sigma2 = parse_real(header["sigma2"]);
    ds.seed = parse_int<std::uint64_t>(header["seed"], "seed");
    ds.filter_order = parse_int<int>(header["filter_order"], "filter_order");
    ds.filter_cutoff = parse_real(header["filter_cutoff"]);

    const std::size_t p = ds.orders.p();
    const auto columns = split(trim(line), ',');
    if (columns.size() < 3 || columns[0] != "t" || columns[1] != "u" || columns[2] != "y") {
        throw ParseError("dataset line " + std::to_string(lineno) + ": expected column header 't,u,y[,theta_i...]'");
    }
    const bool has_theta = columns.size() > 3;
    if (has_theta && columns.size() != 3 + p) {
        throw ParseError("dataset: expected " + std::to_string(p) + " theta columns, found " +
                         std::to_string(columns.size() - 3));
    }
    ArxTrajectory traj{ds.orders, {}};
    ds.u.reserve(horizon);
    ds.y.reserve(horizon);
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        const auto cells = split(sv, ',');
        if (cells.size() != columns.size()) {
            throw ParseError("dataset line " + std::to_string(lineno) + ": expected " +
                             std::to_string(columns.size()) + " fields, found " +
                             std::to_string(cells.size()));
        }
        const auto t = parse_int<std::size_t>(trim(cells[0]), "t");
        if (t != ds.y.size() + 1) {
            throw ParseError("dataset line " + std::to_string(lineno) + ": time index out of sequence");
        }
        try {
            ds.u.push_back(parse_real(cells[1]));
            ds.y.push_back(parse_real(cells[2]));
            if (has_theta) {
                Vector th(static_cast<Eigen::Index>(p));
                for (std::size_t i = 0; i < p; ++i) th[static_cast<Eigen::Index>(i)] = parse_real(cells[3 + i]);
                traj.theta.push_back(std::move(th));
            }
        } catch (const ParseError& e) {
            throw ParseError("dataset line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (ds.y.size() != horizon) {
        throw ParseError("dataset: header says N=" + std::to_string(horizon) + " but " +
                         std::to_string(ds.y.size()) + " rows were read");
    }
    if (has_theta) ds.trajectory = std::move(traj);
    return ds;
}

void save_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_dataset(out, ds);
    if (!out) throw Error("write to '" + path + "' failed");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_dataset(in);
}

}  // namespace mfrls
