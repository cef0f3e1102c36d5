#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mfrls/dataset_io.hpp"
#include "mfrls/forgetting.hpp"
#include "mfrls/report_io.hpp"

namespace mfrls::cli {
namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    return f;
}

// Console numbers: 4 significant digits.
std::string short_real(double v) {
    if (!std::isfinite(v)) return format_real(v);
    std::ostringstream s;
    s << std::setprecision(4) << v;
    return s.str();
}

std::string matrix_literal(const Matrix& q) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        s += i ? ",[" : "[";
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            if (j) s += ',';
            s += format_real(q(i, j));
        }
        s += ']';
    }
    return s + "]";
}

class LogLevelScope {
public:
    explicit LogLevelScope(spdlog::level::level_enum level) : saved_(spdlog::get_level()) {
        spdlog::set_level(level);
    }
    ~LogLevelScope() { spdlog::set_level(saved_); }
    LogLevelScope(const LogLevelScope&) = delete;
    LogLevelScope& operator=(const LogLevelScope&) = delete;

private:
    spdlog::level::level_enum saved_;
};

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    const RunConfig config = args.config ? load_run_config(*args.config) : RunConfig{};
    const Dataset ds = generate_dataset(config.study.simulation, args.seed);
    save_dataset(args.out, ds);
    out << "wrote " << args.out << ": N=" << ds.size() << " p=" << ds.orders.p()
        << " sigma2=" << short_real(ds.sigma2) << " seed=" << ds.seed << '\n';
    return kExitOk;
}

int cmd_estimate(const EstimateArgs& args, std::ostream& out, std::ostream& err) {
    Method method{};
    try {
        method = parse_method(args.method);
    } catch (const Error&) {
        throw UsageError("--method: unknown method '" + args.method + "'");
    }
    if (args.lambda.size() != method_arity(method)) {
        throw UsageError("--lambda: " + std::string(method_name(method)) + " takes " +
                         std::to_string(method_arity(method)) + " factor(s), got " +
                         std::to_string(args.lambda.size()));
    }
    for (const double l : args.lambda) {
        if (!(l > 0.0 && l <= 1.0)) throw UsageError("--lambda: factors must lie in (0, 1], got " + format_real(l));
    }
    const Dataset ds = load_dataset(args.in);
    const double l1 = args.lambda[0];
    const double l2 = args.lambda.size() > 1 ? args.lambda[1] : l1;
    const EstimationResult result = run_estimation(ds, method_spec(method, ds.orders, l1, l2));

    std::optional<double> c;
    std::optional<double> a;
    if (!result.failed) {
        c = result_cod(result);
        a = result_atf(result, ds);
    }
    {
        std::ofstream f = open_output(args.out);
        write_estimation(f, result, c, a);
        if (!f) throw Error("write to '" + args.out + "' failed");
    }
    if (result.failed) {
        err << "estimation failed at step " << result.failure_step << ": " << result.failure << '\n';
        return kExitData;
    }
    out << "COD " << short_real(*c) << "  ATF " << (a ? short_real(*a) : std::string("unavailable"))
        << '\n';
    return kExitOk;
}

RunConfig resolve_study_config(const StudyArgs& args) {
    RunConfig config = args.config ? load_run_config(*args.config) : RunConfig{};
    if (args.out) config.out_dir = *args.out;
    if (args.runs) config.study.runs = *args.runs;
    if (args.grid) config.study.grid = *args.grid;
    if (args.methods) config.study.methods = *args.methods;
    if (args.jobs) config.study.jobs = *args.jobs;
    if (args.seed) config.study.master_seed = *args.seed;
    validate_run_config(config);
    return config;
}

int cmd_study(const StudyArgs& args, std::ostream& out) {
    const RunConfig config = resolve_study_config(args);
    std::filesystem::create_directories(config.out_dir);
    const std::string csv_path = (std::filesystem::path(config.out_dir) / "study.csv").string();
    const std::string json_path = (std::filesystem::path(config.out_dir) / "summary.json").string();

    std::ofstream csv = open_output(csv_path);
    write_study_header(csv);
    csv.flush();
    StudyReport report;
    {
        const LogLevelScope quiet(spdlog::level::err);
        report = monte_carlo(config.study, [&](std::span<const StudyRecord> records) {
            write_study_records(csv, records);
            csv.flush();
        });
    }
    if (!csv) throw Error("write to '" + csv_path + "' failed");
    {
        std::ofstream json = open_output(json_path);
        json << study_summary_json(report);
        if (!json) throw Error("write to '" + json_path + "' failed");
    }

    std::size_t failed = 0;
    for (const auto& r : report.records) failed += r.failed ? 1 : 0;

    char line[160];
    std::snprintf(line, sizeof line, "%-6s %8s %10s %10s %10s %10s %10s\n", "method", "failed",
                  "lambda1", "lambda2", "COD", "ATF", "mean COD");
    out << line;
    for (const auto& s : report.summary) {
        std::snprintf(line, sizeof line, "%-6s %8zu %10s %10s %10s %10s %10s\n",
                      std::string(method_name(s.method)).c_str(), s.failures,
                      short_real(s.lambda1.median).c_str(), short_real(s.lambda2.median).c_str(),
                      short_real(s.cod.median).c_str(), short_real(s.atf.median).c_str(),
                      short_real(s.mean_cod).c_str());
        out << line;
    }
    out << "medians over " << config.study.runs << " runs; wrote " << csv_path << " and " << json_path
        << '\n';
    if (failed == report.records.size()) return kExitStudyFailed;
    return kExitOk;
}

int cmd_kernels(const KernelsArgs& args, std::ostream& out) {
    if (args.remark) {
        std::ofstream file;
        std::ostream* dst = &out;
        if (args.out) {
            file = open_output(*args.out);
            dst = &file;
        }
        *dst << "lambda2,f,g\n";
        for (const auto& pt : remark_curve()) {
            *dst << format_real(pt.lambda2) << ',' << format_real(pt.f) << ',' << format_real(pt.g) << '\n';
        }
        if (!*dst) throw Error("remark output failed");
        return kExitOk;
    }
    ForgettingKind kind{};
    try {
        kind = parse_kind(args.kind);
    } catch (const Error&) {
        throw UsageError("--kind: expected di, tc or cs, got '" + args.kind + "'");
    }
    if (kind == ForgettingKind::Scalar || kind == ForgettingKind::VectorType) {
        throw UsageError("--kind: expected di, tc or cs, got '" + args.kind + "'");
    }
    if (args.lambda.empty()) throw UsageError("--lambda: at least one factor required");
    const ForgettingSpec spec = ForgettingSpec::make(kind, args.lambda);
    spec.validate();
    out << matrix_literal(build_kernel(spec, args.lambda.size()).q) << '\n';
    return kExitOk;
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recursive least squares with multiple forgetting: simulation, estimation, studies"};
    app.name(argv.empty() ? "mfrls" : argv.front());
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a time-varying ARX dataset");
    simulate->add_option("--config", sim.config, "Run config file");
    simulate->add_option("--seed", sim.seed, "Dataset seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output dataset path")->required();

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Run one method over a dataset");
    estimate->add_option("--in", est.in, "Dataset path")->required();
    estimate->add_option("--method", est.method, "RARX, VF, DI, TC or CS")->required();
    estimate->add_option("--lambda", est.lambda, "Forgetting factor(s), comma separated")
        ->required()
        ->delimiter(',');
    estimate->add_option("--out", est.out, "Output estimation path")->required();

    StudyArgs st;
    std::string grid_text;
    std::string methods_text;
    std::size_t runs = 0;
    std::size_t jobs = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    auto* study = app.add_subcommand("study", "Monte-Carlo comparison of all methods");
    study->add_option("--config", st.config, "Run config file");
    auto* o_out = study->add_option("--out", out_dir, "Output directory");
    auto* o_runs = study->add_option("--runs", runs, "Number of runs");
    auto* o_grid = study->add_option("--grid", grid_text, "Grid values, comma separated");
    auto* o_methods = study->add_option("--methods", methods_text, "Methods, comma separated");
    auto* o_jobs = study->add_option("--jobs", jobs, "Worker threads");
    auto* o_seed = study->add_option("--seed", seed, "Master seed");

    KernelsArgs ker;
    auto* kernels = app.add_subcommand("kernels", "Print a forgetting kernel or the remark curve");
    kernels->add_option("--kind", ker.kind, "di, tc or cs")->capture_default_str();
    kernels->add_option("--lambda", ker.lambda, "Per-parameter factors, comma separated")->delimiter(',');
    kernels->add_flag("--remark", ker.remark, "Emit lambda2,f,g for lambda1 = 0.3");
    kernels->add_option("--out", ker.out, "Remark CSV path (default stdout)");

    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, out);
        if (*estimate) return cmd_estimate(est, out, err);
        if (*study) {
            if (*o_out) st.out = out_dir;
            if (*o_runs) st.runs = runs;
            if (*o_grid) st.grid = parse_real_list(grid_text, "--grid");
            if (*o_methods) st.methods = parse_method_list(methods_text, "--methods");
            if (*o_jobs) st.jobs = jobs;
            if (*o_seed) st.seed = seed;
            return cmd_study(st, out);
        }
        if (*kernels) return cmd_kernels(ker, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace mfrls::cli
