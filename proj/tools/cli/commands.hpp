#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace mfrls::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitStudyFailed = 3 };

/// Bad command-line arguments (wrong lambda arity, unknown kind, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

struct SimulateArgs {
    std::optional<std::string> config;
    std::uint64_t seed = 1;
    std::string out;
};

struct EstimateArgs {
    std::string in;
    std::string method;
    std::vector<double> lambda;
    std::string out;
};

struct StudyArgs {
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::size_t> runs;
    std::optional<std::vector<double>> grid;
    std::optional<std::vector<Method>> methods;
    std::optional<std::size_t> jobs;
    std::optional<std::uint64_t> seed;
};

struct KernelsArgs {
    std::string kind = "tc";
    std::vector<double> lambda;
    bool remark = false;
    std::optional<std::string> out;
};

// Each command throws on error; run_cli maps exceptions to exit codes.
int cmd_simulate(const SimulateArgs& args, std::ostream& out);
int cmd_estimate(const EstimateArgs& args, std::ostream& out, std::ostream& err);
int cmd_study(const StudyArgs& args, std::ostream& out);
int cmd_kernels(const KernelsArgs& args, std::ostream& out);

/// Study config after applying command-line overrides; validated.
RunConfig resolve_study_config(const StudyArgs& args);

/// Parses argv (argv[0] is the program name), runs the subcommand and returns
/// the process exit code. Errors go to `err`.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace mfrls::cli
