#pragma once

// Flat key = value run configuration. '#' starts a comment, blank lines are
// ignored, unknown keys are errors. See config/default.conf for every key.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mfrls/errors.hpp"
#include "mfrls/evaluation.hpp"

namespace mfrls::cli {

/// Invalid configuration. The message names the offending field and, when it
/// came from a file, the line.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    StudyConfig study;
    std::string out_dir = "out";
};

RunConfig parse_run_config(std::istream& in, std::string_view source = "config");
RunConfig load_run_config(const std::string& path);

/// Field-by-field checks; ConfigError naming the first bad field.
void validate_run_config(const RunConfig& config);

/// "0.5,0.9" -> {0.5, 0.9}. Whitespace around items is ignored.
std::vector<double> parse_real_list(std::string_view text, std::string_view field);
std::vector<Method> parse_method_list(std::string_view text, std::string_view field);

}  // namespace mfrls::cli
