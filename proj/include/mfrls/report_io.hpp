#pragma once

// Estimation and study outputs.
//
// Study CSV columns: run,method,lambda1_opt,lambda2_opt,cod,atf,failed
// RARX rows repeat the single factor in both lambda columns. Failed rows carry
// "nan" values and failed=1.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfrls/evaluation.hpp"

namespace mfrls {

inline constexpr std::string_view kStudyCsvHeader = "run,method,lambda1_opt,lambda2_opt,cod,atf,failed";

void write_study_header(std::ostream& out);
void write_study_records(std::ostream& out, std::span<const StudyRecord> records);
std::vector<StudyRecord> read_study_csv(std::istream& in);

/// Per-method quartiles, medians, extremes, failure counts, config echo and
/// master seed as pretty-printed JSON.
std::string study_summary_json(const StudyReport& report);

struct EstimationRow {
    std::size_t t = 0;
    double y = 0.0;
    double y_pred = 0.0;
    Vector theta_hat;
};

struct EstimationFile {
    ForgettingSpec scheme;
    std::optional<double> cod;  ///< empty when the run failed before any step
    std::optional<double> atf;  ///< empty when the dataset had no ground truth
    bool failed = false;
    std::size_t failure_step = 0;
    std::vector<EstimationRow> rows;
};

/// Header comments (scheme, lambda, cod, atf, failure) then
/// t,y,y_pred,theta_hat_1..theta_hat_p.
void write_estimation(std::ostream& out, const EstimationResult& result, std::optional<double> cod,
                      std::optional<double> atf);
EstimationFile read_estimation(std::istream& in);

}  // namespace mfrls
