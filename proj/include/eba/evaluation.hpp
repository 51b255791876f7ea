#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eba/dataset.hpp"
#include "eba/estimator.hpp"

namespace eba {

/// Local accuracy of one prediction. MRE is undefined when the actual is not
/// positive, MER when the estimate is zero; undefined values are excluded
/// from the global aggregates with a count.
struct ProjectError {
    double actual = 0.0;
    double estimate = 0.0;
    double ae = 0.0;
    std::optional<double> mre;
    std::optional<double> mer;
};

struct LocalErrors {
    std::vector<ProjectError> items;
    std::size_t undefined_mre = 0;
    std::size_t undefined_mer = 0;
};

LocalErrors local_errors(const std::vector<double>& actuals,
                         const std::vector<double>& estimates);

/// Means and medians of the defined local values. The median of an
/// even-length list is the mean of the two central values.
struct GlobalMeasures {
    double mmre = 0.0, mdmre = 0.0;
    double mmer = 0.0, mdmer = 0.0;
    double mae = 0.0, mdae = 0.0;
};

GlobalMeasures global_measures(const LocalErrors& locals);

struct EvaluatedProject {
    std::size_t index = 0;
    double actual = 0.0;
    double estimate = 0.0;
    double ae = 0.0;
    std::optional<double> mre;
    std::optional<double> mer;
    int k_used = 0;
    std::optional<std::size_t> matched_index; // index into the fold's training set
    std::optional<double> ks_stat;
};

struct EvaluationResult {
    std::vector<EvaluatedProject> projects;
    std::vector<std::size_t> failed; // projects whose prediction errored, excluded
    std::size_t undefined_mre = 0;
    std::size_t undefined_mer = 0;
    GlobalMeasures globals;
    double wall_time_ms = 0.0;
    OpCounts op_counts;
};

/// Leave-one-out harness: each project is held out in turn, the remaining
/// records form a fresh training set (ranges and rank tables recomputed), and
/// the held-out effort is predicted by the configured method.
EvaluationResult loo_evaluate(const Dataset& dataset, const EstimationConfig& config);

struct ComparisonResult {
    std::vector<double> ae_a;
    std::vector<double> ae_b;
    double statistic = 0.0; // W = min(W+, W-)
    double p_value = 1.0;   // two-sided
    std::size_t n_effective = 0;
};

/// Wilcoxon signed-rank test on paired absolute errors. Zero differences are
/// dropped, tied |differences| get average ranks. The two-sided p-value is
/// exact (full sign enumeration) for n_effective <= 20, otherwise a normal
/// approximation with continuity correction and tie-corrected variance.
ComparisonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                      const std::vector<double>& b);

struct MethodComparison {
    EvaluationResult loocv;
    EvaluationResult dd;
    ComparisonResult wilcoxon;
};

/// Run the leave-one-out harness under both selection methods with a shared
/// neighbor range and statistic, and test their paired absolute errors.
MethodComparison compare_methods(const Dataset& dataset, int k_max, Statistic statistic);

} // namespace eba
