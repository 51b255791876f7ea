#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eba/dataset.hpp"
#include "eba/dissimilarity.hpp"
#include "eba/distributions.hpp"

namespace eba {

enum class Statistic { Mean, Median };
enum class Method { FixedK, Loocv, Dd };

std::string to_string(Statistic s);
std::string to_string(Method m);
Statistic statistic_from_string(const std::string& s);
Method method_from_string(const std::string& s);

struct EstimationConfig {
    Method method = Method::Dd;
    int fixed_k = 1;     // fixed-k only
    int k_max = 0;       // 0 = auto: min(10, n - 2)
    Statistic statistic = Statistic::Mean;
};

/// Deterministic work counters. Distance evaluations are bookkeeping shared
/// by every method; the selection counters (KS comparisons, neighbor
/// rankings, estimate evaluations) are what the methods' cost claims compare.
struct OpCounts {
    std::uint64_t distance_evaluations = 0;
    std::uint64_t ks_comparisons = 0;
    std::uint64_t neighbor_rankings = 0;
    std::uint64_t eba_estimates = 0;

    std::uint64_t selection_total() const {
        return ks_comparisons + neighbor_rankings + eba_estimates;
    }
    OpCounts& operator+=(const OpCounts& o) {
        distance_evaluations += o.distance_evaluations;
        ks_comparisons += o.ks_comparisons;
        neighbor_rankings += o.neighbor_rankings;
        eba_estimates += o.eba_estimates;
        return *this;
    }
};

/// Candidate neighbors sorted by ascending distance, ties by ascending index.
struct NeighborRanking {
    std::vector<std::pair<std::size_t, double>> entries;
    std::size_t size() const { return entries.size(); }
};

/// Sort all candidate indices by distance, skipping `exclude` and any +inf
/// entries. Throws ComputationError if nothing remains.
NeighborRanking rank_neighbors(const std::vector<double>& distances,
                               std::optional<std::size_t> exclude = std::nullopt,
                               OpCounts* counts = nullptr);

/// Statistic (mean or median) of the efforts of the first k ranked neighbors.
double eba_estimate(const NeighborRanking& ranking, const std::vector<double>& efforts,
                    int k, Statistic statistic, OpCounts* counts = nullptr);

/// Resolve the effective neighbor-range bound for a training set of size n.
/// Auto (0) resolves to min(10, n - 2). Explicit values are validated against
/// n - 1 for fixed/loocv selection and n - 2 for dd.
int effective_k_max(int requested, std::size_t n, Method method);

struct LoocvSelection {
    int k_star = 1;
    std::vector<double> mdae_per_k; // index k-1
};

/// Baseline selection: for each k in 1..k_max hold every project out in turn,
/// estimate it from the rest, take the median absolute error; pick the k with
/// the smallest MdAE (ties to the smallest k). Never reads any query.
LoocvSelection loocv_select_k(const Dataset& dataset, const DistanceMatrix& matrix,
                              int k_max, Statistic statistic, OpCounts* counts = nullptr);

struct DdSelection {
    int k_star = 1;
    std::size_t matched_index = 0;
    double ks_stat = 0.0;
    std::vector<double> ae_per_k; // pseudo-target absolute error, index k-1
};

/// Adaptive selection: match the query's distance distribution to the closest
/// matrix row, then find the k that best estimates that row's own effort from
/// its neighbors. One pass over the rows plus one neighbor sort; no outer
/// hold-one-out loop.
DdSelection dd_select_k(const Dataset& dataset, const DistanceMatrix& matrix,
                        const std::vector<double>& query_distances,
                        int k_max, Statistic statistic, OpCounts* counts = nullptr);

struct Prediction {
    double estimate = 0.0;
    int k_used = 0;
    std::vector<std::size_t> neighbor_indices;
    std::optional<std::size_t> matched_index; // dd only
    std::optional<double> ks_stat;            // dd only
};

/// Full pipeline for one query: compute its distances, select k by the
/// configured method, estimate from its own k nearest historical neighbors.
Prediction predict(const Dataset& dataset, const ProjectRecord& query,
                   const EstimationConfig& config, OpCounts* counts = nullptr);

} // namespace eba
