#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "eba/dissimilarity.hpp"

namespace eba {

inline constexpr int kQuerySource = -1;

/// One empirical sample of distances: a matrix row without its self-entry
/// (n-1 values), or a query's distances to all historical records (n values).
/// Infinite entries are dropped from samples and counted in excluded_count.
struct DistanceDistribution {
    int source_index = kQuerySource;
    std::vector<double> samples;
    std::size_t excluded_count = 0;
};

/// Off-diagonal entries of row i, in column order.
DistanceDistribution row_distribution(const DistanceMatrix& matrix, std::size_t i);

/// Distribution of query-to-record distances; +inf entries are excluded.
DistanceDistribution query_distribution(const std::vector<double>& distances);

/// Two-sample Kolmogorov-Smirnov statistic: the largest absolute gap between
/// the two right-continuous empirical CDFs, evaluated exactly at the pooled
/// sample points. No p-value. Well-defined for unequal sample sizes.
double ks_statistic(const DistanceDistribution& a, const DistanceDistribution& b);

struct DistributionMatch {
    std::size_t index;
    double statistic;
};

/// Row whose distance distribution is closest to the query's in KS statistic.
/// Ties go to the smallest row index; rows with empty samples are skipped.
DistributionMatch nearest_distribution(const DistanceMatrix& matrix,
                                       const DistanceDistribution& query);

/// Debug dump: per-row KS statistic against the query, one CSV line per row.
void write_ks_statistics_csv(const DistanceMatrix& matrix, const DistanceDistribution& query,
                             std::ostream& out);

} // namespace eba
