#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eba/dataset.hpp"

namespace eba {

/// Symmetric pairwise dissimilarities with zero diagonal. Entries are always
/// finite and non-negative; an undefined pair aborts construction.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double d) {
        entries_[i * n_ + j] = d;
        entries_[j * n_ + i] = d;
    }

    /// CSV dump with 17 significant digits, for external cross-checks.
    void write_csv(std::ostream& out) const;

private:
    std::size_t n_;
    std::vector<double> entries_;
};

/// Per-feature term of the mixed-type coefficient: counted is the
/// missing-value indicator (false iff either cell is missing), d the
/// normalized per-feature dissimilarity (0 when not counted).
struct PerFeatureDissim {
    bool counted = false;
    double d = 0.0;
};

/// Nominal: d = 1 iff the values differ. Interval: d = |a-b| / range, not
/// clamped, so out-of-range query values may yield d > 1. Ordinal: levels are
/// mapped to [0,1] by rank and treated as interval with range 1.
PerFeatureDissim per_feature_dissimilarity(const Dataset& dataset, std::size_t feature,
                                           const Cell& a, const Cell& b);

/// Kaufman-Rousseeuw coefficient: sum of counted per-feature terms divided by
/// the count. Returns nullopt when no feature is non-missing in both records.
std::optional<double> try_gower_distance(const ProjectRecord& x, const ProjectRecord& y,
                                         const Dataset& dataset);

/// As try_gower_distance, but an undefined distance throws UndefinedDistanceError.
double gower_distance(const ProjectRecord& x, const ProjectRecord& y, const Dataset& dataset);

/// Pairwise distances of the historical records. Each unordered pair is
/// computed once and mirrored. An undefined pair throws UndefinedDistanceError
/// naming the offending rows.
DistanceMatrix distance_matrix(const Dataset& dataset);

/// Distances from a query case to every historical record, using the
/// dataset's frozen ranges. Undefined pairs become +infinity so that a sparse
/// query is still estimable from the remaining records.
std::vector<double> distances_to_query(const ProjectRecord& query, const Dataset& dataset);

} // namespace eba
