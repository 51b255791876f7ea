#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eba/errors.hpp"

namespace eba {

enum class FeatureKind { Interval, Nominal, Ordinal };

std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& s);

/// One column of the historical project table. Binary variables are nominal
/// features with two levels. Ordinal features carry their level order, which
/// fixes the ranks used by the unit-interval transform.
struct Feature {
    std::string name;
    FeatureKind kind = FeatureKind::Interval;
    std::vector<std::string> ordinal_levels; // ordinal only, low to high
};

/// Feature list plus the name of the effort column.
///
/// Sidecar file format, one feature per line:
///     name,kind[,level1|level2|...]
///     effort,<column name>
/// Blank lines and lines starting with '#' are ignored.
struct Schema {
    std::vector<Feature> features;
    std::string effort_column;

    void validate() const; // throws ValidationError
    std::optional<std::size_t> index_of(const std::string& name) const;

    static Schema parse(std::istream& in, const std::string& origin = "<stream>");
    static Schema parse_file(const std::string& path);
};

/// A cell is either missing or a value matching the feature kind:
/// interval cells hold a double, nominal/ordinal cells a level identifier.
using Cell = std::optional<std::variant<double, std::string>>;

inline Cell missing_cell() { return std::nullopt; }
inline Cell number_cell(double v) { return Cell(std::in_place, std::in_place_type<double>, v); }
inline Cell label_cell(std::string s) { return Cell(std::in_place, std::in_place_type<std::string>, std::move(s)); }
inline bool is_missing(const Cell& c) { return !c.has_value(); }

/// One project: per-feature cells in schema order, plus its effort.
/// Effort may be absent only for a query case that is yet to be estimated.
struct ProjectRecord {
    std::vector<Cell> values;
    std::optional<double> effort;
};

/// Immutable, validated historical project table. Interval ranges and ordinal
/// rank tables are frozen at construction from the records themselves; a
/// query case never contributes to them.
class Dataset {
public:
    Dataset(Schema schema, std::vector<ProjectRecord> records);

    static Dataset parse_csv(const std::string& path, const Schema& schema,
                             const std::string& missing_token = "?");
    static Dataset parse_csv(std::istream& in, const Schema& schema,
                             const std::string& missing_token,
                             const std::string& origin);

    const Schema& schema() const { return schema_; }
    std::size_t size() const { return records_.size(); }
    std::size_t feature_count() const { return schema_.features.size(); }
    const ProjectRecord& record(std::size_t i) const;
    const std::vector<ProjectRecord>& records() const { return records_; }

    double effort(std::size_t i) const;
    std::vector<double> efforts() const;

    /// (min, max) over non-missing values; nullopt for non-interval
    /// features and for interval features with no observed value.
    const std::optional<std::pair<double, double>>& interval_range(std::size_t feature) const;

    /// Rank of an ordinal level, 1-based in declared level order.
    int ordinal_rank(std::size_t feature, const std::string& level) const;
    int ordinal_level_count(std::size_t feature) const;

    /// z = (rank - 1) / (M - 1); 0 for a degenerate single-level feature.
    double ordinal_to_unit_interval(std::size_t feature, const std::string& level) const;
    double ordinal_to_unit_interval(const std::string& feature, const std::string& level) const;

    /// Copy with record i removed; ranges and rank tables are recomputed
    /// from the remaining records.
    Dataset without_record(std::size_t i) const;

    void write_csv(std::ostream& out, const std::string& missing_token = "?") const;

private:
    void validate_record(const ProjectRecord& rec, std::size_t row, bool require_effort) const;
    void freeze_ranges();

    Schema schema_;
    std::vector<ProjectRecord> records_;
    std::vector<std::optional<std::pair<double, double>>> interval_ranges_;
    std::vector<std::map<std::string, int>> ordinal_ranks_;

    friend void validate_query(const Dataset&, const ProjectRecord&);
};

/// Validate a query case against a dataset's schema. Effort may be missing;
/// cells must conform to their feature kinds (ordinal levels must be known).
void validate_query(const Dataset& dataset, const ProjectRecord& query);

/// Build a query record from name -> raw-text pairs; absent features are
/// missing. Values equal to missing_token (or empty) are missing.
ProjectRecord make_query(const Schema& schema,
                         const std::vector<std::pair<std::string, std::string>>& assignments,
                         const std::string& missing_token = "?");

/// Read a single-row CSV (header + one data row) as a query case.
ProjectRecord parse_query_csv(const std::string& path, const Schema& schema,
                              const std::string& missing_token = "?");

} // namespace eba
