#include "eba/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace eba {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

// RFC-4180-style reader: quoted fields, doubled quotes, CRLF line ends.
// Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    int ch;
    while ((ch = in.get()) != EOF) {
        saw_any = true;
        char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            fields.push_back(field);
            return true;
        } else if (c == '\n') {
            fields.push_back(field);
            return true;
        } else {
            field += c;
        }
    }
    if (!saw_any) return false;
    fields.push_back(field);
    return true;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string to_string(FeatureKind kind) {
    switch (kind) {
    case FeatureKind::Interval: return "interval";
    case FeatureKind::Nominal: return "nominal";
    case FeatureKind::Ordinal: return "ordinal";
    }
    return "?";
}

FeatureKind feature_kind_from_string(const std::string& s) {
    if (s == "interval") return FeatureKind::Interval;
    if (s == "nominal") return FeatureKind::Nominal;
    if (s == "ordinal") return FeatureKind::Ordinal;
    throw ValidationError("unknown feature kind '" + s + "' (expected interval, nominal or ordinal)");
}

void Schema::validate() const {
    if (features.empty()) throw ValidationError("schema declares no features");
    if (effort_column.empty()) throw ValidationError("schema declares no effort column");
    std::set<std::string> seen;
    for (const auto& f : features) {
        if (f.name.empty()) throw ValidationError("schema has a feature with an empty name");
        if (!seen.insert(f.name).second)
            throw ValidationError("duplicate feature name '" + f.name + "'");
        if (f.name == effort_column)
            throw ValidationError("effort column '" + effort_column + "' is also listed as a feature");
        if (f.kind == FeatureKind::Ordinal) {
            if (f.ordinal_levels.empty())
                throw ValidationError("ordinal feature '" + f.name + "' declares no levels");
            std::set<std::string> levels(f.ordinal_levels.begin(), f.ordinal_levels.end());
            if (levels.size() != f.ordinal_levels.size())
                throw ValidationError("ordinal feature '" + f.name + "' has duplicate levels");
        } else if (!f.ordinal_levels.empty()) {
            throw ValidationError("feature '" + f.name + "' is not ordinal but declares levels");
        }
    }
}

std::optional<std::size_t> Schema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < features.size(); ++i)
        if (features[i].name == name) return i;
    return std::nullopt;
}

Schema Schema::parse(std::istream& in, const std::string& origin) {
    Schema schema;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> parts = split(t, ',');
        for (auto& p : parts) p = trim(p);
        const std::string where = origin + ":" + std::to_string(lineno);
        if (parts.size() < 2)
            throw ValidationError(where + ": expected 'name,kind[,levels]' or 'effort,<name>'");
        if (parts[0] == "effort") {
            if (!schema.effort_column.empty())
                throw ValidationError(where + ": effort column declared twice");
            schema.effort_column = parts[1];
            continue;
        }
        Feature f;
        f.name = parts[0];
        f.kind = feature_kind_from_string(parts[1]);
        if (f.kind == FeatureKind::Ordinal) {
            if (parts.size() < 3)
                throw ValidationError(where + ": ordinal feature '" + f.name + "' needs a level list");
            for (auto& level : split(parts[2], '|')) {
                std::string l = trim(level);
                if (l.empty())
                    throw ValidationError(where + ": empty ordinal level in '" + f.name + "'");
                f.ordinal_levels.push_back(std::move(l));
            }
        } else if (parts.size() > 2 && !parts[2].empty()) {
            throw ValidationError(where + ": feature '" + f.name + "' is not ordinal but lists levels");
        }
        schema.features.push_back(std::move(f));
    }
    schema.validate();
    return schema;
}

Schema Schema::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open schema file '" + path + "'");
    return parse(in, path);
}

Dataset::Dataset(Schema schema, std::vector<ProjectRecord> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
    schema_.validate();
    if (records_.size() < 2)
        throw ValidationError("dataset needs at least 2 records, got " +
                              std::to_string(records_.size()));
    ordinal_ranks_.resize(schema_.features.size());
    for (std::size_t f = 0; f < schema_.features.size(); ++f) {
        const Feature& feat = schema_.features[f];
        if (feat.kind != FeatureKind::Ordinal) continue;
        int rank = 1;
        for (const auto& level : feat.ordinal_levels) ordinal_ranks_[f][level] = rank++;
    }
    for (std::size_t i = 0; i < records_.size(); ++i)
        validate_record(records_[i], i, /*require_effort=*/true);
    freeze_ranges();
}

void Dataset::validate_record(const ProjectRecord& rec, std::size_t row, bool require_effort) const {
    const std::string where = "record " + std::to_string(row + 1);
    if (rec.values.size() != schema_.features.size())
        throw ValidationError(where + ": has " + std::to_string(rec.values.size()) +
                              " cells, schema declares " + std::to_string(schema_.features.size()));
    for (std::size_t f = 0; f < schema_.features.size(); ++f) {
        const Feature& feat = schema_.features[f];
        const Cell& cell = rec.values[f];
        if (is_missing(cell)) continue;
        switch (feat.kind) {
        case FeatureKind::Interval:
            if (!std::holds_alternative<double>(*cell))
                throw ValidationError(where + ": interval feature '" + feat.name + "' holds a label");
            if (!std::isfinite(std::get<double>(*cell)))
                throw ValidationError(where + ": interval feature '" + feat.name + "' is not finite");
            break;
        case FeatureKind::Nominal:
            if (!std::holds_alternative<std::string>(*cell))
                throw ValidationError(where + ": nominal feature '" + feat.name + "' holds a number");
            break;
        case FeatureKind::Ordinal: {
            if (!std::holds_alternative<std::string>(*cell))
                throw ValidationError(where + ": ordinal feature '" + feat.name + "' holds a number");
            const std::string& level = std::get<std::string>(*cell);
            if (ordinal_ranks_[f].find(level) == ordinal_ranks_[f].end())
                throw ValidationError(where + ": '" + level + "' is not a declared level of '" +
                                      feat.name + "'");
            break;
        }
        }
    }
    if (require_effort) {
        if (!rec.effort.has_value())
            throw ValidationError(where + ": historical record has missing effort");
        if (!std::isfinite(*rec.effort) || *rec.effort <= 0.0)
            throw ValidationError(where + ": effort must be a positive finite number");
    }
}

void Dataset::freeze_ranges() {
    interval_ranges_.assign(schema_.features.size(), std::nullopt);
    for (std::size_t f = 0; f < schema_.features.size(); ++f) {
        if (schema_.features[f].kind != FeatureKind::Interval) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        bool any = false;
        for (const auto& rec : records_) {
            const Cell& cell = rec.values[f];
            if (is_missing(cell)) continue;
            double v = std::get<double>(*cell);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            any = true;
        }
        if (any) interval_ranges_[f] = std::make_pair(lo, hi);
    }
}

const ProjectRecord& Dataset::record(std::size_t i) const {
    if (i >= records_.size())
        throw ValidationError("record index " + std::to_string(i) + " out of bounds (n=" +
                              std::to_string(records_.size()) + ")");
    return records_[i];
}

double Dataset::effort(std::size_t i) const { return *record(i).effort; }

std::vector<double> Dataset::efforts() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(*r.effort);
    return out;
}

const std::optional<std::pair<double, double>>& Dataset::interval_range(std::size_t feature) const {
    if (feature >= interval_ranges_.size())
        throw ValidationError("feature index out of bounds");
    return interval_ranges_[feature];
}

int Dataset::ordinal_rank(std::size_t feature, const std::string& level) const {
    if (feature >= schema_.features.size())
        throw ValidationError("feature index out of bounds");
    if (schema_.features[feature].kind != FeatureKind::Ordinal)
        throw ValidationError("feature '" + schema_.features[feature].name + "' is not ordinal");
    auto it = ordinal_ranks_[feature].find(level);
    if (it == ordinal_ranks_[feature].end())
        throw ValidationError("'" + level + "' is not a declared level of '" +
                              schema_.features[feature].name + "'");
    return it->second;
}

int Dataset::ordinal_level_count(std::size_t feature) const {
    if (feature >= schema_.features.size())
        throw ValidationError("feature index out of bounds");
    return static_cast<int>(schema_.features[feature].ordinal_levels.size());
}

double Dataset::ordinal_to_unit_interval(std::size_t feature, const std::string& level) const {
    const int r = ordinal_rank(feature, level);
    const int m = ordinal_level_count(feature);
    if (m <= 1) return 0.0;
    return static_cast<double>(r - 1) / static_cast<double>(m - 1);
}

double Dataset::ordinal_to_unit_interval(const std::string& feature, const std::string& level) const {
    auto idx = schema_.index_of(feature);
    if (!idx) throw ValidationError("unknown feature '" + feature + "'");
    return ordinal_to_unit_interval(*idx, level);
}

Dataset Dataset::without_record(std::size_t i) const {
    if (i >= records_.size())
        throw ValidationError("record index " + std::to_string(i) + " out of bounds");
    std::vector<ProjectRecord> rest;
    rest.reserve(records_.size() - 1);
    for (std::size_t j = 0; j < records_.size(); ++j)
        if (j != i) rest.push_back(records_[j]);
    return Dataset(schema_, std::move(rest));
}

namespace {

Cell parse_cell(const Feature& feat, const std::string& raw, const std::string& missing_token,
                const std::string& where) {
    const std::string t = trim(raw);
    if (t.empty() || t == missing_token) return missing_cell();
    if (feat.kind == FeatureKind::Interval) {
        double v = 0.0;
        if (!parse_double(t, v))
            throw ValidationError(where + ": interval feature '" + feat.name +
                                  "' has non-numeric cell '" + t + "'");
        return number_cell(v);
    }
    return label_cell(t);
}

} // namespace

Dataset Dataset::parse_csv(std::istream& in, const Schema& schema,
                           const std::string& missing_token, const std::string& origin) {
    schema.validate();
    std::vector<std::string> header;
    if (!read_csv_record(in, header))
        throw ValidationError(origin + ": empty file, header row required");
    for (auto& h : header) h = trim(h);

    auto column_of = [&](const std::string& name) -> std::size_t {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) return c;
        throw ValidationError(origin + ": unknown column '" + name + "' (not in CSV header)");
    };

    std::vector<std::size_t> feature_cols;
    feature_cols.reserve(schema.features.size());
    for (const auto& f : schema.features) feature_cols.push_back(column_of(f.name));
    const std::size_t effort_col = column_of(schema.effort_column);

    std::vector<ProjectRecord> records;
    std::vector<std::string> fields;
    std::size_t row = 0;
    while (read_csv_record(in, fields)) {
        ++row;
        if (fields.size() == 1 && trim(fields[0]).empty()) continue; // trailing blank line
        const std::string where = origin + ": row " + std::to_string(row);
        if (fields.size() != header.size())
            throw ValidationError(where + ": has " + std::to_string(fields.size()) +
                                  " fields, header has " + std::to_string(header.size()));
        ProjectRecord rec;
        rec.values.reserve(schema.features.size());
        for (std::size_t f = 0; f < schema.features.size(); ++f)
            rec.values.push_back(parse_cell(schema.features[f], fields[feature_cols[f]],
                                            missing_token, where));
        const std::string effort_raw = trim(fields[effort_col]);
        if (effort_raw.empty() || effort_raw == missing_token)
            throw ValidationError(where + ": historical record has missing effort");
        double effort = 0.0;
        if (!parse_double(effort_raw, effort))
            throw ValidationError(where + ": effort cell '" + effort_raw + "' is not numeric");
        rec.effort = effort;
        records.push_back(std::move(rec));
    }
    return Dataset(schema, std::move(records));
}

Dataset Dataset::parse_csv(const std::string& path, const Schema& schema,
                           const std::string& missing_token) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open dataset file '" + path + "'");
    return parse_csv(in, schema, missing_token, path);
}

void Dataset::write_csv(std::ostream& out, const std::string& missing_token) const {
    for (const auto& f : schema_.features) out << csv_escape(f.name) << ',';
    out << csv_escape(schema_.effort_column) << '\n';
    for (const auto& rec : records_) {
        for (std::size_t f = 0; f < rec.values.size(); ++f) {
            const Cell& cell = rec.values[f];
            if (is_missing(cell)) {
                out << missing_token;
            } else if (std::holds_alternative<double>(*cell)) {
                out << format_double(std::get<double>(*cell));
            } else {
                out << csv_escape(std::get<std::string>(*cell));
            }
            out << ',';
        }
        out << format_double(*rec.effort) << '\n';
    }
}

void validate_query(const Dataset& dataset, const ProjectRecord& query) {
    // Reuses record validation, but a query's effort may be missing.
    struct Access : Dataset {
        using Dataset::validate_record;
    };
    static_cast<const Access&>(dataset).validate_record(query, dataset.size(),
                                                        /*require_effort=*/false);
    if (query.effort.has_value() && (!std::isfinite(*query.effort) || *query.effort <= 0.0))
        throw ValidationError("query effort must be a positive finite number when present");
}

ProjectRecord make_query(const Schema& schema,
                         const std::vector<std::pair<std::string, std::string>>& assignments,
                         const std::string& missing_token) {
    schema.validate();
    ProjectRecord rec;
    rec.values.assign(schema.features.size(), missing_cell());
    for (const auto& [name, raw] : assignments) {
        if (name == schema.effort_column) {
            const std::string t = trim(raw);
            if (t.empty() || t == missing_token) continue;
            double v = 0.0;
            if (!parse_double(t, v))
                throw ValidationError("effort value '" + raw + "' is not numeric");
            rec.effort = v;
            continue;
        }
        auto idx = schema.index_of(name);
        if (!idx) throw ValidationError("unknown column '" + name + "'");
        rec.values[*idx] = parse_cell(schema.features[*idx], raw, missing_token, "query");
    }
    return rec;
}

ProjectRecord parse_query_csv(const std::string& path, const Schema& schema,
                              const std::string& missing_token) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open query file '" + path + "'");
    std::vector<std::string> header;
    if (!read_csv_record(in, header))
        throw ValidationError(path + ": empty file, header row required");
    std::vector<std::string> fields;
    if (!read_csv_record(in, fields))
        throw ValidationError(path + ": no data row after header");
    if (fields.size() != header.size())
        throw ValidationError(path + ": data row has " + std::to_string(fields.size()) +
                              " fields, header has " + std::to_string(header.size()));
    std::vector<std::pair<std::string, std::string>> assignments;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = trim(header[c]);
        if (name.empty()) continue;
        if (!schema.index_of(name) && name != schema.effort_column) continue; // ignore extras
        assignments.emplace_back(name, fields[c]);
    }
    std::vector<std::string> extra;
    if (read_csv_record(in, extra) && !(extra.size() == 1 && trim(extra[0]).empty()))
        throw ValidationError(path + ": expected a single data row");
    return make_query(schema, assignments, missing_token);
}

} // namespace eba
