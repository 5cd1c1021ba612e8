#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "streamtree/sample.hpp"
#include "streamtree/schema.hpp"

namespace streamtree {

class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, long long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long long line() const { return line_; }

private:
    long long line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

inline double parse_double(std::string_view field, long long line) {
    double v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw CsvError("unparsable numeric value '" + std::string(field) + "'", line);
    return v;
}

inline int parse_int(std::string_view field, long long line) {
    int v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw CsvError("unparsable integer value '" + std::string(field) + "'", line);
    return v;
}

inline int level_index(const std::vector<std::string>& levels, std::string_view field,
                       std::string_view what, long long line) {
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] == field) return static_cast<int>(i);
    throw CsvError("unknown " + std::string(what) + " '" + std::string(field) + "'", line);
}

}  // namespace detail

// Streams samples out of a CSV file in file order. The attribute order must
// match the schema, with the label in the last column. Empty lines are
// skipped; malformed rows raise CsvError naming the line.
class CsvStream {
public:
    CsvStream(const std::string& path, const DatasetSchema& schema, bool skip_header = false)
        : in_(path), schema_(&schema) {
        if (!in_) throw std::runtime_error("cannot open data file: " + path);
        if (skip_header) {
            std::string header;
            if (std::getline(in_, header)) ++line_;
        }
    }

    std::optional<Sample> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            std::string_view sv = detail::trim(line);
            if (sv.empty()) continue;
            return parse_row(sv);
        }
        return std::nullopt;
    }

    long long line() const { return line_; }

private:
    Sample parse_row(std::string_view row) {
        detail::split_fields(row, fields_);
        const std::size_t expected = schema_->attributes.size() + 1;
        if (fields_.size() != expected)
            throw CsvError("expected " + std::to_string(expected) + " fields, got " +
                               std::to_string(fields_.size()),
                           line_);
        Sample s;
        s.numeric_values.resize(schema_->numeric_count);
        s.categorical_values.resize(schema_->categorical_count);
        for (const AttributeSchema& a : schema_->attributes) {
            std::string_view field = fields_[a.index];
            if (a.kind == AttributeKind::numeric) {
                s.numeric_values[a.slot] = detail::parse_double(field, line_);
            } else {
                int v = a.levels.empty()
                            ? detail::parse_int(field, line_)
                            : detail::level_index(a.levels, field, "level of " + a.name, line_);
                if (v < 0 || v >= a.value_count)
                    throw CsvError("categorical out of range: attribute '" + a.name + "' value " +
                                       std::to_string(v),
                                   line_);
                s.categorical_values[a.slot] = v;
            }
        }
        std::string_view label_field = fields_.back();
        int label = schema_->labels.empty()
                        ? detail::parse_int(label_field, line_)
                        : detail::level_index(schema_->labels, label_field, "label", line_);
        if (label < 0 || label >= schema_->label_count)
            throw CsvError("label out of range: " + std::to_string(label), line_);
        s.label = label;
        return s;
    }

    std::ifstream in_;
    const DatasetSchema* schema_;
    long long line_ = 0;
    std::vector<std::string_view> fields_;
};

inline std::vector<Sample> load_csv(const std::string& path, const DatasetSchema& schema,
                                    bool skip_header = false) {
    CsvStream stream(path, schema, skip_header);
    std::vector<Sample> out;
    while (auto s = stream.next()) out.push_back(std::move(*s));
    return out;
}

inline void write_csv(const std::string& path, const DatasetSchema& schema,
                      const std::vector<Sample>& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write data file: " + path);
    char buf[64];
    for (const Sample& s : samples) {
        bool first = true;
        for (const AttributeSchema& a : schema.attributes) {
            if (!first) out << ',';
            first = false;
            if (a.kind == AttributeKind::numeric) {
                std::snprintf(buf, sizeof buf, "%.17g", s.numeric_values[a.slot]);
                out << buf;
            } else {
                int v = s.categorical_values[a.slot];
                if (!a.levels.empty())
                    out << a.levels[v];
                else
                    out << v;
            }
        }
        if (!schema.labels.empty())
            out << ',' << schema.labels[s.label] << '\n';
        else
            out << ',' << s.label << '\n';
    }
}

// Observed range of one numeric attribute, kept so the affine transform can
// be replayed on unseen data.
struct NormalizationStats {
    struct Range {
        int attribute_index = 0;
        std::string name;
        double min = 0;
        double max = 0;
    };
    std::vector<Range> ranges;

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (const Range& r : ranges)
            j.push_back({{"index", r.attribute_index},
                         {"name", r.name},
                         {"min", r.min},
                         {"max", r.max}});
        return nlohmann::json{{"attributes", j}};
    }
};

// Affinely maps every numeric attribute onto [-1, 1] in place: observed
// min -> -1, max -> +1, constant attributes -> 0.
inline NormalizationStats normalize_samples(std::vector<Sample>& samples,
                                            const DatasetSchema& schema) {
    if (samples.empty()) throw std::invalid_argument("normalize: no samples");
    NormalizationStats stats;
    for (const AttributeSchema& a : schema.attributes) {
        if (a.kind != AttributeKind::numeric) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const Sample& s : samples) {
            lo = std::min(lo, s.numeric_values[a.slot]);
            hi = std::max(hi, s.numeric_values[a.slot]);
        }
        stats.ranges.push_back({a.index, a.name, lo, hi});
        if (hi > lo) {
            const double scale = 2.0 / (hi - lo);
            for (Sample& s : samples)
                s.numeric_values[a.slot] = (s.numeric_values[a.slot] - lo) * scale - 1.0;
        } else {
            for (Sample& s : samples) s.numeric_values[a.slot] = 0.0;
        }
    }
    return stats;
}

}  // namespace streamtree
