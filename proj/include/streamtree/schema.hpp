#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace streamtree {

enum class AttributeKind { numeric, categorical };

// One column of the dataset. `slot` is the position among attributes of the
// same kind and indexes into Sample::numeric_values / categorical_values.
struct AttributeSchema {
    AttributeKind kind = AttributeKind::numeric;
    std::string name;
    int value_count = 0;              // V_i, categorical only (>= 2)
    int index = 0;                    // dense position across the schema
    int slot = 0;                     // position within its kind
    std::vector<std::string> levels;  // optional string encoding, size V_i
};

struct DatasetSchema {
    std::vector<AttributeSchema> attributes;
    int label_count = 0;
    std::vector<std::string> labels;  // optional string labels, size label_count

    int numeric_count = 0;
    int categorical_count = 0;

    // Assigns indices/slots and checks the schema invariants. Must be called
    // after the attribute list is filled; the loaders below do it themselves.
    void finalize() {
        if (attributes.empty())
            throw std::invalid_argument("schema: at least one attribute required");
        if (label_count < 2)
            throw std::invalid_argument("schema: label_count must be >= 2");
        if (!labels.empty() && static_cast<int>(labels.size()) != label_count)
            throw std::invalid_argument("schema: labels list does not match label_count");
        numeric_count = 0;
        categorical_count = 0;
        for (std::size_t i = 0; i < attributes.size(); ++i) {
            AttributeSchema& a = attributes[i];
            a.index = static_cast<int>(i);
            if (a.kind == AttributeKind::numeric) {
                a.slot = numeric_count++;
                a.value_count = 0;
            } else {
                if (!a.levels.empty())
                    a.value_count = static_cast<int>(a.levels.size());
                if (a.value_count < 2)
                    throw std::invalid_argument("schema: categorical attribute '" + a.name +
                                                "' needs value_count >= 2");
                a.slot = categorical_count++;
            }
        }
    }

    std::vector<int> categorical_value_counts() const {
        std::vector<int> v;
        for (const auto& a : attributes)
            if (a.kind == AttributeKind::categorical) v.push_back(a.value_count);
        return v;
    }
};

inline DatasetSchema schema_from_json(const nlohmann::json& j) {
    DatasetSchema s;
    s.label_count = j.at("label_count").get<int>();
    if (j.contains("labels")) s.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& ja : j.at("attributes")) {
        AttributeSchema a;
        a.name = ja.value("name", "attr" + std::to_string(s.attributes.size()));
        const std::string kind = ja.at("kind").get<std::string>();
        if (kind == "numeric") {
            a.kind = AttributeKind::numeric;
        } else if (kind == "categorical") {
            a.kind = AttributeKind::categorical;
            if (ja.contains("levels")) a.levels = ja.at("levels").get<std::vector<std::string>>();
            a.value_count = ja.value("values", static_cast<int>(a.levels.size()));
        } else {
            throw std::invalid_argument("schema: unknown attribute kind '" + kind + "'");
        }
        s.attributes.push_back(std::move(a));
    }
    s.finalize();
    return s;
}

inline nlohmann::json schema_to_json(const DatasetSchema& s) {
    nlohmann::json j;
    j["label_count"] = s.label_count;
    if (!s.labels.empty()) j["labels"] = s.labels;
    j["attributes"] = nlohmann::json::array();
    for (const auto& a : s.attributes) {
        nlohmann::json ja;
        ja["name"] = a.name;
        ja["kind"] = a.kind == AttributeKind::numeric ? "numeric" : "categorical";
        if (a.kind == AttributeKind::categorical) {
            ja["values"] = a.value_count;
            if (!a.levels.empty()) ja["levels"] = a.levels;
        }
        j["attributes"].push_back(std::move(ja));
    }
    return j;
}

inline DatasetSchema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    nlohmann::json j;
    in >> j;
    return schema_from_json(j);
}

inline void save_schema(const DatasetSchema& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write schema file: " + path);
    out << schema_to_json(s).dump(2) << '\n';
}

}  // namespace streamtree
