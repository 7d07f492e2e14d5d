// Copyright 2026 The Wallguard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wallguard {

enum class sensitivity { identifier, quasi, sensitive, insensitive };

std::string to_string(sensitivity s);
std::optional<sensitivity> parse_sensitivity(const std::string& token);

inline constexpr const char* kSuppressedToken = "*";

// One rung of a full-domain generalization ladder, applied to the raw value.
struct generalization_level {
    enum class kind { identity, prefix, range, suppress };
    kind op = kind::identity;
    int param = 0;

    std::string apply(const std::string& raw) const;
    std::string spec() const;  // "prefix:3", "range:10", "*"
    static generalization_level parse(const std::string& spec);
};

struct generalization_hierarchy {
    // levels[0] is always identity; the last level must be suppress.
    std::vector<generalization_level> levels;

    std::size_t top_level() const { return levels.empty() ? 0 : levels.size() - 1; }
    std::string apply(std::size_t level, const std::string& raw) const;
};

struct column_spec {
    std::string name;
    sensitivity sens = sensitivity::insensitive;
    std::optional<generalization_hierarchy> hierarchy;
};

struct attribute_schema {
    std::vector<column_spec> columns;

    int column_index(const std::string& name) const;  // -1 when absent
};

enum class data_tier { original, deidentified, anonymized };

std::string to_string(data_tier t);

struct dataset {
    attribute_schema schema;
    std::vector<std::vector<std::string>> rows;
    data_tier tier = data_tier::original;
};

struct deid_step {
    enum class action { drop, pseudonymize };
    std::string column;
    action act = action::drop;
};

struct transform_recipe {
    std::vector<deid_step> deid_steps;
    int k = 1;
    double max_suppression_fraction = 0.0;
};

// alpha = 1 when any identifier value survives, 1/k_eff while quasi columns
// still carry information, 0 once everything linkable is gone.
double measure_confidentiality(const dataset& ds);

dataset deidentify(const dataset& ds, const transform_recipe& recipe,
                   const std::string& pseudonym_key);

dataset anonymize(const dataset& ds, const transform_recipe& recipe);

// Independent of anonymize's internals; serves as its oracle.
bool verify_k_anonymity(const dataset& ds, int k);

struct warehouse_chain {
    dataset od;
    dataset dd;
    dataset ad;
};

warehouse_chain build_warehouse_chain(const dataset& od, const transform_recipe& recipe,
                                      const std::string& pseudonym_key);

// Keyed one-way token for pseudonymization; stable per (key, value).
std::string pseudonym_token(const std::string& key, const std::string& value);

}  // namespace wallguard
