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

#include "wallguard/transform.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "wallguard/errors.hpp"

namespace wallguard {

std::string to_string(sensitivity s)
{
    switch (s) {
    case sensitivity::identifier:
        return "identifier";
    case sensitivity::quasi:
        return "quasi";
    case sensitivity::sensitive:
        return "sensitive";
    case sensitivity::insensitive:
        return "insensitive";
    }
    return "?";
}

std::optional<sensitivity> parse_sensitivity(const std::string& token)
{
    if (token == "identifier") {
        return sensitivity::identifier;
    }
    if (token == "quasi") {
        return sensitivity::quasi;
    }
    if (token == "sensitive") {
        return sensitivity::sensitive;
    }
    if (token == "insensitive") {
        return sensitivity::insensitive;
    }
    return std::nullopt;
}

std::string to_string(data_tier t)
{
    switch (t) {
    case data_tier::original:
        return "OD";
    case data_tier::deidentified:
        return "DD";
    case data_tier::anonymized:
        return "AD";
    }
    return "?";
}

std::string generalization_level::apply(const std::string& raw) const
{
    switch (op) {
    case kind::identity:
        return raw;
    case kind::prefix:
        if (static_cast<int>(raw.size()) <= param) {
            return raw;
        }
        return raw.substr(0, static_cast<std::size_t>(param)) +
               std::string(raw.size() - static_cast<std::size_t>(param), '#');
    case kind::range: {
        long v = 0;
        try {
            v = std::stol(raw);
        } catch (const std::exception&) {
            return kSuppressedToken;
        }
        long lo = (v / param) * param;
        if (v < 0 && v % param != 0) {
            lo -= param;
        }
        return std::to_string(lo) + "-" + std::to_string(lo + param - 1);
    }
    case kind::suppress:
        return kSuppressedToken;
    }
    return kSuppressedToken;
}

std::string generalization_level::spec() const
{
    switch (op) {
    case kind::identity:
        return "id";
    case kind::prefix:
        return "prefix:" + std::to_string(param);
    case kind::range:
        return "range:" + std::to_string(param);
    case kind::suppress:
        return "*";
    }
    return "*";
}

generalization_level generalization_level::parse(const std::string& spec)
{
    if (spec == "*") {
        return {kind::suppress, 0};
    }
    if (spec == "id") {
        return {kind::identity, 0};
    }
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string head = spec.substr(0, colon);
        int param = std::stoi(spec.substr(colon + 1));
        if (head == "prefix" && param >= 0) {
            return {kind::prefix, param};
        }
        if (head == "range" && param >= 1) {
            return {kind::range, param};
        }
    }
    throw std::invalid_argument("bad generalization level spec: " + spec);
}

std::string generalization_hierarchy::apply(std::size_t level, const std::string& raw) const
{
    if (level >= levels.size()) {
        return kSuppressedToken;
    }
    return levels[level].apply(raw);
}

int attribute_schema::column_index(const std::string& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

namespace {

std::vector<int> columns_of(const attribute_schema& schema, sensitivity s)
{
    std::vector<int> out;
    for (std::size_t i = 0; i < schema.columns.size(); ++i) {
        if (schema.columns[i].sens == s) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

// Smallest equivalence-class size of the rows projected onto the given
// columns. Returns 0 on an empty dataset.
std::size_t min_group_size(const dataset& ds, const std::vector<int>& cols)
{
    std::map<std::vector<std::string>, std::size_t> groups;
    for (const auto& row : ds.rows) {
        std::vector<std::string> key;
        key.reserve(cols.size());
        for (int c : cols) {
            key.push_back(row[static_cast<std::size_t>(c)]);
        }
        ++groups[key];
    }
    std::size_t best = ds.rows.empty() ? 0 : ds.rows.size();
    for (const auto& [key, count] : groups) {
        best = std::min(best, count);
    }
    return best;
}

}  // namespace

double measure_confidentiality(const dataset& ds)
{
    if (ds.rows.empty()) {
        throw empty_dataset("confidentiality is undefined on zero rows");
    }
    for (int c : columns_of(ds.schema, sensitivity::identifier)) {
        for (const auto& row : ds.rows) {
            const auto& v = row[static_cast<std::size_t>(c)];
            if (!v.empty() && v != kSuppressedToken) {
                return 1.0;
            }
        }
    }
    auto quasi = columns_of(ds.schema, sensitivity::quasi);
    bool quasi_information_left = false;
    for (int c : quasi) {
        for (const auto& row : ds.rows) {
            if (row[static_cast<std::size_t>(c)] != kSuppressedToken) {
                quasi_information_left = true;
                break;
            }
        }
        if (quasi_information_left) {
            break;
        }
    }
    if (!quasi_information_left) {
        return 0.0;
    }
    return 1.0 / static_cast<double>(min_group_size(ds, quasi));
}

std::string pseudonym_token(const std::string& key, const std::string& value)
{
    // FNV-1a over key, a separator, and the value; two passes with
    // different offsets to widen the token to 128 bits.
    auto fnv = [](std::uint64_t h, const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    };
    auto digest = [&](std::uint64_t seed) {
        std::uint64_t h = seed;
        h = fnv(h, key);
        h ^= 0x1f;
        h *= 0x100000001b3ULL;
        h = fnv(h, value);
        return h;
    };
    char buf[34];
    std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                  static_cast<unsigned long long>(digest(0xcbf29ce484222325ULL)),
                  static_cast<unsigned long long>(digest(0x9e3779b97f4a7c15ULL)));
    return std::string("p-") + buf;
}

dataset deidentify(const dataset& ds, const transform_recipe& recipe,
                   const std::string& pseudonym_key)
{
    if (ds.tier != data_tier::original) {
        throw std::invalid_argument("deidentify expects an original-tier dataset");
    }
    std::map<std::string, deid_step::action> actions;
    for (const auto& step : recipe.deid_steps) {
        int idx = ds.schema.column_index(step.column);
        if (idx < 0) {
            throw missing_action("deid step names unknown column '" + step.column + "'");
        }
        if (ds.schema.columns[static_cast<std::size_t>(idx)].sens != sensitivity::identifier) {
            throw missing_action("deid step targets non-identifier column '" + step.column + "'");
        }
        actions[step.column] = step.act;
    }
    for (int c : columns_of(ds.schema, sensitivity::identifier)) {
        const auto& name = ds.schema.columns[static_cast<std::size_t>(c)].name;
        if (actions.count(name) == 0) {
            throw missing_action("identifier column '" + name + "' has no deid step");
        }
    }

    dataset out;
    out.tier = data_tier::deidentified;
    std::vector<int> keep;
    for (std::size_t i = 0; i < ds.schema.columns.size(); ++i) {
        const auto& col = ds.schema.columns[i];
        auto it = actions.find(col.name);
        if (it != actions.end() && it->second == deid_step::action::drop) {
            continue;
        }
        keep.push_back(static_cast<int>(i));
        column_spec spec = col;
        if (it != actions.end()) {
            // Pseudonyms are unlinkable tokens, no longer direct identifiers.
            spec.sens = sensitivity::insensitive;
        }
        out.schema.columns.push_back(std::move(spec));
    }
    out.rows.reserve(ds.rows.size());
    for (const auto& row : ds.rows) {
        std::vector<std::string> projected;
        projected.reserve(keep.size());
        for (int c : keep) {
            const auto& name = ds.schema.columns[static_cast<std::size_t>(c)].name;
            const auto& value = row[static_cast<std::size_t>(c)];
            auto it = actions.find(name);
            if (it != actions.end() && it->second == deid_step::action::pseudonymize) {
                projected.push_back(pseudonym_token(pseudonym_key, value));
            } else {
                projected.push_back(value);
            }
        }
        out.rows.push_back(std::move(projected));
    }
    return out;
}

bool verify_k_anonymity(const dataset& ds, int k)
{
    if (k <= 1 || ds.rows.empty()) {
        return true;
    }
    auto quasi = columns_of(ds.schema, sensitivity::quasi);
    if (quasi.empty()) {
        return true;
    }
    return min_group_size(ds, quasi) >= static_cast<std::size_t>(k);
}

dataset anonymize(const dataset& ds, const transform_recipe& recipe)
{
    if (ds.tier != data_tier::deidentified) {
        throw std::invalid_argument("anonymize expects a de-identified dataset");
    }
    dataset out = ds;
    out.tier = data_tier::anonymized;
    if (recipe.k <= 1) {
        return out;
    }

    auto quasi = columns_of(ds.schema, sensitivity::quasi);
    for (int c : quasi) {
        if (!ds.schema.columns[static_cast<std::size_t>(c)].hierarchy) {
            throw missing_hierarchy("quasi column '" +
                                    ds.schema.columns[static_cast<std::size_t>(c)].name +
                                    "' has no generalization hierarchy");
        }
    }

    const std::size_t total = ds.rows.size();
    const auto suppression_budget =
        static_cast<std::size_t>(recipe.max_suppression_fraction * static_cast<double>(total));

    std::map<int, std::size_t> level;
    for (int c : quasi) {
        level[c] = 0;
    }
    auto generalized = [&](const std::vector<std::string>& row, int c) {
        const auto& col = ds.schema.columns[static_cast<std::size_t>(c)];
        return col.hierarchy->apply(level[c], row[static_cast<std::size_t>(c)]);
    };
    auto project = [&](const std::vector<std::string>& row) {
        std::vector<std::string> key;
        key.reserve(quasi.size());
        for (int c : quasi) {
            key.push_back(generalized(row, c));
        }
        return key;
    };

    // Datafly-style loop: while too many rows sit in undersized groups,
    // generalize the quasi column with the most distinct values one level.
    for (;;) {
        std::map<std::vector<std::string>, std::size_t> groups;
        for (const auto& row : ds.rows) {
            ++groups[project(row)];
        }
        std::size_t undersized = 0;
        for (const auto& [key, count] : groups) {
            if (count < static_cast<std::size_t>(recipe.k)) {
                undersized += count;
            }
        }
        if (undersized == 0 || undersized <= suppression_budget) {
            break;
        }
        int pick = -1;
        std::size_t most_distinct = 0;
        for (int c : quasi) {
            const auto& col = ds.schema.columns[static_cast<std::size_t>(c)];
            if (level[c] >= col.hierarchy->top_level()) {
                continue;
            }
            std::set<std::string> distinct;
            for (const auto& row : ds.rows) {
                distinct.insert(generalized(row, c));
            }
            if (distinct.size() > most_distinct) {
                most_distinct = distinct.size();
                pick = c;
            }
        }
        if (pick < 0) {
            throw unachievable_k("k=" + std::to_string(recipe.k) +
                                 " not reachable: hierarchies exhausted and " +
                                 std::to_string(undersized) + " rows exceed the suppression "
                                 "budget of " + std::to_string(suppression_budget));
        }
        ++level[pick];
    }

    // Materialize generalized values, then suppress residual small groups.
    std::map<std::vector<std::string>, std::size_t> groups;
    for (const auto& row : ds.rows) {
        ++groups[project(row)];
    }
    out.rows.clear();
    for (const auto& row : ds.rows) {
        if (groups[project(row)] < static_cast<std::size_t>(recipe.k)) {
            continue;
        }
        std::vector<std::string> materialized = row;
        for (int c : quasi) {
            materialized[static_cast<std::size_t>(c)] = generalized(row, c);
        }
        out.rows.push_back(std::move(materialized));
    }
    return out;
}

warehouse_chain build_warehouse_chain(const dataset& od, const transform_recipe& recipe,
                                      const std::string& pseudonym_key)
{
    warehouse_chain chain;
    chain.od = od;
    chain.dd = deidentify(od, recipe, pseudonym_key);
    chain.ad = anonymize(chain.dd, recipe);
    return chain;
}

}  // namespace wallguard
