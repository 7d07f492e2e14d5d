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

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "wallguard/engine.hpp"
#include "wallguard/policy.hpp"
#include "wallguard/transform.hpp"

namespace wallguard {

// ---- policy documents -------------------------------------------------

policy load_policy(const std::string& text);  // parses only; run validate_policy after
policy load_policy_file(const std::filesystem::path& path);
std::string render_policy(const policy& p);

std::string render_validation_report(const validation_report& report);

// ---- wall-state snapshots ---------------------------------------------

std::string snapshot_state(const engine_state& state);

// Classes with their conflict sets, then object walls ordered by owning
// class index, then subject walls.
std::string render_report(const engine_state& state);
engine_state load_snapshot(policy p, const std::string& text);
void write_snapshot_atomic(const std::filesystem::path& path, const engine_state& state);

// ---- datasets and schemas ---------------------------------------------

dataset read_dataset(const std::string& text, const attribute_schema& schema, data_tier tier);
std::string render_dataset(const dataset& ds);

std::pair<attribute_schema, transform_recipe> load_schema(const std::string& text);

// ---- traces ------------------------------------------------------------

std::vector<access_request> parse_trace(const std::string& text);
std::string render_trace(const std::vector<access_request>& trace);

// ---- audit log ---------------------------------------------------------

std::string format_audit_record(const audit_record& rec);
audit_record parse_audit_record(const std::string& line);

// Append-only, flushed per record.
class audit_log {
public:
    explicit audit_log(const std::filesystem::path& path);

    void append(const audit_record& rec);
    std::size_t size() const { return appended_; }
    audit_sink sink();

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::size_t appended_ = 0;
};

struct audit_read_result {
    std::vector<audit_record> records;
    bool truncated_tail = false;
};

audit_read_result read_audit_log(const std::filesystem::path& path);

// ---- helpers -----------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wallguard
