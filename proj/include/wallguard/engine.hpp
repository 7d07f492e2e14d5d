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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wallguard/policy.hpp"
#include "wallguard/walls.hpp"

namespace wallguard {

struct access_request {
    std::uint64_t sequence_no = 0;
    user_id subject;
    object_id object;
    std::string operation;  // free-form; only "read"/"write" can be granted
};

enum class outcome { granted, denied };
enum class deny_reason { ok, wall_conflict, no_right, unknown_principal };

std::string to_string(outcome o);
std::string to_string(deny_reason r);

struct wall_snapshot {
    std::optional<bit_vector> subject_left;   // granted
    std::optional<bit_vector> subject_right;  // denied
    std::optional<bit_vector> object_left;    // authorized
    std::optional<bit_vector> object_right;   // conflicting
};

struct decision {
    access_request request;
    outcome result = outcome::denied;
    deny_reason reason = deny_reason::ok;
    wall_snapshot pre_walls;
    wall_snapshot post_walls;
    std::uint64_t state_version = 0;
};

struct audit_record {
    decision d;
    std::string timestamp;  // ISO 8601 UTC
};

// Runtime state: the loaded policy plus one wall per user and per object.
struct engine_state {
    policy pol;
    std::map<user_id, binary_subject_wall> subject_walls;
    std::map<object_id, binary_object_wall> object_walls;
    std::uint64_t version = 0;

    static engine_state from_policy(policy p);

    // Reassigns the user and reseeds their subject wall from the new role's
    // class; accumulated wall state is discarded.
    void switch_user_role(const user_id& uid, const role_id& to);
};

using audit_sink = std::function<void(const audit_record&)>;

// Pure: evaluates the wall gate, then the rights gate, against the current
// snapshot. Unknown subjects or objects yield a denied decision rather than
// an exception so traces can keep running.
decision authorize(const engine_state& state, const access_request& req);

// Applies a decision produced by authorize against this exact state version.
// Granted reads update the subject wall, granted writes the object wall,
// denials change nothing; every call emits one audit record.
void apply(engine_state& state, const decision& d, const audit_sink& audit = {});

std::vector<decision> replay(engine_state& state, std::span<const access_request> trace,
                             const audit_sink& audit = {});

std::string current_utc_timestamp();

}  // namespace wallguard
