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

#include <stdexcept>
#include <string>

namespace wallguard {

struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(int line_, int column_, const std::string& what_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_)
    {
    }
};

struct validation_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unknown_role : std::runtime_error {
    explicit unknown_role(const std::string& id) : std::runtime_error("unknown role: " + id) {}
};

struct unknown_user : std::runtime_error {
    explicit unknown_user(const std::string& id) : std::runtime_error("unknown user: " + id) {}
};

struct unknown_object : std::runtime_error {
    explicit unknown_object(const std::string& id) : std::runtime_error("unknown object: " + id) {}
};

struct conflicting_assignment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct conflicting_switch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct width_mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An OR-update would set the same bit on both sides of a wall.
struct disjointness_broken : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct stale_decision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct empty_dataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct missing_action : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct missing_hierarchy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unachievable_k : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct storage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wallguard
