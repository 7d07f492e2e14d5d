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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wallguard {

using role_id = std::string;
using user_id = std::string;
using object_id = std::string;
using class_id = std::string;
using domain_id = std::string;

enum class operation_kind { read, write };

std::string to_string(operation_kind op);
std::optional<operation_kind> parse_operation(const std::string& token);

enum class warehouse_kind { odw, ddw, adw, generic };

std::string to_string(warehouse_kind kind);
std::optional<warehouse_kind> parse_warehouse_kind(const std::string& token);

struct role {
    role_id id;
    domain_id domain;
    std::set<operation_kind> operations;
};

struct user {
    user_id id;
    role_id active_role;
};

struct object_descriptor {
    object_id id;
    warehouse_kind kind = warehouse_kind::generic;
    domain_id domain;
    std::vector<std::string> entities;
    class_id owning_class;
};

struct role_class {
    class_id id;
    int index = 0;  // 1-based bit slot
    std::set<role_id> roles;
};

// Conflict pairs are declared over names that may refer to role classes or
// to individual roles; role-level pairs delegate to the containing classes.
// Pairs are stored unordered, so the relation is symmetric by construction.
struct conflict_relation {
    std::set<std::pair<std::string, std::string>> pairs;

    void add(const std::string& a, const std::string& b);
    bool contains(const std::string& a, const std::string& b) const;
};

struct access_rights_matrix {
    std::map<std::pair<object_id, role_id>, std::set<operation_kind>> entries;
};

struct policy {
    std::set<domain_id> domains;
    std::map<role_id, role> roles;
    std::map<user_id, user> users;
    std::map<object_id, object_descriptor> objects;
    std::map<class_id, role_class> role_classes;
    conflict_relation conflicts;
    access_rights_matrix rights;

    std::optional<class_id> class_of_role(const role_id& id) const;
    std::optional<class_id> class_of_user(const user_id& id) const;

    // Conflict pairs resolved down to distinct class pairs. Self pairs and
    // pairs touching names that do not resolve are left to the validator.
    std::set<std::pair<class_id, class_id>> effective_class_conflicts() const;
    bool classes_conflict(const class_id& a, const class_id& b) const;
    std::set<class_id> conflicting_classes(const class_id& c) const;

    std::size_t class_count() const { return role_classes.size(); }
    const role_class* class_by_index(int index) const;
    std::vector<const role_class*> classes_by_index() const;
};

enum class violation_kind {
    anti_reflexive,
    intra_class_conflict,
    dangling_reference,
    non_contiguous_indices,
    multi_class_role,
    duplicate_warehouse,
};

std::string to_string(violation_kind kind);

struct violation {
    violation_kind kind;
    std::string detail;
};

struct validation_report {
    std::vector<violation> violations;
    std::vector<std::string> notes;  // informational, e.g. CIR transitivity

    bool clean() const { return violations.empty(); }
};

validation_report validate_policy(const policy& p);

// Throws conflicting_assignment when the user already holds a role whose
// class conflicts with the target role's class.
policy assign_user(policy p, const user_id& uid, const role_id& rid);

// Switching is allowed only between cooperative roles (both classless, same
// class, or classes not in conflict). The caller owning wall state must
// reseed the subject wall afterwards.
policy switch_role(policy p, const user_id& uid, const role_id& to);

bool roles_cooperative(const policy& p, const role_id& a, const role_id& b);

std::set<operation_kind> lookup_rights(const policy& p, const object_id& obj, const role_id& rid);

}  // namespace wallguard
