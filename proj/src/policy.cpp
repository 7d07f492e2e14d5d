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

#include "wallguard/policy.hpp"

#include <algorithm>

#include "wallguard/errors.hpp"

namespace wallguard {

std::string to_string(operation_kind op)
{
    return op == operation_kind::read ? "read" : "write";
}

std::optional<operation_kind> parse_operation(const std::string& token)
{
    if (token == "read" || token == "r") {
        return operation_kind::read;
    }
    if (token == "write" || token == "w") {
        return operation_kind::write;
    }
    return std::nullopt;
}

std::string to_string(warehouse_kind kind)
{
    switch (kind) {
    case warehouse_kind::odw:
        return "ODW";
    case warehouse_kind::ddw:
        return "DDW";
    case warehouse_kind::adw:
        return "ADW";
    default:
        return "generic";
    }
}

std::optional<warehouse_kind> parse_warehouse_kind(const std::string& token)
{
    if (token == "ODW") {
        return warehouse_kind::odw;
    }
    if (token == "DDW") {
        return warehouse_kind::ddw;
    }
    if (token == "ADW") {
        return warehouse_kind::adw;
    }
    if (token == "generic") {
        return warehouse_kind::generic;
    }
    return std::nullopt;
}

void conflict_relation::add(const std::string& a, const std::string& b)
{
    pairs.insert(a <= b ? std::make_pair(a, b) : std::make_pair(b, a));
}

bool conflict_relation::contains(const std::string& a, const std::string& b) const
{
    return pairs.count(a <= b ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
}

std::optional<class_id> policy::class_of_role(const role_id& id) const
{
    for (const auto& [cid, rc] : role_classes) {
        if (rc.roles.count(id) > 0) {
            return cid;
        }
    }
    return std::nullopt;
}

std::optional<class_id> policy::class_of_user(const user_id& id) const
{
    auto it = users.find(id);
    if (it == users.end()) {
        return std::nullopt;
    }
    return class_of_role(it->second.active_role);
}

std::set<std::pair<class_id, class_id>> policy::effective_class_conflicts() const
{
    std::set<std::pair<class_id, class_id>> out;
    auto resolve = [this](const std::string& name) -> std::optional<class_id> {
        if (role_classes.count(name) > 0) {
            return name;
        }
        if (roles.count(name) > 0) {
            return class_of_role(name);
        }
        return std::nullopt;
    };
    for (const auto& [a, b] : conflicts.pairs) {
        auto ca = resolve(a);
        auto cb = resolve(b);
        if (!ca || !cb || *ca == *cb) {
            continue;
        }
        out.insert(*ca <= *cb ? std::make_pair(*ca, *cb) : std::make_pair(*cb, *ca));
    }
    return out;
}

bool policy::classes_conflict(const class_id& a, const class_id& b) const
{
    if (a == b) {
        return false;
    }
    auto eff = effective_class_conflicts();
    return eff.count(a <= b ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
}

std::set<class_id> policy::conflicting_classes(const class_id& c) const
{
    std::set<class_id> out;
    for (const auto& [a, b] : effective_class_conflicts()) {
        if (a == c) {
            out.insert(b);
        } else if (b == c) {
            out.insert(a);
        }
    }
    return out;
}

const role_class* policy::class_by_index(int index) const
{
    for (const auto& [id, rc] : role_classes) {
        if (rc.index == index) {
            return &rc;
        }
    }
    return nullptr;
}

std::vector<const role_class*> policy::classes_by_index() const
{
    std::vector<const role_class*> out;
    out.reserve(role_classes.size());
    for (const auto& [id, rc] : role_classes) {
        out.push_back(&rc);
    }
    std::sort(out.begin(), out.end(),
              [](const role_class* a, const role_class* b) { return a->index < b->index; });
    return out;
}

std::string to_string(violation_kind kind)
{
    switch (kind) {
    case violation_kind::anti_reflexive:
        return "anti-reflexive";
    case violation_kind::intra_class_conflict:
        return "intra-class-conflict";
    case violation_kind::dangling_reference:
        return "dangling-reference";
    case violation_kind::non_contiguous_indices:
        return "non-contiguous-indices";
    case violation_kind::multi_class_role:
        return "multi-class-role";
    case violation_kind::duplicate_warehouse:
        return "duplicate-warehouse";
    }
    return "?";
}

validation_report validate_policy(const policy& p)
{
    validation_report report;
    auto flag = [&report](violation_kind kind, std::string detail) {
        report.violations.push_back({kind, std::move(detail)});
    };

    auto is_known = [&p](const std::string& name) {
        return p.role_classes.count(name) > 0 || p.roles.count(name) > 0;
    };

    // Conflict relation: every name resolves, no self pairs, no pairs that
    // collapse onto a single class.
    for (const auto& [a, b] : p.conflicts.pairs) {
        if (!is_known(a)) {
            flag(violation_kind::dangling_reference, "conflict names unknown '" + a + "'");
            continue;
        }
        if (!is_known(b)) {
            flag(violation_kind::dangling_reference, "conflict names unknown '" + b + "'");
            continue;
        }
        if (a == b) {
            flag(violation_kind::anti_reflexive, "conflict pair (" + a + ", " + a + ")");
            continue;
        }
        auto resolve = [&p](const std::string& name) -> std::optional<class_id> {
            if (p.role_classes.count(name) > 0) {
                return name;
            }
            return p.class_of_role(name);
        };
        auto ca = resolve(a);
        auto cb = resolve(b);
        if (ca && cb && *ca == *cb) {
            flag(violation_kind::intra_class_conflict,
                 "conflict (" + a + ", " + b + ") falls inside class " + *ca);
        }
    }

    // Class indices must be a contiguous 1..n bijection.
    {
        std::set<int> seen;
        for (const auto& [cid, rc] : p.role_classes) {
            seen.insert(rc.index);
        }
        const int n = static_cast<int>(p.role_classes.size());
        bool contiguous = static_cast<int>(seen.size()) == n &&
                          (n == 0 || (*seen.begin() == 1 && *seen.rbegin() == n));
        if (!contiguous) {
            flag(violation_kind::non_contiguous_indices,
                 "class indices are not a 1.." + std::to_string(n) + " bijection");
        }
    }

    // Membership and reference checks.
    std::map<role_id, int> class_membership;
    for (const auto& [cid, rc] : p.role_classes) {
        for (const auto& rid : rc.roles) {
            if (p.roles.count(rid) == 0) {
                flag(violation_kind::dangling_reference,
                     "class " + cid + " lists unknown role '" + rid + "'");
            }
            class_membership[rid]++;
        }
    }
    for (const auto& [rid, count] : class_membership) {
        if (count > 1) {
            flag(violation_kind::multi_class_role,
                 "role " + rid + " belongs to " + std::to_string(count) + " classes");
        }
    }

    for (const auto& [rid, r] : p.roles) {
        if (p.domains.count(r.domain) == 0) {
            flag(violation_kind::dangling_reference,
                 "role " + rid + " names unknown domain '" + r.domain + "'");
        }
    }
    for (const auto& [uid, u] : p.users) {
        if (p.roles.count(u.active_role) == 0) {
            flag(violation_kind::dangling_reference,
                 "user " + uid + " names unknown role '" + u.active_role + "'");
        }
    }
    std::map<domain_id, std::map<warehouse_kind, int>> warehouse_counts;
    for (const auto& [oid, obj] : p.objects) {
        if (p.domains.count(obj.domain) == 0) {
            flag(violation_kind::dangling_reference,
                 "object " + oid + " names unknown domain '" + obj.domain + "'");
        }
        if (p.role_classes.count(obj.owning_class) == 0) {
            flag(violation_kind::dangling_reference,
                 "object " + oid + " names unknown class '" + obj.owning_class + "'");
        }
        if (obj.kind != warehouse_kind::generic) {
            int& count = warehouse_counts[obj.domain][obj.kind];
            if (++count == 2) {
                flag(violation_kind::duplicate_warehouse,
                     "domain " + obj.domain + " has more than one " + to_string(obj.kind));
            }
        }
    }
    for (const auto& [key, ops] : p.rights.entries) {
        if (p.objects.count(key.first) == 0) {
            flag(violation_kind::dangling_reference,
                 "rights entry names unknown object '" + key.first + "'");
        }
        if (p.roles.count(key.second) == 0) {
            flag(violation_kind::dangling_reference,
                 "rights entry names unknown role '" + key.second + "'");
        }
    }

    // CIR-3 is informational only: conflict may or may not propagate.
    {
        auto eff = p.effective_class_conflicts();
        auto linked = [&eff](const class_id& x, const class_id& y) {
            return eff.count(x <= y ? std::make_pair(x, y) : std::make_pair(y, x)) > 0;
        };
        for (const auto& [a, b] : eff) {
            for (const auto& [cid, rc] : p.role_classes) {
                if (cid == a || cid == b) {
                    continue;
                }
                if (linked(b, cid) && !linked(a, cid)) {
                    report.notes.push_back("conflict chain " + a + "-" + b + "-" + cid +
                                           " does not propagate to (" + a + ", " + cid + ")");
                }
                if (linked(a, cid) && !linked(b, cid)) {
                    report.notes.push_back("conflict chain " + b + "-" + a + "-" + cid +
                                           " does not propagate to (" + b + ", " + cid + ")");
                }
            }
        }
    }

    return report;
}

policy assign_user(policy p, const user_id& uid, const role_id& rid)
{
    if (p.roles.count(rid) == 0) {
        throw unknown_role(rid);
    }
    auto it = p.users.find(uid);
    if (it != p.users.end()) {
        auto current = p.class_of_role(it->second.active_role);
        auto target = p.class_of_role(rid);
        if (current && target && p.classes_conflict(*current, *target)) {
            throw conflicting_assignment("user " + uid + " holds class " + *current +
                                         " which conflicts with class " + *target);
        }
        it->second.active_role = rid;
    } else {
        p.users[uid] = user{uid, rid};
    }
    return p;
}

bool roles_cooperative(const policy& p, const role_id& a, const role_id& b)
{
    auto ca = p.class_of_role(a);
    auto cb = p.class_of_role(b);
    if (!ca || !cb) {
        return true;  // a classless role conflicts with nothing
    }
    if (*ca == *cb) {
        return true;
    }
    return !p.classes_conflict(*ca, *cb);
}

policy switch_role(policy p, const user_id& uid, const role_id& to)
{
    auto it = p.users.find(uid);
    if (it == p.users.end()) {
        throw unknown_user(uid);
    }
    if (p.roles.count(to) == 0) {
        throw unknown_role(to);
    }
    if (!roles_cooperative(p, it->second.active_role, to)) {
        throw conflicting_switch("user " + uid + " cannot switch from " +
                                 it->second.active_role + " to conflicting role " + to);
    }
    it->second.active_role = to;
    return p;
}

std::set<operation_kind> lookup_rights(const policy& p, const object_id& obj, const role_id& rid)
{
    if (p.objects.count(obj) == 0) {
        throw unknown_object(obj);
    }
    if (p.roles.count(rid) == 0) {
        throw unknown_role(rid);
    }
    auto it = p.rights.entries.find({obj, rid});
    if (it == p.rights.entries.end()) {
        return {};
    }
    return it->second;
}

}  // namespace wallguard
