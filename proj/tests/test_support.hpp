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
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wallguard/engine.hpp"
#include "wallguard/policy.hpp"
#include "wallguard/store.hpp"

namespace testsupport {

inline std::filesystem::path fixtures_dir()
{
    return std::filesystem::path(FIXTURES_DIR);
}

inline wallguard::policy casestudy_policy()
{
    return wallguard::load_policy_file(fixtures_dir() / "casestudy.policy");
}

// ---- set-theoretic oracle engine ---------------------------------------
//
// A direct transliteration of the wall model in set form: walls are sets of
// class names, the access predicate is two empty-intersection checks, and
// updates are set unions. Kept independent of the bitset implementation so
// it can serve as its oracle.

namespace oracle {

struct subject_wall {
    std::set<std::string> granted;
    std::set<std::string> denied;
};

struct object_wall {
    std::set<std::string> authorized;
    std::set<std::string> conflicting;
};

class engine {
public:
    explicit engine(const wallguard::policy& p) : pol_(p)
    {
        // Resolve declared conflict pairs to class pairs on our own.
        for (const auto& [a, b] : p.conflicts.pairs) {
            auto ca = resolve_class(a);
            auto cb = resolve_class(b);
            if (!ca.empty() && !cb.empty() && ca != cb) {
                conflicts_[ca].insert(cb);
                conflicts_[cb].insert(ca);
            }
        }
        for (const auto& [uid, u] : p.users) {
            subject_wall sw;
            std::string cls = resolve_class(u.active_role);
            if (!cls.empty()) {
                sw.granted.insert(cls);
                sw.denied = conflicts_[cls];
            } else {
                for (const auto& [cid, rc] : p.role_classes) {
                    sw.denied.insert(cid);
                }
            }
            subjects_[uid] = std::move(sw);
        }
        for (const auto& [oid, obj] : p.objects) {
            object_wall ow;
            ow.authorized.insert(obj.owning_class);
            ow.conflicting = conflicts_[obj.owning_class];
            objects_[oid] = std::move(ow);
        }
    }

    struct verdict {
        wallguard::outcome result;
        wallguard::deny_reason reason;
    };

    // Decide and, when granted, update — same gate order as the engine.
    verdict step(const wallguard::access_request& req)
    {
        auto su = subjects_.find(req.subject);
        auto ob = objects_.find(req.object);
        if (su == subjects_.end() || ob == objects_.end()) {
            return {wallguard::outcome::denied, wallguard::deny_reason::unknown_principal};
        }
        subject_wall& sw = su->second;
        object_wall& ow = ob->second;
        if (intersects(sw.granted, ow.conflicting) || intersects(sw.denied, ow.authorized)) {
            return {wallguard::outcome::denied, wallguard::deny_reason::wall_conflict};
        }
        auto op = wallguard::parse_operation(req.operation);
        bool has_right = false;
        if (op) {
            auto it = pol_.rights.entries.find({req.object, pol_.users.at(req.subject).active_role});
            has_right = it != pol_.rights.entries.end() && it->second.count(*op) > 0;
        }
        if (!has_right) {
            return {wallguard::outcome::denied, wallguard::deny_reason::no_right};
        }
        if (*op == wallguard::operation_kind::read) {
            sw.granted.insert(ow.authorized.begin(), ow.authorized.end());
            sw.denied.insert(ow.conflicting.begin(), ow.conflicting.end());
        } else {
            ow.authorized.insert(sw.granted.begin(), sw.granted.end());
            ow.conflicting.insert(sw.denied.begin(), sw.denied.end());
        }
        return {wallguard::outcome::granted, wallguard::deny_reason::ok};
    }

    const subject_wall& subject(const std::string& uid) const { return subjects_.at(uid); }
    const object_wall& object(const std::string& oid) const { return objects_.at(oid); }

    static bool intersects(const std::set<std::string>& a, const std::set<std::string>& b)
    {
        for (const auto& x : a) {
            if (b.count(x) > 0) {
                return true;
            }
        }
        return false;
    }

private:
    std::string resolve_class(const std::string& name) const
    {
        if (pol_.role_classes.count(name) > 0) {
            return name;
        }
        for (const auto& [cid, rc] : pol_.role_classes) {
            if (rc.roles.count(name) > 0) {
                return cid;
            }
        }
        return "";
    }

    const wallguard::policy& pol_;
    std::map<std::string, std::set<std::string>> conflicts_;
    std::map<std::string, subject_wall> subjects_;
    std::map<std::string, object_wall> objects_;
};

// Converts a bitset wall side back to the class-name set it encodes.
inline std::set<std::string> classes_of_bits(const wallguard::policy& p,
                                             const wallguard::bit_vector& bits)
{
    std::set<std::string> out;
    for (const auto& [cid, rc] : p.role_classes) {
        if (bits.test(rc.index)) {
            out.insert(cid);
        }
    }
    return out;
}

}  // namespace oracle

// ---- random policies and traces ----------------------------------------

inline wallguard::policy random_policy(std::mt19937& rng)
{
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    wallguard::policy p;
    p.domains.insert("d1");
    const int n_classes = pick(2, 6);
    const int n_roles = pick(2, 12);
    const int n_objects = pick(1, 8);

    for (int i = 1; i <= n_classes; ++i) {
        wallguard::role_class rc;
        rc.id = "C" + std::to_string(i);
        rc.index = i;
        p.role_classes[rc.id] = rc;
    }
    for (int i = 1; i <= n_roles; ++i) {
        wallguard::role r;
        r.id = "R" + std::to_string(i);
        r.domain = "d1";
        r.operations = {wallguard::operation_kind::read, wallguard::operation_kind::write};
        p.roles[r.id] = r;
        if (pick(0, 4) != 0) {  // a few roles stay classless
            auto cid = "C" + std::to_string(pick(1, n_classes));
            p.role_classes[cid].roles.insert(r.id);
        }
    }
    for (int a = 1; a <= n_classes; ++a) {
        for (int b = a + 1; b <= n_classes; ++b) {
            if (pick(0, 2) != 0) {
                p.conflicts.add("C" + std::to_string(a), "C" + std::to_string(b));
            }
        }
    }
    for (int i = 1; i <= n_objects; ++i) {
        wallguard::object_descriptor obj;
        obj.id = "O" + std::to_string(i);
        obj.domain = "d1";
        obj.owning_class = "C" + std::to_string(pick(1, n_classes));
        p.objects[obj.id] = obj;
    }
    for (int i = 1; i <= n_roles; ++i) {
        wallguard::user u;
        u.id = "U" + std::to_string(i);
        u.active_role = "R" + std::to_string(i);
        p.users[u.id] = u;
    }
    for (const auto& [oid, obj] : p.objects) {
        for (const auto& [rid, r] : p.roles) {
            int roll = pick(0, 3);
            if (roll == 0) {
                continue;
            }
            std::set<wallguard::operation_kind> ops;
            if (roll & 1) {
                ops.insert(wallguard::operation_kind::read);
            }
            if (roll & 2) {
                ops.insert(wallguard::operation_kind::write);
            }
            p.rights.entries[{oid, rid}] = ops;
        }
    }
    return p;
}

inline std::vector<wallguard::access_request> random_trace(std::mt19937& rng,
                                                           const wallguard::policy& p,
                                                           std::size_t length)
{
    auto pick = [&rng](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    std::vector<std::string> users;
    for (const auto& [uid, u] : p.users) {
        users.push_back(uid);
    }
    std::vector<std::string> objects;
    for (const auto& [oid, obj] : p.objects) {
        objects.push_back(oid);
    }
    static const std::vector<std::string> ops = {"read", "write", "read", "write", "delete"};
    std::vector<wallguard::access_request> trace;
    trace.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        wallguard::access_request req;
        req.sequence_no = i + 1;
        req.subject = pick(10) == 0 ? "ghost" : users[pick(users.size())];
        req.object = objects[pick(objects.size())];
        req.operation = ops[pick(ops.size())];
        trace.push_back(std::move(req));
    }
    return trace;
}

}  // namespace testsupport
