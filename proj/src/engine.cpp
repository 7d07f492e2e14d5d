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

#include "wallguard/engine.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "wallguard/errors.hpp"

namespace wallguard {

std::string to_string(outcome o)
{
    return o == outcome::granted ? "GRANTED" : "DENIED";
}

std::string to_string(deny_reason r)
{
    switch (r) {
    case deny_reason::ok:
        return "Ok";
    case deny_reason::wall_conflict:
        return "WallConflict";
    case deny_reason::no_right:
        return "NoRight";
    case deny_reason::unknown_principal:
        return "UnknownPrincipal";
    }
    return "?";
}

engine_state engine_state::from_policy(policy p)
{
    engine_state state;
    state.pol = std::move(p);
    for (const auto& [uid, u] : state.pol.users) {
        state.subject_walls.emplace(uid, init_subject_wall(state.pol, uid));
    }
    for (const auto& [oid, obj] : state.pol.objects) {
        state.object_walls.emplace(oid, init_object_wall(state.pol, oid));
    }
    return state;
}

void engine_state::switch_user_role(const user_id& uid, const role_id& to)
{
    pol = switch_role(std::move(pol), uid, to);
    subject_walls.insert_or_assign(uid, init_subject_wall(pol, uid));
    ++version;
}

decision authorize(const engine_state& state, const access_request& req)
{
    decision d;
    d.request = req;
    d.state_version = state.version;

    auto sw_it = state.subject_walls.find(req.subject);
    auto ow_it = state.object_walls.find(req.object);
    if (sw_it == state.subject_walls.end() || ow_it == state.object_walls.end() ||
        state.pol.users.count(req.subject) == 0) {
        d.result = outcome::denied;
        d.reason = deny_reason::unknown_principal;
        return d;
    }

    const binary_subject_wall& sw = sw_it->second;
    const binary_object_wall& ow = ow_it->second;
    d.pre_walls = {sw.granted, sw.denied, ow.authorized, ow.conflicting};
    d.post_walls = d.pre_walls;

    if (!check_access(sw, ow)) {
        d.result = outcome::denied;
        d.reason = deny_reason::wall_conflict;
        return d;
    }

    auto op = parse_operation(req.operation);
    const role_id& active = state.pol.users.at(req.subject).active_role;
    auto rights = lookup_rights(state.pol, req.object, active);
    if (!op || rights.count(*op) == 0) {
        d.result = outcome::denied;
        d.reason = deny_reason::no_right;
        return d;
    }

    d.result = outcome::granted;
    d.reason = deny_reason::ok;
    if (*op == operation_kind::read) {
        auto updated = update_on_read(sw, ow);
        d.post_walls.subject_left = updated.granted;
        d.post_walls.subject_right = updated.denied;
    } else {
        auto updated = update_on_write(ow, sw);
        d.post_walls.object_left = updated.authorized;
        d.post_walls.object_right = updated.conflicting;
    }
    return d;
}

void apply(engine_state& state, const decision& d, const audit_sink& audit)
{
    if (d.state_version != state.version) {
        throw stale_decision("decision was computed against state version " +
                             std::to_string(d.state_version) + ", current is " +
                             std::to_string(state.version));
    }
    if (d.result == outcome::granted) {
        auto& sw = state.subject_walls.at(d.request.subject);
        auto& ow = state.object_walls.at(d.request.object);
        auto op = parse_operation(d.request.operation);
        if (op == operation_kind::read) {
            sw = update_on_read(sw, ow);
        } else {
            ow = update_on_write(ow, sw);
        }
        ++state.version;
    }
    if (audit) {
        audit(audit_record{d, current_utc_timestamp()});
    }
}

std::vector<decision> replay(engine_state& state, std::span<const access_request> trace,
                             const audit_sink& audit)
{
    std::vector<decision> decisions;
    decisions.reserve(trace.size());
    for (const auto& req : trace) {
        decision d = authorize(state, req);
        apply(state, d, audit);
        decisions.push_back(std::move(d));
    }
    return decisions;
}

std::string current_utc_timestamp()
{
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

}  // namespace wallguard
