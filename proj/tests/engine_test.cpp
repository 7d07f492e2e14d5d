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

#include <doctest.h>

#include "test_support.hpp"
#include "wallguard/engine.hpp"
#include "wallguard/errors.hpp"
#include "wallguard/store.hpp"

using namespace wallguard;

namespace {

engine_state casestudy_state()
{
    return engine_state::from_policy(testsupport::casestudy_policy());
}

}  // namespace

TEST_CASE("Q1 is granted and Q2 is denied by the wall gate")
{
    auto state = casestudy_state();

    auto q1 = authorize(state, {1, "S1", "ODW", "write"});
    CHECK(q1.result == outcome::granted);
    CHECK(q1.reason == deny_reason::ok);

    auto q2 = authorize(state, {2, "S3", "DDW", "read"});
    CHECK(q2.result == outcome::denied);
    CHECK(q2.reason == deny_reason::wall_conflict);
}

TEST_CASE("operations outside the rights set are denied with NoRight")
{
    auto state = casestudy_state();
    auto d = authorize(state, {1, "S1", "ODW", "delete"});
    CHECK(d.result == outcome::denied);
    CHECK(d.reason == deny_reason::no_right);
}

TEST_CASE("unknown principals yield auditable denials")
{
    auto state = casestudy_state();
    auto d1 = authorize(state, {1, "nobody", "ODW", "read"});
    CHECK(d1.result == outcome::denied);
    CHECK(d1.reason == deny_reason::unknown_principal);
    auto d2 = authorize(state, {2, "S1", "nothing", "read"});
    CHECK(d2.reason == deny_reason::unknown_principal);
}

TEST_CASE("authorize is deterministic and pure")
{
    auto state = casestudy_state();
    auto before = snapshot_state(state);
    auto a = authorize(state, {1, "S1", "ODW", "write"});
    auto b = authorize(state, {1, "S1", "ODW", "write"});
    CHECK(snapshot_state(state) == before);
    CHECK(a.result == b.result);
    CHECK(a.reason == b.reason);
    CHECK(a.post_walls.object_left == b.post_walls.object_left);
}

TEST_CASE("apply: granted write is a fixed point on the Q1 walls")
{
    auto state = casestudy_state();
    auto q1 = authorize(state, {1, "S1", "ODW", "write"});
    std::size_t audits = 0;
    apply(state, q1, [&audits](const audit_record&) { ++audits; });
    CHECK(audits == 1);
    const auto& odw = state.object_walls.at("ODW");
    CHECK(render_wall_pair(odw.authorized, odw.conflicting) == "{100, 011}");
    CHECK(state.version == 1);
}

TEST_CASE("apply: denial changes nothing but still audits")
{
    auto state = casestudy_state();
    auto before = snapshot_state(state);
    auto q2 = authorize(state, {1, "S3", "DDW", "read"});
    std::size_t audits = 0;
    apply(state, q2, [&audits](const audit_record&) { ++audits; });
    CHECK(audits == 1);
    CHECK(snapshot_state(state) == before);
}

TEST_CASE("granted read only moves the subject wall")
{
    auto p = testsupport::casestudy_policy();
    p = assign_user(p, "u1", "R3");  // second DMC role
    p.rights.entries[{"ODW", "R3"}] = {operation_kind::read};
    auto state = engine_state::from_policy(p);
    auto d = authorize(state, {1, "u1", "ODW", "read"});
    REQUIRE(d.result == outcome::granted);
    apply(state, d);
    const auto& sw = state.subject_walls.at("u1");
    CHECK(render_wall_pair(sw.granted, sw.denied) == "{100, 011}");
    const auto& ow = state.object_walls.at("ODW");
    CHECK(render_wall_pair(ow.authorized, ow.conflicting) == "{100, 011}");
}

TEST_CASE("read accumulates into a partially seeded subject wall")
{
    auto state = casestudy_state();
    state.subject_walls.at("S1") = {"S1", bit_vector::parse("100"), bit_vector::parse("000")};
    auto d = authorize(state, {1, "S1", "ODW", "read"});
    REQUIRE(d.result == outcome::granted);
    apply(state, d);
    const auto& sw = state.subject_walls.at("S1");
    CHECK(render_wall_pair(sw.granted, sw.denied) == "{100, 011}");
}

TEST_CASE("stale decisions are rejected")
{
    auto state = casestudy_state();
    auto d = authorize(state, {1, "S1", "ODW", "write"});
    apply(state, d);
    CHECK_THROWS_AS(apply(state, d), stale_decision);
}

TEST_CASE("replay runs decisions in order and keeps going past bad requests")
{
    auto state = casestudy_state();
    std::vector<access_request> trace = {
        {1, "S1", "ODW", "write"},
        {2, "S3", "DDW", "read"},
        {3, "ghost", "ODW", "read"},
    };
    std::size_t audits = 0;
    auto decisions = replay(state, trace, [&audits](const audit_record&) { ++audits; });
    REQUIRE(decisions.size() == 3);
    CHECK(decisions[0].result == outcome::granted);
    CHECK(decisions[1].result == outcome::denied);
    CHECK(decisions[2].reason == deny_reason::unknown_principal);
    CHECK(audits == 3);
}

TEST_CASE("empty trace leaves the state untouched")
{
    auto state = casestudy_state();
    auto before = snapshot_state(state);
    auto decisions = replay(state, std::vector<access_request>{});
    CHECK(decisions.empty());
    CHECK(snapshot_state(state) == before);
}

TEST_CASE("switch_user_role reseeds the subject wall")
{
    auto p = testsupport::casestudy_policy();
    p = assign_user(p, "u1", "R1");
    auto state = engine_state::from_policy(p);
    CHECK(state.subject_walls.at("u1").granted.none());
    state.switch_user_role("u1", "R7");
    const auto& sw = state.subject_walls.at("u1");
    CHECK(render_wall_pair(sw.granted, sw.denied) == "{000, 111}");
    CHECK(state.version == 1);
}

TEST_CASE("inserted denials never change the final wall state")
{
    std::mt19937 rng(77);
    for (int round = 0; round < 20; ++round) {
        auto p = testsupport::random_policy(rng);
        auto trace = testsupport::random_trace(rng, p, 60);

        auto baseline = engine_state::from_policy(p);
        std::vector<access_request> granted_only;
        for (const auto& req : trace) {
            auto d = authorize(baseline, req);
            apply(baseline, d);
            if (d.result == outcome::granted) {
                granted_only.push_back(req);
            }
        }

        auto replayed = engine_state::from_policy(p);
        for (auto req : granted_only) {
            auto d = authorize(replayed, req);
            REQUIRE(d.result == outcome::granted);
            apply(replayed, d);
        }
        auto strip_version = [](std::string s) { return s.substr(s.find('\n') + 1); };
        CHECK(strip_version(snapshot_state(replayed)) ==
              strip_version(snapshot_state(baseline)));
    }
}
