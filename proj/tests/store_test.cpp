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

#include <cstdio>
#include <filesystem>

#include "test_support.hpp"
#include "wallguard/errors.hpp"
#include "wallguard/store.hpp"

using namespace wallguard;
namespace fs = std::filesystem;

namespace {

struct temp_dir {
    fs::path path;
    temp_dir()
    {
        path = fs::temp_directory_path() /
               ("wallguard-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~temp_dir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("the case-study fixture loads with the expected shape")
{
    auto p = testsupport::casestudy_policy();
    CHECK(p.roles.size() == 7);
    CHECK(p.role_classes.size() == 3);
    CHECK(p.objects.size() == 3);
    CHECK(p.users.size() == 3);
    CHECK(p.domains.count("healthcare") == 1);
}

TEST_CASE("empty or malformed documents raise positioned parse errors")
{
    CHECK_THROWS_AS(load_policy(""), parse_error);
    try {
        load_policy("domain d\nbogus-directive x\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 1);
    }
    CHECK_THROWS_AS(load_policy("role R1 domain=d ops=fly\n"), parse_error);
}

TEST_CASE("deleting a conflict pair still loads and re-shapes the walls")
{
    auto p = testsupport::casestudy_policy();
    p.conflicts.pairs.erase(p.conflicts.pairs.begin());
    CHECK(validate_policy(p).clean());  // symmetry holds by construction
    auto text = render_policy(p);
    auto reloaded = load_policy(text);
    CHECK(reloaded.conflicts.pairs.size() == 2);
}

TEST_CASE("policy documents round-trip through render and parse")
{
    auto p = testsupport::casestudy_policy();
    auto once = render_policy(p);
    auto twice = render_policy(load_policy(once));
    CHECK(once == twice);

    std::mt19937 rng(13);
    for (int i = 0; i < 25; ++i) {
        auto rp = testsupport::random_policy(rng);
        auto a = render_policy(rp);
        auto b = render_policy(load_policy(a));
        CHECK(a == b);
    }
}

TEST_CASE("snapshots are byte-stable fixed points")
{
    auto p = testsupport::casestudy_policy();
    auto state = engine_state::from_policy(p);
    auto snap = snapshot_state(state);
    CHECK(snap.find("ODW {100, 011}") != std::string::npos);
    CHECK(snap.find("S1 {100, 011}") != std::string::npos);

    auto reloaded = load_snapshot(p, snap);
    CHECK(snapshot_state(reloaded) == snap);
    CHECK(reloaded.version == state.version);
}

TEST_CASE("post-Q1 snapshot differs from the seed only in the version line")
{
    auto p = testsupport::casestudy_policy();
    auto state = engine_state::from_policy(p);
    auto before = snapshot_state(state);
    auto d = authorize(state, {1, "S1", "ODW", "write"});
    apply(state, d);
    auto after = snapshot_state(state);
    auto strip = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
    CHECK(strip(before) == strip(after));
    CHECK(before != after);
}

TEST_CASE("snapshot version counters increase across persisted mutations")
{
    temp_dir dir;
    auto p = testsupport::casestudy_policy();
    auto state = engine_state::from_policy(p);
    std::uint64_t previous = state.version;
    for (int i = 0; i < 3; ++i) {
        auto d = authorize(state, {static_cast<std::uint64_t>(i + 1), "S1", "ODW", "write"});
        apply(state, d);
        write_snapshot_atomic(dir.path / "state.snap", state);
        auto reloaded = load_snapshot(p, read_text_file(dir.path / "state.snap"));
        CHECK(reloaded.version > previous);
        previous = reloaded.version;
    }
}

TEST_CASE("trace files round-trip and enforce increasing sequence numbers")
{
    auto trace = parse_trace(read_text_file(testsupport::fixtures_dir() / "q1q2.trace"));
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].subject == "S1");
    CHECK(trace[1].operation == "read");
    CHECK(render_trace(parse_trace(render_trace(trace))) == render_trace(trace));

    CHECK_THROWS_AS(parse_trace("1 S1 ODW write\n1 S2 DDW read\n"), parse_error);
    CHECK_THROWS_AS(parse_trace("1 S1 ODW\n"), parse_error);
}

TEST_CASE("datasets round-trip losslessly")
{
    auto [schema, recipe] = load_schema(read_text_file(testsupport::fixtures_dir() / "ehr.schema"));
    auto text = read_text_file(testsupport::fixtures_dir() / "ehr.tsv");
    auto ds = read_dataset(text, schema, data_tier::original);
    CHECK(ds.rows.size() == 200);
    CHECK(render_dataset(ds) == text);
}

TEST_CASE("schema files parse sensitivities, hierarchies and the recipe")
{
    auto [schema, recipe] =
        load_schema(read_text_file(testsupport::fixtures_dir() / "ehr.schema"));
    CHECK(schema.columns.size() == 7);
    CHECK(schema.columns[0].sens == sensitivity::identifier);
    int zip = schema.column_index("zip");
    REQUIRE(zip >= 0);
    REQUIRE(schema.columns[static_cast<std::size_t>(zip)].hierarchy.has_value());
    CHECK(schema.columns[static_cast<std::size_t>(zip)].hierarchy->levels.size() == 4);
    CHECK(recipe.k == 2);
    CHECK(recipe.deid_steps.size() == 2);
    CHECK_THROWS_AS(load_schema("column zip quasi levels=prefix:3\n"), parse_error);
}

TEST_CASE("audit log appends in order and preserves prior bytes")
{
    temp_dir dir;
    auto path = dir.path / "audit.log";
    auto p = testsupport::casestudy_policy();
    auto state = engine_state::from_policy(p);
    auto trace = parse_trace(read_text_file(testsupport::fixtures_dir() / "q1q2.trace"));

    {
        audit_log log(path);
        replay(state, trace, log.sink());
        CHECK(log.size() == 2);
    }
    auto first_pass = read_text_file(path);
    auto parsed = read_audit_log(path);
    CHECK(parsed.records.size() == 2);
    CHECK_FALSE(parsed.truncated_tail);
    CHECK(parsed.records[0].d.request.subject == "S1");
    CHECK(parsed.records[0].d.result == outcome::granted);
    CHECK(parsed.records[1].d.reason == deny_reason::wall_conflict);

    {
        audit_log log(path);
        log.append(audit_record{authorize(state, {3, "S1", "ODW", "write"}),
                                current_utc_timestamp()});
    }
    auto second_pass = read_text_file(path);
    CHECK(second_pass.substr(0, first_pass.size()) == first_pass);
    CHECK(read_audit_log(path).records.size() == 3);
}

TEST_CASE("truncated audit logs keep every complete record")
{
    temp_dir dir;
    auto path = dir.path / "audit.log";
    auto p = testsupport::casestudy_policy();
    auto state = engine_state::from_policy(p);
    auto trace = parse_trace(read_text_file(testsupport::fixtures_dir() / "q1q2.trace"));
    {
        audit_log log(path);
        replay(state, trace, log.sink());
    }
    auto full = read_text_file(path);
    auto first_nl = full.find('\n');

    auto truncated_path = dir.path / "truncated.log";
    for (std::size_t cut = 0; cut <= full.size(); ++cut) {
        write_text_file(truncated_path, full.substr(0, cut));
        auto result = read_audit_log(truncated_path);
        std::size_t complete = 0;
        if (cut > first_nl) {
            complete = 1;
        }
        if (cut == full.size()) {
            complete = 2;
        }
        CHECK(result.records.size() == complete);
        bool expect_torn = cut != full.size() && cut != first_nl + 1 && cut != 0;
        CHECK(result.truncated_tail == expect_torn);
    }
}
