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

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wallguard/engine.hpp"
#include "wallguard/errors.hpp"
#include "wallguard/store.hpp"
#include "wallguard/transform.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDenied = 2;

wallguard::policy load_validated_policy(const std::string& path)
{
    auto pol = wallguard::load_policy_file(path);
    auto report = wallguard::validate_policy(pol);
    if (!report.clean()) {
        throw wallguard::validation_failed("policy " + path + " is invalid:\n" +
                                           wallguard::render_validation_report(report));
    }
    return pol;
}

wallguard::engine_state load_state(const std::string& policy_path, const std::string& state_path)
{
    auto pol = load_validated_policy(policy_path);
    if (state_path.empty()) {
        return wallguard::engine_state::from_policy(std::move(pol));
    }
    return wallguard::load_snapshot(std::move(pol), wallguard::read_text_file(state_path));
}

std::string pseudonym_key_from_env()
{
    const char* key = std::getenv("WALLGUARD_PSEUDONYM_KEY");
    return key ? key : "";
}

int run_validate(const std::string& policy_path)
{
    auto pol = wallguard::load_policy_file(policy_path);
    auto report = wallguard::validate_policy(pol);
    std::cout << wallguard::render_validation_report(report);
    return report.clean() ? kExitOk : kExitError;
}

int run_authorize(const std::string& policy_path, const std::string& state_path,
                  const std::string& subject, const std::string& object, const std::string& op,
                  bool do_apply, const std::string& out_state, const std::string& audit_path)
{
    auto state = load_state(policy_path, state_path);
    wallguard::access_request req{1, subject, object, op};
    auto d = wallguard::authorize(state, req);
    if (do_apply || !audit_path.empty() || !out_state.empty()) {
        if (!audit_path.empty()) {
            wallguard::audit_log log(audit_path);
            wallguard::apply(state, d, log.sink());
        } else {
            wallguard::apply(state, d);
        }
        if (!out_state.empty()) {
            wallguard::write_snapshot_atomic(out_state, state);
        }
    }
    if (d.result == wallguard::outcome::granted) {
        std::cout << "Granted\n";
        return kExitOk;
    }
    std::cout << "Denied (" << to_string(d.reason) << ")\n";
    return kExitDenied;
}

int run_replay(const std::string& policy_path, const std::string& state_path,
               const std::string& trace_path, const std::string& audit_path,
               const std::string& out_state)
{
    auto state = load_state(policy_path, state_path);
    auto trace = wallguard::parse_trace(wallguard::read_text_file(trace_path));
    std::vector<wallguard::decision> decisions;
    if (!audit_path.empty()) {
        wallguard::audit_log log(audit_path);
        decisions = wallguard::replay(state, trace, log.sink());
    } else {
        decisions = wallguard::replay(state, trace);
    }
    for (const auto& d : decisions) {
        std::cout << d.request.sequence_no << " " << to_string(d.result) << " "
                  << to_string(d.reason) << "\n";
    }
    if (!out_state.empty()) {
        wallguard::write_snapshot_atomic(out_state, state);
    }
    return kExitOk;
}

int run_transform(const std::string& data_path, const std::string& schema_path, int k_override,
                  double suppression_override, const std::string& out_dir)
{
    auto [schema, recipe] = wallguard::load_schema(wallguard::read_text_file(schema_path));
    if (k_override > 0) {
        recipe.k = k_override;
    }
    if (suppression_override >= 0.0) {
        recipe.max_suppression_fraction = suppression_override;
    }
    auto od = wallguard::read_dataset(wallguard::read_text_file(data_path), schema,
                                      wallguard::data_tier::original);
    auto chain = wallguard::build_warehouse_chain(od, recipe, pseudonym_key_from_env());
    std::cout << "alpha OD " << wallguard::measure_confidentiality(chain.od) << "\n";
    std::cout << "alpha DD " << wallguard::measure_confidentiality(chain.dd) << "\n";
    std::cout << "alpha AD " << wallguard::measure_confidentiality(chain.ad) << "\n";
    std::cout << "rows OD " << chain.od.rows.size() << " DD " << chain.dd.rows.size() << " AD "
              << chain.ad.rows.size() << "\n";
    std::cout << "k-anonymity(k=" << recipe.k << ") "
              << (wallguard::verify_k_anonymity(chain.ad, recipe.k) ? "satisfied" : "violated")
              << "\n";
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        wallguard::write_text_file(fs::path(out_dir) / "odw.tsv",
                                   wallguard::render_dataset(chain.od));
        wallguard::write_text_file(fs::path(out_dir) / "ddw.tsv",
                                   wallguard::render_dataset(chain.dd));
        wallguard::write_text_file(fs::path(out_dir) / "adw.tsv",
                                   wallguard::render_dataset(chain.ad));
    }
    return kExitOk;
}

int run_report(const std::string& policy_path, const std::string& state_path)
{
    auto state = load_state(policy_path, state_path);
    std::cout << wallguard::render_report(state);
    return kExitOk;
}

// Newline-delimited request/response protocol on stdin/stdout:
// in:  "seq subject object op", out: "seq GRANTED|DENIED reason".
int run_serve(const std::string& policy_path, const std::string& state_path,
              const std::string& audit_path)
{
    auto state = load_state(policy_path, state_path);
    std::unique_ptr<wallguard::audit_log> log;
    if (!audit_path.empty()) {
        log = std::make_unique<wallguard::audit_log>(audit_path);
    }
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream in(line);
        wallguard::access_request req;
        if (!(in >> req.sequence_no >> req.subject >> req.object >> req.operation)) {
            std::cout << "? ERROR malformed-request\n" << std::flush;
            continue;
        }
        auto d = wallguard::authorize(state, req);
        wallguard::apply(state, d, log ? log->sink() : wallguard::audit_sink{});
        std::cout << req.sequence_no << " " << to_string(d.result) << " " << to_string(d.reason)
                  << "\n"
                  << std::flush;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"RBAC + Chinese Wall policy decision engine"};
    app.require_subcommand(1);

    std::string policy_path, state_path, subject, object, op, trace_path, audit_path;
    std::string out_state, data_path, schema_path, out_dir;
    bool do_apply = false;
    int k_override = 0;
    double suppression_override = -1.0;

    auto* validate = app.add_subcommand("validate", "check a policy document");
    validate->add_option("--policy", policy_path)->required();

    auto* authorize = app.add_subcommand("authorize", "decide a single access request");
    authorize->add_option("--policy", policy_path)->required();
    authorize->add_option("--state", state_path);
    authorize->add_option("--subject", subject)->required();
    authorize->add_option("--object", object)->required();
    authorize->add_option("--op", op)->required();
    authorize->add_flag("--apply", do_apply, "apply the wall update");
    authorize->add_option("--out-state", out_state);
    authorize->add_option("--audit", audit_path);

    auto* replay = app.add_subcommand("replay", "replay a trace file");
    replay->add_option("--policy", policy_path)->required();
    replay->add_option("--state", state_path);
    replay->add_option("--trace", trace_path)->required();
    replay->add_option("--audit", audit_path);
    replay->add_option("--out-state", out_state);

    auto* transform = app.add_subcommand("transform", "run the ODW->DDW->ADW chain");
    transform->add_option("--data", data_path)->required();
    transform->add_option("--schema", schema_path)->required();
    transform->add_option("--k", k_override);
    transform->add_option("--max-suppression", suppression_override);
    transform->add_option("--out-dir", out_dir);

    auto* report = app.add_subcommand("report", "print classes and walls");
    report->add_option("--policy", policy_path)->required();
    report->add_option("--state", state_path);

    auto* serve = app.add_subcommand("serve", "answer requests line by line");
    serve->add_option("--policy", policy_path)->required();
    serve->add_option("--state", state_path);
    serve->add_option("--audit", audit_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            return run_validate(policy_path);
        }
        if (authorize->parsed()) {
            return run_authorize(policy_path, state_path, subject, object, op, do_apply,
                                 out_state, audit_path);
        }
        if (replay->parsed()) {
            return run_replay(policy_path, state_path, trace_path, audit_path, out_state);
        }
        if (transform->parsed()) {
            return run_transform(data_path, schema_path, k_override, suppression_override,
                                 out_dir);
        }
        if (report->parsed()) {
            return run_report(policy_path, state_path);
        }
        if (serve->parsed()) {
            return run_serve(policy_path, state_path, audit_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
