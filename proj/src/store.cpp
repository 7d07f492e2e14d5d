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

#include "wallguard/store.hpp"

#include <algorithm>
#include <sstream>

#include "wallguard/errors.hpp"

namespace wallguard {

namespace {

struct token {
    std::string text;
    int line;
    int column;
};

// Splits a document into per-line token lists; '#' starts a comment.
std::vector<std::vector<token>> tokenize(const std::string& text)
{
    std::vector<std::vector<token>> lines;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<token> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
                ++i;
                continue;
            }
            if (line[i] == '#') {
                break;
            }
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
                ++i;
            }
            toks.push_back({line.substr(start, i - start), lineno, static_cast<int>(start + 1)});
        }
        if (!toks.empty()) {
            lines.push_back(std::move(toks));
        }
    }
    return lines;
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) {
            if (start < s.size()) {
                out.push_back(s.substr(start));
            }
            break;
        }
        if (comma > start) {
            out.push_back(s.substr(start, comma - start));
        }
        start = comma + 1;
    }
    return out;
}

// "key=value" option; returns false when the token has no '='.
bool split_option(const token& t, std::string& key, std::string& value)
{
    auto eq = t.text.find('=');
    if (eq == std::string::npos) {
        return false;
    }
    key = t.text.substr(0, eq);
    value = t.text.substr(eq + 1);
    return true;
}

[[noreturn]] void fail(const token& t, const std::string& msg)
{
    throw parse_error(t.line, t.column, msg + " ('" + t.text + "')");
}

std::set<operation_kind> parse_op_list(const token& t, const std::string& value)
{
    std::set<operation_kind> ops;
    for (const auto& item : split_commas(value)) {
        auto op = parse_operation(item);
        if (!op) {
            fail(t, "unknown operation '" + item + "'");
        }
        ops.insert(*op);
    }
    return ops;
}

std::string render_op_list(const std::set<operation_kind>& ops)
{
    std::string out;
    for (auto op : ops) {
        if (!out.empty()) {
            out += ",";
        }
        out += to_string(op);
    }
    return out;
}

// Parses "{100, 011}" or "{100,011}".
std::pair<bit_vector, bit_vector> parse_wall_pair(const std::string& text, int line)
{
    auto bad = [&]() -> std::pair<bit_vector, bit_vector> {
        throw parse_error(line, 1, "malformed wall pair '" + text + "'");
    };
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
        return bad();
    }
    std::string body = text.substr(1, text.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) {
        return bad();
    }
    std::string left = body.substr(0, comma);
    std::string right = body.substr(comma + 1);
    auto trim = [](std::string& s) {
        while (!s.empty() && (s.front() == ' ')) {
            s.erase(s.begin());
        }
        while (!s.empty() && (s.back() == ' ')) {
            s.pop_back();
        }
    };
    trim(left);
    trim(right);
    return {bit_vector::parse(left), bit_vector::parse(right)};
}

}  // namespace

policy load_policy(const std::string& text)
{
    auto lines = tokenize(text);
    if (lines.empty()) {
        throw parse_error(1, 1, "empty policy document");
    }
    policy p;
    for (const auto& toks : lines) {
        const token& head = toks[0];
        if (head.text == "policy-version") {
            continue;  // single version so far
        } else if (head.text == "domain") {
            if (toks.size() != 2) {
                fail(head, "domain takes exactly one name");
            }
            p.domains.insert(toks[1].text);
        } else if (head.text == "class") {
            if (toks.size() < 2) {
                fail(head, "class needs a name");
            }
            role_class rc;
            rc.id = toks[1].text;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                std::string key, value;
                if (!split_option(toks[i], key, value)) {
                    fail(toks[i], "expected key=value");
                }
                if (key == "index") {
                    try {
                        rc.index = std::stoi(value);
                    } catch (const std::exception&) {
                        fail(toks[i], "index must be an integer");
                    }
                } else if (key == "roles") {
                    for (const auto& r : split_commas(value)) {
                        rc.roles.insert(r);
                    }
                } else {
                    fail(toks[i], "unknown class option");
                }
            }
            if (p.role_classes.count(rc.id) > 0) {
                fail(toks[1], "duplicate class id");
            }
            p.role_classes[rc.id] = std::move(rc);
        } else if (head.text == "conflict") {
            if (toks.size() != 3) {
                fail(head, "conflict takes two names");
            }
            p.conflicts.add(toks[1].text, toks[2].text);
        } else if (head.text == "role") {
            if (toks.size() < 2) {
                fail(head, "role needs a name");
            }
            role r;
            r.id = toks[1].text;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                std::string key, value;
                if (!split_option(toks[i], key, value)) {
                    fail(toks[i], "expected key=value");
                }
                if (key == "domain") {
                    r.domain = value;
                } else if (key == "ops") {
                    r.operations = parse_op_list(toks[i], value);
                } else {
                    fail(toks[i], "unknown role option");
                }
            }
            if (p.roles.count(r.id) > 0) {
                fail(toks[1], "duplicate role id");
            }
            p.roles[r.id] = std::move(r);
        } else if (head.text == "user") {
            if (toks.size() < 2) {
                fail(head, "user needs a name");
            }
            user u;
            u.id = toks[1].text;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                std::string key, value;
                if (!split_option(toks[i], key, value)) {
                    fail(toks[i], "expected key=value");
                }
                if (key == "role") {
                    u.active_role = value;
                } else {
                    fail(toks[i], "unknown user option");
                }
            }
            if (u.active_role.empty()) {
                fail(head, "user needs role=<id>");
            }
            if (p.users.count(u.id) > 0) {
                fail(toks[1], "duplicate user id");
            }
            p.users[u.id] = std::move(u);
        } else if (head.text == "object") {
            if (toks.size() < 2) {
                fail(head, "object needs a name");
            }
            object_descriptor obj;
            obj.id = toks[1].text;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                std::string key, value;
                if (!split_option(toks[i], key, value)) {
                    fail(toks[i], "expected key=value");
                }
                if (key == "domain") {
                    obj.domain = value;
                } else if (key == "kind") {
                    auto kind = parse_warehouse_kind(value);
                    if (!kind) {
                        fail(toks[i], "unknown warehouse kind");
                    }
                    obj.kind = *kind;
                } else if (key == "class") {
                    obj.owning_class = value;
                } else if (key == "entities") {
                    obj.entities = split_commas(value);
                } else {
                    fail(toks[i], "unknown object option");
                }
            }
            if (p.objects.count(obj.id) > 0) {
                fail(toks[1], "duplicate object id");
            }
            p.objects[obj.id] = std::move(obj);
        } else if (head.text == "right") {
            if (toks.size() != 4) {
                fail(head, "right takes: object role op-list");
            }
            p.rights.entries[{toks[1].text, toks[2].text}] = parse_op_list(toks[3], toks[3].text);
        } else {
            fail(head, "unknown directive");
        }
    }
    return p;
}

policy load_policy_file(const std::filesystem::path& path)
{
    return load_policy(read_text_file(path));
}

std::string render_policy(const policy& p)
{
    std::ostringstream out;
    out << "policy-version 1\n";
    for (const auto& d : p.domains) {
        out << "domain " << d << "\n";
    }
    for (const role_class* rc : p.classes_by_index()) {
        out << "class " << rc->id << " index=" << rc->index;
        if (!rc->roles.empty()) {
            out << " roles=";
            bool first = true;
            for (const auto& r : rc->roles) {
                out << (first ? "" : ",") << r;
                first = false;
            }
        }
        out << "\n";
    }
    for (const auto& [a, b] : p.conflicts.pairs) {
        out << "conflict " << a << " " << b << "\n";
    }
    for (const auto& [id, r] : p.roles) {
        out << "role " << id << " domain=" << r.domain;
        if (!r.operations.empty()) {
            out << " ops=" << render_op_list(r.operations);
        }
        out << "\n";
    }
    for (const auto& [id, u] : p.users) {
        out << "user " << id << " role=" << u.active_role << "\n";
    }
    for (const auto& [id, obj] : p.objects) {
        out << "object " << id << " domain=" << obj.domain << " kind=" << to_string(obj.kind)
            << " class=" << obj.owning_class;
        if (!obj.entities.empty()) {
            out << " entities=";
            for (std::size_t i = 0; i < obj.entities.size(); ++i) {
                out << (i ? "," : "") << obj.entities[i];
            }
        }
        out << "\n";
    }
    for (const auto& [key, ops] : p.rights.entries) {
        if (ops.empty()) {
            continue;
        }
        out << "right " << key.first << " " << key.second << " " << render_op_list(ops) << "\n";
    }
    return out.str();
}

std::string render_validation_report(const validation_report& report)
{
    std::ostringstream out;
    if (report.clean()) {
        out << "ok: 0 violations\n";
    } else {
        out << report.violations.size() << " violation(s)\n";
        for (const auto& v : report.violations) {
            out << "violation " << to_string(v.kind) << ": " << v.detail << "\n";
        }
    }
    for (const auto& note : report.notes) {
        out << "note: " << note << "\n";
    }
    return out.str();
}

std::string snapshot_state(const engine_state& state)
{
    std::ostringstream out;
    out << "version " << state.version << "\n";
    for (const auto& [oid, wall] : state.object_walls) {
        out << "object " << oid << " " << render_wall_pair(wall.authorized, wall.conflicting)
            << "\n";
    }
    for (const auto& [uid, wall] : state.subject_walls) {
        out << "subject " << uid << " " << render_wall_pair(wall.granted, wall.denied) << "\n";
    }
    return out.str();
}

std::string render_report(const engine_state& state)
{
    const policy& p = state.pol;
    std::ostringstream out;
    out << "# classes\n";
    for (const role_class* rc : p.classes_by_index()) {
        auto conflicting = p.conflicting_classes(rc->id);
        std::vector<const role_class*> sorted;
        for (const auto& cid : conflicting) {
            sorted.push_back(&p.role_classes.at(cid));
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const role_class* a, const role_class* b) { return a->index < b->index; });
        out << rc->id << " {";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            out << (i ? ", " : "") << sorted[i]->id;
        }
        out << "}\n";
    }
    out << "# object walls\n";
    std::vector<const binary_object_wall*> owalls;
    for (const auto& [oid, wall] : state.object_walls) {
        owalls.push_back(&wall);
    }
    std::sort(owalls.begin(), owalls.end(),
              [&p](const binary_object_wall* a, const binary_object_wall* b) {
                  auto rank = [&p](const binary_object_wall* w) {
                      auto it = p.objects.find(w->object);
                      if (it != p.objects.end()) {
                          auto cls = p.role_classes.find(it->second.owning_class);
                          if (cls != p.role_classes.end()) {
                              return cls->second.index;
                          }
                      }
                      return 1 << 30;
                  };
                  int ra = rank(a), rb = rank(b);
                  return ra != rb ? ra < rb : a->object < b->object;
              });
    for (const binary_object_wall* wall : owalls) {
        out << wall->object << " " << render_wall_pair(wall->authorized, wall->conflicting)
            << "\n";
    }
    out << "# subject walls\n";
    for (const auto& [uid, wall] : state.subject_walls) {
        out << uid << " " << render_wall_pair(wall.granted, wall.denied) << "\n";
    }
    return out.str();
}

engine_state load_snapshot(policy p, const std::string& text)
{
    engine_state state;
    state.pol = std::move(p);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string head, id;
        ls >> head;
        if (head == "version") {
            ls >> state.version;
            continue;
        }
        ls >> id;
        std::string rest;
        std::getline(ls, rest);
        while (!rest.empty() && rest.front() == ' ') {
            rest.erase(rest.begin());
        }
        auto [left, right] = parse_wall_pair(rest, lineno);
        if (head == "object") {
            state.object_walls.insert_or_assign(id, binary_object_wall{id, left, right});
        } else if (head == "subject") {
            state.subject_walls.insert_or_assign(id, binary_subject_wall{id, left, right});
        } else {
            throw parse_error(lineno, 1, "unknown snapshot record '" + head + "'");
        }
    }
    for (const auto& [uid, u] : state.pol.users) {
        if (state.subject_walls.count(uid) == 0) {
            throw parse_error(0, 0, "snapshot lacks subject wall for " + uid);
        }
    }
    for (const auto& [oid, obj] : state.pol.objects) {
        if (state.object_walls.count(oid) == 0) {
            throw parse_error(0, 0, "snapshot lacks object wall for " + oid);
        }
    }
    return state;
}

void write_snapshot_atomic(const std::filesystem::path& path, const engine_state& state)
{
    auto tmp = path;
    tmp += ".tmp";
    write_text_file(tmp, snapshot_state(state));
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw storage_failure("cannot replace snapshot " + path.string() + ": " + ec.message());
    }
}

dataset read_dataset(const std::string& text, const attribute_schema& schema, data_tier tier)
{
    dataset ds;
    ds.schema = schema;
    ds.tier = tier;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            auto tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (lineno == 1) {
            header = fields;
            if (header.size() != schema.columns.size()) {
                throw parse_error(1, 1, "header has " + std::to_string(header.size()) +
                                            " columns, schema declares " +
                                            std::to_string(schema.columns.size()));
            }
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (header[i] != schema.columns[i].name) {
                    throw parse_error(1, static_cast<int>(i + 1),
                                      "header column '" + header[i] + "' does not match schema '" +
                                          schema.columns[i].name + "'");
                }
            }
            continue;
        }
        if (fields.size() != schema.columns.size()) {
            throw parse_error(lineno, 1, "row has " + std::to_string(fields.size()) +
                                             " fields, expected " +
                                             std::to_string(schema.columns.size()));
        }
        ds.rows.push_back(std::move(fields));
    }
    if (lineno == 0) {
        throw parse_error(1, 1, "dataset file is empty");
    }
    return ds;
}

std::string render_dataset(const dataset& ds)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < ds.schema.columns.size(); ++i) {
        out << (i ? "\t" : "") << ds.schema.columns[i].name;
    }
    out << "\n";
    for (const auto& row : ds.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i].find('\t') != std::string::npos ||
                row[i].find('\n') != std::string::npos) {
                throw storage_failure("dataset value contains a delimiter: '" + row[i] + "'");
            }
            out << (i ? "\t" : "") << row[i];
        }
        out << "\n";
    }
    return out.str();
}

std::pair<attribute_schema, transform_recipe> load_schema(const std::string& text)
{
    attribute_schema schema;
    transform_recipe recipe;
    for (const auto& toks : tokenize(text)) {
        const token& head = toks[0];
        if (head.text == "column") {
            if (toks.size() < 3) {
                fail(head, "column takes: name sensitivity [levels=...]");
            }
            column_spec col;
            col.name = toks[1].text;
            auto sens = parse_sensitivity(toks[2].text);
            if (!sens) {
                fail(toks[2], "unknown sensitivity class");
            }
            col.sens = *sens;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                std::string key, value;
                if (!split_option(toks[i], key, value) || key != "levels") {
                    fail(toks[i], "expected levels=spec,...");
                }
                generalization_hierarchy h;
                h.levels.push_back({generalization_level::kind::identity, 0});
                for (const auto& spec : split_commas(value)) {
                    try {
                        h.levels.push_back(generalization_level::parse(spec));
                    } catch (const std::exception& e) {
                        fail(toks[i], e.what());
                    }
                }
                if (h.levels.back().op != generalization_level::kind::suppress) {
                    fail(toks[i], "hierarchy must end with '*'");
                }
                col.hierarchy = std::move(h);
            }
            schema.columns.push_back(std::move(col));
        } else if (head.text == "deid") {
            if (toks.size() != 3) {
                fail(head, "deid takes: column drop|pseudonymize");
            }
            deid_step step;
            step.column = toks[1].text;
            if (toks[2].text == "drop") {
                step.act = deid_step::action::drop;
            } else if (toks[2].text == "pseudonymize") {
                step.act = deid_step::action::pseudonymize;
            } else {
                fail(toks[2], "unknown deid action");
            }
            recipe.deid_steps.push_back(std::move(step));
        } else if (head.text == "anon") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                std::string key, value;
                if (!split_option(toks[i], key, value)) {
                    fail(toks[i], "expected key=value");
                }
                try {
                    if (key == "k") {
                        recipe.k = std::stoi(value);
                    } else if (key == "max_suppression") {
                        recipe.max_suppression_fraction = std::stod(value);
                    } else {
                        fail(toks[i], "unknown anon option");
                    }
                } catch (const parse_error&) {
                    throw;
                } catch (const std::exception&) {
                    fail(toks[i], "bad numeric value");
                }
            }
            if (recipe.k < 1 || recipe.max_suppression_fraction < 0.0 ||
                recipe.max_suppression_fraction > 1.0) {
                fail(head, "anon needs k>=1 and max_suppression in [0,1]");
            }
        } else {
            fail(head, "unknown schema directive");
        }
    }
    return {std::move(schema), std::move(recipe)};
}

std::vector<access_request> parse_trace(const std::string& text)
{
    std::vector<access_request> trace;
    std::uint64_t last_seq = 0;
    for (const auto& toks : tokenize(text)) {
        if (toks.size() != 4) {
            fail(toks[0], "trace line takes: seq subject object operation");
        }
        access_request req;
        try {
            req.sequence_no = std::stoull(toks[0].text);
        } catch (const std::exception&) {
            fail(toks[0], "sequence number must be an integer");
        }
        if (!trace.empty() && req.sequence_no <= last_seq) {
            fail(toks[0], "sequence numbers must be strictly increasing");
        }
        last_seq = req.sequence_no;
        req.subject = toks[1].text;
        req.object = toks[2].text;
        req.operation = toks[3].text;
        trace.push_back(std::move(req));
    }
    return trace;
}

std::string render_trace(const std::vector<access_request>& trace)
{
    std::ostringstream out;
    for (const auto& req : trace) {
        out << req.sequence_no << " " << req.subject << " " << req.object << " " << req.operation
            << "\n";
    }
    return out.str();
}

namespace {

std::string render_audit_walls(const std::optional<bit_vector>& left,
                               const std::optional<bit_vector>& right)
{
    if (!left || !right) {
        return "-";
    }
    return "{" + left->to_string() + "," + right->to_string() + "}";
}

}  // namespace

std::string format_audit_record(const audit_record& rec)
{
    const decision& d = rec.d;
    std::ostringstream out;
    out << "seq=" << d.request.sequence_no << " subject=" << d.request.subject
        << " object=" << d.request.object << " op=" << d.request.operation
        << " outcome=" << to_string(d.result) << " reason=" << to_string(d.reason)
        << " version=" << d.state_version
        << " pre_sw=" << render_audit_walls(d.pre_walls.subject_left, d.pre_walls.subject_right)
        << " pre_ow=" << render_audit_walls(d.pre_walls.object_left, d.pre_walls.object_right)
        << " post_sw=" << render_audit_walls(d.post_walls.subject_left, d.post_walls.subject_right)
        << " post_ow=" << render_audit_walls(d.post_walls.object_left, d.post_walls.object_right)
        << " ts=" << rec.timestamp;
    return out.str();
}

audit_record parse_audit_record(const std::string& line)
{
    audit_record rec;
    decision& d = rec.d;
    bool saw_ts = false;
    std::istringstream in(line);
    std::string tok;
    int fields = 0;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            throw parse_error(1, 1, "malformed audit field '" + tok + "'");
        }
        std::string key = tok.substr(0, eq);
        std::string value = tok.substr(eq + 1);
        ++fields;
        auto walls = [&](std::optional<bit_vector>& left, std::optional<bit_vector>& right) {
            if (value == "-") {
                return;
            }
            auto [l, r] = parse_wall_pair(value, 1);
            left = l;
            right = r;
        };
        if (key == "seq") {
            d.request.sequence_no = std::stoull(value);
        } else if (key == "subject") {
            d.request.subject = value;
        } else if (key == "object") {
            d.request.object = value;
        } else if (key == "op") {
            d.request.operation = value;
        } else if (key == "outcome") {
            if (value == "GRANTED") {
                d.result = outcome::granted;
            } else if (value == "DENIED") {
                d.result = outcome::denied;
            } else {
                throw parse_error(1, 1, "bad outcome '" + value + "'");
            }
        } else if (key == "reason") {
            if (value == "Ok") {
                d.reason = deny_reason::ok;
            } else if (value == "WallConflict") {
                d.reason = deny_reason::wall_conflict;
            } else if (value == "NoRight") {
                d.reason = deny_reason::no_right;
            } else if (value == "UnknownPrincipal") {
                d.reason = deny_reason::unknown_principal;
            } else {
                throw parse_error(1, 1, "bad reason '" + value + "'");
            }
        } else if (key == "version") {
            d.state_version = std::stoull(value);
        } else if (key == "pre_sw") {
            walls(d.pre_walls.subject_left, d.pre_walls.subject_right);
        } else if (key == "pre_ow") {
            walls(d.pre_walls.object_left, d.pre_walls.object_right);
        } else if (key == "post_sw") {
            walls(d.post_walls.subject_left, d.post_walls.subject_right);
        } else if (key == "post_ow") {
            walls(d.post_walls.object_left, d.post_walls.object_right);
        } else if (key == "ts") {
            rec.timestamp = value;
            saw_ts = true;
        } else {
            throw parse_error(1, 1, "unknown audit field '" + key + "'");
        }
    }
    if (fields < 12 || !saw_ts) {
        throw parse_error(1, 1, "incomplete audit record");
    }
    return rec;
}

audit_log::audit_log(const std::filesystem::path& path) : path_(path)
{
    out_.open(path, std::ios::app);
    if (!out_) {
        throw storage_failure("cannot open audit log " + path.string());
    }
}

void audit_log::append(const audit_record& rec)
{
    out_ << format_audit_record(rec) << "\n";
    out_.flush();
    if (!out_) {
        throw storage_failure("audit append failed for " + path_.string());
    }
    ++appended_;
}

audit_sink audit_log::sink()
{
    return [this](const audit_record& rec) { append(rec); };
}

audit_read_result read_audit_log(const std::filesystem::path& path)
{
    audit_read_result result;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw storage_failure("cannot open audit log " + path.string());
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t start = 0;
    while (start < content.size()) {
        auto nl = content.find('\n', start);
        if (nl == std::string::npos) {
            // Trailing bytes without a newline: a torn final record.
            result.truncated_tail = true;
            break;
        }
        std::string line = content.substr(start, nl - start);
        start = nl + 1;
        try {
            result.records.push_back(parse_audit_record(line));
        } catch (const parse_error&) {
            result.truncated_tail = true;
            break;
        }
    }
    return result;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw storage_failure("cannot read " + path.string());
    }
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw storage_failure("cannot write " + path.string());
    }
    out << text;
    out.flush();
    if (!out) {
        throw storage_failure("write failed for " + path.string());
    }
}

}  // namespace wallguard
