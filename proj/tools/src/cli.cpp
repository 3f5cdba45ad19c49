// Copyright 2026 The locoh Authors
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

#include "locoh_cli/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace locoh::cli {

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Json parse_scalar(ParamKind kind, const std::string &name, const std::string &text) {
    const auto bad = [&]() -> Json {
        fail(ErrorKind::kInvalidArgument, "cannot parse '" + text + "' for --" + name);
    };
    const char *b = text.data();
    const char *e = b + text.size();
    switch (kind) {
        case ParamKind::kInt:
        case ParamKind::kIntList: {
            long long v = 0;
            auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e) return bad();
            return v;
        }
        case ParamKind::kDouble:
        case ParamKind::kDoubleList: {
            double v = 0;
            auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e) return bad();
            return v;
        }
        case ParamKind::kBool:
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            return bad();
        case ParamKind::kString: return text;
        case ParamKind::kJson: {
            if (!text.empty() && (text.front() == '[' || text.front() == '{')) {
                try {
                    return Json::parse(text);
                } catch (const Json::exception &) {
                    return bad();
                }
            }
            return text;
        }
    }
    return bad();
}

Json parse_flag(const ParamDef &def, const std::string &text) {
    if (def.kind == ParamKind::kIntList || def.kind == ParamKind::kDoubleList) {
        Json arr = Json::array();
        if (text.empty()) return arr;
        for (const auto &part : split(text, ',')) arr.push_back(parse_scalar(def.kind, def.name, part));
        return arr;
    }
    return parse_scalar(def.kind, def.name, text);
}

// Options shared by every experiment, mirrored by config keys.
struct Common {
    std::string config;
    std::optional<int> threads;
    std::string output;
    std::string format;
    std::vector<std::string> ranges;
};

struct Command {
    CLI::App *app = nullptr;
    std::string experiment;
    bool sweep = false;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    Common common;
};

void add_options(Command &cmd) {
    for (const auto &def : experiment_params(cmd.experiment)) {
        if (def.kind == ParamKind::kBool) {
            cmd.app->add_flag("--" + def.name, cmd.flags[def.name], def.help);
        } else {
            cmd.app->add_option("--" + def.name, cmd.values[def.name], def.help);
        }
    }
    cmd.app->add_option("--config", cmd.common.config, "JSON config; flags override its keys");
    cmd.app->add_option("--threads", cmd.common.threads, "worker threads (results do not depend on it)");
    cmd.app->add_option("--output", cmd.common.output, "output path (default: stdout)");
    cmd.app->add_option("--format", cmd.common.format, "json | csv");
    if (cmd.sweep)
        cmd.app->add_option("--range", cmd.common.ranges, "key=v1,v2,... (exactly one ranged key)");
}

Json load_config(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::kInvalidArgument, "cannot open config " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception &e) {
        fail(ErrorKind::kInvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    require(j.is_object(), ErrorKind::kInvalidArgument, "config must be a JSON object");
    return j;
}

std::string format_number(const Json &v) {
    if (v.is_number_float()) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        return std::string(buf, ptr);
    }
    return v.dump();
}

std::string csv_cell(const Json &v) {
    if (v.is_null()) return "";
    if (v.is_number()) return format_number(v);
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

using CsvRow = std::vector<std::pair<std::string, Json>>;

void add_cell(CsvRow &row, const std::string &key, const Json &v) {
    for (const auto &[k, old] : row)
        if (k == key) return;
    row.emplace_back(key, v);
}

// Scalar fields of `obj` appended to `base`; each entry of a "rows" array
// becomes its own line.
void flatten(const Json &obj, const CsvRow &base, std::vector<CsvRow> &out) {
    CsvRow row = base;
    for (const auto &[k, v] : obj.items())
        if (v.is_primitive() && !v.is_null()) add_cell(row, k, v);
    if (obj.contains("rows") && obj["rows"].is_array() && !obj["rows"].empty()) {
        for (const auto &r : obj["rows"]) flatten(r, row, out);
    } else {
        out.push_back(std::move(row));
    }
}

}  // namespace

std::string record_to_csv(const Json &record) {
    const Json &payload = record.at("payload");
    std::vector<CsvRow> rows;
    if (payload.contains("parameter") && payload.contains("rows")) {
        const std::string param = payload["parameter"].get<std::string>();
        for (const auto &r : payload["rows"]) flatten(r.at("payload"), CsvRow{{param, r.at("value")}}, rows);
    } else {
        flatten(payload, {}, rows);
    }
    if (rows.empty()) return "";
    // Leading columns: swept parameter, then the spreading table layout.
    std::vector<std::string> header;
    auto add_column = [&](const std::string &k) {
        if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    };
    if (payload.contains("parameter")) add_column(payload["parameter"].get<std::string>());
    for (const char *k : {"l", "t", "delta_ctr", "delta_cb", "delta_cave"})
        for (const auto &row : rows)
            if (std::any_of(row.begin(), row.end(), [&](const auto &c) { return c.first == k; })) {
                add_column(k);
                break;
            }
    for (const auto &row : rows)
        for (const auto &[k, v] : row) add_column(k);

    std::ostringstream os;
    for (size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
    os << "\n";
    for (const auto &row : rows) {
        for (size_t c = 0; c < header.size(); ++c) {
            Json cell;
            for (const auto &[k, v] : row)
                if (k == header[c]) {
                    cell = v;
                    break;
                }
            os << (c ? "," : "") << csv_cell(cell);
        }
        os << "\n";
    }
    return os.str();
}

void write_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    const fs::path tmp = dir / (".tmp." + target.filename().string() + "." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), ErrorKind::kInvalidArgument, "cannot write " + tmp.string());
        out << content;
        out.flush();
        require(out.good(), ErrorKind::kInvalidArgument, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        fail(ErrorKind::kInvalidArgument, "cannot move output into " + path + ": " + ec.message());
    }
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Localizable coherence experiments", "locoh"};
    app.require_subcommand(1);
    app.set_version_flag("--version", LOCOH_VERSION);
    std::vector<std::unique_ptr<Command>> commands;
    CLI::App *sweep = app.add_subcommand("sweep", "run an experiment over one ranged parameter");
    sweep->set_help_flag("--help", "print this help");
    sweep->require_subcommand(1);
    for (const auto &name : experiment_names()) {
        for (bool is_sweep : {false, true}) {
            auto cmd = std::make_unique<Command>();
            cmd->experiment = name;
            cmd->sweep = is_sweep;
            cmd->app = (is_sweep ? sweep : &app)->add_subcommand(name, "run the " + name + " experiment");
            cmd->app->set_help_flag("--help", "print this help");
            add_options(*cmd);
            commands.push_back(std::move(cmd));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "locoh: " << e.what() << "\n";
        return kExitInvalid;
    }

    Command *cmd = nullptr;
    for (auto &c : commands)
        if (c->app->parsed()) cmd = c.get();
    if (cmd == nullptr) {
        err << "locoh: no experiment given\n";
        return kExitInvalid;
    }

    try {
        Json params = Json::object();
        int threads = 1;
        std::string output, format = "json";
        if (!cmd->common.config.empty()) {
            Json file = load_config(cmd->common.config);
            if (file.contains("experiment")) {
                require(file["experiment"] == cmd->experiment, ErrorKind::kInvalidArgument,
                        "config is for experiment " + file["experiment"].dump());
                file.erase("experiment");
            }
            if (file.contains("threads")) threads = file["threads"].get<int>(), file.erase("threads");
            if (file.contains("output")) output = file["output"].get<std::string>(), file.erase("output");
            if (file.contains("format")) format = file["format"].get<std::string>(), file.erase("format");
            params = std::move(file);
        }
        for (const auto &def : experiment_params(cmd->experiment)) {
            if (def.kind == ParamKind::kBool) {
                if (cmd->app->count("--" + def.name) > 0) params[def.name] = true;
            } else if (cmd->app->count("--" + def.name) > 0) {
                params[def.name] = parse_flag(def, cmd->values[def.name]);
            }
        }
        if (cmd->common.threads) threads = *cmd->common.threads;
        if (!cmd->common.output.empty()) output = cmd->common.output;
        if (!cmd->common.format.empty()) format = cmd->common.format;
        require(format == "json" || format == "csv", ErrorKind::kInvalidArgument,
                "format must be json or csv");
        require(threads >= 1, ErrorKind::kInvalidArgument, "threads must be at least 1");

        Json record;
        if (cmd->sweep) {
            for (const auto &spec : cmd->common.ranges) {
                const auto eq = spec.find('=');
                require(eq != std::string::npos, ErrorKind::kInvalidArgument,
                        "--range expects key=v1,v2,...");
                const std::string key = spec.substr(0, eq);
                const auto &defs = experiment_params(cmd->experiment);
                const auto it = std::find_if(defs.begin(), defs.end(),
                                             [&](const ParamDef &d) { return d.name == key; });
                require(it != defs.end(), ErrorKind::kInvalidArgument,
                        "unknown parameter '" + key + "'");
                require(!(params.contains(key) && params[key].is_object() &&
                          params[key].contains("range")),
                        ErrorKind::kInvalidArgument, "parameter '" + key + "' ranged twice");
                Json values = Json::array();
                const std::string list = spec.substr(eq + 1);
                if (!list.empty())
                    for (const auto &part : split(list, ','))
                        values.push_back(parse_scalar(it->kind, key, part));
                params[key] = {{"range", values}};
            }
            record = run_sweep(cmd->experiment, params, threads);
        } else {
            const Json resolved = resolve_params(cmd->experiment, params);
            Json payload = run_experiment(cmd->experiment, resolved, threads);
            record = make_record(cmd->experiment, resolved, threads, std::move(payload));
        }
        const std::string text = format == "csv" ? record_to_csv(record) : record.dump(2) + "\n";
        if (output.empty())
            out << text;
        else
            write_atomic(output, text);
        return kExitOk;
    } catch (const Error &e) {
        err << "locoh: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const Json::exception &e) {
        err << "locoh: invalid JSON value: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception &e) {
        err << "locoh: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace locoh::cli
