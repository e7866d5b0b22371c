// Copyright 2026 The Everett Authors
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

#include "everett/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "everett/branching.hpp"
#include "everett/error.hpp"
#include "everett/hilbert.hpp"
#include "everett/schmidt.hpp"
#include "everett/text.hpp"

namespace everett {

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Dispatch

std::vector<LedgerRow> ledger_rows(const EntropyLedger &ledger) {
    std::vector<LedgerRow> rows;
    rows.reserve(ledger.records.size());
    for (const auto &rec : ledger.records) {
        double sum = 0.0;
        for (double s : rec.branch_entropies) sum += s;
        rows.push_back({rec.step, rec.total_entropy, sum, rec.branch_entropies.size()});
    }
    return rows;
}

Reprepare parse_reprepare(const std::string &s) {
    if (s == "haar") return Reprepare::Haar;
    if (s == "none") return Reprepare::None;
    return Reprepare::Initial;
}

ResultPayload dispatch(const ExperimentConfig &cfg) {
    const RunOptions run{cfg.threads};
    const auto as_size = [&](const char *key) { return static_cast<std::size_t>(cfg.integer(key)); };
    switch (cfg.experiment) {
    case Experiment::Schmidt: {
        const auto [a, b] = parse_split(cfg.text("split"));
        if (a * b > kMaxDimension) {
            throw Error(ErrorKind::ResourceCap, "dimension cap: split " + cfg.text("split") + " exceeds " +
                                                    std::to_string(kMaxDimension));
        }
        const StateVector raw = haar_random_state(a * b, cfg.seed);
        const StateVector psi = make_state(raw.amplitudes(), {a, b});
        const BipartiteSplit split{a, b};
        const SchmidtDecomposition dec = schmidt_decompose(psi, split);
        return SchmidtReport{
            .dim_i = a,
            .dim_ii = b,
            .seed = cfg.seed,
            .rank = schmidt_rank(dec),
            .entanglement_entropy = entanglement_entropy(dec),
            .spectra_gap = spectra_gap(psi, split),
            .reconstruction_error = distance_up_to_phase(reconstruct(dec), psi),
            .lambdas = dec.lambdas,
        };
    }
    case Experiment::Branch: {
        const BranchTree tree =
            run_branching_protocol(as_size("dim"), as_size("devices"), cfg.seed, as_size("max-leaves"));
        return BranchReport{
            .object_dim = as_size("dim"),
            .devices = as_size("devices"),
            .seed = cfg.seed,
            .final_leaf_count = tree.leaves().size(),
            .final_total_entropy = total_entropy(tree),
            .ledger = ledger_rows(tree.ledger()),
        };
    }
    case Experiment::Chain: {
        const std::size_t dim = as_size("dim");
        std::vector<Complex> amps = cfg.text("amplitudes").empty() ? std::vector<Complex>(dim, Complex(1.0))
                                                                   : parse_amplitudes(cfg.text("amplitudes"));
        const ChainOptions options{parse_reprepare(cfg.text("reprepare")), as_size("max-leaves")};
        const ChainOutcome chain = run_chain_protocol(dim, as_size("devices"), amps, cfg.seed, options);
        return ChainReport{
            .object_dim = dim,
            .devices = as_size("devices"),
            .seed = cfg.seed,
            .reprepare = cfg.text("reprepare"),
            .final_total_entropy = total_entropy(chain.tree),
            .followed_weight = chain.tree.node(chain.followed.back()).cumulative_weight,
            .ledger = ledger_rows(chain.ledger),
        };
    }
    case Experiment::Overlap:
        return overlap_statistics(as_size("dim"), static_cast<std::uint64_t>(cfg.integer("trials")), cfg.seed, run);
    case Experiment::Zeno:
        return polarizer_chain(as_size("k"));
    case Experiment::ZenoRandom:
        return random_projection_chain(as_size("dim"), as_size("k"), static_cast<std::uint64_t>(cfg.integer("trials")),
                                       cfg.seed, run);
    case Experiment::Worlds:
        return world_count({cfg.real("universe-age-s"), cfg.real("planck-time-s"),
                            cfg.text("model") == "exponential" ? GrowthModel::Exponential : GrowthModel::Linear});
    case Experiment::Evolve: {
        const WalkMode mode = cfg.text("mode") == "full-branching" ? WalkMode::FullBranching : WalkMode::SingleHistory;
        return evolution_walk(as_size("depth"), mode, static_cast<std::uint64_t>(cfg.integer("trials")), cfg.seed,
                              run);
    }
    }
    throw Error(ErrorKind::Internal, "unhandled experiment");
}

// ---------------------------------------------------------------------------
// Payload <-> JSON

json to_json_value(const LedgerRow &r) {
    return {{"step", r.step},
            {"total_entropy", r.total_entropy},
            {"branch_entropy_sum", r.branch_entropy_sum},
            {"leaf_count", r.leaf_count}};
}

LedgerRow ledger_row_from(const json &j) {
    return {j.at("step").get<std::uint64_t>(), j.at("total_entropy").get<double>(),
            j.at("branch_entropy_sum").get<double>(), j.at("leaf_count").get<std::uint64_t>()};
}

json ledger_json(const std::vector<LedgerRow> &rows) {
    json arr = json::array();
    for (const auto &r : rows) arr.push_back(to_json_value(r));
    return arr;
}

std::vector<LedgerRow> ledger_from(const json &arr) {
    std::vector<LedgerRow> rows;
    for (const auto &j : arr) rows.push_back(ledger_row_from(j));
    return rows;
}

struct PayloadToJson {
    json operator()(const SchmidtReport &r) const {
        return {{"dim_i", r.dim_i},
                {"dim_ii", r.dim_ii},
                {"seed", r.seed},
                {"rank", r.rank},
                {"entanglement_entropy", r.entanglement_entropy},
                {"spectra_gap", r.spectra_gap},
                {"reconstruction_error", r.reconstruction_error},
                {"lambdas", r.lambdas}};
    }
    json operator()(const BranchReport &r) const {
        return {{"object_dim", r.object_dim}, {"devices", r.devices},
                {"seed", r.seed},             {"final_leaf_count", r.final_leaf_count},
                {"final_total_entropy", r.final_total_entropy}, {"ledger", ledger_json(r.ledger)}};
    }
    json operator()(const ChainReport &r) const {
        return {{"object_dim", r.object_dim},
                {"devices", r.devices},
                {"seed", r.seed},
                {"reprepare", r.reprepare},
                {"final_total_entropy", r.final_total_entropy},
                {"followed_weight", r.followed_weight},
                {"ledger", ledger_json(r.ledger)}};
    }
    json operator()(const OverlapReport &r) const {
        return {{"hilbert_dim", r.hilbert_dim},
                {"trials", r.trials},
                {"mean_overlap_sq", r.mean_overlap_sq},
                {"std_error", r.std_error},
                {"seed", r.seed}};
    }
    json operator()(const ZenoReport &r) const {
        if (r.mode == ZenoMode::DeterministicPolarizer) {
            return {{"k", r.n_intermediate}, {"probability", r.transmission_probability}};
        }
        return {{"dim", r.hilbert_dim},     {"k", r.n_intermediate},
                {"probability", r.transmission_probability},
                {"seed", r.seed},           {"std_error", r.std_error},
                {"trials", r.trials}};
    }
    json operator()(const WorldCountReport &r) const {
        json j = {{"model", std::string(to_string(r.growth_model))},
                  {"universe_age_s", r.universe_age_s},
                  {"planck_time_s", r.planck_time_s},
                  {"log10_ratio", r.log10_ratio}};
        if (r.log10_worlds) j["log10_worlds"] = *r.log10_worlds;
        if (r.log10_log10_worlds) j["log10_log10_worlds"] = *r.log10_log10_worlds;
        return j;
    }
    json operator()(const ComplexityReport &r) const {
        return {{"depth", r.depth},
                {"mode", std::string(to_string(r.mode))},
                {"trials", r.trials},
                {"seed", r.seed},
                {"max_complexity", r.max_complexity},
                {"mean_final_complexity", r.mean_final_complexity},
                {"std_error", r.std_error},
                {"branch_count", r.branch_count}};
    }
};

ResultPayload payload_from_json(Experiment e, const json &j) {
    switch (e) {
    case Experiment::Schmidt:
        return SchmidtReport{
            .dim_i = j.at("dim_i").get<std::size_t>(),
            .dim_ii = j.at("dim_ii").get<std::size_t>(),
            .seed = j.at("seed").get<std::uint64_t>(),
            .rank = j.at("rank").get<std::size_t>(),
            .entanglement_entropy = j.at("entanglement_entropy").get<double>(),
            .spectra_gap = j.at("spectra_gap").get<double>(),
            .reconstruction_error = j.at("reconstruction_error").get<double>(),
            .lambdas = j.at("lambdas").get<std::vector<double>>(),
        };
    case Experiment::Branch:
        return BranchReport{
            .object_dim = j.at("object_dim").get<std::size_t>(),
            .devices = j.at("devices").get<std::size_t>(),
            .seed = j.at("seed").get<std::uint64_t>(),
            .final_leaf_count = j.at("final_leaf_count").get<std::uint64_t>(),
            .final_total_entropy = j.at("final_total_entropy").get<double>(),
            .ledger = ledger_from(j.at("ledger")),
        };
    case Experiment::Chain:
        return ChainReport{
            .object_dim = j.at("object_dim").get<std::size_t>(),
            .devices = j.at("devices").get<std::size_t>(),
            .seed = j.at("seed").get<std::uint64_t>(),
            .reprepare = j.at("reprepare").get<std::string>(),
            .final_total_entropy = j.at("final_total_entropy").get<double>(),
            .followed_weight = j.at("followed_weight").get<double>(),
            .ledger = ledger_from(j.at("ledger")),
        };
    case Experiment::Overlap:
        return OverlapReport{j.at("hilbert_dim").get<std::size_t>(), j.at("trials").get<std::uint64_t>(),
                             j.at("mean_overlap_sq").get<double>(), j.at("std_error").get<double>(),
                             j.at("seed").get<std::uint64_t>()};
    case Experiment::Zeno: {
        ZenoReport r;
        r.mode = ZenoMode::DeterministicPolarizer;
        r.n_intermediate = j.at("k").get<std::size_t>();
        r.transmission_probability = j.at("probability").get<double>();
        return r;
    }
    case Experiment::ZenoRandom: {
        ZenoReport r;
        r.mode = ZenoMode::RandomProjection;
        r.n_intermediate = j.at("k").get<std::size_t>();
        r.transmission_probability = j.at("probability").get<double>();
        r.hilbert_dim = j.at("dim").get<std::size_t>();
        r.trials = j.at("trials").get<std::uint64_t>();
        r.std_error = j.at("std_error").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        return r;
    }
    case Experiment::Worlds: {
        WorldCountReport r;
        r.growth_model = j.at("model").get<std::string>() == "exponential" ? GrowthModel::Exponential
                                                                           : GrowthModel::Linear;
        r.universe_age_s = j.at("universe_age_s").get<double>();
        r.planck_time_s = j.at("planck_time_s").get<double>();
        r.log10_ratio = j.at("log10_ratio").get<double>();
        if (j.contains("log10_worlds")) r.log10_worlds = j.at("log10_worlds").get<double>();
        if (j.contains("log10_log10_worlds")) r.log10_log10_worlds = j.at("log10_log10_worlds").get<double>();
        return r;
    }
    case Experiment::Evolve: {
        ComplexityReport r;
        r.depth = j.at("depth").get<std::size_t>();
        r.mode = j.at("mode").get<std::string>() == "full-branching" ? WalkMode::FullBranching
                                                                      : WalkMode::SingleHistory;
        r.trials = j.at("trials").get<std::uint64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.max_complexity = j.at("max_complexity").get<std::int64_t>();
        r.mean_final_complexity = j.at("mean_final_complexity").get<double>();
        r.std_error = j.at("std_error").get<double>();
        r.branch_count = j.at("branch_count").get<std::uint64_t>();
        return r;
    }
    }
    throw Error(ErrorKind::Internal, "unhandled experiment");
}

json param_json(const ParamValue &v) {
    return std::visit([](const auto &x) { return json(x); }, v);
}

json config_json(const ExperimentConfig &cfg) {
    json params = json::object();
    for (const auto &[k, v] : cfg.parameters) params[k] = param_json(v);
    return {{"experiment", std::string(to_string(cfg.experiment))},
            {"format", std::string(to_string(cfg.output_format))},
            {"parameters", params},
            {"seed", cfg.seed}};
}

// ---------------------------------------------------------------------------
// Byte-stable text output

void dump(const json &j, std::string &out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case json::value_t::null: out += "null"; return;
    case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v) : "null";
        return;
    }
    case json::value_t::string: out += j.dump(); return;
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            dump(j[i], out, depth + 1);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close_pad + "]";
        return;
    }
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto &[k, v] : j.items()) {
            out += pad + json(k).dump() + ": ";
            dump(v, out, depth + 1);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += close_pad + "}";
        return;
    }
    default: throw Error(ErrorKind::Internal, "unsupported JSON value");
    }
}

std::string csv_cell(const json &v) {
    switch (v.type()) {
    case json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case json::value_t::number_float: return format_double(v.get<double>());
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::string: {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }
    default: throw Error(ErrorKind::Internal, "unsupported CSV value");
    }
}

// The one array a payload may carry, and whether its elements are scalars.
struct TableShape {
    std::string key;
    bool scalar_rows = false;
};

std::optional<TableShape> table_shape(Experiment e) {
    switch (e) {
    case Experiment::Schmidt: return TableShape{"lambdas", true};
    case Experiment::Branch:
    case Experiment::Chain: return TableShape{"ledger", false};
    default: return std::nullopt;
    }
}

std::string to_csv(Experiment e, const json &payload) {
    const auto shape = table_shape(e);
    std::vector<std::string> scalar_keys;
    for (const auto &[k, v] : payload.items()) {
        if (!shape || k != shape->key) scalar_keys.push_back(k);
    }
    std::vector<std::string> row_keys;
    std::vector<json> rows;
    if (shape) {
        const json &arr = payload.at(shape->key);
        if (shape->scalar_rows) {
            row_keys.push_back(shape->key);
            for (const auto &v : arr) rows.push_back(json{{shape->key, v}});
        } else {
            if (!arr.empty()) {
                for (const auto &[k, v] : arr.front().items()) row_keys.push_back(k);
            }
            for (const auto &v : arr) rows.push_back(v);
        }
    } else {
        rows.push_back(json::object());
    }

    std::string out;
    std::vector<std::string> header = scalar_keys;
    header.insert(header.end(), row_keys.begin(), row_keys.end());
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto &row : rows) {
        std::string line;
        for (std::size_t i = 0; i < scalar_keys.size(); ++i) {
            line += (i ? "," : "") + csv_cell(payload.at(scalar_keys[i]));
        }
        for (std::size_t i = 0; i < row_keys.size(); ++i) {
            line += (scalar_keys.empty() && i == 0 ? "" : ",") + csv_cell(row.at(row_keys[i]));
        }
        out += line + "\n";
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

json csv_value(const std::string &cell) {
    std::int64_t i = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), i);
    if (!cell.empty() && ec == std::errc{} && ptr == cell.data() + cell.size()) return i;
    try {
        return parse_double(cell);
    } catch (const Error &) {
        return cell;
    }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig &config) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report{config, std::string(kToolVersion), dispatch(config), 0.0};
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string emit_report(const ExperimentReport &report, OutputFormat format) {
    const json payload = std::visit(PayloadToJson{}, report.result);
    if (format == OutputFormat::Csv) {
        return to_csv(report.config.experiment, payload);
    }
    const json doc = {{"config", config_json(report.config)}, {"result", payload}, {"version", report.version}};
    std::string out;
    dump(doc, out, 0);
    out += "\n";
    return out;
}

ExperimentReport parse_report_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::InvalidArgument, std::string("report is not valid JSON: ") + e.what());
    }
    try {
        const json &c = doc.at("config");
        const auto experiment = parse_experiment(c.at("experiment").get<std::string>());
        if (!experiment) throw Error(ErrorKind::InvalidArgument, "report names an unknown experiment");
        ExperimentReport report{{}, doc.at("version").get<std::string>(), payload_from_json(*experiment, doc.at("result")),
                                0.0};
        report.config.experiment = *experiment;
        report.config.output_format = c.at("format").get<std::string>() == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        report.config.seed = c.at("seed").get<std::uint64_t>();
        for (const auto &[k, v] : c.at("parameters").items()) {
            ParamValue raw;
            if (v.is_string()) {
                raw = v.get<std::string>();
            } else if (v.is_number_float()) {
                raw = v.get<double>();
            } else {
                raw = v.get<std::int64_t>();
            }
            report.config.parameters[k] = canonical_param(*experiment, k, raw);
        }
        return report;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed report: ") + e.what());
    }
}

ResultPayload parse_result_csv(Experiment experiment, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::InvalidArgument, "empty CSV");
    const std::vector<std::string> header = split_csv_line(line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
        if (rows.back().size() != header.size()) {
            throw Error(ErrorKind::InvalidArgument, "CSV row width does not match header");
        }
    }
    if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "CSV has no data rows");

    const auto shape = table_shape(experiment);
    std::vector<std::string> row_keys;
    if (shape) {
        if (shape->scalar_rows) {
            row_keys = {shape->key};
        } else {
            row_keys = {"branch_entropy_sum", "leaf_count", "step", "total_entropy"};
        }
    }
    const auto is_row_key = [&](const std::string &k) {
        return std::find(row_keys.begin(), row_keys.end(), k) != row_keys.end();
    };

    json payload = json::object();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (!is_row_key(header[c])) payload[header[c]] = csv_value(rows.front()[c]);
    }
    if (shape) {
        json arr = json::array();
        for (const auto &row : rows) {
            json item = json::object();
            for (std::size_t c = 0; c < header.size(); ++c) {
                if (is_row_key(header[c])) item[header[c]] = csv_value(row[c]);
            }
            arr.push_back(shape->scalar_rows ? item.at(shape->key) : item);
        }
        payload[shape->key] = arr;
    }
    try {
        return payload_from_json(experiment, payload);
    } catch (const json::exception &e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed CSV report: ") + e.what());
    }
}

void check_output_path(const std::string &path) {
    if (path == "-") return;
    const std::filesystem::path p(path);
    const std::filesystem::path dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorKind::Io, "output directory '" + dir.string() + "' does not exist");
    }
}

void write_report(const std::string &bytes, const std::string &path, std::ostream &out) {
    if (path == "-") {
        out << bytes;
        out.flush();
        if (!out) throw Error(ErrorKind::Io, "cannot write report to stdout");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    file.close();
    if (!file) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace everett
