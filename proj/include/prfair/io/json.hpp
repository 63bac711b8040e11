#pragma once

#include "prfair/axioms.hpp"
#include "prfair/core.hpp"
#include "prfair/evaluation.hpp"
#include "prfair/io/csv.hpp"
#include "prfair/io/generators.hpp"
#include "prfair/prf_engine.hpp"

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace prfair::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

/// FNV-1a over the instance's mode, metric, k, sizes and the bit patterns of its coordinates
/// (or distance matrices). Printed as 16 hex digits.
inline std::string instance_digest(const Instance& inst) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto          mix  = [&hash](std::uint64_t word) {
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= (word >> (8 * byte)) & 0xffU;
            hash *= 0x100000001b3ULL;
        }
    };
    auto mix_points = [&](const std::vector<Point>& pts) {
        mix(pts.size());
        for (const auto& p : pts) {
            for (const double v : p.coords()) mix(std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v));
        }
    };
    mix(inst.is_unconstrained() ? 1 : 2);
    mix(static_cast<std::uint64_t>(inst.metric()));
    mix(inst.k());
    mix(inst.n());
    mix(inst.num_candidates());
    if (inst.has_coordinates()) {
        mix(inst.dimension());
        mix_points(inst.agents());
        if (!inst.is_unconstrained()) mix_points(inst.candidates());
    } else {
        for (const double v : inst.distances().values()) mix(std::bit_cast<std::uint64_t>(v));
        if (!inst.is_unconstrained() && inst.has_agent_distances()) {
            for (std::size_t a = 0; a < inst.n(); ++a) {
                for (std::size_t b = 0; b < inst.n(); ++b) mix(std::bit_cast<std::uint64_t>(inst.agent_distance(a, b)));
            }
        }
    }
    char text[17];
    std::snprintf(text, sizeof text, "%016llx", static_cast<unsigned long long>(hash));
    return text;
}

namespace detail {

inline json points_to_json(const std::vector<Point>& pts) {
    json out = json::array();
    for (const auto& p : pts) out.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
    return out;
}

inline std::vector<Point> points_from_json(const json& arr) {
    std::vector<Point> pts;
    for (const auto& row : arr) pts.emplace_back(row.get<std::vector<double>>());
    return pts;
}

inline json matrix_to_json(const DistanceMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        out.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return out;
}

inline DistanceMatrix matrix_from_json(const json& arr) {
    return DistanceMatrix::from_rows(arr.get<std::vector<std::vector<double>>>());
}

template <typename T>
json optional_to_json(const std::optional<T>& value) {
    return value ? json(*value) : json(nullptr);
}

}  // namespace detail

inline json instance_to_json(const Instance& inst) {
    json out;
    out["mode"]   = inst.is_unconstrained() ? "unconstrained" : "discrete";
    out["metric"] = std::string{to_string(inst.metric())};
    out["k"]      = inst.k();
    if (inst.has_coordinates()) {
        out["agents"] = detail::points_to_json(inst.agents());
        if (!inst.is_unconstrained()) out["candidates"] = detail::points_to_json(inst.candidates());
    } else {
        out["distances"] = detail::matrix_to_json(inst.distances());
        if (!inst.is_unconstrained() && inst.has_agent_distances()) {
            std::vector<double> values;
            for (std::size_t a = 0; a < inst.n(); ++a) {
                for (std::size_t b = 0; b < inst.n(); ++b) values.push_back(inst.agent_distance(a, b));
            }
            out["agent_distances"] = detail::matrix_to_json(DistanceMatrix{inst.n(), inst.n(), std::move(values)});
        }
    }
    return out;
}

inline Instance instance_from_json(const json& in) {
    const bool        unconstrained = in.at("mode").get<std::string>() == "unconstrained";
    const Metric      metric        = metric_from_string(in.at("metric").get<std::string>());
    const std::size_t k             = in.at("k").get<std::size_t>();
    if (metric != Metric::precomputed) {
        auto agents = detail::points_from_json(in.at("agents"));
        if (unconstrained) return Instance::unconstrained(std::move(agents), k, metric);
        return Instance::discrete(std::move(agents), detail::points_from_json(in.at("candidates")), k, metric);
    }
    auto distances = detail::matrix_from_json(in.at("distances"));
    if (unconstrained) return Instance::unconstrained_from_matrix(std::move(distances), k);
    std::optional<DistanceMatrix> agent_distances;
    if (in.contains("agent_distances")) agent_distances = detail::matrix_from_json(in.at("agent_distances"));
    return Instance::discrete_from_matrix(std::move(distances), k, std::move(agent_distances));
}

inline json trace_to_json(const SweepTrace& trace) {
    json out = json::array();
    for (const auto& round : trace.rounds) {
        json entry;
        entry["radius"]     = round.radius;
        entry["winner"]     = round.winner;
        entry["support"]    = to_string(round.support);
        entry["supporters"] = round.supporters;
        json before         = json::array();
        json after          = json::array();
        for (const auto& w : round.weight_before) before.push_back(to_string(w));
        for (const auto& w : round.weight_after) after.push_back(to_string(w));
        entry["weight_before"] = std::move(before);
        entry["weight_after"]  = std::move(after);
        out.push_back(std::move(entry));
    }
    return out;
}

inline SweepTrace trace_from_json(const json& in) {
    SweepTrace trace;
    for (const auto& entry : in) {
        SweepRound round;
        round.radius     = entry.at("radius").get<double>();
        round.winner     = entry.at("winner").get<std::size_t>();
        round.support    = parse_rational(entry.at("support").get<std::string>());
        round.supporters = entry.at("supporters").get<std::vector<std::size_t>>();
        for (const auto& w : entry.at("weight_before")) round.weight_before.push_back(parse_rational(w.get<std::string>()));
        for (const auto& w : entry.at("weight_after")) round.weight_after.push_back(parse_rational(w.get<std::string>()));
        trace.rounds.push_back(std::move(round));
    }
    return trace;
}

inline json report_to_json(const AxiomReport& report) {
    json out;
    out["axiom"]      = std::string{to_string(report.axiom)};
    out["satisfied"]  = report.satisfied;
    out["definitive"] = report.definitive;
    out["mode"]       = std::string{to_string(report.mode)};
    if (report.witness) {
        const Witness& w = *report.witness;
        out["witness"]   = json{{"agents", w.agents},
                                {"candidate", detail::optional_to_json(w.candidate)},
                                {"radius", detail::optional_to_json(w.radius)},
                                {"ell", w.ell},
                                {"required", w.required},
                                {"observed", w.observed},
                                {"improvement", w.improvement}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

inline CheckMode check_mode_from_string(const std::string& name) {
    for (const CheckMode mode : {CheckMode::automatic, CheckMode::exhaustive, CheckMode::exact, CheckMode::sampling}) {
        if (to_string(mode) == name) return mode;
    }
    throw InputError("unknown check mode '" + name + "'");
}

inline AxiomReport report_from_json(const json& in) {
    AxiomReport report;
    report.axiom      = axiom_from_string(in.at("axiom").get<std::string>());
    report.satisfied  = in.at("satisfied").get<bool>();
    report.definitive = in.at("definitive").get<bool>();
    report.mode       = check_mode_from_string(in.at("mode").get<std::string>());
    if (const auto& w = in.at("witness"); !w.is_null()) {
        Witness witness;
        witness.agents = w.at("agents").get<std::vector<std::size_t>>();
        if (!w.at("candidate").is_null()) witness.candidate = w.at("candidate").get<std::size_t>();
        if (!w.at("radius").is_null()) witness.radius = w.at("radius").get<double>();
        witness.ell         = w.at("ell").get<std::size_t>();
        witness.required    = w.at("required").get<std::size_t>();
        witness.observed    = w.at("observed").get<std::size_t>();
        witness.improvement = w.at("improvement").get<double>();
        report.witness      = std::move(witness);
    }
    return report;
}

/// Everything needed to re-verify a clustering run without re-running selection.
struct RunRecord {
    Instance                                     instance;
    std::string                                  algorithm;
    std::optional<std::uint64_t>                 seed{};
    Outcome                                      outcome{};
    std::optional<SweepTrace>                    trace{};
    bool                                         underfilled{false};
    std::size_t                                  padded{0};
    std::vector<AxiomReport>                     reports{};
    std::map<std::string, std::optional<double>> metrics{};
};

inline json run_record_to_json(const RunRecord& record) {
    json out;
    out["schema_version"]  = schema_version;
    out["instance_digest"] = instance_digest(record.instance);
    out["algorithm"]       = record.algorithm;
    out["k"]               = record.instance.k();
    out["seed"]            = detail::optional_to_json(record.seed);
    out["selected"]        = record.outcome.indices();
    if (record.instance.has_coordinates()) {
        std::vector<Point> chosen;
        for (const std::size_t c : record.outcome) chosen.push_back(record.instance.candidates()[c]);
        out["coordinates"] = detail::points_to_json(chosen);
    } else {
        out["coordinates"] = nullptr;
    }
    out["underfilled"] = record.underfilled;
    out["padded"]      = record.padded;
    out["trace"]       = record.trace ? trace_to_json(*record.trace) : json(nullptr);
    json reports       = json::array();
    for (const auto& r : record.reports) reports.push_back(report_to_json(r));
    out["reports"] = std::move(reports);
    json metrics   = json::object();
    for (const auto& [name, value] : record.metrics) metrics[name] = detail::optional_to_json(value);
    out["metrics"]  = std::move(metrics);
    out["instance"] = instance_to_json(record.instance);
    return out;
}

inline RunRecord run_record_from_json(const json& in) {
    if (!in.contains("schema_version") || in.at("schema_version").get<int>() != schema_version) {
        throw InputError("unsupported run record schema version");
    }
    Instance instance = instance_from_json(in.at("instance"));
    if (instance_digest(instance) != in.at("instance_digest").get<std::string>()) {
        throw InputError("run record instance digest does not match its instance");
    }
    RunRecord record{instance, in.at("algorithm").get<std::string>(), std::nullopt,
                     Outcome{in.at("selected").get<std::vector<std::size_t>>()}};
    if (!in.at("seed").is_null()) record.seed = in.at("seed").get<std::uint64_t>();
    if (!in.at("trace").is_null()) record.trace = trace_from_json(in.at("trace"));
    record.underfilled = in.value("underfilled", false);
    record.padded      = in.value("padded", std::size_t{0});
    for (const auto& r : in.at("reports")) record.reports.push_back(report_from_json(r));
    if (in.contains("metrics")) {
        for (const auto& [name, value] : in.at("metrics").items()) {
            record.metrics[name] = value.is_null() ? std::nullopt : std::optional<double>{value.get<double>()};
        }
    }
    return record;
}

inline void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out{path};
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------------------------
// Experiment grid and results
// ---------------------------------------------------------------------------------------------

/// Reads an experiment grid. Dataset entries either name a generator
/// ({"name", "generator", "params"}) or a CSV file ({"name", "path", "columns", "standardize",
/// "id_column"}); relative paths resolve against `base_dir`.
inline ExperimentGrid grid_from_json(const json& in, const std::filesystem::path& base_dir = {}) {
    ExperimentGrid grid;
    const Metric   metric = metric_from_string(in.value("metric", std::string{"euclidean"}));
    for (const auto& entry : in.at("datasets")) {
        const std::string name = entry.at("name").get<std::string>();
        if (entry.contains("generator")) {
            GeneratorParams params;
            if (entry.contains("params")) params = entry.at("params").get<GeneratorParams>();
            params["k"] = 1;
            grid.datasets.push_back(Dataset{name, generate(entry.at("generator").get<std::string>(), params)});
        } else {
            DatasetSpec spec;
            spec.path = entry.at("path").get<std::string>();
            if (spec.path.is_relative() && !base_dir.empty()) spec.path = base_dir / spec.path;
            if (!std::filesystem::exists(spec.path)) {
                throw InputError("dataset file not found: " + spec.path.string());
            }
            if (entry.contains("columns")) {
                for (const auto& col : entry.at("columns")) {
                    spec.columns.push_back(col.is_number() ? std::to_string(col.get<std::size_t>())
                                                           : col.get<std::string>());
                }
            }
            spec.standardize = entry.value("standardize", false);
            if (entry.contains("id_column")) spec.id_column = entry.at("id_column").get<std::string>();
            grid.datasets.push_back(Dataset{name, load_csv(spec, 1, metric)});
        }
    }
    if (in.contains("algorithms")) {
        grid.algorithms.clear();
        for (const auto& a : in.at("algorithms")) grid.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
    }
    if (in.contains("metrics")) {
        grid.metrics.clear();
        for (const auto& m : in.at("metrics")) grid.metrics.push_back(msd_metric_from_string(m.get<std::string>()));
    }
    grid.k_min      = in.value("k_min", grid.k_min);
    grid.k_max      = in.value("k_max", grid.k_max);
    grid.pad_greedy = in.value("pad_greedy", grid.pad_greedy);
    grid.squared    = in.value("squared", grid.squared);
    if (in.contains("seeds")) grid.seeds = in.at("seeds").get<std::vector<std::uint64_t>>();
    return grid;
}

inline void write_results_csv(std::ostream& out, const ResultTable& table) {
    out << "dataset,algorithm,k,seed,metric,value\n";
    for (const auto& row : table.rows) {
        out << row.dataset << ',' << to_string(row.algorithm) << ',' << row.k << ',' << row.seed << ','
            << to_string(row.metric) << ',' << (row.value ? format_double(*row.value) : std::string{"NA"}) << '\n';
    }
}

inline void write_summary_csv(std::ostream& out, const ResultTable& table) {
    out << "dataset,algorithm,metric,mean,count,percent_vs_kmeanspp\n";
    for (const auto& s : table.summarize()) {
        out << s.dataset << ',' << to_string(s.algorithm) << ',' << to_string(s.metric) << ','
            << format_double(s.mean) << ',' << s.count << ','
            << (s.percent_vs_kmeanspp ? format_double(*s.percent_vs_kmeanspp) : std::string{"NA"}) << '\n';
    }
}

inline json results_to_json(const ResultTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back(json{{"dataset", row.dataset},
                            {"algorithm", std::string{to_string(row.algorithm)}},
                            {"k", row.k},
                            {"seed", row.seed},
                            {"metric", std::string{to_string(row.metric)}},
                            {"value", detail::optional_to_json(row.value)}});
    }
    json summary = json::array();
    for (const auto& s : table.summarize()) {
        summary.push_back(json{{"dataset", s.dataset},
                               {"algorithm", std::string{to_string(s.algorithm)}},
                               {"metric", std::string{to_string(s.metric)}},
                               {"mean", s.mean},
                               {"count", s.count},
                               {"percent_vs_kmeanspp", detail::optional_to_json(s.percent_vs_kmeanspp)}});
    }
    return json{{"schema_version", schema_version}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

}  // namespace prfair::io
