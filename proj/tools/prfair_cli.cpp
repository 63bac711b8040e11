// prfair: command-line front end for proportionally representative clustering.
//
//   prfair gen        --name two_mass --params a=100,b=10 --out inst.csv
//   prfair cluster    --algo prf --input inst.csv --k 11 --out run.json
//   prfair check      --axioms up,pf,core,prf --run run.json [--exhaustive]
//   prfair eval       --run run.json --metrics msd1,msdhalfk,msdk
//   prfair experiment --grid grid.json --out results.csv
//
// Exit codes: 0 success, 1 input error, 2 axiom violation found (check).

#include "prfair/io/csv.hpp"
#include "prfair/io/generators.hpp"
#include "prfair/io/json.hpp"
#include "prfair/prfair.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace prfair;
using prfair::io::json;

constexpr int exit_ok        = 0;
constexpr int exit_input     = 1;
constexpr int exit_violation = 2;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::size_t              start = 0;
    while (start <= text.size()) {
        const auto end  = std::min(text.find(',', start), text.size());
        auto       item = text.substr(start, end - start);
        if (!item.empty()) items.push_back(item);
        start = end + 1;
    }
    return items;
}

struct GenOptions {
    std::string name;
    std::string params;
    std::string out;
    std::string candidates_out;
};

int run_gen(const GenOptions& opt) {
    const Instance inst = io::generate(opt.name, io::parse_params(opt.params));
    io::write_points_file(opt.out, inst.agents());
    json summary{{"name", opt.name},
                 {"agents", inst.n()},
                 {"candidates", inst.num_candidates()},
                 {"mode", inst.is_unconstrained() ? "unconstrained" : "discrete"},
                 {"default_k", inst.k()},
                 {"out", opt.out}};
    if (!inst.is_unconstrained()) {
        std::filesystem::path cands = opt.candidates_out;
        if (cands.empty()) {
            cands = std::filesystem::path{opt.out};
            cands.replace_extension(".candidates.csv");
        }
        io::write_points_file(cands, inst.candidates());
        summary["candidates_out"] = cands.string();
    }
    std::cout << summary.dump() << '\n';
    return exit_ok;
}

struct ClusterOptions {
    std::string              algo;
    std::string              input;
    std::string              candidates;
    std::size_t              k{0};
    std::uint64_t            seed{1};
    std::string              metric{"euclidean"};
    std::vector<std::string> columns;
    std::string              id_column;
    bool                     standardize{false};
    bool                     pad{false};
    std::string              axioms;
    std::string              out;
};

std::vector<Axiom> resolve_axioms(const std::string& list, const Instance& inst) {
    std::vector<Axiom> axioms;
    for (const auto& name : split_list(list)) {
        if (name == "prf") {
            axioms.push_back(inst.is_unconstrained() ? Axiom::prf_unconstrained : Axiom::prf_discrete);
        } else {
            axioms.push_back(axiom_from_string(name));
        }
    }
    return axioms;
}

std::map<std::string, std::optional<double>> standard_metrics(const Instance& inst, const Outcome& outcome,
                                                              const std::vector<MsdMetric>& metrics, bool squared) {
    std::map<std::string, std::optional<double>> values;
    for (const MsdMetric m : metrics) values[std::string{to_string(m)}] = evaluate_metric(inst, outcome, m, squared);
    return values;
}

int run_cluster(const ClusterOptions& opt) {
    io::DatasetSpec spec;
    spec.path        = opt.input;
    spec.columns     = opt.columns;
    spec.standardize = opt.standardize;
    if (!opt.id_column.empty()) spec.id_column = opt.id_column;
    const Metric metric = metric_from_string(opt.metric);
    auto         agents = io::load_points(spec);

    std::optional<Instance> inst;
    if (opt.candidates.empty()) {
        inst = Instance::unconstrained(std::move(agents), opt.k, metric);
    } else {
        io::DatasetSpec cand_spec;
        cand_spec.path = opt.candidates;
        inst           = Instance::discrete(std::move(agents), io::load_points(cand_spec), opt.k, metric);
    }

    const Algorithm algorithm = algorithm_from_string(opt.algo);
    io::RunRecord   record{*inst, opt.algo};
    switch (algorithm) {
        case Algorithm::prf: {
            auto selection = select_prf_centers(*inst);
            record.outcome = std::move(selection.outcome);
            record.trace   = std::move(selection.trace);
            break;
        }
        case Algorithm::kmeanspp:
            record.seed    = opt.seed;
            record.outcome = kmeanspp(*inst, opt.seed);
            break;
        case Algorithm::greedy: {
            auto result        = greedy_capture(*inst, opt.pad);
            record.outcome     = std::move(result.outcome);
            record.underfilled = result.underfilled;
            record.padded      = result.padded;
            break;
        }
    }
    for (const Axiom axiom : resolve_axioms(opt.axioms, *inst)) {
        record.reports.push_back(check(*inst, record.outcome, axiom));
    }
    record.metrics = standard_metrics(
        *inst, record.outcome, {MsdMetric::closest_one, MsdMetric::closest_half_k, MsdMetric::closest_k}, true);

    const json doc = io::run_record_to_json(record);
    io::write_json_file(opt.out, doc);
    std::cout << json{{"algorithm", opt.algo},
                      {"k", inst->k()},
                      {"selected", record.outcome.indices()},
                      {"underfilled", record.underfilled},
                      {"out", opt.out}}
                     .dump()
              << '\n';
    return exit_ok;
}

struct CheckCliOptions {
    std::string   axioms{"up,pf,core,prf"};
    std::string   run;
    bool          exhaustive{false};
    std::uint64_t seed{0x5eed};
    std::size_t   samples{2048};
};

int run_check(const CheckCliOptions& opt) {
    const io::RunRecord record = io::run_record_from_json(io::read_json_file(opt.run));
    const Instance&     inst   = record.instance;
    validate_outcome(inst, record.outcome);

    json reports    = json::array();
    bool violated   = false;
    bool reproduced = true;
    for (const Axiom axiom : resolve_axioms(opt.axioms, inst)) {
        CheckOptions options;
        options.seed           = opt.seed;
        options.random_subsets = opt.samples;
        if (opt.exhaustive) {
            options.mode = inst.n() <= exhaustive_agent_limit ? CheckMode::exhaustive
                         : axiom == Axiom::prf_unconstrained ? CheckMode::exact
                                                             : CheckMode::exhaustive;
        }
        const AxiomReport report = check(inst, record.outcome, axiom, options);
        violated                 = violated || !report.satisfied;
        for (const auto& stored : record.reports) {
            if (stored.axiom == axiom && stored.satisfied != report.satisfied) reproduced = false;
        }
        reports.push_back(io::report_to_json(report));
    }
    std::cout << json{{"instance_digest", io::instance_digest(inst)},
                      {"reports", std::move(reports)},
                      {"stored_verdicts_reproduced", reproduced}}
                     .dump(2)
              << '\n';
    return violated ? exit_violation : exit_ok;
}

struct EvalOptions {
    std::string run;
    std::string metrics{"msd1,msdhalfk,msdk"};
    bool        unsquared{false};
};

int run_eval(const EvalOptions& opt) {
    const io::RunRecord    record = io::run_record_from_json(io::read_json_file(opt.run));
    std::vector<MsdMetric> metrics;
    for (const auto& name : split_list(opt.metrics)) metrics.push_back(msd_metric_from_string(name));
    json out = json::object();
    for (const auto& [name, value] : standard_metrics(record.instance, record.outcome, metrics, !opt.unsquared)) {
        out[name] = value ? json(*value) : json(nullptr);
    }
    std::cout << json{{"instance_digest", io::instance_digest(record.instance)},
                      {"squared", !opt.unsquared},
                      {"metrics", std::move(out)}}
                     .dump(2)
              << '\n';
    return exit_ok;
}

struct ExperimentOptions {
    std::string grid;
    std::string out;
    std::string json_out;
    std::string summary_out;
};

int run_experiment_cmd(const ExperimentOptions& opt) {
    const std::filesystem::path grid_path{opt.grid};
    const ExperimentGrid grid  = io::grid_from_json(io::read_json_file(grid_path), grid_path.parent_path());
    const ResultTable    table = run_experiment(grid);

    std::ofstream out{opt.out};
    if (!out) throw InputError("cannot write '" + opt.out + "'");
    io::write_results_csv(out, table);
    if (!opt.json_out.empty()) io::write_json_file(opt.json_out, io::results_to_json(table));
    if (!opt.summary_out.empty()) {
        std::ofstream summary{opt.summary_out};
        if (!summary) throw InputError("cannot write '" + opt.summary_out + "'");
        io::write_summary_csv(summary, table);
    }
    io::write_summary_csv(std::cout, table);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proportionally representative clustering"};
    app.require_subcommand(1);

    GenOptions gen;
    auto*      gen_cmd = app.add_subcommand("gen", "Write a synthetic instance as CSV");
    gen_cmd->add_option("--name", gen.name, "Generator name")->required();
    gen_cmd->add_option("--params", gen.params, "Comma separated key=value parameters");
    gen_cmd->add_option("--out", gen.out, "Agents CSV")->required();
    gen_cmd->add_option("--candidates-out", gen.candidates_out, "Candidates CSV for discrete instances");

    ClusterOptions cluster;
    auto*          cluster_cmd = app.add_subcommand("cluster", "Select k centers and write a run record");
    cluster_cmd->add_option("--algo", cluster.algo, "prf | kmeanspp | greedy")
        ->required()
        ->check(CLI::IsMember({"prf", "kmeanspp", "greedy"}));
    cluster_cmd->add_option("--input", cluster.input, "Agents CSV")->required()->check(CLI::ExistingFile);
    cluster_cmd->add_option("--candidates", cluster.candidates, "Candidates CSV (discrete instance)")
        ->check(CLI::ExistingFile);
    cluster_cmd->add_option("--k", cluster.k, "Number of centers")->required()->check(CLI::PositiveNumber);
    cluster_cmd->add_option("--seed", cluster.seed, "Seed for kmeanspp");
    cluster_cmd->add_option("--metric", cluster.metric, "euclidean | manhattan");
    cluster_cmd->add_option("--columns", cluster.columns, "Columns to use (names or indices)")->delimiter(',');
    cluster_cmd->add_option("--id-column", cluster.id_column, "Column to ignore");
    cluster_cmd->add_flag("--standardize", cluster.standardize, "z-score each column");
    cluster_cmd->add_flag("--pad", cluster.pad, "Pad greedy output to k centers");
    cluster_cmd->add_option("--axioms", cluster.axioms, "Axioms to check and store in the record");
    cluster_cmd->add_option("--out", cluster.out, "Run record JSON")->required();

    CheckCliOptions check_opt;
    auto*           check_cmd = app.add_subcommand("check", "Check fairness axioms on a run record");
    check_cmd->add_option("--axioms", check_opt.axioms, "up,pf,core,prf,prf_unc,prf_disc,prf2,prf3");
    check_cmd->add_option("--run", check_opt.run, "Run record JSON")->required()->check(CLI::ExistingFile);
    check_cmd->add_flag("--exhaustive", check_opt.exhaustive, "Require definitive verdicts");
    check_cmd->add_option("--seed", check_opt.seed, "Seed for sampled groups");
    check_cmd->add_option("--samples", check_opt.samples, "Random groups in sampling mode");

    EvalOptions eval;
    auto*       eval_cmd = app.add_subcommand("eval", "Mean squared distance to the closest centers");
    eval_cmd->add_option("--run", eval.run, "Run record JSON")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--metrics", eval.metrics, "msd1,msdhalfk,msdk");
    eval_cmd->add_flag("--unsquared", eval.unsquared, "Average plain distances");

    ExperimentOptions experiment;
    auto*             exp_cmd = app.add_subcommand("experiment", "Run an experiment grid");
    exp_cmd->add_option("--grid", experiment.grid, "Grid JSON")->required()->check(CLI::ExistingFile);
    exp_cmd->add_option("--out", experiment.out, "Per-cell results CSV")->required();
    exp_cmd->add_option("--json", experiment.json_out, "Results JSON");
    exp_cmd->add_option("--summary", experiment.summary_out, "Summary CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*cluster_cmd) return run_cluster(cluster);
        if (*check_cmd) return run_check(check_opt);
        if (*eval_cmd) return run_eval(eval);
        if (*exp_cmd) return run_experiment_cmd(experiment);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
