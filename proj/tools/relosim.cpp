#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relokit/config.hpp"
#include "relokit/oracle.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> days;
    int parallel = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_execution) {
    cmd->add_option("--config", args.config_path, "Scenario config file (json)")->required();
    cmd->add_option("--set", args.sets, "Config override as path=value; repeatable");
    cmd->add_option("--out", args.out_dir, "Output directory, overrides output.dir");
    if (with_execution) {
        cmd->add_option("--seeds", args.seeds, "Replication seeds, comma separated")->delimiter(',');
        cmd->add_option("--days", args.days,
                        "Evaluation days: dates for csv demand, draw indices for synthetic")
            ->delimiter(',');
        cmd->add_option("--parallel", args.parallel, "Worker threads")->check(CLI::PositiveNumber);
    }
}

nlohmann::json assemble_config(const CommonArgs& args) {
    auto j = relokit::load_json_file(args.config_path);
    relokit::apply_overrides(j, args.sets);
    if (!args.out_dir.empty()) relokit::detail::set_path(j, "output.dir", args.out_dir);
    if (!args.seeds.empty()) j["seeds"] = args.seeds;
    if (!args.days.empty()) {
        std::string source;
        if (j.contains("demand") && j["demand"].is_object())
            source = j["demand"].value("source", std::string(""));
        if (source == "csv") {
            j["demand"]["csv"]["dates"] = args.days;
        } else {
            std::vector<int> indices;
            for (const auto& d : args.days) {
                try {
                    indices.push_back(std::stoi(d));
                } catch (const std::exception&) {
                    throw relokit::config_error("--days: synthetic demand takes integer draw indices, got '" +
                                                d + "'");
                }
            }
            j["demand"]["synthetic"]["days"] = indices;
        }
    }
    return j;
}

std::string show(double v) {
    if (std::isnan(v)) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

int do_run(const CommonArgs& args) {
    const auto rc = relokit::parse_run_config(assemble_config(args));
    const auto scenario = relokit::materialize(rc);
    const auto out = relokit::execute(rc, scenario, args.parallel);
    relokit::write_outputs(rc, out);
    for (const auto& r : out.reports)
        std::cout << r.day << " seed=" << r.seed << " requests=" << r.total_requests
                  << " rejected=" << r.rejections << " (" << show(r.rejection_rate_pct)
                  << "%) relocated=" << r.relocated_vehicles << " overtime=" << r.overtime_slots
                  << '\n';
    const auto agg = relokit::aggregate_reports(out.reports);
    for (const char* key : {"rejection_rate_pct", "utilization_pct", "tasks_per_relocator"}) {
        const auto& a = agg.at(key);
        std::cout << key << " mean=" << show(a.mean) << " ci95=" << show(a.ci95_half) << " n=" << a.n
                  << '\n';
    }
    std::cout << "wrote " << out.reports.size() << " runs to " << rc.output.dir << '\n';
    return 0;
}

int do_sweep(const CommonArgs& args) {
    const auto base = assemble_config(args);
    const auto base_rc = relokit::parse_run_config(base);
    const auto cells = relokit::expand_sweep(base, base_rc.sweep);
    const std::string root = base_rc.output.dir;
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec)
        throw relokit::data_error("cannot create output dir " + root + ": " + ec.message());

    std::vector<std::map<std::string, relokit::Aggregate>> aggregates;
    size_t ran = 0;
    for (size_t c = 0; c < cells.size(); ++c) {
        if (!cells[c].valid) {
            std::cout << "cell " << c << " skipped: " << cells[c].skip_reason << '\n';
            aggregates.emplace_back();
            continue;
        }
        auto rc = relokit::parse_run_config(cells[c].config);
        rc.output.dir = root + "/cell_" + std::to_string(c);
        const auto scenario = relokit::materialize(rc);
        const auto out = relokit::execute(rc, scenario, args.parallel);
        relokit::write_outputs(rc, out);
        aggregates.push_back(relokit::aggregate_reports(out.reports));
        std::cout << "cell " << c;
        for (const auto& [axis, value] : cells[c].values) std::cout << ' ' << axis << '=' << value.dump();
        std::cout << " -> " << rc.output.dir << '\n';
        ++ran;
    }
    relokit::write_sweep_csv(cells, aggregates, root + "/sweep.csv");
    std::cout << "ran " << ran << "/" << cells.size() << " cells; table at " << root << "/sweep.csv\n";
    return 0;
}

int do_validate(const CommonArgs& args) {
    const auto rc = relokit::parse_run_config(assemble_config(args));
    const auto violations = relokit::validate_scenario(rc);
    if (violations.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const auto& v : violations) std::cout << "violation: " << v << '\n';
    return 4;
}

int do_oracle_test(int instances, std::uint64_t seed) {
    const auto flow = relokit::flow_oracle_battery(instances, seed);
    std::cout << "flow oracle: " << flow.matched << "/" << flow.total << " matched\n";
    if (!flow.ok() && !flow.first_mismatch.empty()) std::cout << flow.first_mismatch << '\n';
    const auto assignment = relokit::assignment_oracle_battery(instances, seed);
    std::cout << "assignment oracle: " << assignment.matched << "/" << assignment.total << " matched\n";
    if (!assignment.ok() && !assignment.first_mismatch.empty())
        std::cout << assignment.first_mismatch << '\n';
    return flow.ok() && assignment.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time fleet rebalancing simulator for one-way car sharing"};
    app.require_subcommand(1);

    CommonArgs run_args, sweep_args, validate_args;
    auto* run_cmd = app.add_subcommand("run", "Simulate the configured days and seeds");
    add_common(run_cmd, run_args, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "Expand the configured axes and run every valid cell");
    add_common(sweep_cmd, sweep_args, true);
    auto* validate_cmd =
        app.add_subcommand("validate", "Check config and data consistency without simulating");
    add_common(validate_cmd, validate_args, false);

    int oracle_instances = 200;
    std::uint64_t oracle_seed = 1;
    auto* oracle_cmd = app.add_subcommand(
        "oracle-test", "Compare both optimizers against exhaustive search on random instances");
    oracle_cmd->add_option("--instances", oracle_instances, "Random instances per optimizer")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", oracle_seed, "Instance generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run_cmd->parsed()) return do_run(run_args);
        if (sweep_cmd->parsed()) return do_sweep(sweep_args);
        if (validate_cmd->parsed()) return do_validate(validate_args);
        return do_oracle_test(oracle_instances, oracle_seed);
    } catch (const relokit::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const relokit::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const relokit::oracle_too_large& e) {
        std::cerr << "instance beyond exhaustive-check bounds: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
