#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relokit/core.hpp"
#include "relokit/demand.hpp"
#include "relokit/metrics.hpp"
#include "relokit/rng.hpp"
#include "relokit/simulator.hpp"

namespace relokit {

inline Scheme scheme_from_name(const std::string& name) {
    if (name == "none") return Scheme::none;
    if (name == "operator") return Scheme::operator_based;
    if (name == "user") return Scheme::user_based;
    if (name == "robotic") return Scheme::robotic;
    throw config_error("scheme: unknown kind '" + name + "' (use none|operator|user|robotic)");
}

inline PredictorKind predictor_from_name(std::string name) {
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "worst-case") return PredictorKind::worst_case;
    if (name == "probabilistic") return PredictorKind::probabilistic;
    if (name == "exact-oracle") return PredictorKind::exact_oracle;
    throw config_error("predictor: unknown kind '" + name +
                       "' (use worst-case|probabilistic|exact-oracle)");
}

struct OutputConfig {
    std::string dir = "out";
    bool trace_jsonl = true;
    bool slot_csv = true;
    bool kpi_csv = true;
    bool kpi_json = true;
};

enum class DemandSourceKind { synthetic, csv };

struct CsvDemandConfig {
    std::string trips;
    std::string zone_map;
    std::vector<std::string> dates;          // evaluation days; empty = whole file as one day
    std::vector<std::string> history_dates;  // predictor training days
    std::vector<std::string> zone_filter;
};

struct SyntheticDemandConfig {
    SyntheticSpec spec;
    int history_days = 3;
    std::vector<int> eval_days = {0};  // independent demand draws, one label per index
};

struct SweepConfig {
    std::map<std::string, std::vector<nlohmann::json>> axes;  // dotted path -> values
    int cap = 64;
};

struct RunConfig {
    ScenarioConfig scenario;
    std::vector<int> placement;  // explicit initial inventory; empty = derive per day
    DemandSourceKind source = DemandSourceKind::synthetic;
    CsvDemandConfig csv;
    SyntheticDemandConfig synthetic;
    std::vector<std::uint64_t> seeds;
    SweepConfig sweep;
    OutputConfig output;
};

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> segs;
    std::string cur;
    for (char c : path) {
        if (c == '.') {
            segs.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    segs.push_back(cur);
    for (const auto& s : segs)
        if (s.empty())
            throw config_error("override path has an empty segment: " + path);
    return segs;
}

inline void set_path(nlohmann::json& root, const std::string& path, nlohmann::json value) {
    nlohmann::json* node = &root;
    const auto segs = split_path(path);
    for (size_t i = 0; i + 1 < segs.size(); ++i) {
        const auto& seg = segs[i];
        if (all_digits(seg) && (node->is_array() || node->is_null())) {
            const size_t idx = std::stoul(seg);
            if (node->is_null()) *node = nlohmann::json::array();
            while (node->size() <= idx) node->push_back(nullptr);
            node = &(*node)[idx];
        } else {
            node = &(*node)[seg];
        }
    }
    const auto& last = segs.back();
    if (all_digits(last) && (node->is_array() || node->is_null())) {
        const size_t idx = std::stoul(last);
        if (node->is_null()) *node = nlohmann::json::array();
        while (node->size() <= idx) node->push_back(nullptr);
        (*node)[idx] = std::move(value);
    } else {
        (*node)[last] = std::move(value);
    }
}

}  // namespace detail

// One "path=value" command-line override. The value is parsed as JSON when it
// is valid JSON, otherwise taken as a bare string, so scheme=robotic and
// grid.n_C=15 both do the obvious thing.
inline void apply_override(nlohmann::json& root, const std::string& expr) {
    const auto eq = expr.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must look like path=value: " + expr);
    const std::string path = expr.substr(0, eq);
    const std::string raw = expr.substr(eq + 1);
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
        value = raw;
    }
    detail::set_path(root, path, std::move(value));
}

inline void apply_overrides(nlohmann::json& root, const std::vector<std::string>& exprs) {
    for (const auto& e : exprs) apply_override(root, e);
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config not readable: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config " + path + ": " + e.what());
    }
}

inline RunConfig parse_run_config(nlohmann::json j) {
    RunConfig rc;
    try {
        // Scalar shorthands: "scheme": "robotic" means {"kind": "robotic"}.
        if (j.contains("scheme") && j["scheme"].is_string())
            j["scheme"] = nlohmann::json{{"kind", j["scheme"].get<std::string>()}};
        if (j.contains("predictor") && j["predictor"].is_string())
            j["predictor"] = nlohmann::json{{"kind", j["predictor"].get<std::string>()}};

        const auto grid = j.value("grid", nlohmann::json::object());
        try {
            rc.scenario.grid = TimeGrid(grid.value("tau_minutes", 1.0), grid.value("n_C", 15),
                                        grid.value("n_R", 30), grid.value("n_O", 45));
        } catch (const input_error& e) {
            throw config_error(e.what());
        }

        const auto sch = j.value("scheme", nlohmann::json::object());
        rc.scenario.scheme = scheme_from_name(sch.value("kind", std::string("none")));
        rc.scenario.eta = sch.value("eta", 7);
        rc.scenario.gamma = sch.value("gamma", 1.0);

        const auto pred = j.value("predictor", nlohmann::json::object());
        rc.scenario.predictor = predictor_from_name(pred.value("kind", std::string("worst-case")));
        rc.scenario.epsilon = pred.value("epsilon", 0.05);
        rc.scenario.beta_cap = pred.value("beta_cap", 20);

        const auto fleet = j.value("fleet", nlohmann::json::object());
        rc.scenario.fleet = fleet.value("K", 0);
        if (fleet.contains("placement"))
            rc.placement = fleet.at("placement").get<std::vector<int>>();

        const auto ops = j.value("operators", nlohmann::json::object());
        rc.scenario.operator_count = ops.value("M", 0);
        if (ops.contains("shifts")) {
            for (const auto& row : ops.at("shifts")) {
                OperatorShift shift;
                shift.start = row.at(0).get<long>();
                shift.end = row.at(1).get<long>();
                rc.scenario.shifts.push_back(shift);
            }
        }
        if (ops.contains("start_zones"))
            rc.scenario.operator_start_zones = ops.at("start_zones").get<std::vector<int>>();

        rc.scenario.day_slots = j.value("day_slots", 1440L);
        rc.scenario.seed = j.value("seed", std::uint64_t{1});
        rc.scenario.record_inventory = j.value("record_inventory", false);
        rc.seeds = j.contains("seeds") ? j.at("seeds").get<std::vector<std::uint64_t>>()
                                       : std::vector<std::uint64_t>{rc.scenario.seed};
        if (rc.seeds.empty())
            throw config_error("seeds: need at least one");

        if (!j.contains("demand"))
            throw config_error("demand section required");
        const auto& dj = j.at("demand");
        const auto source = dj.value("source", std::string(""));
        if (source == "synthetic") {
            rc.source = DemandSourceKind::synthetic;
            if (!dj.contains("synthetic"))
                throw config_error("demand.synthetic section required");
            const auto& sj = dj.at("synthetic");
            auto& spec = rc.synthetic.spec;
            spec.zones = sj.value("zones", 0);
            spec.slots = sj.value("slots", rc.scenario.day_slots + rc.scenario.grid.n_O);
            rc.synthetic.history_days = sj.value("history_days", 3);
            if (sj.contains("days"))
                rc.synthetic.eval_days = sj.at("days").get<std::vector<int>>();
            if (rc.synthetic.eval_days.empty())
                throw config_error("demand.synthetic.days: need at least one day index");
            if (!sj.contains("departure_rate") || !sj.contains("destination_weights") ||
                !sj.contains("travel"))
                throw config_error("demand.synthetic needs departure_rate, destination_weights, travel");
            for (const auto& e : sj.at("departure_rate")) {
                RateProfile p;
                if (e.is_number()) {
                    p = RateProfile(e.get<double>());
                } else {
                    for (const auto& seg : e)
                        p.segments.emplace_back(seg.at(0).get<long>(), seg.at(1).get<double>());
                    std::sort(p.segments.begin(), p.segments.end());
                }
                spec.departure_rate.push_back(std::move(p));
            }
            spec.destination_weights = sj.at("destination_weights").get<std::vector<std::vector<double>>>();
            const auto rows = sj.at("travel").get<std::vector<std::vector<int>>>();
            if (static_cast<int>(rows.size()) != spec.zones)
                throw config_error("demand.synthetic.travel: need one row per zone");
            spec.travel = IntMatrix(spec.zones);
            for (int i = 0; i < spec.zones; ++i) {
                if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != spec.zones)
                    throw config_error("demand.synthetic.travel: row length mismatch");
                for (int k = 0; k < spec.zones; ++k)
                    spec.travel.at(i, k) = rows[static_cast<size_t>(i)][static_cast<size_t>(k)];
            }
        } else if (source == "csv") {
            rc.source = DemandSourceKind::csv;
            if (!dj.contains("csv"))
                throw config_error("demand.csv section required");
            const auto& cj = dj.at("csv");
            rc.csv.trips = cj.value("trips", std::string(""));
            rc.csv.zone_map = cj.value("zone_map", std::string(""));
            if (rc.csv.trips.empty() || rc.csv.zone_map.empty())
                throw config_error("demand.csv needs trips and zone_map paths");
            if (cj.contains("dates")) rc.csv.dates = cj.at("dates").get<std::vector<std::string>>();
            if (cj.contains("history_dates"))
                rc.csv.history_dates = cj.at("history_dates").get<std::vector<std::string>>();
            if (cj.contains("zone_filter"))
                rc.csv.zone_filter = cj.at("zone_filter").get<std::vector<std::string>>();
            std::set<std::string> seen(rc.csv.dates.begin(), rc.csv.dates.end());
            if (seen.size() != rc.csv.dates.size())
                throw config_error("demand.csv.dates: duplicate dates");
        } else {
            throw config_error("demand.source must be 'synthetic' or 'csv'");
        }

        const auto oj = j.value("output", nlohmann::json::object());
        rc.output.dir = oj.value("dir", std::string("out"));
        rc.output.trace_jsonl = oj.value("trace", true);
        rc.output.slot_csv = oj.value("slot_csv", true);
        rc.output.kpi_csv = oj.value("kpi_csv", true);
        rc.output.kpi_json = oj.value("kpi_json", true);

        const auto wj = j.value("sweep", nlohmann::json::object());
        rc.sweep.cap = wj.value("cap", 64);
        if (wj.contains("axes"))
            for (const auto& [axis, values] : wj.at("axes").items()) {
                if (!values.is_array() || values.empty())
                    throw config_error("sweep.axes." + axis + ": need a non-empty value array");
                for (const auto& v : values) rc.sweep.axes[axis].push_back(v);
            }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    rc.scenario.validate();
    return rc;
}

// Fully-defaulted view of a parsed config; this is what lands in manifests.
inline nlohmann::json to_resolved_json(const RunConfig& rc) {
    nlohmann::json j;
    j["grid"] = {{"tau_minutes", rc.scenario.grid.tau},
                 {"n_C", rc.scenario.grid.n_C},
                 {"n_R", rc.scenario.grid.n_R},
                 {"n_O", rc.scenario.grid.n_O}};
    j["scheme"] = {{"kind", scheme_name(rc.scenario.scheme)},
                   {"eta", rc.scenario.eta},
                   {"gamma", rc.scenario.gamma}};
    j["predictor"] = {{"kind", predictor_name(rc.scenario.predictor)},
                      {"epsilon", rc.scenario.epsilon},
                      {"beta_cap", rc.scenario.beta_cap}};
    j["fleet"] = {{"K", rc.scenario.fleet}};
    if (!rc.placement.empty()) j["fleet"]["placement"] = rc.placement;
    j["operators"] = {{"M", rc.scenario.operator_count}};
    if (!rc.scenario.shifts.empty()) {
        auto rows = nlohmann::json::array();
        for (const auto& s : rc.scenario.shifts) rows.push_back({s.start, s.end});
        j["operators"]["shifts"] = rows;
    }
    if (!rc.scenario.operator_start_zones.empty())
        j["operators"]["start_zones"] = rc.scenario.operator_start_zones;
    j["day_slots"] = rc.scenario.day_slots;
    j["seed"] = rc.scenario.seed;
    j["seeds"] = rc.seeds;
    j["record_inventory"] = rc.scenario.record_inventory;
    if (rc.source == DemandSourceKind::synthetic) {
        nlohmann::json sj;
        sj["zones"] = rc.synthetic.spec.zones;
        sj["slots"] = rc.synthetic.spec.slots;
        sj["history_days"] = rc.synthetic.history_days;
        sj["days"] = rc.synthetic.eval_days;
        auto rates = nlohmann::json::array();
        for (const auto& p : rc.synthetic.spec.departure_rate) {
            auto segs = nlohmann::json::array();
            for (const auto& [start, rate] : p.segments) segs.push_back({start, rate});
            rates.push_back(segs);
        }
        sj["departure_rate"] = rates;
        sj["destination_weights"] = rc.synthetic.spec.destination_weights;
        auto rows = nlohmann::json::array();
        for (int i = 0; i < rc.synthetic.spec.zones; ++i) {
            auto row = nlohmann::json::array();
            for (int k = 0; k < rc.synthetic.spec.zones; ++k)
                row.push_back(rc.synthetic.spec.travel.at(i, k));
            rows.push_back(row);
        }
        sj["travel"] = rows;
        j["demand"] = {{"source", "synthetic"}, {"synthetic", sj}};
    } else {
        nlohmann::json cj{{"trips", rc.csv.trips}, {"zone_map", rc.csv.zone_map}};
        if (!rc.csv.dates.empty()) cj["dates"] = rc.csv.dates;
        if (!rc.csv.history_dates.empty()) cj["history_dates"] = rc.csv.history_dates;
        if (!rc.csv.zone_filter.empty()) cj["zone_filter"] = rc.csv.zone_filter;
        j["demand"] = {{"source", "csv"}, {"csv", cj}};
    }
    j["output"] = {{"dir", rc.output.dir},
                   {"trace", rc.output.trace_jsonl},
                   {"slot_csv", rc.output.slot_csv},
                   {"kpi_csv", rc.output.kpi_csv},
                   {"kpi_json", rc.output.kpi_json}};
    if (!rc.sweep.axes.empty()) {
        nlohmann::json axes;
        for (const auto& [axis, values] : rc.sweep.axes) axes[axis] = values;
        j["sweep"] = {{"axes", axes}, {"cap", rc.sweep.cap}};
    }
    return j;
}

struct MaterializedScenario {
    ZoneMap zones;
    ServiceNetwork network;
    std::vector<TripLog> eval_logs;
    std::vector<SlotCounts> history;
    std::vector<std::vector<int>> placements;  // per eval day
};

// Loads or synthesizes everything a run needs. Synthetic history and eval
// days come from disjoint substreams of the scenario seed, so two schemes
// with the same seed face identical demand.
inline MaterializedScenario materialize(const RunConfig& rc) {
    MaterializedScenario m;
    const long hist_cap = rc.scenario.day_slots + rc.scenario.grid.n_O;
    if (rc.source == DemandSourceKind::synthetic) {
        const auto& sy = rc.synthetic;
        sy.spec.validate();
        std::vector<std::string> names;
        for (int i = 0; i < sy.spec.zones; ++i) names.push_back(std::to_string(i));
        m.zones = ZoneMap::from_names(names);
        m.network = ServiceNetwork(names, sy.spec.travel);
        for (int h = 0; h < sy.history_days; ++h) {
            const TripLog log = synthesize_demand(sy.spec, substream(rc.scenario.seed, "history", h));
            m.history.push_back(slot_counts(log, sy.spec.zones, hist_cap));
        }
        for (int idx : sy.eval_days) {
            TripLog log = synthesize_demand(sy.spec, substream(rc.scenario.seed, "eval", idx));
            log.day = "synthetic-" + std::to_string(idx);
            m.eval_logs.push_back(std::move(log));
        }
    } else {
        m.zones = ZoneMap::load_csv(rc.csv.zone_map);
        TripCsvOptions base;
        base.zone_filter.insert(rc.csv.zone_filter.begin(), rc.csv.zone_filter.end());
        TripLog merged;
        merged.zone_count = m.zones.size();
        for (const auto& date : rc.csv.history_dates) {
            TripCsvOptions opts = base;
            opts.date_filter = date;
            const TripLog log = parse_trip_csv(rc.csv.trips, m.zones, rc.scenario.grid, opts);
            if (log.empty())
                throw data_error("no usable trips for history date " + date + " in " + rc.csv.trips);
            m.history.push_back(slot_counts(log, m.zones.size(), hist_cap));
            merged.trips.insert(merged.trips.end(), log.trips.begin(), log.trips.end());
        }
        if (rc.csv.dates.empty()) {
            TripLog log = parse_trip_csv(rc.csv.trips, m.zones, rc.scenario.grid, base);
            if (log.empty())
                throw data_error("no usable trips in " + rc.csv.trips);
            m.eval_logs.push_back(std::move(log));
        } else {
            for (const auto& date : rc.csv.dates) {
                TripCsvOptions opts = base;
                opts.date_filter = date;
                TripLog log = parse_trip_csv(rc.csv.trips, m.zones, rc.scenario.grid, opts);
                if (log.empty())
                    throw data_error("no usable trips for date " + date + " in " + rc.csv.trips);
                m.eval_logs.push_back(std::move(log));
            }
        }
        for (const auto& log : m.eval_logs)
            merged.trips.insert(merged.trips.end(), log.trips.begin(), log.trips.end());
        m.network = ServiceNetwork(m.zones.names, build_travel_time_matrix(merged, m.zones.size()));
    }

    if (!rc.placement.empty()) {
        if (static_cast<int>(rc.placement.size()) != m.zones.size())
            throw config_error("fleet.placement: need one entry per zone");
        long sum = 0;
        for (int v : rc.placement) {
            if (v < 0)
                throw config_error("fleet.placement: negative entry");
            sum += v;
        }
        if (sum != rc.scenario.fleet)
            throw config_error("fleet.placement: entries must sum to K");
        m.placements.assign(m.eval_logs.size(), rc.placement);
    } else {
        for (const auto& log : m.eval_logs)
            m.placements.push_back(initial_fleet_placement(log, rc.scenario.fleet, rc.scenario.grid));
    }
    return m;
}

struct RunOutputs {
    std::vector<SimulationTrace> traces;
    std::vector<KpiReport> reports;
};

// Replicates across days and seeds (day-major order) and computes KPIs.
inline RunOutputs execute(const RunConfig& rc, const MaterializedScenario& m, int parallelism = 1) {
    std::vector<ReplicaInput> days;
    days.reserve(m.eval_logs.size());
    for (size_t d = 0; d < m.eval_logs.size(); ++d)
        days.push_back({&m.eval_logs[d], m.placements[d]});
    RunOutputs out;
    out.traces = replicate(rc.scenario, m.network, days, m.history, rc.seeds, parallelism);
    out.reports.reserve(out.traces.size());
    for (const auto& t : out.traces) out.reports.push_back(compute_kpis(t, rc.scenario.grid.tau));
    return out;
}

// Writes the configured artifacts plus a manifest (resolved config, seeds,
// day labels). File stems combine day label and seed so replicas never clash.
inline void write_outputs(const RunConfig& rc, const RunOutputs& out) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(rc.output.dir, ec);
    if (ec)
        throw data_error("cannot create output dir " + rc.output.dir + ": " + ec.message());
    const std::string dir = rc.output.dir;
    for (const auto& t : out.traces) {
        const std::string stem = t.day + "_s" + std::to_string(t.seed);
        if (rc.output.trace_jsonl) write_trace_jsonl(t, dir + "/trace_" + stem + ".jsonl");
        if (rc.output.slot_csv) write_slot_csv(t, dir + "/slots_" + stem + ".csv");
    }
    if (rc.output.kpi_csv) write_report_csv(out.reports, dir + "/kpi.csv");
    if (rc.output.kpi_json) write_report_json(out.reports, dir + "/kpi.json");
    nlohmann::json manifest;
    manifest["config"] = to_resolved_json(rc);
    manifest["seeds"] = rc.seeds;
    auto days = nlohmann::json::array();
    for (const auto& log : out.traces)
        if (days.empty() || days.back() != log.day) days.push_back(log.day);
    manifest["days"] = days;
    std::ofstream mf(dir + "/manifest.json");
    if (!mf)
        throw data_error("manifest not writable in " + dir);
    mf << manifest.dump(2) << '\n';
}

// Structural checks without simulation: config semantics, data readability,
// demand-model histogram normalization, travel-matrix completeness. Returns
// one line per violation; unreadable data files still throw.
inline std::vector<std::string> validate_scenario(const RunConfig& rc) {
    std::vector<std::string> violations;
    for (const auto& s : rc.scenario.shifts)
        if (s.end <= s.start)
            violations.push_back("operator shift with end <= start");
    MaterializedScenario m;
    bool materialized = false;
    try {
        m = materialize(rc);
        materialized = true;
    } catch (const data_error&) {
        throw;
    } catch (const std::exception& e) {
        violations.push_back(e.what());
    }
    if (!materialized) return violations;

    for (int i = 0; i < m.network.travel.n; ++i)
        for (int k = 0; k < m.network.travel.n; ++k)
            if (m.network.travel.at(i, k) < 0 || m.network.operator_travel.at(i, k) < 0)
                violations.push_back("travel matrix: negative entry at (" + std::to_string(i) + "," +
                                     std::to_string(k) + ")");

    if (m.history.empty()) {
        if (rc.scenario.predictor != PredictorKind::exact_oracle)
            violations.push_back("no history days configured but the predictor needs them");
    } else {
        try {
            const DemandModel model =
                build_demand_model(m.history, rc.scenario.grid, 0, rc.scenario.beta_cap);
            for (int z = 0; z < model.zones; ++z) {
                for (int t = 1; t <= model.n_O; ++t) {
                    double sa = 0.0, sr = 0.0;
                    for (double p : model.arrival_hist(z, t)) sa += p;
                    for (double p : model.request_hist(z, t)) sr += p;
                    if (std::abs(sa - 1.0) > 1e-9)
                        violations.push_back("arrival histogram sums to " + std::to_string(sa) +
                                             " at zone " + std::to_string(z) + " slot " + std::to_string(t));
                    if (std::abs(sr - 1.0) > 1e-9)
                        violations.push_back("request histogram sums to " + std::to_string(sr) +
                                             " at zone " + std::to_string(z) + " slot " + std::to_string(t));
                }
            }
        } catch (const std::exception& e) {
            violations.push_back(std::string("demand model: ") + e.what());
        }
    }

    for (size_t d = 0; d < m.placements.size(); ++d) {
        long sum = 0;
        for (int v : m.placements[d]) sum += v;
        if (sum != rc.scenario.fleet)
            violations.push_back("initial placement for day " + m.eval_logs[d].day +
                                 " does not sum to the fleet size");
    }
    return violations;
}

inline const std::set<std::string>& sweep_axis_whitelist() {
    static const std::set<std::string> axes = {"grid.n_C",     "grid.n_R",  "grid.n_O", "operators.M",
                                               "fleet.K",      "scheme.eta", "predictor.kind"};
    return axes;
}

struct SweepCell {
    std::map<std::string, nlohmann::json> values;
    nlohmann::json config;
    bool valid = true;
    std::string skip_reason;
};

// Cartesian expansion of the configured axes over a base config. Cells whose
// horizon ordering (or any other constraint) fails parse are kept but marked
// skipped with the reason; an unsupported axis or a grid beyond the cap is a
// config error.
inline std::vector<SweepCell> expand_sweep(const nlohmann::json& base, const SweepConfig& sweep) {
    if (sweep.axes.empty())
        throw config_error("sweep: no axes configured");
    long long total = 1;
    for (const auto& [axis, values] : sweep.axes) {
        if (sweep_axis_whitelist().count(axis) == 0)
            throw config_error("sweep: unsupported axis " + axis);
        if (values.empty())
            throw config_error("sweep: axis " + axis + " has no values");
        total *= static_cast<long long>(values.size());
    }
    if (total > sweep.cap)
        throw config_error("sweep: " + std::to_string(total) + " cells exceed cap " +
                           std::to_string(sweep.cap));

    std::vector<SweepCell> cells;
    std::vector<std::pair<std::string, std::vector<nlohmann::json>>> axes(sweep.axes.begin(),
                                                                          sweep.axes.end());
    std::vector<size_t> cursor(axes.size(), 0);
    while (true) {
        SweepCell cell;
        cell.config = base;
        cell.config.erase("sweep");
        for (size_t a = 0; a < axes.size(); ++a) {
            const auto& value = axes[a].second[cursor[a]];
            cell.values[axes[a].first] = value;
            detail::set_path(cell.config, axes[a].first, value);
        }
        try {
            (void)parse_run_config(cell.config);
        } catch (const config_error& e) {
            cell.valid = false;
            cell.skip_reason = e.what();
        }
        cells.push_back(std::move(cell));
        size_t a = 0;
        for (; a < axes.size(); ++a) {
            if (++cursor[a] < axes[a].second.size()) break;
            cursor[a] = 0;
        }
        if (a == axes.size()) break;
    }
    return cells;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace detail

// Combined sweep table: one row per cell with its parameter values and the
// aggregate KPI means, sortable to locate the best-performing cell. Skipped
// cells keep their row with the reason and empty metrics.
inline void write_sweep_csv(const std::vector<SweepCell>& cells,
                            const std::vector<std::map<std::string, Aggregate>>& aggregates,
                            const std::string& path) {
    if (cells.empty())
        throw input_error("write_sweep_csv: no cells");
    if (cells.size() != aggregates.size())
        throw input_error("write_sweep_csv: cells and aggregates differ in length");
    std::ofstream out(path);
    if (!out)
        throw data_error("sweep csv not writable: " + path);
    std::vector<std::string> axis_names;
    for (const auto& [axis, value] : cells.front().values) axis_names.push_back(axis);
    out << "cell";
    for (const auto& axis : axis_names) out << ',' << axis;
    out << ",status,rejection_rate_mean,rejection_rate_ci95,utilization_mean,"
           "tasks_per_relocator_mean\n";
    for (size_t c = 0; c < cells.size(); ++c) {
        out << c;
        for (const auto& axis : axis_names) {
            const auto& v = cells[c].values.at(axis);
            out << ',' << (v.is_string() ? detail::csv_escape(v.get<std::string>()) : v.dump());
        }
        if (!cells[c].valid) {
            out << ',' << detail::csv_escape("skipped: " + cells[c].skip_reason) << ",,,,\n";
            continue;
        }
        const auto& agg = aggregates[c];
        auto cell_num = [&](const char* key, bool ci) {
            const auto it = agg.find(key);
            if (it == agg.end()) return std::string();
            return detail::csv_number(ci ? it->second.ci95_half : it->second.mean);
        };
        out << ",ok," << cell_num("rejection_rate_pct", false) << ','
            << cell_num("rejection_rate_pct", true) << ',' << cell_num("utilization_pct", false) << ','
            << cell_num("tasks_per_relocator", false) << '\n';
    }
}

}  // namespace relokit
