#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "relokit/core.hpp"
#include "relokit/demand.hpp"
#include "relokit/simulator.hpp"

namespace relokit {

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

// Percentage of rejected requests, optionally restricted to a half-open slot
// window and/or an origin-zone subset. No matching requests: NaN.
inline double rejection_rate(const SimulationTrace& trace, long slot_from = 0,
                             long slot_to = std::numeric_limits<long>::max(),
                             const std::vector<int>* origin_zones = nullptr) {
    long requests = 0, rejected = 0;
    for (const auto& e : trace.events) {
        if (e.kind != EventKind::admission && e.kind != EventKind::rejection) continue;
        if (e.slot < slot_from || e.slot >= slot_to) continue;
        if (origin_zones != nullptr &&
            std::find(origin_zones->begin(), origin_zones->end(), e.origin) == origin_zones->end())
            continue;
        ++requests;
        if (e.kind == EventKind::rejection) ++rejected;
    }
    if (requests == 0) return kUndefined;
    return 100.0 * static_cast<double>(rejected) / static_cast<double>(requests);
}

// Occupied vehicles per slot over the day window, from admission events.
// Trip tails past the day end are clipped so the integral never exceeds the
// available vehicle-time.
inline std::vector<long> busy_vehicles_per_slot(const SimulationTrace& trace, long day_slots) {
    std::vector<long> busy(static_cast<size_t>(day_slots), 0);
    for (const auto& e : trace.events) {
        if (e.kind != EventKind::admission) continue;
        const long from = e.slot;
        const long to = std::min(day_slots, e.slot + e.duration);
        for (long s = from; s < to; ++s) ++busy[static_cast<size_t>(s)];
    }
    return busy;
}

// Share of available vehicle-time spent carrying passengers.
inline double utilization(const SimulationTrace& trace, int K, long day_slots) {
    if (K <= 0 || day_slots <= 0) return kUndefined;
    long long occupied = 0;
    for (const auto& e : trace.events) {
        if (e.kind != EventKind::admission) continue;
        occupied += std::min(day_slots, e.slot + e.duration) - e.slot;
    }
    return 100.0 * static_cast<double>(occupied) /
           (static_cast<double>(K) * static_cast<double>(day_slots));
}

// Highest utilization over any window of the given length.
inline double peak_utilization(const SimulationTrace& trace, int K, long day_slots, long window_slots) {
    if (K <= 0 || day_slots <= 0 || window_slots <= 0) return kUndefined;
    const auto busy = busy_vehicles_per_slot(trace, day_slots);
    const long w = std::min(window_slots, day_slots);
    long long sum = 0;
    for (long s = 0; s < w; ++s) sum += busy[static_cast<size_t>(s)];
    long long best = sum;
    for (long s = w; s < day_slots; ++s) {
        sum += busy[static_cast<size_t>(s)] - busy[static_cast<size_t>(s - w)];
        best = std::max(best, sum);
    }
    return 100.0 * static_cast<double>(best) / (static_cast<double>(K) * static_cast<double>(w));
}

struct RelocationEfficiency {
    double tasks_per_relocator = kUndefined;
    double relocated_per_relocation_slot = kUndefined;
    double relocation_to_passenger_time_ratio = 0.0;
    double rebalancing_time_fraction_pct = kUndefined;
};

// Operator-scheme efficiency figures. A train's delivery leg counts once no
// matter how many vehicles it tows; the approach leg (empty travel to the
// feeder) enters only the rebalancing-time fraction.
inline RelocationEfficiency relocation_efficiency(const SimulationTrace& trace, int M) {
    RelocationEfficiency out;
    long tasks = 0;
    long long relocated = 0, leg_time = 0, approach_time = 0, passenger_time = 0;
    for (const auto& e : trace.events) {
        if (e.slot >= trace.day_slots) continue;
        if (e.kind == EventKind::admission) {
            passenger_time += e.duration;
        } else if (e.kind == EventKind::relocation_depart && e.mode == 'o') {
            ++tasks;
            relocated += e.size;
            leg_time += e.duration;
        }
    }
    for (const auto& p : trace.plans) {
        for (size_t i = 0; i < p.assignments.size(); ++i) {
            if (i < p.realized.size() && p.realized[i] >= 1)
                approach_time += p.assignments[i].approach_slots;
        }
    }
    if (M > 0) out.tasks_per_relocator = static_cast<double>(tasks) / M;
    if (leg_time > 0)
        out.relocated_per_relocation_slot = static_cast<double>(relocated) / static_cast<double>(leg_time);
    out.relocation_to_passenger_time_ratio =
        passenger_time > 0 ? static_cast<double>(leg_time) / static_cast<double>(passenger_time)
                           : (leg_time > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (approach_time + leg_time > 0)
        out.rebalancing_time_fraction_pct =
            100.0 * static_cast<double>(approach_time) / static_cast<double>(approach_time + leg_time);
    return out;
}

struct HistogramBin {
    std::string label;
    int lo = 0;
    int hi = 0;  // inclusive
};

// Bins sized for eta = 7 with the service car counted (train length is the
// realized towed count plus one).
inline std::vector<HistogramBin> default_train_bins() {
    return {{"<3", 1, 2}, {"3-4", 3, 4}, {"5-7", 5, 7}, {"=8", 8, 8}};
}

// Realized train lengths (towed vehicles + the service car) of completed
// operator tasks, binned.
inline std::vector<long> train_length_histogram(const SimulationTrace& trace,
                                                const std::vector<HistogramBin>& bins = default_train_bins()) {
    std::vector<long> counts(bins.size(), 0);
    for (const auto& e : trace.events) {
        if (e.kind != EventKind::relocation_depart || e.mode != 'o') continue;
        if (e.slot >= trace.day_slots) continue;
        const int length = e.size + 1;
        for (size_t b = 0; b < bins.size(); ++b) {
            if (length >= bins[b].lo && length <= bins[b].hi) {
                ++counts[b];
                break;
            }
        }
    }
    return counts;
}

// Zones ranked by demand imbalance magnitude |rho| over a log window,
// strongest first; dead zones excluded. Ties break to the lower zone id.
inline std::vector<int> most_imbalanced_zones(const TripLog& log, long t1, long t2, int count) {
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < log.zone_count; ++i) {
        const double rho = imbalance_ratio(log, i, t1, t2);
        if (std::isnan(rho)) continue;
        ranked.emplace_back(std::abs(rho), i);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<int> zones;
    for (int i = 0; i < count && i < static_cast<int>(ranked.size()); ++i)
        zones.push_back(ranked[static_cast<size_t>(i)].second);
    std::sort(zones.begin(), zones.end());
    return zones;
}

struct KpiReport {
    std::string day;
    std::string scheme;
    std::string predictor;
    std::uint64_t seed = 0;
    long day_slots = 0;
    int zones = 0;
    int fleet = 0;
    int operators = 0;

    long total_requests = 0;
    long admissions = 0;
    long rejections = 0;
    double rejection_rate_pct = kUndefined;
    double utilization_pct = kUndefined;
    double peak_utilization_pct = kUndefined;

    long completed_tasks = 0;
    long relocated_vehicles = 0;
    long aborted_tasks = 0;
    long skipped_dispatches = 0;
    long planned_flow_total = 0;
    long overtime_slots = 0;
    double tasks_per_relocator = kUndefined;
    double relocated_per_relocation_slot = kUndefined;
    double relocated_per_relocation_hour = kUndefined;
    double relocation_to_passenger_time_ratio = 0.0;
    double rebalancing_time_fraction_pct = kUndefined;

    std::vector<std::pair<std::string, long>> train_histogram;
    std::vector<double> rejection_by_zone;
    std::vector<std::pair<std::string, double>> rejection_by_window;

    double flow_solve_ms_mean = 0.0;
    double flow_solve_ms_max = 0.0;
    double assign_solve_ms_mean = 0.0;
    double assign_solve_ms_max = 0.0;
};

// Full KPI extraction for one trace. tau_minutes converts the per-slot
// relocation throughput into the per-hour figure; window_slots sets both the
// peak-utilization window and the per-window rejection split.
inline KpiReport compute_kpis(const SimulationTrace& trace, double tau_minutes = 1.0,
                              long window_slots = 0) {
    KpiReport r;
    r.day = trace.day;
    r.scheme = trace.scheme;
    r.predictor = trace.predictor;
    r.seed = trace.seed;
    r.day_slots = trace.day_slots;
    r.zones = trace.zones;
    r.fleet = trace.fleet;
    r.operators = trace.operator_count;
    r.total_requests = trace.total_requests;
    r.admissions = trace.admissions;
    r.rejections = trace.rejections;
    r.overtime_slots = trace.overtime_slots;

    if (window_slots <= 0) window_slots = std::max<long>(1, detail::round_half_up(60.0 / tau_minutes));

    r.rejection_rate_pct = rejection_rate(trace);
    r.utilization_pct = utilization(trace, trace.fleet, trace.day_slots);
    r.peak_utilization_pct = peak_utilization(trace, trace.fleet, trace.day_slots, window_slots);

    for (const auto& e : trace.events) {
        if (e.slot >= trace.day_slots) continue;
        switch (e.kind) {
            case EventKind::relocation_depart:
                r.relocated_vehicles += e.size;
                if (e.mode == 'o') ++r.completed_tasks;
                break;
            case EventKind::task_aborted: ++r.aborted_tasks; break;
            case EventKind::dispatch_skipped: ++r.skipped_dispatches; break;
            default: break;
        }
    }
    for (const auto& p : trace.plans)
        for (const auto& [pair, x] : p.flows) r.planned_flow_total += x;

    const auto eff = relocation_efficiency(trace, trace.operator_count);
    r.tasks_per_relocator = eff.tasks_per_relocator;
    r.relocated_per_relocation_slot = eff.relocated_per_relocation_slot;
    r.relocated_per_relocation_hour = std::isnan(eff.relocated_per_relocation_slot)
                                          ? kUndefined
                                          : eff.relocated_per_relocation_slot * 60.0 / tau_minutes;
    r.relocation_to_passenger_time_ratio = eff.relocation_to_passenger_time_ratio;
    r.rebalancing_time_fraction_pct = eff.rebalancing_time_fraction_pct;

    const auto bins = default_train_bins();
    const auto counts = train_length_histogram(trace, bins);
    for (size_t b = 0; b < bins.size(); ++b) r.train_histogram.emplace_back(bins[b].label, counts[b]);

    for (int i = 0; i < trace.zones; ++i) {
        std::vector<int> one{i};
        r.rejection_by_zone.push_back(rejection_rate(trace, 0, trace.day_slots, &one));
    }
    for (long from = 0; from < trace.day_slots; from += window_slots) {
        const long to = std::min(trace.day_slots, from + window_slots);
        r.rejection_by_window.emplace_back(std::to_string(from) + "-" + std::to_string(to),
                                           rejection_rate(trace, from, to));
    }

    double flow_sum = 0.0, assign_sum = 0.0;
    long flow_n = 0;
    for (const auto& p : trace.plans) {
        flow_sum += p.flow_solve_ms;
        assign_sum += p.assign_solve_ms;
        r.flow_solve_ms_max = std::max(r.flow_solve_ms_max, p.flow_solve_ms);
        r.assign_solve_ms_max = std::max(r.assign_solve_ms_max, p.assign_solve_ms);
        ++flow_n;
    }
    if (flow_n > 0) {
        r.flow_solve_ms_mean = flow_sum / static_cast<double>(flow_n);
        r.assign_solve_ms_mean = assign_sum / static_cast<double>(flow_n);
    }
    return r;
}

struct Aggregate {
    double mean = kUndefined;
    double ci95_half = kUndefined;
    int n = 0;
};

// Two-sided 95% Student-t critical value; degrees of freedom round down to
// the nearest table entry, which errs on the wide side.
inline double t_critical_95(int dof) {
    static const std::pair<int, double> table[] = {
        {1, 12.706}, {2, 4.303}, {3, 3.182}, {4, 2.776}, {5, 2.571}, {6, 2.447}, {7, 2.365},
        {8, 2.306},  {9, 2.262}, {10, 2.228}, {11, 2.201}, {12, 2.179}, {13, 2.160}, {14, 2.145},
        {15, 2.131}, {16, 2.120}, {17, 2.110}, {18, 2.101}, {19, 2.093}, {20, 2.086}, {21, 2.080},
        {22, 2.074}, {23, 2.069}, {24, 2.064}, {25, 2.060}, {26, 2.056}, {27, 2.052}, {28, 2.048},
        {29, 2.045}, {30, 2.042}, {40, 2.021}, {60, 2.000}, {120, 1.980}};
    if (dof < 1)
        throw input_error("t_critical_95: dof must be >= 1");
    double value = 1.960;  // asymptotic
    for (const auto& [d, t] : table)
        if (dof >= d) value = t;
    return value;
}

// Mean and 95% confidence half-width across replications; NaN samples are
// dropped, and fewer than two valid samples yield no interval.
inline Aggregate aggregate_metric(const std::vector<double>& samples) {
    Aggregate a;
    std::vector<double> valid;
    for (double s : samples)
        if (!std::isnan(s) && !std::isinf(s)) valid.push_back(s);
    a.n = static_cast<int>(valid.size());
    if (valid.empty()) return a;
    double sum = 0.0;
    for (double v : valid) sum += v;
    a.mean = sum / static_cast<double>(valid.size());
    if (valid.size() < 2) return a;
    double ss = 0.0;
    for (double v : valid) ss += (v - a.mean) * (v - a.mean);
    const double sd = std::sqrt(ss / static_cast<double>(valid.size() - 1));
    a.ci95_half = t_critical_95(static_cast<int>(valid.size()) - 1) * sd /
                  std::sqrt(static_cast<double>(valid.size()));
    return a;
}

namespace detail {

inline const std::vector<std::pair<std::string, double KpiReport::*>>& numeric_kpi_fields() {
    static const std::vector<std::pair<std::string, double KpiReport::*>> fields = {
        {"rejection_rate_pct", &KpiReport::rejection_rate_pct},
        {"utilization_pct", &KpiReport::utilization_pct},
        {"peak_utilization_pct", &KpiReport::peak_utilization_pct},
        {"tasks_per_relocator", &KpiReport::tasks_per_relocator},
        {"relocated_per_relocation_slot", &KpiReport::relocated_per_relocation_slot},
        {"relocated_per_relocation_hour", &KpiReport::relocated_per_relocation_hour},
        {"relocation_to_passenger_time_ratio", &KpiReport::relocation_to_passenger_time_ratio},
        {"rebalancing_time_fraction_pct", &KpiReport::rebalancing_time_fraction_pct},
    };
    return fields;
}

inline std::string csv_number(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

inline std::map<std::string, Aggregate> aggregate_reports(const std::vector<KpiReport>& reports) {
    std::map<std::string, Aggregate> out;
    for (const auto& [name, member] : detail::numeric_kpi_fields()) {
        std::vector<double> samples;
        samples.reserve(reports.size());
        for (const auto& r : reports) samples.push_back(r.*member);
        out[name] = aggregate_metric(samples);
    }
    return out;
}

inline void to_json(nlohmann::json& j, const Aggregate& a) {
    j = nlohmann::json{{"mean", std::isnan(a.mean) ? nlohmann::json() : nlohmann::json(a.mean)},
                       {"ci95_half", std::isnan(a.ci95_half) ? nlohmann::json() : nlohmann::json(a.ci95_half)},
                       {"n", a.n}};
}

inline void to_json(nlohmann::json& j, const KpiReport& r);
inline void from_json(const nlohmann::json& j, KpiReport& r);

namespace detail {

inline nlohmann::json json_number(double v) {
    if (std::isnan(v)) return nlohmann::json();
    if (std::isinf(v)) return nlohmann::json(v > 0 ? "inf" : "-inf");
    return nlohmann::json(v);
}

inline double number_from_json(const nlohmann::json& j) {
    if (j.is_null()) return kUndefined;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw input_error("report json: bad numeric string '" + s + "'");
    }
    return j.get<double>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const KpiReport& r) {
    j = nlohmann::json{
        {"day", r.day},
        {"scheme", r.scheme},
        {"predictor", r.predictor},
        {"seed", r.seed},
        {"day_slots", r.day_slots},
        {"zones", r.zones},
        {"fleet", r.fleet},
        {"operators", r.operators},
        {"total_requests", r.total_requests},
        {"admissions", r.admissions},
        {"rejections", r.rejections},
        {"rejection_rate_pct", detail::json_number(r.rejection_rate_pct)},
        {"utilization_pct", detail::json_number(r.utilization_pct)},
        {"peak_utilization_pct", detail::json_number(r.peak_utilization_pct)},
        {"completed_tasks", r.completed_tasks},
        {"relocated_vehicles", r.relocated_vehicles},
        {"aborted_tasks", r.aborted_tasks},
        {"skipped_dispatches", r.skipped_dispatches},
        {"planned_flow_total", r.planned_flow_total},
        {"overtime_slots", r.overtime_slots},
        {"tasks_per_relocator", detail::json_number(r.tasks_per_relocator)},
        {"relocated_per_relocation_slot", detail::json_number(r.relocated_per_relocation_slot)},
        {"relocated_per_relocation_hour", detail::json_number(r.relocated_per_relocation_hour)},
        {"relocation_to_passenger_time_ratio", detail::json_number(r.relocation_to_passenger_time_ratio)},
        {"rebalancing_time_fraction_pct", detail::json_number(r.rebalancing_time_fraction_pct)},
        {"train_histogram", r.train_histogram},
        {"rejection_by_zone", nlohmann::json::array()},
        {"rejection_by_window", nlohmann::json::array()},
        {"flow_solve_ms_mean", r.flow_solve_ms_mean},
        {"flow_solve_ms_max", r.flow_solve_ms_max},
        {"assign_solve_ms_mean", r.assign_solve_ms_mean},
        {"assign_solve_ms_max", r.assign_solve_ms_max},
    };
    for (double v : r.rejection_by_zone) j["rejection_by_zone"].push_back(detail::json_number(v));
    for (const auto& [label, v] : r.rejection_by_window)
        j["rejection_by_window"].push_back({label, detail::json_number(v)});
}

inline void from_json(const nlohmann::json& j, KpiReport& r) {
    r.day = j.at("day").get<std::string>();
    r.scheme = j.at("scheme").get<std::string>();
    r.predictor = j.at("predictor").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.day_slots = j.at("day_slots").get<long>();
    r.zones = j.at("zones").get<int>();
    r.fleet = j.at("fleet").get<int>();
    r.operators = j.at("operators").get<int>();
    r.total_requests = j.at("total_requests").get<long>();
    r.admissions = j.at("admissions").get<long>();
    r.rejections = j.at("rejections").get<long>();
    r.rejection_rate_pct = detail::number_from_json(j.at("rejection_rate_pct"));
    r.utilization_pct = detail::number_from_json(j.at("utilization_pct"));
    r.peak_utilization_pct = detail::number_from_json(j.at("peak_utilization_pct"));
    r.completed_tasks = j.at("completed_tasks").get<long>();
    r.relocated_vehicles = j.at("relocated_vehicles").get<long>();
    r.aborted_tasks = j.at("aborted_tasks").get<long>();
    r.skipped_dispatches = j.at("skipped_dispatches").get<long>();
    r.planned_flow_total = j.at("planned_flow_total").get<long>();
    r.overtime_slots = j.at("overtime_slots").get<long>();
    r.tasks_per_relocator = detail::number_from_json(j.at("tasks_per_relocator"));
    r.relocated_per_relocation_slot = detail::number_from_json(j.at("relocated_per_relocation_slot"));
    r.relocated_per_relocation_hour = detail::number_from_json(j.at("relocated_per_relocation_hour"));
    r.relocation_to_passenger_time_ratio =
        detail::number_from_json(j.at("relocation_to_passenger_time_ratio"));
    r.rebalancing_time_fraction_pct = detail::number_from_json(j.at("rebalancing_time_fraction_pct"));
    r.train_histogram = j.at("train_histogram").get<std::vector<std::pair<std::string, long>>>();
    r.rejection_by_zone.clear();
    for (const auto& v : j.at("rejection_by_zone")) r.rejection_by_zone.push_back(detail::number_from_json(v));
    r.rejection_by_window.clear();
    for (const auto& item : j.at("rejection_by_window"))
        r.rejection_by_window.emplace_back(item.at(0).get<std::string>(),
                                           detail::number_from_json(item.at(1)));
    r.flow_solve_ms_mean = j.at("flow_solve_ms_mean").get<double>();
    r.flow_solve_ms_max = j.at("flow_solve_ms_max").get<double>();
    r.assign_solve_ms_mean = j.at("assign_solve_ms_mean").get<double>();
    r.assign_solve_ms_max = j.at("assign_solve_ms_max").get<double>();
}

// CSV: one row per run in fixed column order plus aggregate mean and
// ci95_half rows; wall-clock columns are deliberately absent so equal-seed
// reruns produce byte-identical files. NaN prints as an empty cell.
inline void write_report_csv(const std::vector<KpiReport>& reports, const std::string& path) {
    if (reports.empty())
        throw input_error("write_report_csv: no reports");
    std::ofstream out(path);
    if (!out)
        throw data_error("report not writable: " + path);
    out << "day,seed,scheme,predictor,fleet,operators,day_slots,total_requests,admissions,rejections,"
           "rejection_rate_pct,utilization_pct,peak_utilization_pct,completed_tasks,relocated_vehicles,"
           "tasks_per_relocator,relocated_per_relocation_hour,relocation_to_passenger_time_ratio,"
           "rebalancing_time_fraction_pct,planned_flow_total,aborted_tasks,skipped_dispatches,overtime_slots\n";
    for (const auto& r : reports) {
        out << r.day << ',' << r.seed << ',' << r.scheme << ',' << r.predictor << ',' << r.fleet << ','
            << r.operators << ',' << r.day_slots << ',' << r.total_requests << ',' << r.admissions << ','
            << r.rejections << ',' << detail::csv_number(r.rejection_rate_pct) << ','
            << detail::csv_number(r.utilization_pct) << ',' << detail::csv_number(r.peak_utilization_pct)
            << ',' << r.completed_tasks << ',' << r.relocated_vehicles << ','
            << detail::csv_number(r.tasks_per_relocator) << ','
            << detail::csv_number(r.relocated_per_relocation_hour) << ','
            << detail::csv_number(r.relocation_to_passenger_time_ratio) << ','
            << detail::csv_number(r.rebalancing_time_fraction_pct) << ',' << r.planned_flow_total << ','
            << r.aborted_tasks << ',' << r.skipped_dispatches << ',' << r.overtime_slots << '\n';
    }
    const auto agg = aggregate_reports(reports);
    auto agg_row = [&](const char* label, auto select) {
        out << "aggregate," << label << ",,,,,,,,,";
        out << detail::csv_number(select(agg.at("rejection_rate_pct"))) << ','
            << detail::csv_number(select(agg.at("utilization_pct"))) << ','
            << detail::csv_number(select(agg.at("peak_utilization_pct"))) << ",,,"
            << detail::csv_number(select(agg.at("tasks_per_relocator"))) << ','
            << detail::csv_number(select(agg.at("relocated_per_relocation_hour"))) << ','
            << detail::csv_number(select(agg.at("relocation_to_passenger_time_ratio"))) << ','
            << detail::csv_number(select(agg.at("rebalancing_time_fraction_pct"))) << ",,,,\n";
    };
    agg_row("mean", [](const Aggregate& a) { return a.mean; });
    agg_row("ci95_half", [](const Aggregate& a) { return a.ci95_half; });
}

inline void write_report_json(const std::vector<KpiReport>& reports, const std::string& path) {
    if (reports.empty())
        throw input_error("write_report_json: no reports");
    nlohmann::json j;
    j["runs"] = reports;
    j["aggregate"] = aggregate_reports(reports);
    std::ofstream out(path);
    if (!out)
        throw data_error("report not writable: " + path);
    out << j.dump(2) << '\n';
}

// Line-delimited trace: a meta line, then plan, event, and slot lines in
// deterministic order. Solver wall-times appear only here, never in CSVs.
inline void write_trace_jsonl(const SimulationTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw data_error("trace not writable: " + path);
    nlohmann::json meta{{"type", "meta"},
                        {"day", trace.day},
                        {"scheme", trace.scheme},
                        {"predictor", trace.predictor},
                        {"seed", trace.seed},
                        {"day_slots", trace.day_slots},
                        {"zones", trace.zones},
                        {"fleet", trace.fleet},
                        {"operators", trace.operator_count},
                        {"total_requests", trace.total_requests},
                        {"admissions", trace.admissions},
                        {"rejections", trace.rejections},
                        {"overtime_slots", trace.overtime_slots},
                        {"conservation_ok", trace.conservation_ok},
                        {"trajectory_digest", trace.trajectory_digest()}};
    out << meta.dump() << '\n';
    for (const auto& p : trace.plans) {
        nlohmann::json jp{{"type", "plan"},     {"k", p.k},
                          {"slot", p.slot},     {"estimator", p.estimator},
                          {"b", p.b},           {"flow_objective", p.flow_objective},
                          {"realized", p.realized},
                          {"assignment_objective", p.assignment_objective},
                          {"flow_solve_ms", p.flow_solve_ms},
                          {"assign_solve_ms", p.assign_solve_ms}};
        jp["flows"] = nlohmann::json::array();
        for (const auto& [pair, x] : p.flows)
            jp["flows"].push_back({{"from", pair.first}, {"to", pair.second}, {"x", x}});
        jp["tasks"] = nlohmann::json::array();
        for (const auto& [pair, sizes] : p.tasks)
            jp["tasks"].push_back({{"from", pair.first}, {"to", pair.second}, {"sizes", sizes}});
        jp["assignments"] = nlohmann::json::array();
        for (const auto& a : p.assignments)
            jp["assignments"].push_back({{"operator", a.operator_id},
                                         {"feeder", a.feeder},
                                         {"receiver", a.receiver},
                                         {"task", a.task_index},
                                         {"size", a.planned_size},
                                         {"start", a.start_slot},
                                         {"pickup", a.pickup_slot},
                                         {"completion", a.completion_slot},
                                         {"approach", a.approach_slots}});
        jp["robotic_rates"] = nlohmann::json::array();
        for (const auto& [pair, rate] : p.robotic_rates)
            jp["robotic_rates"].push_back({{"from", pair.first}, {"to", pair.second}, {"rate", rate}});
        out << jp.dump() << '\n';
    }
    for (const auto& e : trace.events) {
        nlohmann::json je{{"type", "event"},
                          {"slot", e.slot},
                          {"kind", event_name(e.kind)},
                          {"origin", e.origin},
                          {"destination", e.destination},
                          {"size", e.size},
                          {"duration", e.duration},
                          {"mode", std::string(1, e.mode)},
                          {"operator", e.operator_id},
                          {"towed", e.towed}};
        out << je.dump() << '\n';
    }
    for (const auto& s : trace.slots) {
        nlohmann::json js{{"type", "slot"},
                          {"slot", s.slot},
                          {"admissions", s.admissions},
                          {"rejections", s.rejections},
                          {"relocations_inflight", s.relocations_inflight},
                          {"idle_operators", s.idle_operators}};
        out << js.dump() << '\n';
    }
}

inline void write_slot_csv(const SimulationTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw data_error("slot csv not writable: " + path);
    out << "slot,admissions,rejections,relocations_inflight,idle_operators\n";
    for (const auto& s : trace.slots)
        out << s.slot << ',' << s.admissions << ',' << s.rejections << ',' << s.relocations_inflight
            << ',' << s.idle_operators << '\n';
}

}  // namespace relokit
