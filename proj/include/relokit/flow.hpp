#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "relokit/core.hpp"
#include "relokit/mincostflow.hpp"
#include "relokit/predictor.hpp"

namespace relokit {

// Per-pair utility of relocating one vehicle, in slot units: the residual
// time n_R - T(i,j) for a feeder-receiver pair, -n_R for every other pair.
struct UtilityMatrix {
    int zones = 0;
    int n_R = 0;
    std::vector<long long> J;

    [[nodiscard]] long long at(int i, int j) const { return J[static_cast<size_t>(i) * zones + j]; }
};

inline UtilityMatrix utility_matrix(const ImbalanceReport& report, const ServiceNetwork& network,
                                    const TimeGrid& grid) {
    const int n = network.zone_count();
    if (static_cast<int>(report.b.size()) != n)
        throw input_error("utility_matrix: report does not match network");
    UtilityMatrix u;
    u.zones = n;
    u.n_R = grid.n_R;
    u.J.assign(static_cast<size_t>(n) * n, -grid.n_R);
    for (int i : report.feeders)
        for (int j : report.receivers)
            u.J[static_cast<size_t>(i) * n + j] = static_cast<long long>(grid.n_R) - network.travel_time(i, j);
    return u;
}

struct FlowSolution {
    std::map<ZonePair, int> flows;
    long long objective = 0;
};

// Transportation problem: maximize sum J*x subject to per-feeder supply b_i
// and per-receiver demand -b_j, integer x. Pairs with J <= 0 never carry
// flow (a relocation that cannot finish inside the bound, or finishes with
// nothing to spare, is not worth scheduling). Solved as min-cost flow with
// costs -J; stopping at the first non-negative path makes the solution an
// exact maximizer rather than a maximum flow.
inline FlowSolution solve_relocation_flows(const ImbalanceReport& report, const UtilityMatrix& utility,
                                           const TimeGrid& grid) {
    (void)grid;
    FlowSolution out;
    if (report.feeders.empty() || report.receivers.empty()) return out;

    const int nf = static_cast<int>(report.feeders.size());
    const int nr = static_cast<int>(report.receivers.size());
    MinCostFlow net(2 + nf + nr);
    const int source = 0, sink = 1;
    auto feeder_node = [&](int fi) { return 2 + fi; };
    auto receiver_node = [&](int ri) { return 2 + nf + ri; };

    for (int fi = 0; fi < nf; ++fi)
        net.add_arc(source, feeder_node(fi), report.b[static_cast<size_t>(report.feeders[static_cast<size_t>(fi)])], 0);
    std::vector<std::pair<ZonePair, int>> pair_arcs;
    for (int fi = 0; fi < nf; ++fi) {
        for (int ri = 0; ri < nr; ++ri) {
            const int i = report.feeders[static_cast<size_t>(fi)];
            const int j = report.receivers[static_cast<size_t>(ri)];
            const long long J = utility.at(i, j);
            if (J <= 0) continue;
            const int id = net.add_arc(feeder_node(fi), receiver_node(ri),
                                       std::numeric_limits<long long>::max() / 8, -J);
            pair_arcs.emplace_back(ZonePair{i, j}, id);
        }
    }
    for (int ri = 0; ri < nr; ++ri)
        net.add_arc(receiver_node(ri), sink, -report.b[static_cast<size_t>(report.receivers[static_cast<size_t>(ri)])], 0);

    const auto result = net.solve_negative(source, sink);
    out.objective = -result.cost;
    for (const auto& [pair, arc] : pair_arcs) {
        const long long x = net.flow_on(arc);
        if (x > 0) out.flows[pair] = static_cast<int>(x);
    }
    return out;
}

// Exhaustive oracle over every feasible integer flow matrix, all pairs
// included regardless of utility sign. Guarded: the enumeration count (ways
// to split each feeder's supply over the receivers, multiplied across
// feeders) must stay within 10^7.
inline FlowSolution brute_force_flows(const ImbalanceReport& report, const UtilityMatrix& utility) {
    FlowSolution best;
    if (report.feeders.empty() || report.receivers.empty()) return best;

    const int nf = static_cast<int>(report.feeders.size());
    const int nr = static_cast<int>(report.receivers.size());
    double combos = 1.0;
    for (int i : report.feeders) {
        const long long b = report.b[static_cast<size_t>(i)];
        double ways = 1.0;  // C(b + nr, nr): weak compositions of <= b into nr cells
        for (int r = 1; r <= nr; ++r) ways = ways * static_cast<double>(b + r) / r;
        combos *= ways;
        if (combos > 1e7)
            throw oracle_too_large("brute_force_flows: instance beyond enumeration guard");
    }
    std::vector<long long> supply, demand;
    for (int i : report.feeders) supply.push_back(report.b[static_cast<size_t>(i)]);
    for (int j : report.receivers) demand.push_back(-report.b[static_cast<size_t>(j)]);

    std::vector<int> x(static_cast<size_t>(nf) * nr, 0);
    std::vector<int> best_x;
    long long best_obj = 0;  // all-zero flow is always feasible
    bool have_best = false;

    auto recurse = [&](auto&& self, int cell, long long obj) -> void {
        if (cell == nf * nr) {
            if (!have_best || obj > best_obj) {
                have_best = true;
                best_obj = obj;
                best_x = x;
            }
            return;
        }
        const int fi = cell / nr;
        const int ri = cell % nr;
        const int i = report.feeders[static_cast<size_t>(fi)];
        const int j = report.receivers[static_cast<size_t>(ri)];
        const long long limit = std::min(supply[static_cast<size_t>(fi)], demand[static_cast<size_t>(ri)]);
        for (long long v = 0; v <= limit; ++v) {
            x[static_cast<size_t>(cell)] = static_cast<int>(v);
            supply[static_cast<size_t>(fi)] -= v;
            demand[static_cast<size_t>(ri)] -= v;
            self(self, cell + 1, obj + v * utility.at(i, j));
            supply[static_cast<size_t>(fi)] += v;
            demand[static_cast<size_t>(ri)] += v;
        }
        x[static_cast<size_t>(cell)] = 0;
    };
    recurse(recurse, 0, 0);

    best.objective = best_obj;
    for (int fi = 0; fi < nf; ++fi) {
        for (int ri = 0; ri < nr; ++ri) {
            const int v = best_x.empty() ? 0 : best_x[static_cast<size_t>(fi) * nr + ri];
            if (v > 0)
                best.flows[{report.feeders[static_cast<size_t>(fi)], report.receivers[static_cast<size_t>(ri)]}] = v;
        }
    }
    return best;
}

// Greedy decomposition of a flow into ceil(x/eta) trains, full ones first.
inline std::vector<int> split_into_tasks(int flow, int eta) {
    if (eta < 1)
        throw input_error("split_into_tasks: eta must be >= 1");
    if (flow < 0)
        throw input_error("split_into_tasks: negative flow");
    std::vector<int> trains;
    while (flow >= eta) {
        trains.push_back(eta);
        flow -= eta;
    }
    if (flow > 0) trains.push_back(flow);
    return trains;
}

inline std::map<ZonePair, std::vector<int>> split_into_tasks(const std::map<ZonePair, int>& flows, int eta) {
    std::map<ZonePair, std::vector<int>> tasks;
    for (const auto& [pair, x] : flows) {
        auto trains = split_into_tasks(x, eta);
        if (!trains.empty()) tasks[pair] = std::move(trains);
    }
    return tasks;
}

}  // namespace relokit
