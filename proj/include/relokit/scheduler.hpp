#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "relokit/core.hpp"
#include "relokit/mincostflow.hpp"
#include "relokit/predictor.hpp"

namespace relokit {

struct AssignmentResult {
    std::vector<Assignment> assignments;
    long long objective_scaled = 0;  // sum of p*n_R - (a_u + operator travel), integer
    double objective = 0.0;          // objective_scaled / n_R, the natural units
};

namespace detail {

struct FlatTask {
    int feeder;
    int receiver;
    int index;
    int size;
};

inline std::vector<FlatTask> flatten_tasks(const std::map<ZonePair, std::vector<int>>& tasks) {
    std::vector<FlatTask> flat;
    for (const auto& [pair, trains] : tasks)
        for (int l = 0; l < static_cast<int>(trains.size()); ++l)
            flat.push_back({pair.first, pair.second, l, trains[static_cast<size_t>(l)]});
    return flat;
}

// Scaled matching weight of operator u taking a task at feeder i; feasible
// weights under a + travel + T <= n_R with T >= 1 are strictly positive.
inline long long task_weight(const OperatorState& op, const FlatTask& task,
                             const ServiceNetwork& network, const TimeGrid& grid) {
    return static_cast<long long>(task.size) * grid.n_R -
           (op.residual_time + network.operator_travel_time(op.destination_zone, task.feeder));
}

inline bool task_feasible(const OperatorState& op, const FlatTask& task,
                          const ServiceNetwork& network, const TimeGrid& grid) {
    return op.residual_time + network.operator_travel_time(op.destination_zone, task.feeder) +
               network.travel_time(task.feeder, task.receiver) <=
           grid.n_R;
}

}  // namespace detail

// One-to-one matching of operators to train tasks maximizing the summed
// efficiency p - (a_u + travel(s_u, i))/T_R over pairs that can finish inside
// the relocation bound. Exact optimum via min-cost flow on unit capacities;
// weights are compared in integer n_R-scaled form. Unmatched tasks stay
// unassigned for this interval. start_slot stamps the returned assignments
// with absolute pickup and completion slots.
inline AssignmentResult assign_operators(const std::map<ZonePair, std::vector<int>>& tasks,
                                         const std::vector<OperatorState>& operators,
                                         const ServiceNetwork& network, const TimeGrid& grid,
                                         long start_slot = 0) {
    AssignmentResult out;
    const auto flat = detail::flatten_tasks(tasks);
    if (flat.empty() || operators.empty()) return out;
    for (const auto& t : flat)
        if (t.size < 1)
            throw input_error("assign_operators: task with empty train");

    const int M = static_cast<int>(operators.size());
    const int Tn = static_cast<int>(flat.size());
    MinCostFlow net(2 + M + Tn);
    const int source = 0, sink = 1;
    for (int u = 0; u < M; ++u)
        net.add_arc(source, 2 + u, 1, 0);
    std::vector<std::pair<std::pair<int, int>, int>> pair_arcs;  // ((operator, task), arc id)
    for (int u = 0; u < M; ++u) {
        for (int t = 0; t < Tn; ++t) {
            const auto& op = operators[static_cast<size_t>(u)];
            const auto& task = flat[static_cast<size_t>(t)];
            if (!detail::task_feasible(op, task, network, grid)) continue;
            const long long w = detail::task_weight(op, task, network, grid);
            if (w <= 0) continue;
            const int id = net.add_arc(2 + u, 2 + M + t, 1, -w);
            pair_arcs.push_back({{u, t}, id});
        }
    }
    for (int t = 0; t < Tn; ++t)
        net.add_arc(2 + M + t, sink, 1, 0);

    const auto result = net.solve_negative(source, sink);
    out.objective_scaled = -result.cost;
    out.objective = static_cast<double>(out.objective_scaled) / grid.n_R;
    for (const auto& [pair, arc] : pair_arcs) {
        if (net.flow_on(arc) <= 0) continue;
        const auto& op = operators[static_cast<size_t>(pair.first)];
        const auto& task = flat[static_cast<size_t>(pair.second)];
        Assignment a;
        a.operator_id = op.id;
        a.feeder = task.feeder;
        a.receiver = task.receiver;
        a.task_index = task.index;
        a.planned_size = task.size;
        a.start_slot = start_slot;
        a.approach_slots = network.operator_travel_time(op.destination_zone, task.feeder);
        a.pickup_slot = start_slot + op.residual_time + a.approach_slots;
        a.completion_slot = a.pickup_slot + network.travel_time(task.feeder, task.receiver);
        out.assignments.push_back(a);
    }
    return out;
}

// Exhaustive oracle: tries every injective partial mapping of tasks to
// feasible operators. Guarded against instances beyond (M+1)^tasks = 10^7.
inline long long brute_force_assignment(const std::map<ZonePair, std::vector<int>>& tasks,
                                        const std::vector<OperatorState>& operators,
                                        const ServiceNetwork& network, const TimeGrid& grid) {
    const auto flat = detail::flatten_tasks(tasks);
    const int M = static_cast<int>(operators.size());
    double combos = 1.0;
    for (size_t t = 0; t < flat.size(); ++t) combos *= M + 1;
    if (combos > 1e7)
        throw oracle_too_large("brute_force_assignment: instance beyond enumeration guard");

    std::vector<char> used(static_cast<size_t>(M), 0);
    long long best = 0;
    auto recurse = [&](auto&& self, size_t t, long long acc) -> void {
        if (t == flat.size()) {
            best = std::max(best, acc);
            return;
        }
        self(self, t + 1, acc);  // leave task t unassigned
        for (int u = 0; u < M; ++u) {
            if (used[static_cast<size_t>(u)]) continue;
            const auto& op = operators[static_cast<size_t>(u)];
            if (!detail::task_feasible(op, flat[t], network, grid)) continue;
            const long long w = detail::task_weight(op, flat[t], network, grid);
            if (w <= 0) continue;
            used[static_cast<size_t>(u)] = 1;
            self(self, t + 1, acc + w);
            used[static_cast<size_t>(u)] = 0;
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

// Rolls an operator's state one planning period forward. With a new task the
// busy time is the full task span; either way n_C slots elapse.
inline OperatorState update_operator_state(const OperatorState& op, const Assignment* assignment,
                                           const TimeGrid& grid) {
    OperatorState next = op;
    if (assignment != nullptr) {
        next.residual_time = static_cast<int>(
            std::max<long>(0, (assignment->completion_slot - assignment->start_slot) - grid.n_C));
        next.destination_zone = assignment->receiver;
    } else {
        next.residual_time = std::max(0, op.residual_time - grid.n_C);
    }
    return next;
}

// User-based relocation test for one admitted request: the trip must run
// from a feeder to a receiver that still has planned flow, the origin must
// hold a second vehicle to tow, and the customer must accept (stored
// willingness draw below gamma). On success the live flow is decremented.
inline bool user_based_decide(const TripRequest& request, std::map<ZonePair, int>& live_flows,
                              const ImbalanceReport& report, double gamma, int available_at_origin) {
    if (gamma <= 0.0) return false;
    if (!report.is_feeder(request.origin) || !report.is_receiver(request.destination)) return false;
    if (available_at_origin < 2) return false;
    auto it = live_flows.find({request.origin, request.destination});
    if (it == live_flows.end() || it->second <= 0) return false;
    if (!(request.customer_willingness < gamma)) return false;
    --it->second;
    return true;
}

struct RoboticDispatch {
    int feeder = 0;
    int receiver = 0;
    long slot = 0;
};

// Dispatch plan for autonomous relocation: per pair a constant rate
// alpha = x / (n_R - T(i,j)) and the slots inside the decision interval at
// which single vehicles depart (the m-th after ceil(m/alpha) slots).
struct RoboticSchedule {
    std::map<ZonePair, double> rates;
    std::vector<RoboticDispatch> dispatches;  // sorted by slot, then pair
};

inline RoboticSchedule robotic_rates(const std::map<ZonePair, int>& flows, const ServiceNetwork& network,
                                     const TimeGrid& grid, long decision_slot = 0) {
    RoboticSchedule schedule;
    for (const auto& [pair, x] : flows) {
        if (x <= 0) continue;
        const long long gap = static_cast<long long>(grid.n_R) - network.travel_time(pair.first, pair.second);
        if (gap <= 0)
            throw input_error("robotic_rates: flow on a pair with no slack before the bound");
        schedule.rates[pair] = static_cast<double>(x) / static_cast<double>(gap);
        for (long long m = 1; m <= x; ++m) {
            const long long offset = (m * gap + x - 1) / x;  // ceil(m/alpha), exact in integers
            if (offset > grid.n_C) break;
            schedule.dispatches.push_back({pair.first, pair.second, decision_slot + offset - 1});
        }
    }
    std::stable_sort(schedule.dispatches.begin(), schedule.dispatches.end(),
                     [](const RoboticDispatch& a, const RoboticDispatch& b) {
                         if (a.slot != b.slot) return a.slot < b.slot;
                         if (a.feeder != b.feeder) return a.feeder < b.feeder;
                         return a.receiver < b.receiver;
                     });
    return schedule;
}

}  // namespace relokit
