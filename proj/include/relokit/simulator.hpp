#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "relokit/core.hpp"
#include "relokit/demand.hpp"
#include "relokit/flow.hpp"
#include "relokit/predictor.hpp"
#include "relokit/rng.hpp"
#include "relokit/scheduler.hpp"

namespace relokit {

enum class Scheme { none, operator_based, user_based, robotic };
enum class PredictorKind { worst_case, probabilistic, exact_oracle };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::none: return "none";
        case Scheme::operator_based: return "operator";
        case Scheme::user_based: return "user";
        case Scheme::robotic: return "robotic";
    }
    return "?";
}

inline const char* predictor_name(PredictorKind p) {
    switch (p) {
        case PredictorKind::worst_case: return "worst-case";
        case PredictorKind::probabilistic: return "probabilistic";
        case PredictorKind::exact_oracle: return "exact-oracle";
    }
    return "?";
}

// Operator duty window in absolute slots, half-open. An operator belongs to
// the eligible roster of decision interval k iff the window covers k*n_C.
struct OperatorShift {
    long start = 0;
    long end = std::numeric_limits<long>::max();
};

struct ScenarioConfig {
    TimeGrid grid;
    Scheme scheme = Scheme::none;
    int eta = 7;                     // max towed train size, operator-based
    double gamma = 1.0;              // customer acceptance probability, user-based
    PredictorKind predictor = PredictorKind::worst_case;
    double epsilon = 0.05;           // shortage tolerance, probabilistic predictor
    int beta_cap = 20;
    int fleet = 0;                   // K
    int operator_count = 0;          // M
    std::vector<OperatorShift> shifts;           // per operator; missing entries mean always on duty
    std::vector<int> operator_start_zones;       // empty: round-robin over zones
    std::uint64_t seed = 0;
    long day_slots = 1440;
    bool record_inventory = false;

    void validate() const {
        if (fleet < 0 || operator_count < 0)
            throw config_error("scenario: fleet and operator counts must be >= 0");
        if (scheme == Scheme::operator_based && eta < 1)
            throw config_error("scenario: eta must be >= 1 for the operator scheme");
        if (scheme == Scheme::user_based && (gamma < 0.0 || gamma > 1.0))
            throw config_error("scenario: gamma must lie in [0,1]");
        if (predictor == PredictorKind::probabilistic && !(epsilon > 0.0 && epsilon < 1.0))
            throw config_error("scenario: epsilon must lie in (0,1)");
        if (beta_cap < 1)
            throw config_error("scenario: beta cap must be >= 1");
        if (day_slots < grid.n_C)
            throw config_error("scenario: day shorter than one planning period");
    }
};

enum class EventKind {
    admission,
    rejection,
    relocation_depart,
    relocation_arrive,
    task_aborted,
    dispatch_skipped
};

inline const char* event_name(EventKind k) {
    switch (k) {
        case EventKind::admission: return "admission";
        case EventKind::rejection: return "rejection";
        case EventKind::relocation_depart: return "relocation_depart";
        case EventKind::relocation_arrive: return "relocation_arrive";
        case EventKind::task_aborted: return "task_aborted";
        case EventKind::dispatch_skipped: return "dispatch_skipped";
    }
    return "?";
}

struct TraceEvent {
    long slot = 0;
    EventKind kind = EventKind::admission;
    int origin = -1;
    int destination = -1;
    int size = 0;      // vehicles moved (train size; 1 for plain trips)
    int duration = 0;  // travel slots of the trip or relocation leg
    char mode = '-';   // 'o' operator, 'u' user tow, 'r' robotic
    int operator_id = -1;
    bool towed = false;  // admission that also tows a relocation vehicle
};

struct SlotSummary {
    long slot = 0;
    int admissions = 0;
    int rejections = 0;
    int relocations_inflight = 0;
    int idle_operators = 0;
};

struct PlanRecord {
    int k = 0;
    long slot = 0;
    std::string estimator;
    std::vector<long> b;
    std::map<ZonePair, int> flows;
    long long flow_objective = 0;
    std::map<ZonePair, std::vector<int>> tasks;
    std::vector<Assignment> assignments;
    std::vector<int> realized;  // per assignment, -1 until pickup
    double assignment_objective = 0.0;
    std::map<ZonePair, double> robotic_rates;
    double flow_solve_ms = 0.0;
    double assign_solve_ms = 0.0;
};

struct SimulationTrace {
    std::string day;
    std::string scheme;
    std::string predictor;
    std::uint64_t seed = 0;
    long day_slots = 0;
    int zones = 0;
    int fleet = 0;
    int operator_count = 0;

    std::vector<TraceEvent> events;
    std::vector<SlotSummary> slots;
    std::vector<PlanRecord> plans;
    std::vector<std::vector<int>> inventory_samples;

    long total_requests = 0;
    long admissions = 0;
    long rejections = 0;
    long overtime_slots = 0;
    bool conservation_ok = true;

    // Order-insensitive only across nothing: a plain rolling hash over the
    // trajectory-defining content. Wall-clock timings and labels excluded so
    // equal trajectories hash equal regardless of machine or scheme label.
    [[nodiscard]] std::uint64_t trajectory_digest() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0x100000001b3ULL;
        };
        for (const auto& e : events) {
            mix(static_cast<std::uint64_t>(e.slot));
            mix(static_cast<std::uint64_t>(e.kind));
            mix(static_cast<std::uint64_t>(e.origin + 1));
            mix(static_cast<std::uint64_t>(e.destination + 1));
            mix(static_cast<std::uint64_t>(e.size));
            mix(static_cast<std::uint64_t>(e.duration));
            mix(static_cast<std::uint64_t>(e.mode));
            mix(static_cast<std::uint64_t>(e.operator_id + 1));
            mix(e.towed ? 2 : 1);
        }
        for (const auto& s : slots) {
            mix(static_cast<std::uint64_t>(s.slot));
            mix(static_cast<std::uint64_t>(s.admissions));
            mix(static_cast<std::uint64_t>(s.rejections));
            mix(static_cast<std::uint64_t>(s.relocations_inflight));
            mix(static_cast<std::uint64_t>(s.idle_operators));
        }
        for (const auto& p : plans) {
            mix(static_cast<std::uint64_t>(p.k));
            for (long b : p.b) mix(static_cast<std::uint64_t>(b + (1L << 20)));
            for (const auto& [pair, x] : p.flows) {
                mix(static_cast<std::uint64_t>(pair.first));
                mix(static_cast<std::uint64_t>(pair.second));
                mix(static_cast<std::uint64_t>(x));
            }
            for (const auto& a : p.assignments) {
                mix(static_cast<std::uint64_t>(a.operator_id));
                mix(static_cast<std::uint64_t>(a.feeder));
                mix(static_cast<std::uint64_t>(a.receiver));
                mix(static_cast<std::uint64_t>(a.pickup_slot));
                mix(static_cast<std::uint64_t>(a.completion_slot));
                mix(static_cast<std::uint64_t>(a.planned_size));
            }
            for (const auto& [pair, r] : p.robotic_rates) {
                mix(static_cast<std::uint64_t>(pair.first));
                mix(static_cast<std::uint64_t>(pair.second));
                mix(static_cast<std::uint64_t>(r * 4096.0));
            }
        }
        return h;
    }
};

// Vehicles already heading to a zone that will land before the relocation
// bound of decision point k. Trains count every towed vehicle.
inline long compute_en_route_R(const SystemState& state, int zone, const TimeGrid& grid, long k) {
    const long bound = k * grid.n_C + grid.n_R;
    long R = 0;
    for (const auto& e : state.en_route)
        if (e.destination == zone && e.arrival_slot < bound) R += e.vehicle_count;
    return R;
}

namespace detail {

struct PendingTask {
    Assignment a;
    bool picked_up = false;
    int realized = -1;
    int plan_index = 0;     // index into trace.plans
    int record_index = 0;   // index into that plan's assignment list
};

struct OperatorInternal {
    int id = 0;
    long busy_until = 0;
    int zone = 0;
    OperatorShift shift;
};

class Engine {
public:
    Engine(const ScenarioConfig& config, const ServiceNetwork& network, const TripLog& demand,
           const std::vector<SlotCounts>& history, std::vector<int> initial_inventory)
        : cfg_(config), net_(network), demand_(demand), history_(history) {
        cfg_.validate();
        const int zones = net_.zone_count();
        if (demand_.zone_count != zones)
            throw config_error("run: demand log zone count differs from network");
        if (static_cast<int>(initial_inventory.size()) != zones)
            throw config_error("run: initial inventory must cover every zone");
        long total = 0;
        for (int v : initial_inventory) {
            if (v < 0) throw config_error("run: negative initial inventory");
            total += v;
        }
        if (total != cfg_.fleet)
            throw config_error("run: initial inventory sums to " + std::to_string(total) +
                               ", fleet is " + std::to_string(cfg_.fleet));
        const bool needs_history = cfg_.predictor != PredictorKind::exact_oracle;
        if (needs_history && history_.empty())
            throw config_error("run: predictor '" + std::string(predictor_name(cfg_.predictor)) +
                               "' needs at least one history day");
        for (const auto& h : history_)
            if (h.zones != zones)
                throw config_error("run: history day zone count differs from network");

        state_.slot = 0;
        state_.inventory = std::move(initial_inventory);
        for (int u = 0; u < cfg_.operator_count; ++u) {
            OperatorInternal op;
            op.id = u;
            op.zone = cfg_.operator_start_zones.empty()
                          ? u % zones
                          : cfg_.operator_start_zones[static_cast<size_t>(u) % cfg_.operator_start_zones.size()];
            if (op.zone < 0 || op.zone >= zones)
                throw config_error("run: operator start zone out of range");
            if (u < static_cast<int>(cfg_.shifts.size())) op.shift = cfg_.shifts[static_cast<size_t>(u)];
            operators_.push_back(op);
        }
    }

    SimulationTrace run() {
        SimulationTrace& t = trace_;
        t.day = demand_.day;
        t.scheme = scheme_name(cfg_.scheme);
        t.predictor = predictor_name(cfg_.predictor);
        t.seed = cfg_.seed;
        t.day_slots = cfg_.day_slots;
        t.zones = net_.zone_count();
        t.fleet = cfg_.fleet;
        t.operator_count = cfg_.operator_count;

        if (cfg_.predictor == PredictorKind::exact_oracle)
            eval_counts_ = slot_counts(demand_, net_.zone_count(), cfg_.day_slots + cfg_.grid.n_O);

        // Acceptance draws come from the run seed's own stream so replicas of
        // a fixed demand day still differ per seed under the user scheme.
        if (cfg_.scheme == Scheme::user_based) {
            SplitRng stream(substream(cfg_.seed, "willingness"));
            willingness_.resize(demand_.trips.size());
            for (double& w : willingness_) w = stream.next_unit();
        }

        size_t next_trip = 0;
        for (long s = 0; s < cfg_.day_slots; ++s) {
            state_.slot = s;
            if (s % cfg_.grid.n_C == 0) plan(s / cfg_.grid.n_C);
            land_arrivals(s);
            SlotSummary summary;
            summary.slot = s;
            while (next_trip < demand_.trips.size() &&
                   demand_.trips[next_trip].request_slot == s) {
                process_request(demand_.trips[next_trip], next_trip, summary);
                ++next_trip;
            }
            // Requests later than the configured day are outside the run.
            if (next_trip < demand_.trips.size() && demand_.trips[next_trip].request_slot >= cfg_.day_slots)
                next_trip = demand_.trips.size();
            execute_pickups(s);
            execute_robotic(s);
            summary.relocations_inflight = inflight_relocations();
            summary.idle_operators = idle_operator_count(s);
            t.slots.push_back(summary);
            check_conservation();
            if (cfg_.record_inventory) t.inventory_samples.push_back(state_.inventory);
        }

        // Overtime: land what is in the air and honor committed pickups, with
        // no new demand, dispatches, or planning.
        long s = cfg_.day_slots;
        while (!state_.en_route.empty() || unpicked_tasks()) {
            state_.slot = s;
            land_arrivals(s);
            execute_pickups(s);
            check_conservation();
            ++s;
            ++t.overtime_slots;
            if (t.overtime_slots > cfg_.day_slots + 4 * (cfg_.grid.n_R + cfg_.grid.n_O) + 1000)
                throw std::logic_error("run: overtime failed to drain");
        }
        return std::move(trace_);
    }

private:
    void plan(long k) {
        const long now = k * cfg_.grid.n_C;
        const int zones = net_.zone_count();
        PlanRecord record;
        record.k = static_cast<int>(k);
        record.slot = now;
        record.estimator = predictor_name(cfg_.predictor);
        record.b.resize(static_cast<size_t>(zones));

        std::optional<DemandModel> model;
        if (cfg_.predictor != PredictorKind::exact_oracle)
            model = build_demand_model(history_, cfg_.grid, k, cfg_.beta_cap);

        for (int i = 0; i < zones; ++i) {
            const long v = state_.inventory[static_cast<size_t>(i)];
            switch (cfg_.predictor) {
                case PredictorKind::worst_case: {
                    const long R = compute_en_route_R(state_, i, cfg_.grid, k);
                    record.b[static_cast<size_t>(i)] = static_cast<long>(
                        std::floor(worst_case_imbalance(v, R, model->C[static_cast<size_t>(i)])));
                    break;
                }
                case PredictorKind::probabilistic: {
                    ShortageCurve curve(*model, i);
                    record.b[static_cast<size_t>(i)] = probabilistic_imbalance(curve, v, cfg_.epsilon);
                    break;
                }
                case PredictorKind::exact_oracle: {
                    std::vector<int> A(static_cast<size_t>(cfg_.grid.n_O), 0);
                    std::vector<int> C(static_cast<size_t>(cfg_.grid.n_O), 0);
                    for (int t = 1; t <= cfg_.grid.n_O; ++t) {
                        const long abs = now + t - 1;
                        if (abs < eval_counts_.slots) {
                            A[static_cast<size_t>(t - 1)] = eval_counts_.arrival_count(i, abs);
                            C[static_cast<size_t>(t - 1)] = eval_counts_.request_count(i, abs);
                        }
                    }
                    for (const auto& e : state_.en_route) {
                        if (!e.relocation || e.destination != i) continue;
                        const long t = e.arrival_slot - now + 1;
                        if (t >= 1 && t <= cfg_.grid.n_O)
                            A[static_cast<size_t>(t - 1)] += e.vehicle_count;
                    }
                    record.b[static_cast<size_t>(i)] =
                        exact_imbalance(virtual_inventory(v, A, C, cfg_.grid.n_O));
                    break;
                }
            }
        }

        ImbalanceReport report = classify_zones(record.b, record.estimator);
        if (!report.feeders.empty() && !report.receivers.empty()) {
            const UtilityMatrix J = utility_matrix(report, net_, cfg_.grid);
            const auto t0 = std::chrono::steady_clock::now();
            FlowSolution sol = solve_relocation_flows(report, J, cfg_.grid);
            record.flow_solve_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            record.flows = std::move(sol.flows);
            record.flow_objective = sol.objective;
        }

        switch (cfg_.scheme) {
            case Scheme::none:
                break;
            case Scheme::operator_based: {
                record.tasks = split_into_tasks(record.flows, cfg_.eta);
                std::vector<OperatorState> roster;
                std::vector<int> roster_ids;
                for (const auto& op : operators_) {
                    if (now < op.shift.start || now >= op.shift.end) continue;
                    OperatorState st;
                    st.id = op.id;
                    st.residual_time = static_cast<int>(std::max<long>(0, op.busy_until - now));
                    st.destination_zone = op.zone;
                    roster.push_back(st);
                    roster_ids.push_back(op.id);
                }
                const auto t0 = std::chrono::steady_clock::now();
                AssignmentResult res = assign_operators(record.tasks, roster, net_, cfg_.grid, now);
                record.assign_solve_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
                record.assignments = res.assignments;
                record.realized.assign(res.assignments.size(), -1);
                record.assignment_objective = res.objective;
                const int plan_index = static_cast<int>(trace_.plans.size());
                for (int idx = 0; idx < static_cast<int>(res.assignments.size()); ++idx) {
                    const Assignment& a = res.assignments[static_cast<size_t>(idx)];
                    pending_.push_back({a, false, -1, plan_index, idx});
                    auto& op = operators_[static_cast<size_t>(a.operator_id)];
                    op.busy_until = a.completion_slot;
                    op.zone = a.receiver;
                }
                break;
            }
            case Scheme::user_based:
                live_flows_ = record.flows;
                live_report_ = report;
                break;
            case Scheme::robotic: {
                RoboticSchedule schedule = robotic_rates(record.flows, net_, cfg_.grid, now);
                record.robotic_rates = schedule.rates;
                robotic_ = std::move(schedule.dispatches);
                robotic_next_ = 0;
                break;
            }
        }
        trace_.plans.push_back(std::move(record));
    }

    void land_arrivals(long s) {
        std::vector<EnRouteVehicle> staying;
        staying.reserve(state_.en_route.size());
        for (const auto& e : state_.en_route) {
            if (e.arrival_slot != s) {
                staying.push_back(e);
                continue;
            }
            state_.inventory[static_cast<size_t>(e.destination)] += e.vehicle_count;
            if (e.relocation) {
                TraceEvent ev;
                ev.slot = s;
                ev.kind = EventKind::relocation_arrive;
                ev.destination = e.destination;
                ev.size = e.vehicle_count;
                trace_.events.push_back(ev);
            }
        }
        state_.en_route = std::move(staying);
    }

    void process_request(const TripRequest& request, size_t trip_index, SlotSummary& summary) {
        ++trace_.total_requests;
        int& stock = state_.inventory[static_cast<size_t>(request.origin)];
        if (stock <= 0) {
            ++trace_.rejections;
            ++summary.rejections;
            TraceEvent ev;
            ev.slot = request.request_slot;
            ev.kind = EventKind::rejection;
            ev.origin = request.origin;
            ev.destination = request.destination;
            trace_.events.push_back(ev);
            return;
        }
        TripRequest r = request;
        if (!willingness_.empty()) r.customer_willingness = willingness_[trip_index];
        bool tow = false;
        if (cfg_.scheme == Scheme::user_based && live_report_.has_value())
            tow = user_based_decide(r, live_flows_, *live_report_, cfg_.gamma, stock);
        stock -= tow ? 2 : 1;
        EnRouteVehicle trip;
        trip.destination = r.destination;
        trip.arrival_slot = r.request_slot + r.duration_slots;
        trip.vehicle_count = 1;
        trip.relocation = false;
        state_.en_route.push_back(trip);
        if (tow) {
            EnRouteVehicle towed = trip;
            towed.relocation = true;
            state_.en_route.push_back(towed);
            TraceEvent dep;
            dep.slot = r.request_slot;
            dep.kind = EventKind::relocation_depart;
            dep.origin = r.origin;
            dep.destination = r.destination;
            dep.size = 1;
            dep.duration = r.duration_slots;
            dep.mode = 'u';
            trace_.events.push_back(dep);
        }
        ++trace_.admissions;
        ++summary.admissions;
        TraceEvent ev;
        ev.slot = r.request_slot;
        ev.kind = EventKind::admission;
        ev.origin = r.origin;
        ev.destination = r.destination;
        ev.size = 1;
        ev.duration = r.duration_slots;
        ev.towed = tow;
        trace_.events.push_back(ev);
    }

    void execute_pickups(long s) {
        for (auto& task : pending_) {
            if (task.picked_up || task.a.pickup_slot != s) continue;
            task.picked_up = true;
            int& stock = state_.inventory[static_cast<size_t>(task.a.feeder)];
            const int realized = std::min(task.a.planned_size, stock);
            task.realized = realized;
            trace_.plans[static_cast<size_t>(task.plan_index)]
                .realized[static_cast<size_t>(task.record_index)] = realized;
            if (realized == 0) {
                // Nothing left to tow: release the operator where it stands.
                auto& op = operators_[static_cast<size_t>(task.a.operator_id)];
                if (op.busy_until == task.a.completion_slot) {
                    op.busy_until = s;
                    op.zone = task.a.feeder;
                }
                TraceEvent ev;
                ev.slot = s;
                ev.kind = EventKind::task_aborted;
                ev.origin = task.a.feeder;
                ev.destination = task.a.receiver;
                ev.mode = 'o';
                ev.operator_id = task.a.operator_id;
                trace_.events.push_back(ev);
                continue;
            }
            stock -= realized;
            EnRouteVehicle train;
            train.destination = task.a.receiver;
            train.arrival_slot = task.a.completion_slot;
            train.vehicle_count = realized;
            train.relocation = true;
            state_.en_route.push_back(train);
            TraceEvent ev;
            ev.slot = s;
            ev.kind = EventKind::relocation_depart;
            ev.origin = task.a.feeder;
            ev.destination = task.a.receiver;
            ev.size = realized;
            ev.duration = static_cast<int>(task.a.completion_slot - s);
            ev.mode = 'o';
            ev.operator_id = task.a.operator_id;
            trace_.events.push_back(ev);
        }
    }

    void execute_robotic(long s) {
        for (; robotic_next_ < robotic_.size() && robotic_[robotic_next_].slot == s; ++robotic_next_) {
            const auto& d = robotic_[robotic_next_];
            int& stock = state_.inventory[static_cast<size_t>(d.feeder)];
            TraceEvent ev;
            ev.slot = s;
            ev.origin = d.feeder;
            ev.destination = d.receiver;
            ev.mode = 'r';
            if (stock <= 0) {
                ev.kind = EventKind::dispatch_skipped;
                trace_.events.push_back(ev);
                continue;
            }
            --stock;
            EnRouteVehicle v;
            v.destination = d.receiver;
            v.arrival_slot = s + net_.travel_time(d.feeder, d.receiver);
            v.vehicle_count = 1;
            v.relocation = true;
            state_.en_route.push_back(v);
            ev.kind = EventKind::relocation_depart;
            ev.size = 1;
            ev.duration = net_.travel_time(d.feeder, d.receiver);
            trace_.events.push_back(ev);
        }
    }

    [[nodiscard]] int inflight_relocations() const {
        int n = 0;
        for (const auto& e : state_.en_route)
            if (e.relocation) n += e.vehicle_count;
        return n;
    }

    [[nodiscard]] int idle_operator_count(long s) const {
        int n = 0;
        for (const auto& op : operators_)
            if (op.busy_until <= s) ++n;
        return n;
    }

    [[nodiscard]] bool unpicked_tasks() const {
        for (const auto& t : pending_)
            if (!t.picked_up) return true;
        return false;
    }

    void check_conservation() {
        long total = 0;
        for (int v : state_.inventory) {
            if (v < 0) trace_.conservation_ok = false;
            total += v;
        }
        for (const auto& e : state_.en_route) total += e.vehicle_count;
        if (total != cfg_.fleet) trace_.conservation_ok = false;
    }

    ScenarioConfig cfg_;
    const ServiceNetwork& net_;
    const TripLog& demand_;
    const std::vector<SlotCounts>& history_;
    SystemState state_;
    std::vector<OperatorInternal> operators_;
    std::vector<PendingTask> pending_;
    std::map<ZonePair, int> live_flows_;
    std::optional<ImbalanceReport> live_report_;
    std::vector<RoboticDispatch> robotic_;
    size_t robotic_next_ = 0;
    SlotCounts eval_counts_;
    std::vector<double> willingness_;
    SimulationTrace trace_;
};

}  // namespace detail

// One full simulated day. The demand log provides requests inside
// [0, day_slots); the history days feed the statistical predictors; the
// initial inventory must sum to the fleet size.
inline SimulationTrace run(const ScenarioConfig& config, const ServiceNetwork& network,
                           const TripLog& demand, const std::vector<SlotCounts>& history,
                           std::vector<int> initial_inventory) {
    detail::Engine engine(config, network, demand, history, std::move(initial_inventory));
    return engine.run();
}

struct ReplicaInput {
    const TripLog* demand = nullptr;
    std::vector<int> initial_inventory;
};

// Runs every (day, seed) combination; results are ordered by day first, seed
// second regardless of worker count.
inline std::vector<SimulationTrace> replicate(const ScenarioConfig& config, const ServiceNetwork& network,
                                              const std::vector<ReplicaInput>& days,
                                              const std::vector<SlotCounts>& history,
                                              const std::vector<std::uint64_t>& seeds,
                                              int parallelism = 1) {
    std::vector<SimulationTrace> traces(days.size() * seeds.size());
    if (traces.empty()) return traces;

    auto work = [&](size_t index) {
        const size_t d = index / seeds.size();
        const size_t s = index % seeds.size();
        ScenarioConfig cfg = config;
        cfg.seed = seeds[s];
        traces[index] = run(cfg, network, *days[d].demand, history, days[d].initial_inventory);
    };

    const size_t total = traces.size();
    if (parallelism <= 1) {
        for (size_t i = 0; i < total; ++i) work(i);
        return traces;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const size_t workers = std::min<size_t>(static_cast<size_t>(parallelism), total);
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= total) return;
                work(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    return traces;
}

}  // namespace relokit
