// Runs one tidal morning on the same fleet under every relocation scheme and
// prints the headline numbers side by side. Demand is identical across the
// runs, so any difference in the table comes from rebalancing alone.
#include <relokit/relokit.hpp>

#include <cstdio>

using namespace relokit;

namespace {

RunConfig tidal_config() {
    nlohmann::json j = {
        {"grid", {{"tau_minutes", 1.0}, {"n_C", 10}, {"n_R", 12}, {"n_O", 24}}},
        {"scheme", {{"kind", "operator"}, {"eta", 5}, {"gamma", 0.8}}},
        {"predictor", "worst-case"},
        {"fleet", {{"K", 16}}},
        {"operators", {{"M", 3}}},
        {"day_slots", 180},
        {"seed", 2024},
        {"demand",
         {{"source", "synthetic"},
          {"synthetic",
           {{"zones", 4},
            {"history_days", 3},
            {"days", {0}},
            {"departure_rate", {0.30, 0.14, 0.14, 0.14}},
            {"destination_weights",
             {{0.0, 0.3334, 0.3333, 0.3333},
              {0.84, 0.0, 0.08, 0.08},
              {0.84, 0.08, 0.0, 0.08},
              {0.84, 0.08, 0.08, 0.0}}},
            {"travel",
             {{0, 4, 5, 6}, {4, 0, 8, 9}, {5, 8, 0, 7}, {6, 9, 7, 0}}}}}}},
        {"output", {{"dir", "/tmp/relokit_demo_schemes"}}}};
    return parse_run_config(j);
}

}  // namespace

int main() {
    const RunConfig base = tidal_config();
    const auto m = materialize(base);

    std::printf("tidal morning, %d zones, fleet %d, %ld slots of demand\n",
                m.network.zone_count(), base.scenario.fleet, base.scenario.day_slots);
    std::printf("%-10s %9s %10s %11s %10s %12s\n", "scheme", "requests", "rejected",
                "relocated", "tasks", "utilization");

    for (Scheme scheme :
         {Scheme::none, Scheme::operator_based, Scheme::user_based, Scheme::robotic}) {
        ScenarioConfig cfg = base.scenario;
        cfg.scheme = scheme;
        const auto trace = run(cfg, m.network, m.eval_logs[0], m.history, m.placements[0]);
        const auto kpi = compute_kpis(trace, cfg.grid.tau);
        std::printf("%-10s %9ld %9.2f%% %11ld %10ld %11.2f%%\n", scheme_name(scheme),
                    kpi.total_requests, kpi.rejection_rate_pct, kpi.relocated_vehicles,
                    kpi.completed_tasks, kpi.utilization_pct);
    }

    std::printf("\nrelocated counts every vehicle that moved without a paying customer;\n"
                "tasks counts finished operator tows only, so user and robotic rows show 0.\n"
                "on a fleet this small the unstaffed schemes can overshoot: moving a car\n"
                "away right before a local request costs more than the move repays.\n");
    return 0;
}
