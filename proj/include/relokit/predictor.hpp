#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "relokit/core.hpp"
#include "relokit/demand.hpp"

namespace relokit {

// Per-zone signed imbalance b plus the feeder/receiver partition derived
// from its sign. b > 0: removable surplus; b < 0: vehicles needed.
struct ImbalanceReport {
    std::string estimator;
    std::vector<long> b;
    std::vector<int> feeders;
    std::vector<int> receivers;

    [[nodiscard]] bool is_feeder(int zone) const { return b[static_cast<size_t>(zone)] > 0; }
    [[nodiscard]] bool is_receiver(int zone) const { return b[static_cast<size_t>(zone)] < 0; }
};

// Hypothetical inventory trajectory if every request were served; may go
// negative. I(t) = v0 + sum_{n<=t} (A(n) - C(n)).
inline std::vector<long> virtual_inventory(long v0, const std::vector<int>& arrivals,
                                           const std::vector<int>& requests, int n_O) {
    if (static_cast<int>(arrivals.size()) != n_O || static_cast<int>(requests.size()) != n_O)
        throw input_error("virtual_inventory: series length must equal n_O");
    std::vector<long> I(static_cast<size_t>(n_O));
    long level = v0;
    for (int t = 0; t < n_O; ++t) {
        if (arrivals[static_cast<size_t>(t)] < 0 || requests[static_cast<size_t>(t)] < 0)
            throw input_error("virtual_inventory: negative count");
        level += arrivals[static_cast<size_t>(t)] - requests[static_cast<size_t>(t)];
        I[static_cast<size_t>(t)] = level;
    }
    return I;
}

// Imbalance with full knowledge of the window: the lowest virtual inventory
// reached at any slot.
inline long exact_imbalance(const std::vector<long>& inventory_series) {
    if (inventory_series.empty())
        throw input_error("exact_imbalance: empty series");
    long b = inventory_series.front();
    for (long v : inventory_series) b = std::min(b, v);
    return b;
}

// Conservative estimate ignoring uncommitted arrivals: current stock plus
// vehicles already en route, minus expected requests over the horizon.
inline double worst_case_imbalance(long v, long R, double expected_requests) {
    if (v < 0 || R < 0 || expected_requests < 0.0)
        throw input_error("worst_case_imbalance: negative input");
    return static_cast<double>(v + R) - expected_requests;
}

// Distribution of the per-slot inventory increment Delta = A - C, supported
// on [-beta_C, +beta_V]. mass[l + beta_C] = Pr{Delta = l}.
struct DeltaDistribution {
    int beta_V = 0;
    int beta_C = 0;
    std::vector<double> mass;

    [[nodiscard]] double at(int l) const { return mass[static_cast<size_t>(l + beta_C)]; }
};

namespace detail {

inline void check_pmf(const std::vector<double>& pmf, const char* what) {
    if (pmf.empty())
        throw input_error(std::string(what) + ": empty histogram");
    double sum = 0.0;
    for (double p : pmf) {
        if (p < 0.0)
            throw input_error(std::string(what) + ": negative mass");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw input_error(std::string(what) + ": histogram mass sums to " + std::to_string(sum));
}

}  // namespace detail

// Cross-correlation of the arrival and request histograms:
// Pr{Delta = l} = sum over n - m = l of f_A(n) * f_C(m).
inline DeltaDistribution delta_distribution(const std::vector<double>& f_A,
                                            const std::vector<double>& f_C) {
    detail::check_pmf(f_A, "delta_distribution arrivals");
    detail::check_pmf(f_C, "delta_distribution requests");
    DeltaDistribution d;
    d.beta_V = static_cast<int>(f_A.size()) - 1;
    d.beta_C = static_cast<int>(f_C.size()) - 1;
    d.mass.assign(static_cast<size_t>(d.beta_V + d.beta_C) + 1, 0.0);
    for (int n = 0; n <= d.beta_V; ++n)
        for (int m = 0; m <= d.beta_C; ++m)
            d.mass[static_cast<size_t>(n - m + d.beta_C)] +=
                f_A[static_cast<size_t>(n)] * f_C[static_cast<size_t>(m)];
    return d;
}

// Transient distribution of the virtual inventory: one probability vector
// per slot t in 1..n_O, supported exactly on [v0 - beta_C*t, v0 + beta_V*t].
struct InventoryChain {
    long v0 = 0;
    int beta_V = 0;
    int beta_C = 0;
    int n_O = 0;
    std::vector<std::vector<double>> probs;

    [[nodiscard]] long lower_bound(int t) const { return v0 - static_cast<long>(beta_C) * t; }
    [[nodiscard]] long upper_bound(int t) const { return v0 + static_cast<long>(beta_V) * t; }
    [[nodiscard]] double prob(int t, long z) const {
        const long lo = lower_bound(t);
        if (z < lo || z > upper_bound(t)) return 0.0;
        return probs[static_cast<size_t>(t - 1)][static_cast<size_t>(z - lo)];
    }
};

// Law-of-total-probability recursion
//   Pr{I(t+1) = z} = sum_l Pr{I(t) = z - l} * Pr{Delta(t+1) = l}.
// All per-slot increment distributions must share one support.
inline InventoryChain propagate_inventory_chain(long v0, const std::vector<DeltaDistribution>& deltas,
                                                int n_O) {
    if (n_O < 1)
        throw input_error("propagate_inventory_chain: n_O must be >= 1");
    if (static_cast<int>(deltas.size()) < n_O)
        throw input_error("propagate_inventory_chain: need one increment distribution per slot");
    const int bv = deltas.front().beta_V;
    const int bc = deltas.front().beta_C;
    for (const auto& d : deltas)
        if (d.beta_V != bv || d.beta_C != bc)
            throw input_error("propagate_inventory_chain: increment supports differ");

    InventoryChain chain;
    chain.v0 = v0;
    chain.beta_V = bv;
    chain.beta_C = bc;
    chain.n_O = n_O;
    chain.probs.resize(static_cast<size_t>(n_O));
    chain.probs[0] = deltas[0].mass;
    for (int t = 2; t <= n_O; ++t) {
        const auto& prev = chain.probs[static_cast<size_t>(t - 2)];
        const auto& inc = deltas[static_cast<size_t>(t - 1)].mass;
        std::vector<double> next(static_cast<size_t>(bv + bc) * t + 1, 0.0);
        for (size_t zi = 0; zi < prev.size(); ++zi) {
            const double pz = prev[zi];
            if (pz == 0.0) continue;
            for (size_t li = 0; li < inc.size(); ++li)
                next[zi + li] += pz * inc[li];
        }
        chain.probs[static_cast<size_t>(t - 1)] = std::move(next);
    }
    return chain;
}

// Shortage score: probability mass of negative inventory summed across all
// horizon slots. A score, not a single-event probability; it can exceed 1.
inline double shortage_probability(const InventoryChain& chain) {
    double F = 0.0;
    for (int t = 1; t <= chain.n_O; ++t) {
        const long lo = chain.lower_bound(t);
        const auto& p = chain.probs[static_cast<size_t>(t - 1)];
        const long negatives = -lo;  // entries with z in [lo, -1]
        for (long i = 0; i < negatives && i < static_cast<long>(p.size()); ++i)
            F += p[static_cast<size_t>(i)];
    }
    return F;
}

// F(v) for every seed inventory v at once. The chain seeded at v is the
// v-shift of the chain seeded at 0, so one propagation plus per-slot CDFs
// answers all queries: F(v) = sum_t P(S_t < -v) with S_t the t-slot
// increment sum.
class ShortageCurve {
public:
    ShortageCurve(const DemandModel& model, int zone) {
        std::vector<DeltaDistribution> deltas;
        deltas.reserve(static_cast<size_t>(model.n_O));
        for (int t = 1; t <= model.n_O; ++t)
            deltas.push_back(delta_distribution(model.arrival_hist(zone, t), model.request_hist(zone, t)));
        init(deltas, model.n_O);
    }
    ShortageCurve(const std::vector<DeltaDistribution>& deltas, int n_O) { init(deltas, n_O); }

    // Shortage score of a chain seeded at inventory v.
    [[nodiscard]] double score(long v) const {
        double F = 0.0;
        for (int t = 1; t <= n_O_; ++t) {
            const auto& cdf = cdf_[static_cast<size_t>(t - 1)];
            const long idx = static_cast<long>(beta_C_) * t - v - 1;  // index of S_t = -v-1
            if (idx < 0) continue;
            F += cdf[std::min<size_t>(static_cast<size_t>(idx), cdf.size() - 1)];
        }
        return F;
    }

    [[nodiscard]] int beta_C() const { return beta_C_; }
    [[nodiscard]] int horizon() const { return n_O_; }

private:
    void init(const std::vector<DeltaDistribution>& deltas, int n_O) {
        const InventoryChain base = propagate_inventory_chain(0, deltas, n_O);
        beta_C_ = base.beta_C;
        n_O_ = n_O;
        cdf_.resize(static_cast<size_t>(n_O));
        for (int t = 1; t <= n_O; ++t) {
            const auto& p = base.probs[static_cast<size_t>(t - 1)];
            auto& cdf = cdf_[static_cast<size_t>(t - 1)];
            cdf.resize(p.size());
            double acc = 0.0;
            for (size_t i = 0; i < p.size(); ++i) {
                acc += p[i];
                cdf[i] = acc;
            }
        }
    }

    int beta_C_ = 0;
    int n_O_ = 0;
    std::vector<std::vector<double>> cdf_;
};

// Risk-bounded imbalance from the chain. Receiver side (shortage possible):
// the smallest top-up x that pushes the score under epsilon, reported as -x.
// Feeder side (no shortage at current stock): the largest removable count
// keeping the score under epsilon, never more than the stock itself.
inline long probabilistic_imbalance(const ShortageCurve& curve, long v0, double epsilon) {
    if (v0 < 0)
        throw input_error("probabilistic_imbalance: negative inventory");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw input_error("probabilistic_imbalance: epsilon must lie in (0,1)");
    const long search_cap = static_cast<long>(curve.beta_C()) * curve.horizon();
    if (curve.score(v0) > 0.0) {
        for (long x = 0; x <= search_cap; ++x)
            if (curve.score(v0 + x) <= epsilon) return -x;
        return -search_cap;  // unreachable: score(v0 + cap) is exactly 0
    }
    long best = 0;
    for (long x = 0; x <= v0; ++x) {
        if (curve.score(v0 - x) <= epsilon)
            best = x;
        else
            break;
    }
    return best;
}

inline long probabilistic_imbalance(const DemandModel& model, int zone, long v0, double epsilon) {
    return probabilistic_imbalance(ShortageCurve(model, zone), v0, epsilon);
}

// Sign partition of the imbalance vector into feeder and receiver sets.
inline ImbalanceReport classify_zones(std::vector<long> b, std::string estimator) {
    ImbalanceReport report;
    report.estimator = std::move(estimator);
    report.b = std::move(b);
    for (int i = 0; i < static_cast<int>(report.b.size()); ++i) {
        if (report.b[static_cast<size_t>(i)] > 0)
            report.feeders.push_back(i);
        else if (report.b[static_cast<size_t>(i)] < 0)
            report.receivers.push_back(i);
    }
    return report;
}

}  // namespace relokit
