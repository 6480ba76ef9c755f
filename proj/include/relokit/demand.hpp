#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "relokit/core.hpp"
#include "relokit/rng.hpp"

namespace relokit {

// External zone identifiers mapped to dense indices 0..N-1.
struct ZoneMap {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;

    static ZoneMap from_names(std::vector<std::string> ns) {
        ZoneMap m;
        m.names = std::move(ns);
        for (int i = 0; i < static_cast<int>(m.names.size()); ++i) {
            if (!m.index.emplace(m.names[static_cast<size_t>(i)], i).second)
                throw input_error("ZoneMap: duplicate zone id " + m.names[static_cast<size_t>(i)]);
        }
        return m;
    }

    // File format: one "external_id,dense_index" pair per line, optional header.
    static ZoneMap load_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw data_error("zone map not readable: " + path);
        std::vector<std::pair<std::string, int>> rows;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw data_error("zone map: malformed line '" + line + "'");
            const std::string id = line.substr(0, comma);
            const std::string idx = line.substr(comma + 1);
            if (first && (id == "external_id" || idx == "dense_index")) {
                first = false;
                continue;
            }
            first = false;
            try {
                rows.emplace_back(id, std::stoi(idx));
            } catch (const std::exception&) {
                throw data_error("zone map: bad index in line '" + line + "'");
            }
        }
        ZoneMap m;
        m.names.resize(rows.size());
        for (const auto& [id, dense] : rows) {
            if (dense < 0 || dense >= static_cast<int>(rows.size()))
                throw data_error("zone map: index " + std::to_string(dense) + " out of range");
            if (!m.names[static_cast<size_t>(dense)].empty())
                throw data_error("zone map: duplicate dense index " + std::to_string(dense));
            m.names[static_cast<size_t>(dense)] = id;
        }
        for (int i = 0; i < static_cast<int>(m.names.size()); ++i)
            m.index.emplace(m.names[static_cast<size_t>(i)], i);
        return m;
    }

    void save_csv(const std::string& path) const {
        std::ofstream out(path);
        if (!out)
            throw data_error("zone map not writable: " + path);
        out << "external_id,dense_index\n";
        for (size_t i = 0; i < names.size(); ++i)
            out << names[i] << ',' << i << '\n';
    }

    [[nodiscard]] int size() const { return static_cast<int>(names.size()); }
    [[nodiscard]] std::optional<int> find(const std::string& id) const {
        auto it = index.find(id);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

// One day of demand: requests sorted by slot (stable on ties), plus ingest
// bookkeeping. skipped counts malformed rows; filtered counts rows excluded
// by the zone or date filter.
struct TripLog {
    std::string day;
    int zone_count = 0;
    std::vector<TripRequest> trips;
    long skipped_rows = 0;
    long filtered_rows = 0;

    [[nodiscard]] bool empty() const { return trips.empty(); }
};

namespace detail {

// Days since 1970-01-01 for a civil date (valid across the whole int range).
inline long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u + static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

// Parses "YYYY-MM-DD HH:MM[:SS]" (or with a 'T' separator) into a date string
// and minutes past that date's midnight. Returns false on malformed input.
inline bool parse_datetime(const std::string& s, std::string& date, double& minutes) {
    int y, mo, d, h, mi;
    double sec = 0.0;
    if (s.size() < 16) return false;
    if (s[4] != '-' || s[7] != '-' || (s[10] != ' ' && s[10] != 'T') || s[13] != ':') return false;
    auto num = [&](size_t pos, size_t len, int& out) {
        out = 0;
        for (size_t i = pos; i < pos + len; ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
            out = out * 10 + (s[i] - '0');
        }
        return true;
    };
    if (!num(0, 4, y) || !num(5, 2, mo) || !num(8, 2, d) || !num(11, 2, h) || !num(14, 2, mi))
        return false;
    if (s.size() >= 19 && s[16] == ':') {
        int ss;
        if (!num(17, 2, ss)) return false;
        sec = ss;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60.0) return false;
    date = s.substr(0, 10);
    minutes = h * 60.0 + mi + sec / 60.0;
    return true;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

}  // namespace detail

struct TripCsvOptions {
    std::optional<std::string> date_filter;       // keep only rows of this YYYY-MM-DD
    std::set<std::string> zone_filter;            // keep only rows with BOTH endpoints inside; empty = keep all
};

// Seed of the fixed stream that attaches willingness draws to ingested rows.
// Constant on purpose: CSV logs carry no scenario seed, yet must reproduce.
inline constexpr std::uint64_t kIngestWillingnessSeed = 0x9d2c5680u;

// Reads a trip CSV (header row with pickup_datetime, dropoff_datetime,
// pickup_zone, dropoff_zone in any column order). Each kept row becomes one
// TripRequest: request_slot from the pickup time (relative to the filter date
// or, without a filter, the first valid row's date), duration round-half-up
// from the timestamp difference and clamped to >= 1 slot. Rows with broken
// timestamps, unknown zones, or dropoff <= pickup are counted and skipped.
inline TripLog parse_trip_csv(std::istream& in, const ZoneMap& zones, const TimeGrid& grid,
                              const TripCsvOptions& options = {}) {
    std::string header;
    if (!std::getline(in, header))
        throw data_error("trip csv: empty file");
    const auto cols = detail::split_csv_line(header);
    int c_pick = -1, c_drop = -1, c_origin = -1, c_dest = -1;
    for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
        if (cols[static_cast<size_t>(i)] == "pickup_datetime") c_pick = i;
        else if (cols[static_cast<size_t>(i)] == "dropoff_datetime") c_drop = i;
        else if (cols[static_cast<size_t>(i)] == "pickup_zone") c_origin = i;
        else if (cols[static_cast<size_t>(i)] == "dropoff_zone") c_dest = i;
    }
    if (c_pick < 0 || c_drop < 0 || c_origin < 0 || c_dest < 0)
        throw data_error("trip csv: required columns missing "
                         "(pickup_datetime, dropoff_datetime, pickup_zone, dropoff_zone)");

    TripLog log;
    log.zone_count = zones.size();
    if (options.date_filter) log.day = *options.date_filter;
    SplitRng willingness(substream(kIngestWillingnessSeed, "ingest-willingness"));
    std::string anchor_date = options.date_filter.value_or("");
    long anchor_days = 0;
    bool anchor_set = false;
    const int max_col = std::max(std::max(c_pick, c_drop), std::max(c_origin, c_dest));

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (static_cast<int>(f.size()) <= max_col) {
            ++log.skipped_rows;
            continue;
        }
        std::string pick_date, drop_date;
        double pick_min, drop_min;
        if (!detail::parse_datetime(f[static_cast<size_t>(c_pick)], pick_date, pick_min) ||
            !detail::parse_datetime(f[static_cast<size_t>(c_drop)], drop_date, drop_min)) {
            ++log.skipped_rows;
            continue;
        }
        if (options.date_filter && pick_date != *options.date_filter) {
            ++log.filtered_rows;
            continue;
        }
        const auto origin = zones.find(f[static_cast<size_t>(c_origin)]);
        const auto dest = zones.find(f[static_cast<size_t>(c_dest)]);
        if (!origin || !dest) {
            if (!options.zone_filter.empty()) {
                ++log.filtered_rows;  // outside the modeled area
            } else {
                ++log.skipped_rows;  // no filter requested, so an unknown id is data damage
            }
            continue;
        }
        if (!options.zone_filter.empty() &&
            (!options.zone_filter.count(f[static_cast<size_t>(c_origin)]) ||
             !options.zone_filter.count(f[static_cast<size_t>(c_dest)]))) {
            ++log.filtered_rows;
            continue;
        }
        if (!anchor_set) {
            if (anchor_date.empty()) anchor_date = pick_date;
            int y, m, d;
            if (std::sscanf(anchor_date.c_str(), "%d-%d-%d", &y, &m, &d) != 3)
                throw data_error("trip csv: bad filter date " + anchor_date);
            anchor_days = detail::days_from_civil(y, m, d);
            anchor_set = true;
            if (log.day.empty()) log.day = anchor_date;
        }
        int y, m, d;
        if (std::sscanf(pick_date.c_str(), "%d-%d-%d", &y, &m, &d) != 3) {
            ++log.skipped_rows;
            continue;
        }
        const double day_offset = static_cast<double>(detail::days_from_civil(y, m, d) - anchor_days) * 1440.0;
        const double pick_abs = day_offset + pick_min;
        int yd, md, dd;
        if (std::sscanf(drop_date.c_str(), "%d-%d-%d", &yd, &md, &dd) != 3) {
            ++log.skipped_rows;
            continue;
        }
        const double drop_abs =
            static_cast<double>(detail::days_from_civil(yd, md, dd) - anchor_days) * 1440.0 + drop_min;
        if (drop_abs <= pick_abs || pick_abs < 0.0) {
            ++log.skipped_rows;
            continue;
        }
        TripRequest r;
        r.request_slot = slot_of(pick_abs, grid);
        r.origin = *origin;
        r.destination = *dest;
        r.duration_slots = std::max(1, detail::round_half_up((drop_abs - pick_abs) / grid.tau));
        r.customer_willingness = willingness.next_unit();
        log.trips.push_back(r);
    }
    std::stable_sort(log.trips.begin(), log.trips.end(),
                     [](const TripRequest& a, const TripRequest& b) { return a.request_slot < b.request_slot; });
    return log;
}

inline TripLog parse_trip_csv(const std::string& path, const ZoneMap& zones, const TimeGrid& grid,
                              const TripCsvOptions& options = {}) {
    std::ifstream in(path);
    if (!in)
        throw data_error("trip file not readable: " + path);
    return parse_trip_csv(in, zones, grid, options);
}

// Mean observed duration per ordered pair, round-half-up, with the fallback
// chain: reverse-direction mean, then global mean. Every entry ends >= 1.
inline IntMatrix build_travel_time_matrix(const TripLog& log, int zones) {
    if (log.trips.empty())
        throw input_error("build_travel_time_matrix: empty log");
    std::vector<long long> sum(static_cast<size_t>(zones) * zones, 0);
    std::vector<long> cnt(static_cast<size_t>(zones) * zones, 0);
    long long total_sum = 0;
    long total_cnt = 0;
    for (const auto& t : log.trips) {
        const size_t idx = static_cast<size_t>(t.origin) * zones + t.destination;
        sum[idx] += t.duration_slots;
        cnt[idx] += 1;
        total_sum += t.duration_slots;
        ++total_cnt;
    }
    const int global = std::max(1, detail::round_half_up(static_cast<double>(total_sum) / total_cnt));
    IntMatrix out(zones, 0);
    for (int i = 0; i < zones; ++i) {
        for (int j = 0; j < zones; ++j) {
            const size_t ij = static_cast<size_t>(i) * zones + j;
            const size_t ji = static_cast<size_t>(j) * zones + i;
            int value;
            if (cnt[ij] > 0)
                value = detail::round_half_up(static_cast<double>(sum[ij]) / cnt[ij]);
            else if (cnt[ji] > 0)
                value = detail::round_half_up(static_cast<double>(sum[ji]) / cnt[ji]);
            else
                value = global;
            out.at(i, j) = std::max(1, value);
        }
    }
    return out;
}

// Per-zone, per-slot request and arrival (drop-off) counts for one day.
// Slots at or beyond the cap are folded away (arrivals past the horizon are
// irrelevant to every consumer).
struct SlotCounts {
    int zones = 0;
    long slots = 0;
    std::vector<int> requests;
    std::vector<int> arrivals;

    SlotCounts() = default;
    SlotCounts(int n, long s)
        : zones(n), slots(s),
          requests(static_cast<size_t>(n) * s, 0),
          arrivals(static_cast<size_t>(n) * s, 0) {}

    [[nodiscard]] int request_count(int zone, long slot) const {
        return requests[static_cast<size_t>(zone) * slots + slot];
    }
    [[nodiscard]] int arrival_count(int zone, long slot) const {
        return arrivals[static_cast<size_t>(zone) * slots + slot];
    }
};

inline SlotCounts slot_counts(const TripLog& log, int zones, long slot_cap) {
    SlotCounts g(zones, slot_cap);
    for (const auto& t : log.trips) {
        if (t.request_slot >= 0 && t.request_slot < slot_cap)
            ++g.requests[static_cast<size_t>(t.origin) * slot_cap + t.request_slot];
        const long drop = t.request_slot + t.duration_slots;
        if (drop >= 0 && drop < slot_cap)
            ++g.arrivals[static_cast<size_t>(t.destination) * slot_cap + drop];
    }
    return g;
}

// Histogram demand model for one prediction window: per zone and window slot
// t in 1..n_O, the empirical distributions of arrival and request counts
// across history days, plus window aggregates C (expected requests) and D
// (expected arrivals). Supports run 0..beta_V / 0..beta_C; observed counts
// beyond the cap fold into the top bucket.
struct DemandModel {
    int zones = 0;
    int n_O = 0;
    int beta_V = 1;
    int beta_C = 1;
    std::vector<std::vector<double>> arrival_hist_;  // [zone * n_O + (t-1)] -> pmf
    std::vector<std::vector<double>> request_hist_;
    std::vector<double> C;
    std::vector<double> D;

    [[nodiscard]] const std::vector<double>& arrival_hist(int zone, int t) const {
        return arrival_hist_[static_cast<size_t>(zone) * n_O + (t - 1)];
    }
    [[nodiscard]] const std::vector<double>& request_hist(int zone, int t) const {
        return request_hist_[static_cast<size_t>(zone) * n_O + (t - 1)];
    }
};

// Builds the model for the window anchored at decision point k: window slot
// t corresponds to absolute slot k*n_C + (t-1). Days whose grids are shorter
// than the window contribute zero counts beyond their end.
inline DemandModel build_demand_model(const std::vector<SlotCounts>& days, const TimeGrid& grid,
                                      long anchor_k, int beta_cap = 20) {
    if (days.empty())
        throw input_error("build_demand_model: no history days");
    if (beta_cap < 1)
        throw input_error("build_demand_model: beta cap must be >= 1");
    const int zones = days.front().zones;
    for (const auto& d : days)
        if (d.zones != zones)
            throw input_error("build_demand_model: zone count differs across days");

    const long base = anchor_k * grid.n_C;
    int max_a = 0, max_c = 0;
    for (const auto& d : days) {
        for (int i = 0; i < zones; ++i) {
            for (int t = 1; t <= grid.n_O; ++t) {
                const long s = base + t - 1;
                if (s < 0 || s >= d.slots) continue;
                max_a = std::max(max_a, d.arrival_count(i, s));
                max_c = std::max(max_c, d.request_count(i, s));
            }
        }
    }
    DemandModel m;
    m.zones = zones;
    m.n_O = grid.n_O;
    m.beta_V = std::max(1, std::min(max_a, beta_cap));
    m.beta_C = std::max(1, std::min(max_c, beta_cap));
    m.arrival_hist_.assign(static_cast<size_t>(zones) * grid.n_O, {});
    m.request_hist_.assign(static_cast<size_t>(zones) * grid.n_O, {});
    m.C.assign(static_cast<size_t>(zones), 0.0);
    m.D.assign(static_cast<size_t>(zones), 0.0);

    const double w = 1.0 / static_cast<double>(days.size());
    for (int i = 0; i < zones; ++i) {
        for (int t = 1; t <= grid.n_O; ++t) {
            std::vector<double> fa(static_cast<size_t>(m.beta_V) + 1, 0.0);
            std::vector<double> fc(static_cast<size_t>(m.beta_C) + 1, 0.0);
            const long s = base + t - 1;
            for (const auto& d : days) {
                const int a = (s >= 0 && s < d.slots) ? d.arrival_count(i, s) : 0;
                const int c = (s >= 0 && s < d.slots) ? d.request_count(i, s) : 0;
                fa[static_cast<size_t>(std::min(a, m.beta_V))] += w;
                fc[static_cast<size_t>(std::min(c, m.beta_C))] += w;
                m.D[static_cast<size_t>(i)] += w * a;
                m.C[static_cast<size_t>(i)] += w * c;
            }
            m.arrival_hist_[static_cast<size_t>(i) * grid.n_O + (t - 1)] = std::move(fa);
            m.request_hist_[static_cast<size_t>(i) * grid.n_O + (t - 1)] = std::move(fc);
        }
    }
    return m;
}

inline DemandModel build_demand_model(const std::vector<TripLog>& logs, const TimeGrid& grid,
                                      long anchor_k, int beta_cap = 20) {
    if (logs.empty())
        throw input_error("build_demand_model: no history days");
    const int zones = logs.front().zone_count;
    const long cap = anchor_k * grid.n_C + grid.n_O;
    std::vector<SlotCounts> days;
    days.reserve(logs.size());
    for (const auto& log : logs)
        days.push_back(slot_counts(log, zones, cap));
    return build_demand_model(days, grid, anchor_k, beta_cap);
}

// Signed arrivals/departures ratio of a zone over the inclusive slot window
// [t1, t2]: D/O when arrivals dominate, -O/D otherwise. One-sided activity
// maps to +/-infinity; a dead zone maps to NaN.
inline double imbalance_ratio(const TripLog& log, int zone, long t1, long t2) {
    if (t1 > t2)
        throw input_error("imbalance_ratio: empty window");
    long D = 0, O = 0;
    for (const auto& t : log.trips) {
        if (t.origin == zone && t.request_slot >= t1 && t.request_slot <= t2) ++O;
        const long drop = t.request_slot + t.duration_slots;
        if (t.destination == zone && drop >= t1 && drop <= t2) ++D;
    }
    if (D == 0 && O == 0) return std::numeric_limits<double>::quiet_NaN();
    if (O == 0) return std::numeric_limits<double>::infinity();
    if (D == 0) return -std::numeric_limits<double>::infinity();
    return D >= O ? static_cast<double>(D) / O : -static_cast<double>(O) / D;
}

// Step-function request rate: rate(s) = value of the last segment whose
// start_slot <= s, zero before the first segment.
struct RateProfile {
    std::vector<std::pair<long, double>> segments;

    RateProfile() = default;
    explicit RateProfile(double constant_rate) : segments{{0, constant_rate}} {}

    [[nodiscard]] double rate_at(long slot) const {
        double r = 0.0;
        for (const auto& [start, rate] : segments) {
            if (start > slot) break;
            r = rate;
        }
        return r;
    }
};

// Generator description for synthetic demand: Poisson request counts per
// (zone, slot), destinations from a per-origin weight row, trip durations
// from the given travel matrix.
struct SyntheticSpec {
    int zones = 0;
    long slots = 0;
    std::vector<RateProfile> departure_rate;
    std::vector<std::vector<double>> destination_weights;
    IntMatrix travel;

    void validate() const {
        if (zones < 1 || slots < 1)
            throw config_error("synthetic spec: need zones >= 1 and slots >= 1");
        if (static_cast<int>(departure_rate.size()) != zones)
            throw config_error("synthetic spec: one rate profile per zone required");
        if (static_cast<int>(destination_weights.size()) != zones)
            throw config_error("synthetic spec: one destination row per zone required");
        if (travel.n != zones)
            throw config_error("synthetic spec: travel matrix size mismatch");
        for (const auto& p : departure_rate)
            for (const auto& [start, rate] : p.segments)
                if (rate < 0.0 || start < 0)
                    throw config_error("synthetic spec: negative rate or segment start");
        for (int i = 0; i < zones; ++i) {
            const auto& row = destination_weights[static_cast<size_t>(i)];
            if (static_cast<int>(row.size()) != zones)
                throw config_error("synthetic spec: destination row length mismatch");
            double sum = 0.0;
            for (double wgt : row) {
                if (wgt < 0.0)
                    throw config_error("synthetic spec: negative destination weight");
                sum += wgt;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw config_error("synthetic spec: destination row " + std::to_string(i) +
                                   " sums to " + std::to_string(sum) + ", expected 1");
        }
        for (int v : travel.cells)
            if (v < 0)
                throw config_error("synthetic spec: negative travel time");
    }
};

// Poisson-samples a day of demand. Identical (spec, seed) pairs give
// identical logs; draws happen in (slot, zone, request) order.
inline TripLog synthesize_demand(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    SplitRng rng(substream(seed, "demand"));
    TripLog log;
    log.day = "synthetic";
    log.zone_count = spec.zones;
    for (long s = 0; s < spec.slots; ++s) {
        for (int i = 0; i < spec.zones; ++i) {
            const int n = rng.poisson(spec.departure_rate[static_cast<size_t>(i)].rate_at(s));
            for (int r = 0; r < n; ++r) {
                TripRequest req;
                req.request_slot = s;
                req.origin = i;
                req.destination = rng.sample_pmf(spec.destination_weights[static_cast<size_t>(i)]);
                req.duration_slots = std::max(1, spec.travel.at(i, req.destination));
                req.customer_willingness = rng.next_unit();
                log.trips.push_back(req);
            }
        }
    }
    return log;
}

// Apportions K vehicles proportionally to each zone's share of departures in
// the first two hours of the log (whole day if those are empty, uniform if
// the log is), with largest-remainder rounding. Ties go to the lower zone id.
inline std::vector<int> initial_fleet_placement(const TripLog& log, int K, const TimeGrid& grid) {
    if (K < 0)
        throw input_error("initial_fleet_placement: negative fleet");
    const int zones = log.zone_count;
    if (zones < 1)
        throw input_error("initial_fleet_placement: log has no zones");
    const long early_end = static_cast<long>(std::floor(120.0 / grid.tau));
    std::vector<long> early(static_cast<size_t>(zones), 0), whole(static_cast<size_t>(zones), 0);
    for (const auto& t : log.trips) {
        ++whole[static_cast<size_t>(t.origin)];
        if (t.request_slot < early_end) ++early[static_cast<size_t>(t.origin)];
    }
    long total = 0;
    const std::vector<long>* counts = &early;
    for (long c : early) total += c;
    if (total == 0) {
        counts = &whole;
        for (long c : whole) total += c;
    }
    std::vector<double> share(static_cast<size_t>(zones));
    if (total == 0) {
        std::fill(share.begin(), share.end(), 1.0 / zones);
    } else {
        for (int i = 0; i < zones; ++i)
            share[static_cast<size_t>(i)] = static_cast<double>((*counts)[static_cast<size_t>(i)]) / total;
    }
    std::vector<int> out(static_cast<size_t>(zones), 0);
    std::vector<std::pair<double, int>> remainder;
    int placed = 0;
    for (int i = 0; i < zones; ++i) {
        const double quota = share[static_cast<size_t>(i)] * K;
        out[static_cast<size_t>(i)] = static_cast<int>(std::floor(quota));
        placed += out[static_cast<size_t>(i)];
        remainder.emplace_back(quota - std::floor(quota), i);
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int r = 0; placed < K; ++r, ++placed)
        ++out[static_cast<size_t>(remainder[static_cast<size_t>(r)].second)];
    return out;
}

}  // namespace relokit
