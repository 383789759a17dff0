#include "encmine/match.hpp"

#include <algorithm>

#include "encmine/error.hpp"

namespace encmine {

std::vector<Trip> sort_trips(std::vector<Trip> trips) {
    std::stable_sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) {
        if (a.start_time_ds != b.start_time_ds) return a.start_time_ds < b.start_time_ds;
        return a.end_time_ds < b.end_time_ds;
    });
    return trips;
}

bool pair_overlap(const Trip& a, const Trip& b, double margin_m, TripPairCandidate* out) {
    std::int64_t start = std::max(a.start_time_ds, b.start_time_ds);
    std::int64_t end = std::min(a.end_time_ds, b.end_time_ds);
    if (start > end) return false;
    if (!a.bbox.expanded(margin_m).intersects(b.bbox.expanded(margin_m))) return false;
    if (out) {
        std::string ka = a.key();
        std::string kb = b.key();
        if (kb < ka) std::swap(ka, kb);
        out->trip_a = std::move(ka);
        out->trip_b = std::move(kb);
        out->overlap_start_ds = start;
        out->overlap_end_ds = end;
    }
    return true;
}

namespace {

void finalize(MatchResult& result) {
    std::sort(result.pairs.begin(), result.pairs.end());
    result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()), result.pairs.end());
    result.stats.pairs_out = result.pairs.size();
}

}  // namespace

MatchResult sweep_match(std::span<const Trip> sorted_trips, double margin_m) {
    MatchResult result;
    result.stats.trips_in = sorted_trips.size();

    std::vector<const Trip*> queue;
    std::int64_t prev_start = std::numeric_limits<std::int64_t>::min();

    for (const Trip& incoming : sorted_trips) {
        if (incoming.start_time_ds < prev_start) {
            throw UnsortedInput("sweep_match: trips not sorted by start time");
        }
        prev_start = incoming.start_time_ds;

        // Temporal expiry only: a resident ending before this start can never
        // overlap this or any later trip (starts are non-decreasing).
        std::erase_if(queue, [&](const Trip* resident) {
            return resident->end_time_ds < incoming.start_time_ds;
        });

        for (const Trip* resident : queue) {
            ++result.stats.comparisons;
            TripPairCandidate candidate;
            if (pair_overlap(*resident, incoming, margin_m, &candidate)) {
                result.pairs.push_back(std::move(candidate));
            }
        }

        queue.push_back(&incoming);
        result.stats.peak_queue_len = std::max(result.stats.peak_queue_len, queue.size());
    }

    finalize(result);
    return result;
}

MatchResult brute_force_match(std::span<const Trip> trips, double margin_m) {
    MatchResult result;
    result.stats.trips_in = trips.size();

    for (std::size_t i = 0; i < trips.size(); ++i) {
        for (std::size_t j = i + 1; j < trips.size(); ++j) {
            ++result.stats.comparisons;
            TripPairCandidate candidate;
            if (pair_overlap(trips[i], trips[j], margin_m, &candidate)) {
                result.pairs.push_back(std::move(candidate));
            }
        }
    }

    finalize(result);
    return result;
}

TripIndex::TripIndex(std::span<const Trip> trips) {
    by_key_.reserve(trips.size());
    for (const Trip& t : trips) by_key_.emplace(t.key(), &t);
}

const Trip& TripIndex::by_key(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) throw Error("unknown trip key: " + key);
    return *it->second;
}

}  // namespace encmine
