#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "encmine/geo.hpp"

namespace encmine {

/// Two trips sharing temporal and spatial intersection. Stored canonically
/// (trip_a < trip_b lexicographically); the overlap window is the shared
/// decisecond range.
struct TripPairCandidate {
    std::string trip_a;
    std::string trip_b;
    std::int64_t overlap_start_ds = 0;
    std::int64_t overlap_end_ds = 0;

    friend bool operator==(const TripPairCandidate&, const TripPairCandidate&) = default;
    friend auto operator<=>(const TripPairCandidate&, const TripPairCandidate&) = default;
};

struct MatchStats {
    std::size_t trips_in = 0;
    std::size_t pairs_out = 0;
    std::size_t comparisons = 0;     // pairwise overlap tests performed
    std::size_t peak_queue_len = 0;  // effective temporal concurrency
};

struct MatchResult {
    std::vector<TripPairCandidate> pairs;  // sorted canonically, no duplicates
    MatchStats stats;
};

/// Default spatial slack: trips whose expanded bounding boxes stay apart by
/// more than this can never produce a <= 100 m encounter.
inline constexpr double kDefaultMatchMarginM = 100.0;

/// Orders trips by (start_time, end_time), stable for ties.
std::vector<Trip> sort_trips(std::vector<Trip> trips);

/// Queue sweep over start-time-ordered trips. For each incoming trip, queue
/// residents whose end time precedes the incoming start time are evicted
/// (they cannot overlap any later trip either); every surviving resident is
/// tested and a candidate emitted iff the time windows intersect and the
/// margin-expanded bounding boxes intersect. A failed spatial test only
/// suppresses emission, it never evicts. Throws UnsortedInput when start
/// times decrease.
MatchResult sweep_match(std::span<const Trip> sorted_trips, double margin_m = kDefaultMatchMarginM);

/// Quadratic oracle: tests all n(n-1)/2 pairs with the same overlap predicate.
MatchResult brute_force_match(std::span<const Trip> trips, double margin_m = kDefaultMatchMarginM);

/// The shared overlap predicate. Fills `out` when the pair overlaps.
bool pair_overlap(const Trip& a, const Trip& b, double margin_m, TripPairCandidate* out);

/// Key -> trip lookup built over a qualified trip set.
class TripIndex {
public:
    explicit TripIndex(std::span<const Trip> trips);

    /// Throws Error for an unknown key.
    const Trip& by_key(const std::string& key) const;

private:
    std::unordered_map<std::string, const Trip*> by_key_;
};

}  // namespace encmine
