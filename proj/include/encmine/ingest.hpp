#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "encmine/geo.hpp"

namespace encmine {

/// Geographic qualification window. Defaults cover the Ann Arbor deployment
/// area: latitude [41.65, 44.5], longitude [-86, -82.37].
struct RegionBounds {
    double lat_min = 41.65;
    double lat_max = 44.5;
    double lon_min = -86.0;
    double lon_max = -82.37;

    bool contains(double lat, double lon) const {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
};

/// Per-run ingest accounting. trips_read always equals trips_qualified plus
/// the four rejection buckets; malformed_rows is row-level diagnostics on top.
struct QualificationReport {
    std::size_t trips_read = 0;
    std::size_t trips_qualified = 0;
    std::size_t rejected_out_of_region = 0;
    std::size_t rejected_discontinuous = 0;
    std::size_t rejected_malformed = 0;
    std::size_t rejected_too_short = 0;
    std::size_t malformed_rows = 0;

    std::size_t rejected_total() const {
        return rejected_out_of_region + rejected_discontinuous + rejected_malformed + rejected_too_short;
    }
};

/// Raw parse output: trips are grouped by (device_id, trip_id) and sample-
/// sorted, but not yet qualified. Rows that fail to parse, and rows that
/// duplicate a timestamp already seen in their trip, are dropped and counted;
/// their whole trip is flagged malformed.
struct ParseResult {
    std::vector<Trip> trips;
    std::unordered_set<std::string> malformed_trip_keys;
    std::size_t malformed_rows = 0;
    bool has_speed_column = false;
    bool has_heading_column = false;
};

/// Parses one raw trip log. Expected header:
///   device_id,trip_id,timestamp_ds,latitude,longitude[,speed_mps][,heading_deg]
/// An empty file yields an empty result. Throws IoError when the file cannot
/// be read or the header lacks a required column.
ParseResult parse_trip_file(const std::filesystem::path& path);

/// True iff every sample lies inside the bounds (boundary inclusive).
/// Any sample outside rejects the whole trip.
bool region_filter(const Trip& trip, const RegionBounds& bounds);

/// True iff consecutive timestamps differ by exactly one decisecond
/// throughout. A single missing tick (or a duplicate) discards the trip.
bool continuity_check(const Trip& trip);

struct QualifyOptions {
    RegionBounds bounds;
    /// Trips shorter than this cannot host a minimum-duration encounter.
    std::size_t min_samples = 50;
};

/// Applies malformed/region/continuity/length checks in that order, counting
/// each trip once, then derives any kinematics the input did not supply.
/// Supplied speed/heading columns are kept verbatim.
std::vector<Trip> qualify_trips(ParseResult parsed, const QualifyOptions& options,
                                QualificationReport& report);

/// Convenience: parse + qualify every *.csv under `input` (file or directory).
std::vector<Trip> ingest_path(const std::filesystem::path& input, const QualifyOptions& options,
                              QualificationReport& report);

/// Qualified-trip store: one CSV per trip (full 7-column schema), named by the
/// sanitized trip key. Files are written in sorted key order.
void write_trip_store(const std::filesystem::path& dir, std::span<const Trip> trips);

/// Loads every trip CSV under dir, in sorted filename order.
std::vector<Trip> read_trip_store(const std::filesystem::path& dir);

void write_qualification_report(const std::filesystem::path& path, const QualificationReport& report);

}  // namespace encmine
