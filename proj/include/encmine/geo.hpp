#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace encmine {

inline constexpr double kPi = 3.14159265358979323846;

/// Mean Earth radius (IUGG R1), meters. Spherical geodesy is accurate to well
/// under a meter at the <= 1 km ranges this pipeline compares to thresholds.
inline constexpr double kEarthRadiusM = 6371008.8;

/// Arc length of one degree of latitude on the reference sphere.
inline constexpr double kMetersPerDegree = kEarthRadiusM * kPi / 180.0;

/// Samples arrive on an exact 10 Hz grid; timestamps are integer deciseconds.
inline constexpr double kTickSeconds = 0.1;

/// One timestamped GPS fix with per-sample kinematics.
struct GpsSample {
    std::int64_t timestamp_ds = 0;  // deciseconds since epoch
    double latitude = 0.0;          // degrees WGS84, [-90, 90]
    double longitude = 0.0;         // degrees WGS84, [-180, 180]
    double speed_mps = 0.0;         // >= 0
    double heading_deg = 0.0;       // [0, 360) clockwise from true north
};

/// Axis-aligned lat/lon box.
struct BoundingBox {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    static BoundingBox covering(std::span<const GpsSample> samples);

    /// Box grown by `margin_m` meters on every side, converted to degrees at
    /// the box's mean latitude. Conservative: never shrinks coverage.
    BoundingBox expanded(double margin_m) const;

    bool intersects(const BoundingBox& other) const {
        return lat_min <= other.lat_max && other.lat_min <= lat_max &&
               lon_min <= other.lon_max && other.lon_min <= lon_max;
    }

    bool contains(double lat, double lon) const {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
};

/// A continuity-qualified, time-ordered 10 Hz sample sequence for one vehicle.
struct Trip {
    std::string device_id;
    std::string trip_id;
    std::vector<GpsSample> samples;  // strictly increasing timestamps, 1 ds step
    std::int64_t start_time_ds = 0;
    std::int64_t end_time_ds = 0;
    BoundingBox bbox;
    double v_max_mps = 0.0;

    /// Identifier used in every serialized artifact.
    std::string key() const { return device_id + ":" + trip_id; }

    /// Recomputes start/end, bbox and v_max from the samples.
    void refresh_summary();

    /// Sample at an absolute decisecond tick; valid only for qualified trips
    /// (constant 1 ds step), which makes the lookup a direct index.
    const GpsSample& sample_at(std::int64_t timestamp_ds) const {
        return samples[static_cast<std::size_t>(timestamp_ds - start_time_ds)];
    }
};

/// Great-circle distance in meters between two lat/lon points (degrees).
double haversine_distance(double lat_a, double lon_a, double lat_b, double lon_b);

inline double haversine_distance(const GpsSample& a, const GpsSample& b) {
    return haversine_distance(a.latitude, a.longitude, b.latitude, b.longitude);
}

/// Initial great-circle bearing from a to b, degrees in [0, 360) clockwise
/// from north. Throws DegenerateBearing for coincident points; the caller
/// decides the carry-forward policy.
double initial_bearing(double lat_a, double lon_a, double lat_b, double lon_b);

/// Absolute heading difference folded into [0, 180].
double fold_heading_difference(double heading_a_deg, double heading_b_deg);

struct DeriveOptions {
    bool speed = true;
    bool heading = true;
};

/// Populates per-sample speed and heading from consecutive positions:
/// speed[i] is the inter-sample distance over one tick (last sample repeats
/// its predecessor); heading[i] is the bearing to the next sample when the
/// displacement is at least 0.05 m, otherwise the previous heading carried
/// forward (0 at the start of a stationary prefix). Refreshes the summary.
/// Throws InsufficientSamples for trips with fewer than 2 samples.
Trip derive_kinematics(Trip trip, DeriveOptions options = {});

/// Largest single-tick displacement expressed as a speed. This is the
/// Lipschitz bound the coarse filter relies on, independent of any speed
/// values supplied in the input file.
double max_step_speed(const Trip& trip);

}  // namespace encmine
