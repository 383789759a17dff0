#include "encmine/geo.hpp"

#include <algorithm>
#include <cmath>

#include "encmine/error.hpp"

namespace encmine {

namespace {

constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

double normalize_heading(double deg) {
    double h = std::fmod(deg, 360.0);
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h = 0.0;  // fmod can round back up to 360
    return h;
}

}  // namespace

BoundingBox BoundingBox::covering(std::span<const GpsSample> samples) {
    BoundingBox box;
    if (samples.empty()) return box;
    box.lat_min = box.lat_max = samples[0].latitude;
    box.lon_min = box.lon_max = samples[0].longitude;
    for (const auto& s : samples) {
        box.lat_min = std::min(box.lat_min, s.latitude);
        box.lat_max = std::max(box.lat_max, s.latitude);
        box.lon_min = std::min(box.lon_min, s.longitude);
        box.lon_max = std::max(box.lon_max, s.longitude);
    }
    return box;
}

BoundingBox BoundingBox::expanded(double margin_m) const {
    double mean_lat = 0.5 * (lat_min + lat_max);
    double cos_lat = std::max(std::cos(mean_lat * kDegToRad), 0.01);
    double dlat = margin_m / kMetersPerDegree;
    double dlon = margin_m / (kMetersPerDegree * cos_lat);
    return BoundingBox{lat_min - dlat, lat_max + dlat, lon_min - dlon, lon_max + dlon};
}

void Trip::refresh_summary() {
    if (samples.empty()) {
        start_time_ds = end_time_ds = 0;
        bbox = BoundingBox{};
        v_max_mps = 0.0;
        return;
    }
    start_time_ds = samples.front().timestamp_ds;
    end_time_ds = samples.back().timestamp_ds;
    bbox = BoundingBox::covering(samples);
    v_max_mps = 0.0;
    for (const auto& s : samples) v_max_mps = std::max(v_max_mps, s.speed_mps);
}

double haversine_distance(double lat_a, double lon_a, double lat_b, double lon_b) {
    double phi_a = lat_a * kDegToRad;
    double phi_b = lat_b * kDegToRad;
    double dphi = (lat_b - lat_a) * kDegToRad;
    double dlambda = (lon_b - lon_a) * kDegToRad;

    double s_lat = std::sin(0.5 * dphi);
    double s_lon = std::sin(0.5 * dlambda);
    double h = s_lat * s_lat + std::cos(phi_a) * std::cos(phi_b) * s_lon * s_lon;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

double initial_bearing(double lat_a, double lon_a, double lat_b, double lon_b) {
    if (lat_a == lat_b && lon_a == lon_b) {
        throw DegenerateBearing("initial_bearing: coincident points");
    }
    double phi_a = lat_a * kDegToRad;
    double phi_b = lat_b * kDegToRad;
    double dlambda = (lon_b - lon_a) * kDegToRad;

    double y = std::sin(dlambda) * std::cos(phi_b);
    double x = std::cos(phi_a) * std::sin(phi_b) - std::sin(phi_a) * std::cos(phi_b) * std::cos(dlambda);
    return normalize_heading(std::atan2(y, x) * kRadToDeg);
}

double fold_heading_difference(double heading_a_deg, double heading_b_deg) {
    double diff = std::fabs(heading_a_deg - heading_b_deg);
    diff = std::fmod(diff, 360.0);
    return diff > 180.0 ? 360.0 - diff : diff;
}

Trip derive_kinematics(Trip trip, DeriveOptions options) {
    const std::size_t n = trip.samples.size();
    if (n < 2) {
        throw InsufficientSamples("derive_kinematics: trip " + trip.key() + " has fewer than 2 samples");
    }

    if (options.speed) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double step = haversine_distance(trip.samples[i], trip.samples[i + 1]);
            trip.samples[i].speed_mps = step / kTickSeconds;
        }
        trip.samples[n - 1].speed_mps = trip.samples[n - 2].speed_mps;
    }

    if (options.heading) {
        double carried = 0.0;  // heading 0 for a stationary prefix
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto& cur = trip.samples[i];
            const auto& nxt = trip.samples[i + 1];
            if (haversine_distance(cur, nxt) >= 0.05) {
                carried = initial_bearing(cur.latitude, cur.longitude, nxt.latitude, nxt.longitude);
            }
            trip.samples[i].heading_deg = carried;
        }
        trip.samples[n - 1].heading_deg = carried;
    }

    trip.refresh_summary();
    return trip;
}

double max_step_speed(const Trip& trip) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < trip.samples.size(); ++i) {
        best = std::max(best, haversine_distance(trip.samples[i], trip.samples[i + 1]) / kTickSeconds);
    }
    return best;
}

}  // namespace encmine
