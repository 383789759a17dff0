#include "encmine/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csv_util.hpp"
#include "encmine/error.hpp"

namespace encmine {

namespace {

struct ColumnMap {
    int device = -1;
    int trip = -1;
    int timestamp = -1;
    int latitude = -1;
    int longitude = -1;
    int speed = -1;
    int heading = -1;
};

ColumnMap map_header(const std::vector<std::string>& header, const std::filesystem::path& path) {
    ColumnMap cols;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        const std::string& name = header[i];
        if (name == "device_id") cols.device = i;
        else if (name == "trip_id") cols.trip = i;
        else if (name == "timestamp_ds") cols.timestamp = i;
        else if (name == "latitude") cols.latitude = i;
        else if (name == "longitude") cols.longitude = i;
        else if (name == "speed_mps") cols.speed = i;
        else if (name == "heading_deg") cols.heading = i;
    }
    if (cols.device < 0 || cols.trip < 0 || cols.timestamp < 0 || cols.latitude < 0 ||
        cols.longitude < 0) {
        throw IoError("missing required column in header of " + path.string());
    }
    return cols;
}

}  // namespace

ParseResult parse_trip_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trip file: " + path.string());

    ParseResult result;
    std::string line;
    if (!std::getline(in, line)) return result;  // empty file: empty result

    ColumnMap cols = map_header(detail::split_csv(line), path);
    result.has_speed_column = cols.speed >= 0;
    result.has_heading_column = cols.heading >= 0;
    const std::size_t min_fields = static_cast<std::size_t>(
        std::max({cols.device, cols.trip, cols.timestamp, cols.latitude, cols.longitude,
                  cols.speed, cols.heading}) + 1);

    // std::map keeps trips in deterministic key order regardless of row order.
    std::map<std::pair<std::string, std::string>, Trip> by_key;

    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = detail::split_csv(line);
        if (fields.size() < min_fields) {
            ++result.malformed_rows;
            continue;
        }
        const std::string& device = fields[cols.device];
        const std::string& trip = fields[cols.trip];

        GpsSample sample;
        bool ok = detail::parse_i64(fields[cols.timestamp], sample.timestamp_ds) &&
                  detail::parse_f64(fields[cols.latitude], sample.latitude) &&
                  detail::parse_f64(fields[cols.longitude], sample.longitude);
        if (ok && cols.speed >= 0) ok = detail::parse_f64(fields[cols.speed], sample.speed_mps);
        if (ok && cols.heading >= 0) ok = detail::parse_f64(fields[cols.heading], sample.heading_deg);
        if (!ok) {
            ++result.malformed_rows;
            if (!device.empty() && !trip.empty()) {
                result.malformed_trip_keys.insert(device + ":" + trip);
            }
            continue;
        }

        Trip& t = by_key[{device, trip}];
        if (t.samples.empty()) {
            t.device_id = device;
            t.trip_id = trip;
        }
        t.samples.push_back(sample);
    }

    for (auto& [key, trip] : by_key) {
        std::stable_sort(trip.samples.begin(), trip.samples.end(),
                         [](const GpsSample& a, const GpsSample& b) {
                             return a.timestamp_ds < b.timestamp_ds;
                         });
        // Duplicate timestamps: keep the first row, count and flag the rest.
        std::vector<GpsSample> unique;
        unique.reserve(trip.samples.size());
        for (const auto& s : trip.samples) {
            if (!unique.empty() && unique.back().timestamp_ds == s.timestamp_ds) {
                ++result.malformed_rows;
                result.malformed_trip_keys.insert(trip.key());
                continue;
            }
            unique.push_back(s);
        }
        trip.samples = std::move(unique);
        trip.refresh_summary();
        result.trips.push_back(std::move(trip));
    }
    return result;
}

bool region_filter(const Trip& trip, const RegionBounds& bounds) {
    for (const auto& s : trip.samples) {
        if (!bounds.contains(s.latitude, s.longitude)) return false;
    }
    return true;
}

bool continuity_check(const Trip& trip) {
    for (std::size_t i = 0; i + 1 < trip.samples.size(); ++i) {
        if (trip.samples[i + 1].timestamp_ds - trip.samples[i].timestamp_ds != 1) return false;
    }
    return true;
}

std::vector<Trip> qualify_trips(ParseResult parsed, const QualifyOptions& options,
                                QualificationReport& report) {
    std::vector<Trip> qualified;
    report.malformed_rows += parsed.malformed_rows;

    for (auto& trip : parsed.trips) {
        ++report.trips_read;
        if (parsed.malformed_trip_keys.count(trip.key()) != 0) {
            ++report.rejected_malformed;
            continue;
        }
        if (!region_filter(trip, options.bounds)) {
            ++report.rejected_out_of_region;
            continue;
        }
        if (!continuity_check(trip)) {
            ++report.rejected_discontinuous;
            continue;
        }
        if (trip.samples.size() < options.min_samples) {
            ++report.rejected_too_short;
            continue;
        }
        DeriveOptions derive;
        derive.speed = !parsed.has_speed_column;
        derive.heading = !parsed.has_heading_column;
        if (derive.speed || derive.heading) {
            trip = derive_kinematics(std::move(trip), derive);
        }
        ++report.trips_qualified;
        qualified.push_back(std::move(trip));
    }
    return qualified;
}

std::vector<Trip> ingest_path(const std::filesystem::path& input, const QualifyOptions& options,
                              QualificationReport& report) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
        files = detail::sorted_csv_files(input);
    } else if (fs::is_regular_file(input)) {
        files.push_back(input);
    } else {
        throw IoError("input path does not exist: " + input.string());
    }

    std::vector<Trip> all;
    for (const auto& file : files) {
        auto qualified = qualify_trips(parse_trip_file(file), options, report);
        for (auto& t : qualified) all.push_back(std::move(t));
    }
    return all;
}

static const char* kTripHeader = "device_id,trip_id,timestamp_ds,latitude,longitude,speed_mps,heading_deg\n";

void write_trip_store(const std::filesystem::path& dir, std::span<const Trip> trips) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    std::vector<const Trip*> ordered;
    ordered.reserve(trips.size());
    for (const auto& t : trips) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(),
              [](const Trip* a, const Trip* b) { return a->key() < b->key(); });

    for (const Trip* trip : ordered) {
        std::string name = detail::sanitize_filename(trip->key());
        fs::path target = dir / (name + ".csv");
        for (int suffix = 2; fs::exists(target); ++suffix) {
            target = dir / (name + "-" + std::to_string(suffix) + ".csv");
        }
        std::ostringstream out;
        out << kTripHeader;
        for (const auto& s : trip->samples) {
            out << trip->device_id << ',' << trip->trip_id << ',' << s.timestamp_ds << ','
                << detail::format_f(s.latitude, 9) << ',' << detail::format_f(s.longitude, 9) << ','
                << detail::format_f(s.speed_mps, 4) << ',' << detail::format_f(s.heading_deg, 4)
                << '\n';
        }
        detail::write_text_file(target, out.str());
    }
}

std::vector<Trip> read_trip_store(const std::filesystem::path& dir) {
    std::vector<Trip> trips;
    for (const auto& file : detail::sorted_csv_files(dir)) {
        auto parsed = parse_trip_file(file);
        for (auto& t : parsed.trips) trips.push_back(std::move(t));
    }
    return trips;
}

void write_qualification_report(const std::filesystem::path& path, const QualificationReport& report) {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["trips_read"] = report.trips_read;
    doc["trips_qualified"] = report.trips_qualified;
    doc["rejected_out_of_region"] = report.rejected_out_of_region;
    doc["rejected_discontinuous"] = report.rejected_discontinuous;
    doc["rejected_malformed"] = report.rejected_malformed;
    doc["rejected_too_short"] = report.rejected_too_short;
    doc["malformed_rows"] = report.malformed_rows;
    detail::write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace encmine
