#pragma once

#include <map>
#include <string>
#include <vector>

#include "luxfield/decomposition.hpp"

namespace luxfield {

enum class Dialect { Canonical, Sekonic, Konica };

Dialect dialect_from_name(std::string_view name);  // "canonical" | "sekonic" | "konica"

/// Column/label mapping for vendor export formats. Vendor schemas vary by
/// firmware, so the built-in defaults only cover the common shape; a sidecar
/// JSON file can override every field.
struct DialectMapping {
    char delimiter = ',';
    bool decimal_comma = false;
    std::map<std::string, std::string> face_aliases;   // file label → "x+", "x-", ...
    std::string wavelength_prefix;                     // stripped from header cells
    std::string wavelength_suffix;
    std::map<std::string, std::string> metadata_keys;  // file key → timestamp|lat|lon|device
};

DialectMapping default_mapping(Dialect d);

/// Sidecar format: a JSON object with any of "delimiter", "decimal_comma",
/// "face_aliases", "wavelength_prefix", "wavelength_suffix", "metadata_keys".
DialectMapping mapping_from_json(const std::string& json_text, Dialect base);

/// Parses one measurement file. The native grid is preserved; resampling
/// happens downstream. Throws MissingFace / MalformedGrid / InvalidMeasurement
/// / MalformedFile; never crashes on arbitrary bytes.
CubicMeasurement parse_cubic_csv(std::string_view text, Dialect dialect = Dialect::Canonical,
                                 const DialectMapping* mapping = nullptr);

/// Canonical writer: `#key=value` metadata lines, a `face,<λ...>` header and
/// six face rows. Floats use shortest round-trip formatting so
/// parse(write(x)) == x at full precision.
std::string write_canonical(const CubicMeasurement& m);

struct Window {
    std::string name;
    Timestamp begin{};
    Timestamp end{};
    bool interior = false;  // true when the window lies strictly inside the data range

    bool contains(Timestamp t) const { return t >= begin && t <= end; }
};

struct SessionMetadata {
    std::string site;
    std::string device;
    std::string sky_condition;
};

/// Time-ordered measurement sequence with named analysis windows.
struct Session {
    std::vector<CubicMeasurement> measurements;  // strictly increasing timestamps
    std::vector<Window> windows;
    SessionMetadata metadata;

    Timestamp first() const { return measurements.front().timestamp; }
    Timestamp last() const { return measurements.back().timestamp; }
};

/// Window specs: "name=HH:MM-HH:MM" (UTC, on the date of the first
/// measurement) or "name=<iso8601>/<iso8601>". Sorts measurements, rejects
/// duplicate timestamps, validates and clips windows to the data range.
Session assemble_session(std::vector<CubicMeasurement> measurements,
                         const std::vector<std::string>& window_specs,
                         SessionMetadata metadata = {});

/// Lit/shaded measurement pair from one scene, acquired within 120 s.
struct MeasurementPair {
    CubicMeasurement lit;
    CubicMeasurement shaded;
    int scene_id = 0;
};

MeasurementPair make_measurement_pair(CubicMeasurement lit, CubicMeasurement shaded,
                                      int scene_id);

}  // namespace luxfield
