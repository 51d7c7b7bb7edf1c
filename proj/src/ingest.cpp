#include "luxfield/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include <json.hpp>

#include "luxfield/timeutil.hpp"

namespace luxfield {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) lines.push_back(text.substr(pos));
            break;
        }
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t d = line.find(delim, pos);
        if (d == std::string_view::npos) {
            fields.emplace_back(line.substr(pos));
            break;
        }
        fields.emplace_back(line.substr(pos, d - pos));
        pos = d + 1;
    }
    return fields;
}

std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return c == ' ' || c == '\t'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

double parse_double(std::string field, std::size_t line, std::size_t col, bool decimal_comma) {
    field = trim(std::move(field));
    if (decimal_comma) std::replace(field.begin(), field.end(), ',', '.');
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw MalformedFile("cannot parse number '" + field + "'", line, col);
    return v;
}

std::optional<double> strip_wavelength(const std::string& cell, const DialectMapping& map) {
    std::string s = trim(cell);
    if (!map.wavelength_prefix.empty() && s.rfind(map.wavelength_prefix, 0) == 0)
        s.erase(0, map.wavelength_prefix.size());
    if (!map.wavelength_suffix.empty() && s.size() >= map.wavelength_suffix.size() &&
        s.compare(s.size() - map.wavelength_suffix.size(), map.wavelength_suffix.size(),
                  map.wavelength_suffix) == 0)
        s.erase(s.size() - map.wavelength_suffix.size());
    s = trim(std::move(s));
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

Dialect dialect_from_name(std::string_view name) {
    if (name == "canonical") return Dialect::Canonical;
    if (name == "sekonic") return Dialect::Sekonic;
    if (name == "konica") return Dialect::Konica;
    throw Error("unknown dialect: " + std::string(name));
}

DialectMapping default_mapping(Dialect d) {
    DialectMapping m;
    for (Face f : kAllFaces) m.face_aliases[face_name(f)] = face_name(f);
    m.metadata_keys = {{"timestamp", "timestamp"}, {"lat", "lat"}, {"lon", "lon"},
                       {"device", "device"}};
    if (d == Dialect::Sekonic) {
        m.wavelength_suffix = "[nm]";
        m.face_aliases = {{"X+", "x+"}, {"X-", "x-"}, {"Y+", "y+"},
                          {"Y-", "y-"}, {"Z+", "z+"}, {"Z-", "z-"}};
        m.metadata_keys = {{"Date", "timestamp"}, {"Latitude", "lat"},
                           {"Longitude", "lon"}, {"Instrument", "device"}};
    } else if (d == Dialect::Konica) {
        m.wavelength_suffix = "nm";
        m.face_aliases = {{"X+", "x+"}, {"X-", "x-"}, {"Y+", "y+"},
                          {"Y-", "y-"}, {"Z+", "z+"}, {"Z-", "z-"}};
        m.metadata_keys = {{"Date", "timestamp"}, {"Latitude", "lat"},
                           {"Longitude", "lon"}, {"Device", "device"}};
    }
    return m;
}

DialectMapping mapping_from_json(const std::string& json_text, Dialect base) {
    DialectMapping m = default_mapping(base);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFile(std::string("sidecar mapping is not valid JSON: ") + e.what(), 0);
    }
    if (j.contains("delimiter")) {
        const std::string d = j["delimiter"].get<std::string>();
        if (d.size() != 1) throw MalformedFile("delimiter must be one character", 0);
        m.delimiter = d[0];
    }
    if (j.contains("decimal_comma")) m.decimal_comma = j["decimal_comma"].get<bool>();
    if (j.contains("wavelength_prefix"))
        m.wavelength_prefix = j["wavelength_prefix"].get<std::string>();
    if (j.contains("wavelength_suffix"))
        m.wavelength_suffix = j["wavelength_suffix"].get<std::string>();
    if (j.contains("face_aliases")) {
        m.face_aliases.clear();
        for (auto& [k, v] : j["face_aliases"].items())
            m.face_aliases[k] = v.get<std::string>();
    }
    if (j.contains("metadata_keys")) {
        m.metadata_keys.clear();
        for (auto& [k, v] : j["metadata_keys"].items())
            m.metadata_keys[k] = v.get<std::string>();
    }
    return m;
}

CubicMeasurement parse_cubic_csv(std::string_view text, Dialect dialect,
                                 const DialectMapping* mapping) {
    const DialectMapping map = mapping ? *mapping : default_mapping(dialect);
    const auto lines = split_lines(text);

    Timestamp timestamp{};
    std::optional<double> lat, lon;
    std::string device;

    std::size_t lineno = 0;
    std::size_t header_line = std::string_view::npos;
    for (; lineno < lines.size(); ++lineno) {
        std::string_view line = lines[lineno];
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) continue;  // plain comment
            const std::string key = trim(std::string(line.substr(1, eq - 1)));
            const std::string value = trim(std::string(line.substr(eq + 1)));
            auto it = map.metadata_keys.find(key);
            if (it == map.metadata_keys.end()) continue;  // unknown keys are ignored
            if (it->second == "timestamp")
                timestamp = parse_iso8601(value, lineno + 1);
            else if (it->second == "lat")
                lat = parse_double(value, lineno + 1, 2, map.decimal_comma);
            else if (it->second == "lon")
                lon = parse_double(value, lineno + 1, 2, map.decimal_comma);
            else if (it->second == "device")
                device = value;
            continue;
        }
        header_line = lineno;
        break;
    }
    if (header_line == std::string_view::npos)
        throw MalformedFile("no header row found", lines.size());

    // header: face,<λ0>,<λ1>,...
    const auto header = split_fields(lines[header_line], map.delimiter);
    if (header.size() < 3)
        throw MalformedFile("header must name at least two wavelength columns",
                            header_line + 1);
    std::vector<double> wavelengths;
    wavelengths.reserve(header.size() - 1);
    for (std::size_t c = 1; c < header.size(); ++c) {
        auto w = strip_wavelength(header[c], map);
        if (!w)
            throw MalformedFile("header cell is not a wavelength: '" + header[c] + "'",
                                header_line + 1, c + 1);
        wavelengths.push_back(*w);
    }
    const double step = wavelengths[1] - wavelengths[0];
    for (std::size_t i = 1; i < wavelengths.size(); ++i) {
        const double d = wavelengths[i] - wavelengths[i - 1];
        if (!(d > 0.0))
            throw MalformedGrid("wavelengths must increase monotonically (column " +
                                std::to_string(i + 2) + ")");
        if (std::abs(d - step) > 1e-9)
            throw MalformedGrid("wavelength grid must be uniform (column " +
                                std::to_string(i + 2) + ")");
    }
    WavelengthGrid grid(wavelengths[0], step, static_cast<int>(wavelengths.size()));

    std::array<std::optional<SpectralDistribution>, 6> faces;
    for (lineno = header_line + 1; lineno < lines.size(); ++lineno) {
        std::string_view line = lines[lineno];
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line, map.delimiter);
        const std::string label = trim(fields[0]);
        auto alias = map.face_aliases.find(label);
        const auto face = alias != map.face_aliases.end() ? face_from_name(alias->second)
                                                          : face_from_name(label);
        if (!face)
            throw MalformedFile("unknown face label '" + label + "'", lineno + 1, 1);
        auto& slot = faces[static_cast<std::size_t>(*face)];
        if (slot)
            throw MalformedFile(std::string("duplicate face row ") + face_name(*face),
                                lineno + 1, 1);
        if (fields.size() != wavelengths.size() + 1)
            throw MalformedFile("row has " + std::to_string(fields.size() - 1) +
                                    " values, expected " + std::to_string(wavelengths.size()),
                                lineno + 1);
        std::vector<double> values(wavelengths.size());
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const double v = parse_double(fields[c], lineno + 1, c + 1, map.decimal_comma);
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidMeasurement("negative or non-finite irradiance at line " +
                                         std::to_string(lineno + 1) + ", column " +
                                         std::to_string(c + 1));
            values[c - 1] = v;
        }
        slot = SpectralDistribution(grid, std::move(values));
    }

    for (Face f : kAllFaces)
        if (!faces[static_cast<std::size_t>(f)]) throw MissingFace(face_name(f));

    std::optional<GeoLocation> location;
    if (lat && lon) location = GeoLocation{*lat, *lon};

    return CubicMeasurement{{std::move(*faces[0]), std::move(*faces[1]), std::move(*faces[2]),
                             std::move(*faces[3]), std::move(*faces[4]), std::move(*faces[5])},
                            timestamp, location, std::move(device)};
}

std::string write_canonical(const CubicMeasurement& m) {
    std::string out;
    out += "#timestamp=" + format_iso8601(m.timestamp) + "\n";
    if (m.location) {
        out += "#lat=" + format_double(m.location->lat_deg) + "\n";
        out += "#lon=" + format_double(m.location->lon_deg) + "\n";
    }
    if (!m.device.empty()) out += "#device=" + m.device + "\n";

    out += "face";
    const WavelengthGrid& g = m.grid();
    for (int i = 0; i < g.count; ++i) out += "," + format_double(g.wavelength(i));
    out += "\n";
    for (Face f : kAllFaces) {
        out += face_name(f);
        for (double v : m.face(f).values()) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

namespace {

Window parse_window_spec(const std::string& spec, Timestamp day) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw MalformedFile("window spec must be name=HH:MM-HH:MM or name=<iso>/<iso>: '" +
                                spec + "'",
                            0);
    Window w;
    w.name = spec.substr(0, eq);
    const std::string range = spec.substr(eq + 1);
    if (range.find('T') != std::string::npos) {
        const std::size_t slash = range.find('/');
        if (slash == std::string::npos)
            throw MalformedFile("instant window needs <iso>/<iso>: '" + spec + "'", 0);
        w.begin = parse_iso8601(range.substr(0, slash));
        w.end = parse_iso8601(range.substr(slash + 1));
    } else {
        const std::size_t dash = range.find('-');
        if (dash == std::string::npos)
            throw MalformedFile("window needs HH:MM-HH:MM: '" + spec + "'", 0);
        w.begin = day + std::chrono::seconds(parse_hhmm(range.substr(0, dash)));
        w.end = day + std::chrono::seconds(parse_hhmm(range.substr(dash + 1)));
    }
    if (w.end <= w.begin) throw MalformedFile("window end must be after begin: '" + spec + "'", 0);
    return w;
}

}  // namespace

Session assemble_session(std::vector<CubicMeasurement> measurements,
                         const std::vector<std::string>& window_specs,
                         SessionMetadata metadata) {
    if (measurements.empty()) throw InsufficientData("session needs at least one measurement");
    std::sort(measurements.begin(), measurements.end(),
              [](const CubicMeasurement& a, const CubicMeasurement& b) {
                  return a.timestamp < b.timestamp;
              });
    for (std::size_t i = 1; i < measurements.size(); ++i)
        if (measurements[i].timestamp == measurements[i - 1].timestamp)
            throw DuplicateTimestamp("duplicate timestamp " +
                                     format_iso8601(measurements[i].timestamp));

    Session s;
    s.metadata = std::move(metadata);
    const Timestamp first = measurements.front().timestamp;
    const Timestamp last = measurements.back().timestamp;
    for (const auto& spec : window_specs) {
        Window w = parse_window_spec(spec, day_start(first));
        if (w.end < first || w.begin > last)
            throw WindowOutOfRange("window '" + w.name + "' lies outside the measured range");
        w.interior = w.begin >= first && w.end <= last;
        w.begin = std::max(w.begin, first);
        w.end = std::min(w.end, last);
        s.windows.push_back(std::move(w));
    }
    s.measurements = std::move(measurements);
    return s;
}

MeasurementPair make_measurement_pair(CubicMeasurement lit, CubicMeasurement shaded,
                                      int scene_id) {
    const auto dt = lit.timestamp > shaded.timestamp ? lit.timestamp - shaded.timestamp
                                                     : shaded.timestamp - lit.timestamp;
    if (dt > std::chrono::seconds(120))
        throw InvalidMeasurement("pair members acquired more than 120 s apart (scene " +
                                 std::to_string(scene_id) + ")");
    return MeasurementPair{std::move(lit), std::move(shaded), scene_id};
}

}  // namespace luxfield
