#pragma once

#include <optional>
#include <string>
#include <vector>

#include "luxfield/decomposition.hpp"

namespace luxfield {

/// Compass: 0° = North (+y), clockwise, so East (+x) is 90°.
/// Math: 0° = +x, counterclockwise.
enum class AzimuthConvention { Compass, Math };

struct VectorDirection {
    double altitude_deg = 0.0;               // [-90, 90]
    std::optional<double> azimuth_deg;       // [0, 360); unset for near-vertical vectors
    double magnitude = 0.0;
};

/// Direction of a light vector given its Cartesian components (x East, y
/// North, z up). Throws DirectionUndefined for the zero vector.
VectorDirection vector_direction(double ex, double ey, double ez,
                                 AzimuthConvention convention = AzimuthConvention::Compass);

/// D = 1 - |vector| / (4·scalar), with |vector| the Euclidean norm of the
/// photometric triple. 0 = collimated, 1 = Ganzfeld. Throws
/// DiffusenessUndefined when scalar_illuminance <= 0.
double diffuseness(const Vec3& vector_illuminance, double scalar_illuminance);

enum class BandingMode { Luminance, Rgb, FixedWidth, PerSample };

struct Banding {
    BandingMode mode = BandingMode::Luminance;
    double width_nm = 0.0;  // FixedWidth only

    static Banding luminance() { return {BandingMode::Luminance, 0.0}; }
    static Banding rgb() { return {BandingMode::Rgb, 0.0}; }
    static Banding fixed_width(double w) { return {BandingMode::FixedWidth, w}; }
    static Banding per_sample() { return {BandingMode::PerSample, 0.0}; }
};

struct BandEntry {
    std::string label;
    double center_nm = 0.0;
    std::optional<VectorDirection> direction;  // unset for zero-magnitude bands
    double power = 0.0;  // lux for luminance banding, W·m⁻² otherwise
};

struct SpectralVectorSet {
    Banding banding;
    std::vector<BandEntry> entries;
};

/// Band-resolved light-vector directions. Luminance banding integrates the
/// component spectra against 683·ȳ; RGB uses the linear-sRGB channel rows of
/// the color matching functions; fixed-width and per-sample banding use plain
/// radiometric integration.
SpectralVectorSet spectral_vector_directions(const LightFieldComponents& c, Banding banding,
                                             AzimuthConvention convention = AzimuthConvention::Compass);

struct SunPosition {
    double altitude_deg = 0.0;
    double azimuth_deg = 0.0;  // compass convention
    Timestamp timestamp{};
    GeoLocation location;
};

/// Topocentric solar altitude/azimuth from a low-precision ephemeris
/// (NOAA general solar position calculations, no refraction). Good to ~0.5°
/// for years 1900-2100.
SunPosition solar_position(Timestamp t, double lat_deg, double lon_deg);

}  // namespace luxfield
