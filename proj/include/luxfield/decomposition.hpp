#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "luxfield/spectral.hpp"

namespace luxfield {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
    }
};

/// Cube faces. x+ points East, y+ North, z+ up.
enum class Face { XPlus, XMinus, YPlus, YMinus, ZPlus, ZMinus };

inline constexpr std::array<Face, 6> kAllFaces = {Face::XPlus, Face::XMinus, Face::YPlus,
                                                  Face::YMinus, Face::ZPlus, Face::ZMinus};

const char* face_name(Face f);                      // "x+", "x-", ...
std::optional<Face> face_from_name(std::string_view name);

using Timestamp = std::chrono::sys_time<std::chrono::seconds>;

struct GeoLocation {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

/// One local light-field sample: six face irradiance spectra on a shared grid.
struct CubicMeasurement {
    std::array<SpectralDistribution, 6> faces;
    Timestamp timestamp{};
    std::optional<GeoLocation> location;
    std::string device;

    const SpectralDistribution& face(Face f) const {
        return faces[static_cast<std::size_t>(f)];
    }
    const WavelengthGrid& grid() const { return faces[0].grid(); }
};

/// Builds an isotropic-friendly measurement from six per-face spectra keyed in
/// kAllFaces order. Validates shared grid and nonnegativity.
CubicMeasurement make_measurement(std::array<SpectralDistribution, 6> faces,
                                  Timestamp timestamp = {},
                                  std::optional<GeoLocation> location = std::nullopt,
                                  std::string device = {});

/// First-order light-field components, all on the measurement grid.
struct LightFieldComponents {
    std::array<SpectralDistribution, 3> vector;  // signed x, y, z component spectra
    SpectralDistribution vector_magnitude;       // per-wavelength Euclidean norm
    SpectralDistribution symmetric;
    SpectralDistribution scalar;                 // symmetric + magnitude/4

    const WavelengthGrid& grid() const { return symmetric.grid(); }
    Vec3 vector_at(int i) const { return {vector[0][i], vector[1][i], vector[2][i]}; }
};

/// Per-wavelength decomposition: opposed-face differences give the vector,
/// the lesser of each opposed pair gives the symmetric sub-components, and
/// the light scalar is symmetric + |vector|/4.
LightFieldComponents decompose(const CubicMeasurement& m);

/// Quasi-uniform unit directions (Fibonacci lattice), deterministic.
std::vector<Vec3> fibonacci_sphere(int n);

/// First-order reconstruction of the illumination map over quasi-uniform
/// sphere directions: value(ω, λ) = max(0, symmetric(λ) + ω·vector(λ)).
struct IlluminationMap {
    std::vector<Vec3> directions;
    WavelengthGrid grid;
    std::vector<double> values;  // directions.size() × grid.count, row-major

    double value(std::size_t dir, int bin) const {
        return values[dir * static_cast<std::size_t>(grid.count) + static_cast<std::size_t>(bin)];
    }
    SpectralDistribution spectrum(std::size_t dir) const;
};

/// `clamp=false` keeps the signed first-order values for diagnostics.
IlluminationMap reconstruct_first_order(const LightFieldComponents& c, int n_dirs,
                                        bool clamp = true);

}  // namespace luxfield
