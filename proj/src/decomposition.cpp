#include "luxfield/decomposition.hpp"

#include <algorithm>

namespace luxfield {

const char* face_name(Face f) {
    switch (f) {
        case Face::XPlus: return "x+";
        case Face::XMinus: return "x-";
        case Face::YPlus: return "y+";
        case Face::YMinus: return "y-";
        case Face::ZPlus: return "z+";
        case Face::ZMinus: return "z-";
    }
    return "?";
}

std::optional<Face> face_from_name(std::string_view name) {
    for (Face f : kAllFaces)
        if (name == face_name(f)) return f;
    return std::nullopt;
}

CubicMeasurement make_measurement(std::array<SpectralDistribution, 6> faces,
                                  Timestamp timestamp, std::optional<GeoLocation> location,
                                  std::string device) {
    for (const auto& f : faces) {
        if (f.grid() != faces[0].grid())
            throw GridMismatch("cube faces must share one wavelength grid");
        if (!f.nonnegative())
            throw InvalidMeasurement("face irradiance must be finite and nonnegative");
    }
    return CubicMeasurement{std::move(faces), timestamp, location, std::move(device)};
}

LightFieldComponents decompose(const CubicMeasurement& m) {
    for (const auto& f : m.faces) {
        if (f.grid() != m.grid())
            throw GridMismatch("cube faces must share one wavelength grid");
        if (!f.nonnegative())
            throw InvalidMeasurement("face irradiance must be finite and nonnegative");
    }

    const WavelengthGrid& g = m.grid();
    const int n = g.count;
    std::array<std::vector<double>, 3> vec;
    std::vector<double> mag(n), sym(n), scal(n);
    for (auto& v : vec) v.resize(n);

    const auto& xp = m.face(Face::XPlus).values();
    const auto& xm = m.face(Face::XMinus).values();
    const auto& yp = m.face(Face::YPlus).values();
    const auto& ym = m.face(Face::YMinus).values();
    const auto& zp = m.face(Face::ZPlus).values();
    const auto& zm = m.face(Face::ZMinus).values();

    for (int i = 0; i < n; ++i) {
        const double ex = xp[i] - xm[i];
        const double ey = yp[i] - ym[i];
        const double ez = zp[i] - zm[i];
        vec[0][i] = ex;
        vec[1][i] = ey;
        vec[2][i] = ez;
        mag[i] = std::sqrt(ex * ex + ey * ey + ez * ez);
        // min of each opposed pair == (sum - |difference|) / 2
        const double sx = std::min(xp[i], xm[i]);
        const double sy = std::min(yp[i], ym[i]);
        const double sz = std::min(zp[i], zm[i]);
        sym[i] = (sx + sy + sz) / 3.0;
        scal[i] = sym[i] + 0.25 * mag[i];
    }

    return LightFieldComponents{
        {SpectralDistribution(g, std::move(vec[0])), SpectralDistribution(g, std::move(vec[1])),
         SpectralDistribution(g, std::move(vec[2]))},
        SpectralDistribution(g, std::move(mag)),
        SpectralDistribution(g, std::move(sym)),
        SpectralDistribution(g, std::move(scal))};
}

std::vector<Vec3> fibonacci_sphere(int n) {
    // golden-angle spiral; z descends uniformly so each cell has equal area
    std::vector<Vec3> dirs(static_cast<std::size_t>(n));
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * i;
        dirs[i] = {r * std::cos(phi), r * std::sin(phi), z};
    }
    return dirs;
}

SpectralDistribution IlluminationMap::spectrum(std::size_t dir) const {
    const auto begin = values.begin() + static_cast<std::ptrdiff_t>(dir * grid.count);
    return SpectralDistribution(grid, std::vector<double>(begin, begin + grid.count));
}

IlluminationMap reconstruct_first_order(const LightFieldComponents& c, int n_dirs, bool clamp) {
    if (n_dirs < 6) throw Error("reconstruction needs at least 6 directions");
    IlluminationMap map;
    map.directions = fibonacci_sphere(n_dirs);
    map.grid = c.grid();
    const int n = map.grid.count;
    map.values.resize(static_cast<std::size_t>(n_dirs) * n);
    for (int d = 0; d < n_dirs; ++d) {
        const Vec3& w = map.directions[d];
        for (int i = 0; i < n; ++i) {
            const double v = c.symmetric[i] + w.dot(c.vector_at(i));
            map.values[static_cast<std::size_t>(d) * n + i] = clamp ? std::max(0.0, v) : v;
        }
    }
    return map;
}

}  // namespace luxfield
