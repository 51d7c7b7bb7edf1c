#include "luxfield/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "luxfield/photometry.hpp"

namespace luxfield {

namespace {

constexpr double kDeg = 180.0 / M_PI;

double wrap360(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d;
}

std::optional<VectorDirection> direction_or_unset(double ex, double ey, double ez,
                                                  AzimuthConvention conv) {
    if (ex == 0.0 && ey == 0.0 && ez == 0.0) return std::nullopt;
    return vector_direction(ex, ey, ez, conv);
}

}  // namespace

VectorDirection vector_direction(double ex, double ey, double ez, AzimuthConvention conv) {
    const double mag = std::sqrt(ex * ex + ey * ey + ez * ez);
    if (mag == 0.0) throw DirectionUndefined("direction undefined for the zero vector");

    const double horiz = std::sqrt(ex * ex + ey * ey);
    VectorDirection d;
    d.magnitude = mag;
    d.altitude_deg = std::atan2(ez, horiz) * kDeg;
    if (horiz >= 1e-9 * mag) {
        const double az = conv == AzimuthConvention::Compass ? std::atan2(ex, ey) * kDeg
                                                             : std::atan2(ey, ex) * kDeg;
        d.azimuth_deg = wrap360(az);
    }
    return d;
}

double diffuseness(const Vec3& vector_illuminance, double scalar_illuminance) {
    if (!(scalar_illuminance > 0.0))
        throw DiffusenessUndefined("diffuseness undefined for zero light scalar");
    const double d = 1.0 - vector_illuminance.norm() / (4.0 * scalar_illuminance);
    return std::clamp(d, 0.0, 1.0);
}

SpectralVectorSet spectral_vector_directions(const LightFieldComponents& c, Banding banding,
                                             AzimuthConvention conv) {
    SpectralVectorSet set;
    set.banding = banding;
    const WavelengthGrid& g = c.grid();

    switch (banding.mode) {
        case BandingMode::Luminance: {
            const Vec3 t{illuminance(c.vector[0]), illuminance(c.vector[1]),
                         illuminance(c.vector[2])};
            BandEntry e;
            e.label = "luminance";
            e.center_nm = 0.5 * (g.start_nm + g.stop_nm());
            e.direction = direction_or_unset(t.x, t.y, t.z, conv);
            e.power = t.norm();
            set.entries.push_back(std::move(e));
            break;
        }
        case BandingMode::Rgb: {
            // Linear-sRGB channel responsivities: rows of the XYZ→sRGB matrix
            // applied to the per-axis tristimulus.
            Tristimulus per_axis[3];
            for (int a = 0; a < 3; ++a) per_axis[a] = tristimulus(c.vector[a]);
            const char* labels[3] = {"R", "G", "B"};
            const double centers[3] = {610.0, 550.0, 465.0};
            for (int ch = 0; ch < 3; ++ch) {
                Vec3 t;
                double* comp[3] = {&t.x, &t.y, &t.z};
                for (int a = 0; a < 3; ++a) {
                    const Rgb rgb = xyz_to_linear_srgb(per_axis[a]);
                    const double v = ch == 0 ? rgb.r : ch == 1 ? rgb.g : rgb.b;
                    *comp[a] = v;
                }
                BandEntry e;
                e.label = labels[ch];
                e.center_nm = centers[ch];
                e.direction = direction_or_unset(t.x, t.y, t.z, conv);
                e.power = t.norm();
                set.entries.push_back(std::move(e));
            }
            break;
        }
        case BandingMode::FixedWidth: {
            if (!(banding.width_nm > 0.0)) throw Error("band width must be positive");
            const double span_begin = g.start_nm;
            const double span_end = g.stop_nm();
            for (double a = span_begin; a < span_end - 1e-9; a += banding.width_nm) {
                const double b = std::min(a + banding.width_nm, span_end);
                Vec3 t{band_integral(c.vector[0], a, b), band_integral(c.vector[1], a, b),
                       band_integral(c.vector[2], a, b)};
                BandEntry e;
                char buf[48];
                std::snprintf(buf, sizeof buf, "%g-%gnm", a, b);
                e.label = buf;
                e.center_nm = 0.5 * (a + b);
                e.direction = direction_or_unset(t.x, t.y, t.z, conv);
                e.power = t.norm();
                set.entries.push_back(std::move(e));
            }
            break;
        }
        case BandingMode::PerSample: {
            for (int i = 0; i < g.count; ++i) {
                const Vec3 t = c.vector_at(i);
                BandEntry e;
                char buf[32];
                std::snprintf(buf, sizeof buf, "%gnm", g.wavelength(i));
                e.label = buf;
                e.center_nm = g.wavelength(i);
                e.direction = direction_or_unset(t.x, t.y, t.z, conv);
                e.power = t.norm() * g.step_nm;
                set.entries.push_back(std::move(e));
            }
            break;
        }
    }
    return set;
}

// NOAA general solar position calculations (Meeus-derived), accurate to a few
// hundredths of a degree for 1900-2100; no atmospheric refraction.
SunPosition solar_position(Timestamp t, double lat_deg, double lon_deg) {
    if (std::abs(lat_deg) > 90.0) throw Error("latitude out of range");

    const double unix_s = static_cast<double>(t.time_since_epoch().count());
    const double jd = unix_s / 86400.0 + 2440587.5;
    const double jc = (jd - 2451545.0) / 36525.0;

    const double rad = M_PI / 180.0;
    const double mean_long = std::fmod(280.46646 + jc * (36000.76983 + jc * 0.0003032), 360.0);
    const double mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
    const double ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
    const double eq_center =
        std::sin(mean_anom * rad) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
        std::sin(2 * mean_anom * rad) * (0.019993 - 0.000101 * jc) +
        std::sin(3 * mean_anom * rad) * 0.000289;
    const double true_long = mean_long + eq_center;
    const double omega = 125.04 - 1934.136 * jc;
    const double app_long = true_long - 0.00569 - 0.00478 * std::sin(omega * rad);
    const double mean_obliq =
        23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
    const double obliq = mean_obliq + 0.00256 * std::cos(omega * rad);

    const double decl = std::asin(std::sin(obliq * rad) * std::sin(app_long * rad));

    const double var_y = std::tan(obliq * rad / 2.0) * std::tan(obliq * rad / 2.0);
    const double eq_time_min =
        4.0 / rad *
        (var_y * std::sin(2 * mean_long * rad) - 2 * ecc * std::sin(mean_anom * rad) +
         4 * ecc * var_y * std::sin(mean_anom * rad) * std::cos(2 * mean_long * rad) -
         0.5 * var_y * var_y * std::sin(4 * mean_long * rad) -
         1.25 * ecc * ecc * std::sin(2 * mean_anom * rad));

    const double minutes_utc = std::fmod(unix_s / 60.0, 1440.0);
    double tst = std::fmod(minutes_utc + eq_time_min + 4.0 * lon_deg, 1440.0);
    if (tst < 0.0) tst += 1440.0;
    const double hour_angle = (tst / 4.0 - 180.0) * rad;

    const double lat = lat_deg * rad;
    // sun unit vector in east/north/up; quadrant-safe at the poles
    const double east = -std::cos(decl) * std::sin(hour_angle);
    const double north =
        std::cos(lat) * std::sin(decl) - std::sin(lat) * std::cos(decl) * std::cos(hour_angle);
    const double up =
        std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(hour_angle);

    SunPosition p;
    p.altitude_deg = std::asin(std::clamp(up, -1.0, 1.0)) * kDeg;
    p.azimuth_deg = wrap360(std::atan2(east, north) * kDeg);
    p.timestamp = t;
    p.location = {lat_deg, lon_deg};
    return p;
}

}  // namespace luxfield
