#pragma once

#include <optional>

#include "luxfield/observer.hpp"
#include "luxfield/spectral.hpp"

namespace luxfield {

/// CIE tristimulus values. When computed from spectral irradiance via the
/// 683 lm/W maximum luminous efficacy, Y is illuminance in lux.
struct Tristimulus {
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;
};

struct Chromaticity {
    double x = 0.0;
    double y = 0.0;
    double uprime = 0.0;  // CIE 1976 u'
    double vprime = 0.0;  // CIE 1976 v'
};

/// Correlated color temperature: nearest Planckian-locus point in CIE 1960 (u,v).
struct CctEstimate {
    double kelvin = 0.0;
    double duv = 0.0;            // signed distance from the locus, + above
    bool at_range_limit = false; // nearest point sits at the 1000/30000 K search boundary
};

struct ColorSummary {
    Tristimulus tristimulus;
    std::optional<Chromaticity> chromaticity;  // unset when X+Y+Z == 0
    std::optional<CctEstimate> cct;            // unset when off-locus (|Duv| > 0.05)
};

/// Maximum |Duv| for which a CCT is considered defined.
inline constexpr double kCctDuvLimit = 0.05;
inline constexpr double kCctSearchMinK = 1000.0;
inline constexpr double kCctSearchMaxK = 30000.0;

/// Illuminance in lux: 683 · ∫ ȳ(λ)E(λ)dλ, trapezoidal on the canonical grid.
/// Signed spectra yield signed illuminance.
double illuminance(const SpectralDistribution& spd);

Tristimulus tristimulus(const SpectralDistribution& spd);

/// Throws UndefinedChromaticity when X+Y+Z == 0.
Chromaticity chromaticity(const Tristimulus& t);

/// Throws CctUndefined when the chromaticity is farther than kCctDuvLimit
/// from the Planckian locus.
CctEstimate cct(const Chromaticity& c);

/// Tristimulus, chromaticity and CCT with undefined values carried as flags
/// instead of exceptions.
ColorSummary color_summary(const SpectralDistribution& spd);

/// Scales the spectrum so its tristimulus Y equals 100.
/// Throws NormalizationUndefined for zero or negative illuminance.
SpectralDistribution normalize_to_y100(const SpectralDistribution& spd);

enum class CdMetric { XyEuclidean, UvEuclidean };

double color_difference(const Chromaticity& a, const Chromaticity& b, CdMetric metric);

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

/// XYZ → linear sRGB (D65 primaries), no exposure, no clipping, no transfer.
Rgb xyz_to_linear_srgb(const Tristimulus& t);

/// Full display encoding: linear sRGB · exposure, clipped to [0,1], then a
/// plain 1/gamma power law. `clipped`, when given, counts channels clipped.
Rgb xyz_to_srgb(const Tristimulus& t, double exposure, double gamma = 2.2,
                int* clipped = nullptr);

/// Planckian radiator on `grid`, scaled to tristimulus Y = 100.
SpectralDistribution planck_spd(double kelvin, const WavelengthGrid& grid);

/// (u, v) in CIE 1960; u = u', v = 2/3 v'.
struct Uv1960 {
    double u = 0.0;
    double v = 0.0;
};
Uv1960 planck_uv(double kelvin);

}  // namespace luxfield
