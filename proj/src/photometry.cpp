#include "luxfield/photometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace luxfield {

namespace {

constexpr double kLuminousEfficacy = 683.0;  // lm/W
constexpr double kC2 = 1.4388e-2;            // radiation constant c2, m·K

SpectralDistribution on_canonical(const SpectralDistribution& spd) {
    return spd.grid() == canonical_grid() ? spd : resample(spd, canonical_grid());
}

Uv1960 uv_from_tristimulus(const Tristimulus& t) {
    const double den = t.X + 15.0 * t.Y + 3.0 * t.Z;
    if (den == 0.0) throw UndefinedChromaticity("u,v undefined for zero tristimulus");
    return {4.0 * t.X / den, 6.0 * t.Y / den};
}

// Planckian locus sampled at 1% mired spacing over the CCT search range.
// Golden-section refinement between neighbors recovers the continuous minimum.
struct LocusEntry {
    double mired;
    Uv1960 uv;
};

const std::vector<LocusEntry>& locus_table() {
    static const std::vector<LocusEntry> table = [] {
        std::vector<LocusEntry> t;
        const double lo = 1e6 / kCctSearchMaxK;
        const double hi = 1e6 / kCctSearchMinK;
        for (double m = lo; m < hi; m *= 1.01)
            t.push_back({m, planck_uv(1e6 / m)});
        t.push_back({hi, planck_uv(kCctSearchMinK)});
        return t;
    }();
    return table;
}

double dist2_to_locus(double mired, const Uv1960& p) {
    const Uv1960 q = planck_uv(1e6 / mired);
    const double du = p.u - q.u;
    const double dv = p.v - q.v;
    return du * du + dv * dv;
}

double golden_min_mired(double a, double b, const Uv1960& p) {
    constexpr double kInvPhi = 0.61803398874989484820;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = dist2_to_locus(x1, p);
    double f2 = dist2_to_locus(x2, p);
    while (b - a > 1e-4) {  // ~1e-4 mired: far below 1 K everywhere in range
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = dist2_to_locus(x1, p);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = dist2_to_locus(x2, p);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double illuminance(const SpectralDistribution& spd) {
    const SpectralDistribution c = on_canonical(spd);
    return kLuminousEfficacy * trapezoid_product_integral(observer_tables().ybar, c);
}

Tristimulus tristimulus(const SpectralDistribution& spd) {
    const SpectralDistribution c = on_canonical(spd);
    const ObserverTables& obs = observer_tables();
    return {kLuminousEfficacy * trapezoid_product_integral(obs.xbar, c),
            kLuminousEfficacy * trapezoid_product_integral(obs.ybar, c),
            kLuminousEfficacy * trapezoid_product_integral(obs.zbar, c)};
}

Chromaticity chromaticity(const Tristimulus& t) {
    const double sum = t.X + t.Y + t.Z;
    if (sum == 0.0) throw UndefinedChromaticity("chromaticity undefined for zero tristimulus");
    const Uv1960 uv = uv_from_tristimulus(t);
    return {t.X / sum, t.Y / sum, uv.u, 1.5 * uv.v};
}

CctEstimate cct(const Chromaticity& c) {
    const Uv1960 p{c.uprime, c.vprime * 2.0 / 3.0};
    const auto& table = locus_table();

    std::size_t best = 0;
    double best_d2 = dist2_to_locus(table[0].mired, p);
    for (std::size_t i = 1; i < table.size(); ++i) {
        const double du = p.u - table[i].uv.u;
        const double dv = p.v - table[i].uv.v;
        const double d2 = du * du + dv * dv;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    const double lo = table[best > 0 ? best - 1 : 0].mired;
    const double hi = table[std::min(best + 1, table.size() - 1)].mired;
    const double mired = golden_min_mired(lo, hi, p);
    const double kelvin = 1e6 / mired;

    const Uv1960 q = planck_uv(kelvin);
    const double dist = std::sqrt(dist2_to_locus(mired, p));
    const double duv = p.v >= q.v ? dist : -dist;
    if (std::abs(duv) > kCctDuvLimit)
        throw CctUndefined("chromaticity farther than Duv 0.05 from the Planckian locus");

    CctEstimate e;
    e.kelvin = kelvin;
    e.duv = duv;
    e.at_range_limit =
        mired < table.front().mired * 1.002 || mired > table.back().mired * 0.998;
    return e;
}

ColorSummary color_summary(const SpectralDistribution& spd) {
    ColorSummary s;
    s.tristimulus = tristimulus(spd);
    try {
        s.chromaticity = chromaticity(s.tristimulus);
    } catch (const UndefinedChromaticity&) {
        return s;
    }
    try {
        s.cct = cct(*s.chromaticity);
    } catch (const CctUndefined&) {
    }
    return s;
}

SpectralDistribution normalize_to_y100(const SpectralDistribution& spd) {
    const double y = illuminance(spd);
    if (!(y > 0.0))
        throw NormalizationUndefined("cannot normalize a spectrum with zero illuminance");
    return scale(spd, 100.0 / y);
}

double color_difference(const Chromaticity& a, const Chromaticity& b, CdMetric metric) {
    double d1, d2;
    if (metric == CdMetric::XyEuclidean) {
        d1 = a.x - b.x;
        d2 = a.y - b.y;
    } else {
        d1 = a.uprime - b.uprime;
        d2 = a.vprime - b.vprime;
    }
    return std::sqrt(d1 * d1 + d2 * d2);
}

Rgb xyz_to_linear_srgb(const Tristimulus& t) {
    // IEC 61966-2-1 matrix, D65 white.
    return {3.2404542 * t.X - 1.5371385 * t.Y - 0.4985314 * t.Z,
            -0.9692660 * t.X + 1.8760108 * t.Y + 0.0415560 * t.Z,
            0.0556434 * t.X - 0.2040259 * t.Y + 1.0572252 * t.Z};
}

Rgb xyz_to_srgb(const Tristimulus& t, double exposure, double gamma, int* clipped) {
    Rgb lin = xyz_to_linear_srgb(t);
    double ch[3] = {lin.r * exposure, lin.g * exposure, lin.b * exposure};
    for (double& v : ch) {
        if (v < 0.0 || v > 1.0) {
            if (clipped) ++*clipped;
            v = std::clamp(v, 0.0, 1.0);
        }
        v = std::pow(v, 1.0 / gamma);
    }
    return {ch[0], ch[1], ch[2]};
}

SpectralDistribution planck_spd(double kelvin, const WavelengthGrid& grid) {
    std::vector<double> v(static_cast<std::size_t>(grid.count));
    for (int i = 0; i < grid.count; ++i) {
        const double lm = grid.wavelength(i) * 1e-9;
        v[i] = std::pow(lm, -5.0) / (std::exp(kC2 / (lm * kelvin)) - 1.0);
    }
    SpectralDistribution s(grid, std::move(v));
    const double y = illuminance(resample(s, canonical_grid()));
    return scale(s, 100.0 / y);
}

Uv1960 planck_uv(double kelvin) {
    return uv_from_tristimulus(tristimulus(planck_spd(kelvin, canonical_grid())));
}

}  // namespace luxfield
