#include "luxfield/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

namespace luxfield {

namespace {

ComponentSummary summarize_component(const SpectralDistribution& spd) {
    ComponentSummary s;
    s.color = color_summary(spd);
    s.illuminance_lux = s.color.tristimulus.Y;
    return s;
}

std::optional<double> delta(const std::optional<CctEstimate>& a,
                            const std::optional<CctEstimate>& b) {
    if (!a || !b) return std::nullopt;
    return a->kelvin - b->kelvin;
}

}  // namespace

PhotometricSummary summarize(const LightFieldComponents& c, Timestamp t,
                             AzimuthConvention convention) {
    PhotometricSummary s;
    s.timestamp = t;
    s.symmetric = summarize_component(c.symmetric);
    s.scalar = summarize_component(c.scalar);
    s.vector = summarize_component(c.vector_magnitude);

    s.vector_illuminance_triple = {illuminance(c.vector[0]), illuminance(c.vector[1]),
                                   illuminance(c.vector[2])};
    s.vector_illuminance_norm = s.vector_illuminance_triple.norm();

    try {
        s.diffuseness = diffuseness(s.vector_illuminance_triple, s.scalar.illuminance_lux);
    } catch (const DiffusenessUndefined&) {
    }
    try {
        s.direction = vector_direction(s.vector_illuminance_triple.x,
                                       s.vector_illuminance_triple.y,
                                       s.vector_illuminance_triple.z, convention);
    } catch (const DirectionUndefined&) {
    }
    return s;
}

PhotometricSummary summarize_measurement(const CubicMeasurement& m,
                                         AzimuthConvention convention) {
    const WavelengthGrid canon = canonical_grid();
    CubicMeasurement r = m;
    for (auto& f : r.faces) f = resample(f, canon);
    return summarize(decompose(r), m.timestamp, convention);
}

ComparisonRecord compare_pair(const MeasurementPair& p, CdMetric metric) {
    const PhotometricSummary shade = summarize_measurement(p.shaded);
    const PhotometricSummary light = summarize_measurement(p.lit);

    ComparisonRecord rec;
    rec.scene_id = p.scene_id;

    const auto fill = [&](ComparisonRecord::PerComponent& out, const ComponentSummary& s,
                          const ComponentSummary& l) {
        out.cct_delta_k = delta(s.color.cct, l.color.cct);
        if (s.illuminance_lux > 0.0) out.illuminance_ratio = l.illuminance_lux / s.illuminance_lux;
        if (s.color.chromaticity && l.color.chromaticity)
            out.color_difference =
                color_difference(*s.color.chromaticity, *l.color.chromaticity, metric);
    };
    fill(rec.symmetric, shade.symmetric, light.symmetric);
    fill(rec.scalar, shade.scalar, light.scalar);
    fill(rec.vector, shade.vector, light.vector);

    if (shade.diffuseness && light.diffuseness)
        rec.diffuseness_delta = *shade.diffuseness - *light.diffuseness;
    if (shade.direction && light.direction)
        rec.altitude_delta_deg = shade.direction->altitude_deg - light.direction->altitude_deg;
    return rec;
}

std::pair<SpectralDistribution, SpectralDistribution> mean_normalized_spectrum(
    std::span<const SpectralDistribution> spds, int* skipped) {
    if (skipped) *skipped = 0;
    std::vector<SpectralDistribution> normalized;
    for (const auto& spd : spds) {
        try {
            normalized.push_back(normalize_to_y100(resample(spd, canonical_grid())));
        } catch (const NormalizationUndefined&) {
            if (skipped) ++*skipped;
        }
    }
    if (normalized.empty())
        throw InsufficientData("no spectrum with positive illuminance to average");

    const WavelengthGrid g = canonical_grid();
    const std::size_t n = normalized.size();
    std::vector<double> mean(g.count, 0.0), sd(g.count, 0.0);
    for (const auto& s : normalized)
        for (int i = 0; i < g.count; ++i) mean[i] += s[i];
    for (double& m : mean) m /= static_cast<double>(n);
    if (n > 1) {
        for (const auto& s : normalized)
            for (int i = 0; i < g.count; ++i) {
                const double d = s[i] - mean[i];
                sd[i] += d * d;
            }
        for (double& v : sd) v = std::sqrt(v / static_cast<double>(n - 1));
    }
    return {SpectralDistribution(g, std::move(mean)), SpectralDistribution(g, std::move(sd))};
}

RateSummary average_speed(const Series& series, const Window& window, AvsMethod method,
                          std::string quantity_tag) {
    Series in;
    for (const auto& s : series)
        if (window.contains(s.first)) in.push_back(s);
    for (std::size_t i = 1; i < in.size(); ++i)
        if (in[i].first <= in[i - 1].first)
            throw InvalidMeasurement("series timestamps must increase strictly");
    if (in.size() < 2)
        throw InsufficientData("average speed needs at least 2 in-window samples");

    RateSummary r;
    r.quantity = std::move(quantity_tag);
    r.window = window.name;
    r.n = static_cast<int>(in.size());
    if (method == AvsMethod::Local) {
        double sum = 0.0;
        for (std::size_t i = 1; i < in.size(); ++i) {
            const double dt =
                std::chrono::duration<double>(in[i].first - in[i - 1].first).count();
            sum += std::abs(in[i].second - in[i - 1].second) / dt;
        }
        r.average_speed = sum / static_cast<double>(in.size() - 1);
    } else {
        const auto [lo, hi] = std::minmax_element(
            in.begin(), in.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
        const double dt = std::chrono::duration<double>(in.back().first - in.front().first).count();
        r.average_speed = (hi->second - lo->second) / dt;
    }
    return r;
}

PearsonResult pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InsufficientData("series lengths differ");
    const std::size_t n = a.size();
    if (n < 3) throw InsufficientData("correlation needs at least 3 samples");

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        throw CorrelationUndefined("correlation undefined for zero-variance series");

    PearsonResult res;
    res.n = static_cast<int>(n);
    res.r = sab / std::sqrt(saa * sbb);
    res.r = std::clamp(res.r, -1.0, 1.0);

    const double dof = static_cast<double>(n - 2);
    if (std::abs(res.r) >= 1.0) {
        res.p = 0.0;
    } else {
        const double t = res.r * std::sqrt(dof / (1.0 - res.r * res.r));
        boost::math::students_t dist(dof);
        res.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    }
    return res;
}

}  // namespace luxfield
