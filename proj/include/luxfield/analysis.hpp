#pragma once

#include <span>
#include <utility>

#include "luxfield/geometry.hpp"
#include "luxfield/ingest.hpp"
#include "luxfield/photometry.hpp"

namespace luxfield {

struct ComponentSummary {
    double illuminance_lux = 0.0;
    ColorSummary color;
};

/// Photometric image of one decomposed measurement. Undefined quantities are
/// carried as unset optionals so a dim twilight sample never kills a batch.
struct PhotometricSummary {
    Timestamp timestamp{};
    ComponentSummary symmetric;
    ComponentSummary scalar;
    /// Vector component; illuminance_lux integrates the per-wavelength
    /// magnitude spectrum (magnitude-then-luminosity route).
    ComponentSummary vector;
    Vec3 vector_illuminance_triple;        // signed per-axis illuminances
    double vector_illuminance_norm = 0.0;  // Euclidean norm of the triple
    std::optional<double> diffuseness;
    std::optional<VectorDirection> direction;
};

PhotometricSummary summarize(const LightFieldComponents& c, Timestamp t,
                             AzimuthConvention convention = AzimuthConvention::Compass);

/// Convenience: resample to the canonical grid, decompose, summarize.
PhotometricSummary summarize_measurement(const CubicMeasurement& m,
                                         AzimuthConvention convention = AzimuthConvention::Compass);

/// Shade-vs-light record for one scene. Deltas are shade minus light; the
/// illuminance ratio is light over shade.
struct ComparisonRecord {
    int scene_id = 0;
    struct PerComponent {
        std::optional<double> cct_delta_k;
        std::optional<double> illuminance_ratio;
        std::optional<double> color_difference;
    };
    PerComponent symmetric, scalar, vector;
    std::optional<double> diffuseness_delta;
    std::optional<double> altitude_delta_deg;
};

ComparisonRecord compare_pair(const MeasurementPair& p,
                              CdMetric metric = CdMetric::XyEuclidean);

/// Normalizes every spectrum to Y=100, then returns the pointwise mean and
/// sample (n-1) standard deviation. Zero-illuminance members are skipped and
/// counted in `skipped`.
std::pair<SpectralDistribution, SpectralDistribution> mean_normalized_spectrum(
    std::span<const SpectralDistribution> spds, int* skipped = nullptr);

enum class AvsMethod { Local, Range };

struct RateSummary {
    std::string quantity;
    std::string window;
    double average_speed = 0.0;  // value units per second
    int n = 0;                   // samples used
};

using Series = std::vector<std::pair<Timestamp, double>>;

/// Average speed of change within the window. Local: mean of |Δv|/Δt over
/// consecutive pairs. Range: (max-min)/(t_last-t_first).
RateSummary average_speed(const Series& series, const Window& window,
                          AvsMethod method = AvsMethod::Local,
                          std::string quantity_tag = {});

struct PearsonResult {
    double r = 0.0;
    double p = 1.0;  // two-tailed, t distribution with n-2 dof
    int n = 0;
};

PearsonResult pearson(std::span<const double> a, std::span<const double> b);

}  // namespace luxfield
