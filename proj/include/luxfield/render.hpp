#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "luxfield/decomposition.hpp"
#include "luxfield/photometry.hpp"

namespace luxfield {

struct ProbeRenderConfig {
    int size = 256;                    // image is size × size
    Vec3 view_dir{0.0, 1.0, 0.0};      // camera looks along this direction
    std::optional<double> exposure;    // unset: auto, 99th-percentile → 1.0
    double gamma = 2.2;
    bool normalize_vector_up = false;  // re-orient the vector to +z before shading

    void validate() const;
};

/// 8-bit RGB image plus the linear tristimulus buffer it was encoded from.
struct RenderedImage {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> rgb8;    // width·height·3
    std::vector<double> linear_xyz;     // width·height·3, pre-exposure, pre-gamma
    std::vector<unsigned char> coverage;  // width·height, 1 where geometry was shaded
    long clipped_channels = 0;
    double exposure_used = 1.0;
};

/// White Lambertian probe sphere under the first-order light field,
/// orthographic projection. Shading per wavelength:
/// E(λ,n) = symmetric(λ) + max(0, n·vector(λ)).
RenderedImage render_probe(const LightFieldComponents& c, const ProbeRenderConfig& cfg);

/// Equal-area square map: horizontal axis azimuth 0-360° (compass), vertical
/// axis sin(altitude) from +1 (top row, zenith) to -1. Per-direction values
/// follow reconstruct_first_order.
RenderedImage render_square_map(const LightFieldComponents& c, int size,
                                const ProbeRenderConfig& cfg = {});

struct SpectralRenderResult {
    std::vector<std::pair<std::string, RenderedImage>> bands;  // label → sub-band probe
    RenderedImage superposed;       // per-pixel sum of band tristimulus
    RenderedImage luminance_only;   // single photometric vector direction
};

/// Sub-band probes shaded with each band's own vector direction, their
/// tristimulus superposition, and the luminance-only reference. All images
/// share one exposure so the pieces sum to the whole.
SpectralRenderResult render_spectral_superposition(const LightFieldComponents& c,
                                                   double band_width_nm,
                                                   const ProbeRenderConfig& cfg);

/// Deterministic 8-bit RGB PNG. Throws IoError; rejects inconsistent buffers.
void write_png(const RenderedImage& img, const std::filesystem::path& path);

}  // namespace luxfield
