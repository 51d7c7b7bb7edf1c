#include "luxfield/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <zlib.h>

#include "luxfield/geometry.hpp"
#include "luxfield/observer.hpp"

namespace luxfield {

namespace {

constexpr double kLuminousEfficacy = 683.0;

struct Basis {
    Vec3 right, up, forward;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Basis camera_basis(Vec3 view_dir) {
    const Vec3 forward = view_dir.normalized();
    Vec3 up_hint{0.0, 0.0, 1.0};
    if (std::abs(forward.dot(up_hint)) > 0.9) up_hint = {0.0, 1.0, 0.0};
    const Vec3 right = cross(forward, up_hint).normalized();
    const Vec3 up = cross(right, forward).normalized();
    return {right, up, forward};
}

// Observer tables resampled onto the component grid, premultiplied by 683.
struct Bars {
    std::vector<double> x, y, z;
};

Bars bars_on(const WavelengthGrid& g) {
    const ObserverTables& obs = observer_tables();
    Bars b;
    for (const auto* src : {&obs.xbar, &obs.ybar, &obs.zbar}) {
        const SpectralDistribution r = resample(*src, g);
        std::vector<double> v(r.values());
        for (double& e : v) e *= kLuminousEfficacy;
        (src == &obs.xbar ? b.x : src == &obs.ybar ? b.y : b.z) = std::move(v);
    }
    return b;
}

// trapezoid of e(λ)·bar(λ) over the full grid
double tri_channel(const std::vector<double>& e, const std::vector<double>& bar, double step) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
        sum += e[i] * bar[i] + e[i + 1] * bar[i + 1];
    return 0.5 * sum * step;
}

double percentile99(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t k = static_cast<std::size_t>(0.99 * (v.size() - 1));
    std::nth_element(v.begin(), v.begin() + k, v.end());
    return v[k];
}

double auto_or_given_exposure(const RenderedImage& img, const std::optional<double>& exposure) {
    if (exposure) return *exposure;
    std::vector<double> lin;
    lin.reserve(img.linear_xyz.size());
    for (int p = 0; p < img.width * img.height; ++p) {
        if (!img.coverage[p]) continue;
        const Tristimulus t{img.linear_xyz[3 * p], img.linear_xyz[3 * p + 1],
                            img.linear_xyz[3 * p + 2]};
        const Rgb rgb = xyz_to_linear_srgb(t);
        for (double c : {rgb.r, rgb.g, rgb.b})
            if (c > 0.0) lin.push_back(c);
    }
    const double p99 = percentile99(std::move(lin));
    return p99 > 0.0 ? 1.0 / p99 : 1.0;
}

void encode_image(RenderedImage& img, const std::optional<double>& exposure, double gamma) {
    const double e = auto_or_given_exposure(img, exposure);
    img.exposure_used = e;
    img.clipped_channels = 0;
    img.rgb8.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
    int clipped = 0;
    for (int p = 0; p < img.width * img.height; ++p) {
        if (!img.coverage[p]) continue;
        const Tristimulus t{img.linear_xyz[3 * p], img.linear_xyz[3 * p + 1],
                            img.linear_xyz[3 * p + 2]};
        const Rgb rgb = xyz_to_srgb(t, e, gamma, &clipped);
        img.rgb8[3 * p] = static_cast<unsigned char>(std::lround(rgb.r * 255.0));
        img.rgb8[3 * p + 1] = static_cast<unsigned char>(std::lround(rgb.g * 255.0));
        img.rgb8[3 * p + 2] = static_cast<unsigned char>(std::lround(rgb.b * 255.0));
    }
    img.clipped_channels = clipped;
}

RenderedImage blank(int w, int h) {
    RenderedImage img;
    img.width = w;
    img.height = h;
    img.linear_xyz.assign(static_cast<std::size_t>(w) * h * 3, 0.0);
    img.coverage.assign(static_cast<std::size_t>(w) * h, 0);
    return img;
}

}  // namespace

void ProbeRenderConfig::validate() const {
    if (size < 16) throw Error("probe image size must be at least 16 px");
    if (gamma <= 0.0) throw Error("gamma must be positive");
    if (exposure && !(*exposure > 0.0)) throw Error("exposure must be positive");
    if (view_dir.norm() == 0.0) throw Error("view direction must be nonzero");
}

RenderedImage render_probe(const LightFieldComponents& c, const ProbeRenderConfig& cfg) {
    cfg.validate();
    const Basis cam = camera_basis(cfg.view_dir);
    const WavelengthGrid& g = c.grid();
    const Bars bars = bars_on(g);
    const int n = g.count;

    // per-λ vector, optionally re-pointed to +z with magnitude kept
    std::vector<Vec3> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[i] = cfg.normalize_vector_up ? Vec3{0.0, 0.0, c.vector_magnitude[i]} : c.vector_at(i);

    RenderedImage img = blank(cfg.size, cfg.size);
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int j = 0; j < cfg.size; ++j) {
        const double py = 1.0 - 2.0 * (j + 0.5) / cfg.size;
        for (int i = 0; i < cfg.size; ++i) {
            const double px = 2.0 * (i + 0.5) / cfg.size - 1.0;
            const double rr = px * px + py * py;
            if (rr > 1.0) continue;
            const double pz = std::sqrt(1.0 - rr);
            const Vec3 nrm = cam.right * px + cam.up * py + cam.forward * (-pz);
            for (int k = 0; k < n; ++k)
                e[k] = c.symmetric[k] + std::max(0.0, nrm.dot(v[k]));
            const int p = j * cfg.size + i;
            img.linear_xyz[3 * p] = tri_channel(e, bars.x, g.step_nm);
            img.linear_xyz[3 * p + 1] = tri_channel(e, bars.y, g.step_nm);
            img.linear_xyz[3 * p + 2] = tri_channel(e, bars.z, g.step_nm);
            img.coverage[p] = 1;
        }
    }
    encode_image(img, cfg.exposure, cfg.gamma);
    return img;
}

RenderedImage render_square_map(const LightFieldComponents& c, int size,
                                const ProbeRenderConfig& cfg) {
    if (size < 16) throw Error("map size must be at least 16 px");
    const WavelengthGrid& g = c.grid();
    const Bars bars = bars_on(g);
    const int n = g.count;

    RenderedImage img = blank(size, size);
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int j = 0; j < size; ++j) {
        const double sin_alt = 1.0 - 2.0 * (j + 0.5) / size;
        const double cos_alt = std::sqrt(std::max(0.0, 1.0 - sin_alt * sin_alt));
        for (int i = 0; i < size; ++i) {
            const double az = 2.0 * M_PI * (i + 0.5) / size;  // compass, 0 = North
            const Vec3 w{std::sin(az) * cos_alt, std::cos(az) * cos_alt, sin_alt};
            for (int k = 0; k < n; ++k)
                e[k] = std::max(0.0, c.symmetric[k] + w.dot(c.vector_at(k)));
            const int p = j * size + i;
            img.linear_xyz[3 * p] = tri_channel(e, bars.x, g.step_nm);
            img.linear_xyz[3 * p + 1] = tri_channel(e, bars.y, g.step_nm);
            img.linear_xyz[3 * p + 2] = tri_channel(e, bars.z, g.step_nm);
            img.coverage[p] = 1;
        }
    }
    encode_image(img, cfg.exposure, cfg.gamma);
    return img;
}

SpectralRenderResult render_spectral_superposition(const LightFieldComponents& c,
                                                   double band_width_nm,
                                                   const ProbeRenderConfig& cfg) {
    cfg.validate();
    const WavelengthGrid& g = c.grid();
    const double span = g.stop_nm() - g.start_nm;
    if (!(band_width_nm > 0.0)) throw Error("band width must be positive");
    const double n_bands_real = span / band_width_nm;
    const int n_bands = static_cast<int>(std::lround(n_bands_real));
    if (n_bands < 2 || std::abs(n_bands_real - n_bands) > 1e-9)
        throw Error("band width must divide the grid span into at least 2 bands");

    const Basis cam = camera_basis(cfg.view_dir);
    const Bars bars = bars_on(g);
    const int n = g.count;
    const int size = cfg.size;

    // band edges, unit directions, covered sample index ranges
    struct Band {
        double a, b;
        int lo, hi;
        Vec3 dir;
        std::string label;
    };
    std::vector<Band> bands;
    for (int k = 0; k < n_bands; ++k) {
        Band bd;
        bd.a = g.start_nm + k * band_width_nm;
        bd.b = k + 1 == n_bands ? g.stop_nm() : g.start_nm + (k + 1) * band_width_nm;
        bd.lo = std::max(0, static_cast<int>((bd.a - g.start_nm) / g.step_nm));
        bd.hi = std::min(n - 1, static_cast<int>(std::ceil((bd.b - g.start_nm) / g.step_nm)));
        const Vec3 t{band_integral(c.vector[0], bd.a, bd.b),
                     band_integral(c.vector[1], bd.a, bd.b),
                     band_integral(c.vector[2], bd.a, bd.b)};
        bd.dir = t.normalized();
        char buf[48];
        std::snprintf(buf, sizeof buf, "%g-%gnm", bd.a, bd.b);
        bd.label = buf;
        bands.push_back(std::move(bd));
    }

    // photometric direction for the luminance-only reference
    const Vec3 lum_triple{illuminance(c.vector[0]), illuminance(c.vector[1]),
                          illuminance(c.vector[2])};
    const Vec3 lum_dir = lum_triple.normalized();

    SpectralRenderResult result;
    for (const Band& bd : bands)
        result.bands.emplace_back(bd.label, blank(size, size));
    result.superposed = blank(size, size);
    result.luminance_only = blank(size, size);

    // scratch arrays reused per pixel
    std::vector<double> prod(static_cast<std::size_t>(n));
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int j = 0; j < size; ++j) {
        const double py = 1.0 - 2.0 * (j + 0.5) / size;
        for (int i = 0; i < size; ++i) {
            const double px = 2.0 * (i + 0.5) / size - 1.0;
            const double rr = px * px + py * py;
            if (rr > 1.0) continue;
            const double pz = std::sqrt(1.0 - rr);
            const Vec3 nrm = cam.right * px + cam.up * py + cam.forward * (-pz);
            const int p = j * size + i;

            for (std::size_t bi = 0; bi < bands.size(); ++bi) {
                const Band& bd = bands[bi];
                const double cosine = std::max(0.0, nrm.dot(bd.dir));
                for (int k = bd.lo; k <= bd.hi; ++k)
                    e[k] = c.symmetric[k] + cosine * c.vector_magnitude[k];
                for (int ch = 0; ch < 3; ++ch) {
                    const std::vector<double>& bar = ch == 0 ? bars.x : ch == 1 ? bars.y : bars.z;
                    for (int k = bd.lo; k <= bd.hi; ++k) prod[k] = e[k] * bar[k];
                    const double xyz = band_integral(g, prod, bd.a, bd.b);
                    result.bands[bi].second.linear_xyz[3 * p + ch] = xyz;
                    result.superposed.linear_xyz[3 * p + ch] += xyz;
                }
                result.bands[bi].second.coverage[p] = 1;
            }
            result.superposed.coverage[p] = 1;

            const double cos_lum = std::max(0.0, nrm.dot(lum_dir));
            for (int k = 0; k < n; ++k)
                e[k] = c.symmetric[k] + cos_lum * c.vector_magnitude[k];
            result.luminance_only.linear_xyz[3 * p] = tri_channel(e, bars.x, g.step_nm);
            result.luminance_only.linear_xyz[3 * p + 1] = tri_channel(e, bars.y, g.step_nm);
            result.luminance_only.linear_xyz[3 * p + 2] = tri_channel(e, bars.z, g.step_nm);
            result.luminance_only.coverage[p] = 1;
        }
    }

    // one exposure across every image so band contributions stay comparable
    const double exposure = auto_or_given_exposure(result.superposed, cfg.exposure);
    for (auto& [label, img] : result.bands) encode_image(img, exposure, cfg.gamma);
    encode_image(result.superposed, exposure, cfg.gamma);
    encode_image(result.luminance_only, exposure, cfg.gamma);
    return result;
}

namespace {

void append_be32(std::string& s, unsigned long v) {
    s.push_back(static_cast<char>((v >> 24) & 0xff));
    s.push_back(static_cast<char>((v >> 16) & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>(v & 0xff));
}

void append_chunk(std::string& s, const char type[4], const std::string& payload) {
    append_be32(s, payload.size());
    const std::size_t crc_start = s.size();
    s.append(type, 4);
    s += payload;
    const unsigned long crc =
        crc32(0, reinterpret_cast<const Bytef*>(s.data() + crc_start), s.size() - crc_start);
    append_be32(s, crc);
}

}  // namespace

void write_png(const RenderedImage& img, const std::filesystem::path& path) {
    const std::size_t expect = static_cast<std::size_t>(img.width) * img.height * 3;
    if (img.width <= 0 || img.height <= 0 || img.rgb8.size() != expect)
        throw Error("image buffer does not match width*height*3");

    // raw scanlines, filter type 0
    std::vector<unsigned char> raw;
    raw.reserve(expect + img.height);
    for (int j = 0; j < img.height; ++j) {
        raw.push_back(0);
        raw.insert(raw.end(), img.rgb8.begin() + static_cast<std::ptrdiff_t>(j) * img.width * 3,
                   img.rgb8.begin() + static_cast<std::ptrdiff_t>(j + 1) * img.width * 3);
    }
    uLongf comp_len = compressBound(raw.size());
    std::vector<unsigned char> comp(comp_len);
    if (compress2(comp.data(), &comp_len, raw.data(), raw.size(), 9) != Z_OK)
        throw IoError("zlib compression failed");

    std::string png("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    append_be32(ihdr, static_cast<unsigned long>(img.width));
    append_be32(ihdr, static_cast<unsigned long>(img.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // color type: truecolor
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // interlace
    append_chunk(png, "IHDR", ihdr);
    append_chunk(png, "IDAT",
                 std::string(reinterpret_cast<const char*>(comp.data()), comp_len));
    append_chunk(png, "IEND", "");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(png.data(), static_cast<std::streamsize>(png.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace luxfield
