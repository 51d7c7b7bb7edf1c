// Acceptance suite: property-based criteria, runnable with no external data.
// Prints one PASS/FAIL line per criterion; exit code is the failure count.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "luxfield/analysis.hpp"
#include "luxfield/render.hpp"
#include "luxfield/timeutil.hpp"

using namespace luxfield;

namespace {

int failures = 0;

void criterion(const char* id, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::printf("[%s] %s. %s%s\n", ok ? "PASS" : "FAIL", id, label.c_str(), note.c_str());
    if (!ok) ++failures;
}

CubicMeasurement flat_cube(const std::array<double, 6>& levels) {
    const WavelengthGrid g = canonical_grid();
    std::array<SpectralDistribution, 6> faces = {
        SpectralDistribution::constant(g, levels[0]), SpectralDistribution::constant(g, levels[1]),
        SpectralDistribution::constant(g, levels[2]), SpectralDistribution::constant(g, levels[3]),
        SpectralDistribution::constant(g, levels[4]), SpectralDistribution::constant(g, levels[5])};
    return make_measurement(std::move(faces));
}

CubicMeasurement random_cube(std::mt19937_64& rng) {
    const WavelengthGrid g = canonical_grid();
    std::uniform_real_distribution<double> val(0.0, 10.0);
    std::array<SpectralDistribution, 6> faces = {
        SpectralDistribution::zeros(g), SpectralDistribution::zeros(g),
        SpectralDistribution::zeros(g), SpectralDistribution::zeros(g),
        SpectralDistribution::zeros(g), SpectralDistribution::zeros(g)};
    for (auto& f : faces) {
        std::vector<double> v(g.count);
        for (auto& x : v) x = val(rng);
        f = SpectralDistribution(g, std::move(v));
    }
    return make_measurement(std::move(faces));
}

SpectralDistribution gaussian(double mu, double sigma, double amp) {
    const WavelengthGrid g = canonical_grid();
    std::vector<double> v(g.count);
    for (int i = 0; i < g.count; ++i) {
        const double d = g.wavelength(i) - mu;
        v[i] = amp * std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return SpectralDistribution(g, std::move(v));
}

// blue-peaked light from above, red-peaked from the east
LightFieldComponents chromatic_fixture() {
    const auto base = SpectralDistribution::constant(canonical_grid(), 0.001);
    return decompose(make_measurement({add(gaussian(650.0, 150.0, 0.02), base), base,
                                       base, base,
                                       add(gaussian(450.0, 150.0, 0.03), base), base}));
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

}  // namespace

// 1. scalar == symmetric + |vector|/4 and the per-axis reconstruction identity
//    per wavelength to 1e-12; diffuseness in [0,1], for 1000 random cubes
static bool criterion_decomposition_identities() {
    std::mt19937_64 rng(20210922);
    for (int trial = 0; trial < 1000; ++trial) {
        const CubicMeasurement m = random_cube(rng);
        const LightFieldComponents c = decompose(m);
        const Face plus[3] = {Face::XPlus, Face::YPlus, Face::ZPlus};
        const Face minus[3] = {Face::XMinus, Face::YMinus, Face::ZMinus};
        for (int i = 0; i < c.grid().count; ++i) {
            if (std::abs(c.scalar[i] - (c.symmetric[i] + c.vector_magnitude[i] / 4.0)) > 1e-12)
                return false;
            for (int a = 0; a < 3; ++a) {
                const double ep = m.face(plus[a])[i];
                const double em = m.face(minus[a])[i];
                const double lhs = ep + em;
                const double rhs = std::abs(c.vector[a][i]) + 2.0 * std::min(ep, em);
                if (std::abs(lhs - rhs) > 1e-12) return false;
            }
        }
        const PhotometricSummary s = summarize(c, {});
        if (!s.diffuseness || *s.diffuseness < 0.0 || *s.diffuseness > 1.0) return false;
    }
    return true;
}

// 2. collimated, isotropic and uniform-hemisphere analytic oracles
static bool criterion_analytic_oracles() {
    const auto coll = summarize(decompose(flat_cube({0, 0, 0, 0, 1, 0})), {});
    if (!coll.diffuseness || std::abs(*coll.diffuseness) > 1e-12) return false;
    if (!coll.direction || std::abs(coll.direction->altitude_deg - 90.0) > 1e-12) return false;

    const auto iso = summarize(decompose(flat_cube({1, 1, 1, 1, 1, 1})), {});
    if (!iso.diffuseness || std::abs(*iso.diffuseness - 1.0) > 1e-12) return false;

    const double piL = M_PI * 1.7;
    const LightFieldComponents hemi =
        decompose(flat_cube({piL / 2, piL / 2, piL / 2, piL / 2, piL, 0.0}));
    for (int i = 0; i < hemi.grid().count; ++i) {
        if (std::abs(hemi.vector[0][i]) > 1e-9 || std::abs(hemi.vector[1][i]) > 1e-9)
            return false;
        if (!within(hemi.vector[2][i], piL, 1e-9)) return false;
        if (!within(hemi.symmetric[i], piL / 3.0, 1e-9)) return false;
        if (!within(hemi.scalar[i], 7.0 * piL / 12.0, 1e-9)) return false;
    }
    const auto hs = summarize(hemi, {});
    return hs.diffuseness && within(*hs.diffuseness, 4.0 / 7.0, 1e-9);
}

// 3. hand-worked (3,1,2,2,5,1) cube
static bool criterion_hand_worked_cube() {
    const LightFieldComponents c = decompose(flat_cube({3, 1, 2, 2, 5, 1}));
    for (int i = 0; i < c.grid().count; ++i) {
        if (!within(c.vector[0][i], 2.0, 1e-12)) return false;
        if (!within(c.vector[1][i], 0.0, 1e-12)) return false;
        if (!within(c.vector[2][i], 4.0, 1e-12)) return false;
        if (!within(c.symmetric[i], 4.0 / 3.0, 1e-9)) return false;
        if (!within(c.scalar[i], 2.451367322083, 1e-9)) return false;
    }
    const auto s = summarize(c, {});
    return s.diffuseness && within(*s.diffuseness, 0.543914133684, 1e-9);
}

// 4. CCT recovery at ±0.3% against a 1 K brute-force locus oracle; monotone sweep
static bool criterion_cct_round_trip() {
    // one brute-force locus scan at 1 K resolution, reused for all test points
    struct LocusPoint {
        double t;
        Uv1960 uv;
    };
    std::vector<LocusPoint> locus;
    locus.reserve(29001);
    for (double t = kCctSearchMinK; t <= kCctSearchMaxK; t += 1.0)
        locus.push_back({t, planck_uv(t)});

    for (double t : {2856.0, 5000.0, 6500.0, 10000.0, 20000.0}) {
        const Chromaticity c = chromaticity(tristimulus(planck_spd(t, canonical_grid())));
        const CctEstimate e = cct(c);
        if (std::abs(e.kelvin - t) > 0.003 * t) return false;

        const double u = c.uprime, v = c.vprime * 2.0 / 3.0;
        double best_t = 0.0, best_d2 = 1e30;
        for (const auto& p : locus) {
            const double d2 = (u - p.uv.u) * (u - p.uv.u) + (v - p.uv.v) * (v - p.uv.v);
            if (d2 < best_d2) {
                best_d2 = d2;
                best_t = p.t;
            }
        }
        if (std::abs(e.kelvin - best_t) > 1.0) return false;
    }

    double prev = 0.0;
    for (double t = 1000.0; t <= 20000.0; t += 500.0) {
        const double k =
            cct(chromaticity(tristimulus(planck_spd(t, canonical_grid())))).kelvin;
        if (k < prev) return false;
        prev = k;
    }
    return true;
}

// 5. photometric linearity, shared Y kernel, equal-energy white point
static bool criterion_photometric_linearity() {
    const auto f = planck_spd(5600.0, canonical_grid());
    const double base = illuminance(f);
    if (illuminance(scale(f, 2.0)) != 2.0 * base) return false;  // power-of-two: exact
    if (std::abs(illuminance(scale(f, 3.7)) - 3.7 * base) > 1e-12 * 3.7 * base) return false;

    const Tristimulus t = tristimulus(f);
    if (std::abs(t.Y - base) > 1e-12) return false;
    const Tristimulus t2 = tristimulus(scale(f, 2.0));
    if (t2.X != 2.0 * t.X || t2.Y != 2.0 * t.Y || t2.Z != 2.0 * t.Z) return false;

    const Chromaticity ee =
        chromaticity(tristimulus(SpectralDistribution::constant(canonical_grid(), 1.0)));
    return within(ee.x, 1.0 / 3.0, 0.01) && within(ee.y, 1.0 / 3.0, 0.01);
}

// 6. per-band altitude strictly decreasing with band center on the chromatic cube
static bool criterion_spectral_direction_ordering() {
    const SpectralVectorSet set =
        spectral_vector_directions(chromatic_fixture(), Banding::fixed_width(20.0));
    if (set.entries.size() != 20) return false;
    double prev = 91.0;
    for (const auto& e : set.entries) {
        if (!e.direction) return false;
        if (e.direction->altitude_deg >= prev) return false;
        prev = e.direction->altitude_deg;
    }
    return true;
}

// 7. render invariants: linearity in light, sub-band superposition, brightest pixel
static bool criterion_render_invariants() {
    ProbeRenderConfig cfg;
    cfg.size = 128;
    cfg.exposure = 0.01;

    const CubicMeasurement m1 = flat_cube({3, 1, 2, 2, 5, 1});
    CubicMeasurement m2 = m1;
    for (auto& f : m2.faces) f = scale(f, 2.0);
    const RenderedImage a = render_probe(decompose(m1), cfg);
    const RenderedImage b = render_probe(decompose(m2), cfg);
    for (std::size_t k = 0; k < a.linear_xyz.size(); ++k)
        if (std::abs(b.linear_xyz[k] - 2.0 * a.linear_xyz[k]) > 1e-12 * (1.0 + b.linear_xyz[k]))
            return false;

    const LightFieldComponents chroma = chromatic_fixture();
    ProbeRenderConfig scfg;
    scfg.size = 64;
    const SpectralRenderResult sr = render_spectral_superposition(chroma, 20.0, scfg);
    const RenderedImage full = render_probe(chroma, scfg);
    double chmax[3] = {0.0, 0.0, 0.0};
    for (int p = 0; p < full.width * full.height; ++p)
        for (int ch = 0; ch < 3; ++ch)
            chmax[ch] = std::max(chmax[ch], full.linear_xyz[3 * p + ch]);
    for (int p = 0; p < full.width * full.height; ++p)
        for (int ch = 0; ch < 3; ++ch)
            if (std::abs(sr.superposed.linear_xyz[3 * p + ch] - full.linear_xyz[3 * p + ch]) >
                0.005 * chmax[ch])
                return false;

    // collimated fixture: brightest pixel within 2 px of the projected vector.
    // beam (0, -0.6, 1) tilts toward the camera so the maximum lies inside the disc
    ProbeRenderConfig view;
    view.size = 128;
    view.view_dir = {0.0, 1.0, 0.0};  // camera south of the probe, up is +z, right +x
    const RenderedImage probe =
        render_probe(decompose(flat_cube({0, 0, 0, 0.6, 1, 0})), view);
    int best = 0;
    for (int p = 0; p < probe.width * probe.height; ++p)
        if (probe.linear_xyz[3 * p + 1] > probe.linear_xyz[3 * best + 1]) best = p;
    const double bx = best % probe.width, by = best / probe.width;
    const Vec3 vdir = Vec3{0.0, -0.6, 1.0}.normalized();
    const double want_x = (vdir.x + 1.0) / 2.0 * view.size - 0.5;  // v̂·right = v̂.x
    const double want_y = (1.0 - vdir.z) / 2.0 * view.size - 0.5;  // v̂·up = v̂.z
    return std::abs(bx - want_x) <= 2.0 && std::abs(by - want_y) <= 2.0;
}

// 8. parser: fuzzing never crashes; canonical round trip is lossless
static bool criterion_parser_robustness() {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> val(0.0, 1e5);
    const WavelengthGrid g(380.0, 5.0, 81);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<SpectralDistribution, 6> faces = {
            SpectralDistribution::zeros(g), SpectralDistribution::zeros(g),
            SpectralDistribution::zeros(g), SpectralDistribution::zeros(g),
            SpectralDistribution::zeros(g), SpectralDistribution::zeros(g)};
        for (auto& f : faces) {
            std::vector<double> v(g.count);
            for (auto& x : v) x = val(rng);
            f = SpectralDistribution(g, std::move(v));
        }
        const CubicMeasurement m = make_measurement(
            std::move(faces), Timestamp(std::chrono::seconds(1632300000 + trial * 300)),
            GeoLocation{51.9795, 4.385}, "acceptance");
        const CubicMeasurement back = parse_cubic_csv(write_canonical(m));
        if (back.timestamp != m.timestamp || back.device != m.device) return false;
        for (int f = 0; f < 6; ++f)
            if (back.faces[f].values() != m.faces[f].values()) return false;
    }

    const std::string seed = write_canonical(flat_cube({1, 1, 1, 1, 1, 1}));
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> len(0, 300);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        if (trial % 3 == 0) {
            const int n = len(rng);
            for (int i = 0; i < n; ++i) text.push_back(static_cast<char>(byte(rng)));
        } else if (trial % 3 == 1) {
            text = seed.substr(0, static_cast<std::size_t>(rng() % (seed.size() + 1)));
        } else {
            text = seed;
            text[rng() % text.size()] = static_cast<char>(byte(rng));
        }
        try {
            parse_cubic_csv(text);
        } catch (const Error&) {
            // typed error: acceptable
        } catch (...) {
            return false;  // anything else counts as a crash
        }
    }
    return true;
}

// performance: a full sunny-day session decomposes and summarizes in < 1 s
static bool criterion_performance() {
    std::mt19937_64 rng(7);
    std::vector<CubicMeasurement> session;
    session.reserve(165);
    for (int k = 0; k < 165; ++k) session.push_back(random_cube(rng));

    const auto t0 = std::chrono::steady_clock::now();
    double checksum = 0.0;
    for (const auto& m : session) {
        const PhotometricSummary s = summarize(decompose(m), {});
        checksum += s.scalar.illuminance_lux;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("       session of 165 summarized in %.3f s (checksum %.3g)\n", elapsed,
                checksum);
    return elapsed < 1.0;
}

int main() {
    criterion("1", "decomposition identities on 1000 random cubes (1e-12, D in [0,1])",
              criterion_decomposition_identities);
    criterion("2", "analytic oracles: collimated, isotropic, uniform hemisphere (1e-9)",
              criterion_analytic_oracles);
    criterion("3", "hand-worked cube (3,1,2,2,5,1) (1e-9)", criterion_hand_worked_cube);
    criterion("4", "CCT round trip at 2856/5000/6500/10000/20000 K (±0.3%, 1 K oracle, monotone)",
              criterion_cct_round_trip);
    criterion("5", "photometric linearity, Y==illuminance (1e-12), equal-energy white (±0.01)",
              criterion_photometric_linearity);
    criterion("6", "per-band altitude ordering on the blue-high/red-low cube",
              criterion_spectral_direction_ordering);
    criterion("7", "render invariants: linear in light, superposition 0.5%/channel, "
                 "brightest pixel ±2 px",
              criterion_render_invariants);
    criterion("8", "parser: 1000-fixture lossless round trip, 2000-case fuzz without crashes",
              criterion_parser_robustness);
    criterion("perf", "performance: 165-measurement session under 1 s", criterion_performance);
    if (failures == 0) std::printf("acceptance: all criteria passed\n");
    return failures;
}
