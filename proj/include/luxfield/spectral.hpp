#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "luxfield/errors.hpp"

namespace luxfield {

/// Uniform wavelength grid in nanometers: start, start+step, ..., start+(count-1)*step.
struct WavelengthGrid {
    double start_nm = 380.0;
    double step_nm = 5.0;
    int count = 81;

    WavelengthGrid() = default;
    WavelengthGrid(double start, double step, int n) : start_nm(start), step_nm(step), count(n) {
        validate();
    }

    double stop_nm() const { return start_nm + (count - 1) * step_nm; }
    double wavelength(int i) const { return start_nm + i * step_nm; }

    bool operator==(const WavelengthGrid& o) const {
        return start_nm == o.start_nm && step_nm == o.step_nm && count == o.count;
    }
    bool operator!=(const WavelengthGrid& o) const { return !(*this == o); }

    void validate() const {
        if (!(step_nm > 0.0) || count < 2)
            throw MalformedGrid("wavelength grid needs step > 0 and at least 2 samples");
        if (start_nm < 300.0 || stop_nm() > 830.0)
            throw MalformedGrid("wavelength grid must lie within 300-830 nm");
    }
};

/// The internal working grid: 380-780 nm at 5 nm, 81 samples.
inline WavelengthGrid canonical_grid() { return WavelengthGrid(380.0, 5.0, 81); }

/// Sampled spectrum on a uniform grid. Values are spectral irradiance
/// (W·m⁻²·nm⁻¹) for measurements; signed values are allowed so the type can
/// also carry light-vector component spectra.
class SpectralDistribution {
public:
    SpectralDistribution(WavelengthGrid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.count)
            throw GridMismatch("value count does not match wavelength grid");
    }

    static SpectralDistribution zeros(const WavelengthGrid& g) {
        return SpectralDistribution(g, std::vector<double>(g.count, 0.0));
    }
    static SpectralDistribution constant(const WavelengthGrid& g, double v) {
        return SpectralDistribution(g, std::vector<double>(g.count, v));
    }

    const WavelengthGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    int size() const { return grid_.count; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    double wavelength(int i) const { return grid_.wavelength(i); }

    /// True when every sample is finite and >= 0.
    bool nonnegative() const {
        for (double v : values_)
            if (!std::isfinite(v) || v < 0.0) return false;
        return true;
    }

private:
    WavelengthGrid grid_;
    std::vector<double> values_;
};

/// Piecewise-linear resampling onto `target`. Wavelengths outside the source
/// range take the nearest endpoint value (flat extrapolation).
SpectralDistribution resample(const SpectralDistribution& spd, const WavelengthGrid& target);

SpectralDistribution add(const SpectralDistribution& a, const SpectralDistribution& b);
SpectralDistribution subtract(const SpectralDistribution& a, const SpectralDistribution& b);
SpectralDistribution scale(const SpectralDistribution& f, double c);

inline SpectralDistribution operator+(const SpectralDistribution& a, const SpectralDistribution& b) {
    return add(a, b);
}
inline SpectralDistribution operator-(const SpectralDistribution& a, const SpectralDistribution& b) {
    return subtract(a, b);
}
inline SpectralDistribution operator*(const SpectralDistribution& f, double c) { return scale(f, c); }
inline SpectralDistribution operator*(double c, const SpectralDistribution& f) { return scale(f, c); }

/// Trapezoidal integral of the spectrum over its own grid, in (value unit)·nm.
double trapezoid_integral(const SpectralDistribution& spd);

/// Trapezoidal integral of the pointwise product a(λ)·b(λ); grids must match.
double trapezoid_product_integral(const SpectralDistribution& a, const SpectralDistribution& b);

/// Piecewise-linear integral over [a, b] (clipped to the grid span). Interior
/// band edges split trapezoid segments, so integrals over tiling bands sum
/// exactly to the full-range integral.
double band_integral(const SpectralDistribution& spd, double a, double b);
double band_integral(const WavelengthGrid& grid, const std::vector<double>& values, double a,
                     double b);

}  // namespace luxfield
