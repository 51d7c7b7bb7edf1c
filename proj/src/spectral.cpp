#include "luxfield/spectral.hpp"

#include <algorithm>

namespace luxfield {

SpectralDistribution resample(const SpectralDistribution& spd, const WavelengthGrid& target) {
    const WavelengthGrid& src = spd.grid();
    if (src == target) return spd;

    if (target.start_nm > src.stop_nm() || target.stop_nm() < src.start_nm)
        throw GridMismatch("source and target wavelength grids do not overlap");

    std::vector<double> out(static_cast<std::size_t>(target.count));
    const auto& v = spd.values();
    for (int j = 0; j < target.count; ++j) {
        const double lambda = target.wavelength(j);
        if (lambda <= src.start_nm) {
            out[j] = v.front();
        } else if (lambda >= src.stop_nm()) {
            out[j] = v.back();
        } else {
            const double t = (lambda - src.start_nm) / src.step_nm;
            int i = static_cast<int>(t);
            i = std::min(i, src.count - 2);
            const double frac = t - i;
            out[j] = v[i] + frac * (v[i + 1] - v[i]);
        }
    }
    return SpectralDistribution(target, std::move(out));
}

SpectralDistribution add(const SpectralDistribution& a, const SpectralDistribution& b) {
    if (a.grid() != b.grid()) throw GridMismatch("add: wavelength grids differ");
    std::vector<double> out(a.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.values()[i];
    return SpectralDistribution(a.grid(), std::move(out));
}

SpectralDistribution subtract(const SpectralDistribution& a, const SpectralDistribution& b) {
    if (a.grid() != b.grid()) throw GridMismatch("subtract: wavelength grids differ");
    std::vector<double> out(a.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.values()[i];
    return SpectralDistribution(a.grid(), std::move(out));
}

SpectralDistribution scale(const SpectralDistribution& f, double c) {
    std::vector<double> out(f.values());
    for (double& x : out) x *= c;
    return SpectralDistribution(f.grid(), std::move(out));
}

double trapezoid_integral(const SpectralDistribution& spd) {
    const auto& v = spd.values();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) sum += v[i] + v[i + 1];
    return 0.5 * sum * spd.grid().step_nm;
}

double trapezoid_product_integral(const SpectralDistribution& a, const SpectralDistribution& b) {
    if (a.grid() != b.grid()) throw GridMismatch("product integral: wavelength grids differ");
    const auto& va = a.values();
    const auto& vb = b.values();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < va.size(); ++i)
        sum += va[i] * vb[i] + va[i + 1] * vb[i + 1];
    return 0.5 * sum * a.grid().step_nm;
}

double band_integral(const WavelengthGrid& g, const std::vector<double>& s, double a, double b) {
    auto value_at = [&](double lambda) {
        const double t = std::min(std::max((lambda - g.start_nm) / g.step_nm, 0.0),
                                  static_cast<double>(g.count - 1));
        const int i = std::min(static_cast<int>(t), g.count - 2);
        return s[i] + (t - i) * (s[i + 1] - s[i]);
    };
    a = std::max(a, g.start_nm);
    b = std::min(b, g.stop_nm());
    if (b <= a) return 0.0;
    double sum = 0.0;
    double left = a;
    int i = std::min(static_cast<int>((a - g.start_nm) / g.step_nm) + 1, g.count - 1);
    for (; g.wavelength(i) < b; ++i) {
        const double right = g.wavelength(i);
        sum += 0.5 * (value_at(left) + s[i]) * (right - left);
        left = right;
    }
    sum += 0.5 * (value_at(left) + value_at(b)) * (b - left);
    return sum;
}

double band_integral(const SpectralDistribution& s, double a, double b) {
    return band_integral(s.grid(), s.values(), a, b);
}

}  // namespace luxfield
