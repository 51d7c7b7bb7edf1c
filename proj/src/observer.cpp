#include "luxfield/observer.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace luxfield {

// Generated from data/cie_xyz_2deg_5nm_v1.txt at configure time.
extern const char* const kEmbeddedObserverText;
extern const char* const kEmbeddedObserverVersion;

namespace {

void validate_tables(const ObserverTables& t) {
    if (!t.xbar.nonnegative() || !t.ybar.nonnegative() || !t.zbar.nonnegative())
        throw InvalidMeasurement("observer tables must be nonnegative");
    const WavelengthGrid& g = t.grid();
    if (g.start_nm > 390.0 || g.stop_nm() < 780.0 || g.step_nm > 5.0)
        throw MalformedGrid("observer tables must cover 390-780 nm at 5 nm or finer");
    int peak = 0;
    for (int i = 0; i < t.ybar.size(); ++i)
        if (t.ybar[i] > t.ybar[peak]) peak = i;
    const double peak_nm = g.wavelength(peak);
    if (peak_nm < 550.0 || peak_nm > 560.0)
        throw InvalidMeasurement("luminosity function must peak between 550 and 560 nm");
}

}  // namespace

ObserverTables parse_observer_text(std::string_view text, const std::string& version_tag) {
    std::vector<double> lam, xb, yb, zb;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double l, x, y, z;
        if (!(row >> l >> x >> y >> z))
            throw MalformedFile("observer table row needs 4 numeric columns", lineno);
        lam.push_back(l);
        xb.push_back(x);
        yb.push_back(y);
        zb.push_back(z);
    }
    if (lam.size() < 2) throw MalformedGrid("observer table has fewer than 2 rows");
    const double step = lam[1] - lam[0];
    for (std::size_t i = 1; i < lam.size(); ++i) {
        const double d = lam[i] - lam[i - 1];
        if (!(d > 0.0) || std::abs(d - step) > 1e-9)
            throw MalformedGrid("observer table wavelengths must increase uniformly");
    }
    WavelengthGrid grid(lam.front(), step, static_cast<int>(lam.size()));
    ObserverTables t{SpectralDistribution(grid, std::move(xb)),
                     SpectralDistribution(grid, std::move(yb)),
                     SpectralDistribution(grid, std::move(zb)), version_tag};
    validate_tables(t);
    return t;
}

ObserverTables load_observer_tables() {
    if (const char* dir = std::getenv("LUXFIELD_OBSERVER_DIR")) {
        const std::string path = std::string(dir) + "/cie_xyz_2deg.txt";
        std::ifstream in(path);
        if (!in) throw IoError("cannot open observer table: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_observer_text(buf.str(), path);
    }
    return parse_observer_text(kEmbeddedObserverText, kEmbeddedObserverVersion);
}

const ObserverTables& observer_tables() {
    static const ObserverTables canonical = [] {
        ObserverTables t = load_observer_tables();
        const WavelengthGrid g = canonical_grid();
        return ObserverTables{resample(t.xbar, g), resample(t.ybar, g), resample(t.zbar, g),
                              t.version};
    }();
    return canonical;
}

}  // namespace luxfield
