#pragma once

#include <string>
#include <string_view>

#include "luxfield/spectral.hpp"

namespace luxfield {

/// CIE 2-deg standard observer tables on their native grid. `ybar` doubles as
/// the photopic luminosity function so that the Y channel and illuminance
/// always share one kernel.
struct ObserverTables {
    SpectralDistribution xbar;
    SpectralDistribution ybar;
    SpectralDistribution zbar;
    std::string version;

    const WavelengthGrid& grid() const { return ybar.grid(); }
};

/// Parses the plain-text table format: `# comment` lines, then one
/// `wavelength xbar ybar zbar` row per line on a uniform grid.
ObserverTables parse_observer_text(std::string_view text, const std::string& version_tag);

/// Loads the observer tables. Honors LUXFIELD_OBSERVER_DIR: when set, reads
/// `cie_xyz_2deg.txt` from that directory instead of the embedded table.
ObserverTables load_observer_tables();

/// Cached tables resampled to the canonical grid; shared by all photometric
/// integrals. Loaded once on first use.
const ObserverTables& observer_tables();

}  // namespace luxfield
