#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "luxfield/ingest.hpp"
#include "luxfield/timeutil.hpp"

using namespace luxfield;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return LUXFIELD_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("luxfield_cli_" + std::to_string(std::rand()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_fixture(const fs::path& dir, const std::string& name,
                       const std::array<double, 6>& levels, const std::string& stamp,
                       bool with_location = true) {
    const WavelengthGrid g(380.0, 10.0, 41);
    std::array<SpectralDistribution, 6> faces = {
        SpectralDistribution::constant(g, levels[0]), SpectralDistribution::constant(g, levels[1]),
        SpectralDistribution::constant(g, levels[2]), SpectralDistribution::constant(g, levels[3]),
        SpectralDistribution::constant(g, levels[4]), SpectralDistribution::constant(g, levels[5])};
    std::optional<GeoLocation> loc;
    if (with_location) loc = GeoLocation{51.9795, 4.3850};
    const CubicMeasurement m =
        make_measurement(std::move(faces), parse_iso8601(stamp), loc, "cli-test");
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << write_canonical(m);
    return p;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("decompose: one valid file, exit 0, one record") {
    TempDir tmp;
    write_fixture(tmp.path, "a.csv", {3, 1, 2, 2, 5, 1}, "2021-09-22T10:00:00Z");
    const fs::path out = tmp.path / "out";
    CHECK(run("decompose " + (tmp.path / "a.csv").string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out / "summaries.csv");
    // 3 provenance lines + header + 1 record
    CHECK(count_lines(csv) == 5);
    CHECK(csv.find("2021-09-22T10:00:00Z") != std::string::npos);
    CHECK(fs::exists(out / "summaries.json"));
    CHECK_FALSE(fs::exists(out / "errors.csv"));
}

TEST_CASE("decompose: mixed valid and invalid inputs, exit 2, errors listed") {
    TempDir tmp;
    write_fixture(tmp.path, "good.csv", {1, 1, 1, 1, 1, 1}, "2021-09-22T10:00:00Z");
    std::ofstream(tmp.path / "bad.csv") << "face,400,410\nx+,1,1\n";
    const fs::path out = tmp.path / "out";
    CHECK(run("decompose " + (tmp.path / "good.csv").string() + " " +
              (tmp.path / "bad.csv").string() + " --out " + out.string()) == 2);
    CHECK(count_lines(slurp(out / "summaries.csv")) == 5);
    const std::string errors = slurp(out / "errors.csv");
    CHECK(errors.find("bad.csv") != std::string::npos);
    CHECK(errors.find("missing face") != std::string::npos);
}

TEST_CASE("decompose: empty input set is a usage error (64)") {
    CHECK(run("decompose") == 64);
    CHECK(run("frobnicate") == 64);
}

TEST_CASE("decompose: determinism, byte-identical reruns") {
    TempDir tmp;
    write_fixture(tmp.path, "a.csv", {3, 1, 2, 2, 5, 1}, "2021-09-22T10:00:00Z");
    write_fixture(tmp.path, "b.csv", {2, 2, 2, 2, 2, 2}, "2021-09-22T10:05:00Z");
    const fs::path out1 = tmp.path / "o1", out2 = tmp.path / "o2";
    const std::string inputs =
        (tmp.path / "a.csv").string() + " " + (tmp.path / "b.csv").string();
    const std::string input_bytes = slurp(tmp.path / "a.csv");
    CHECK(run("decompose " + inputs + " --out " + out1.string()) == 0);
    CHECK(run("decompose " + inputs + " --out " + out2.string()) == 0);
    CHECK(slurp(out1 / "summaries.csv") == slurp(out2 / "summaries.csv"));
    CHECK(slurp(out1 / "summaries.json") == slurp(out2 / "summaries.json"));
    CHECK(slurp(tmp.path / "a.csv") == input_bytes);  // inputs are never mutated
}

TEST_CASE("timeseries: synthetic 3-sample session") {
    TempDir tmp;
    write_fixture(tmp.path, "t1.csv", {2, 1, 1.5, 1.2, 3, 0.5}, "2021-09-22T08:00:00Z");
    write_fixture(tmp.path, "t2.csv", {2.2, 1, 1.5, 1.2, 3.5, 0.5}, "2021-09-22T08:05:00Z");
    write_fixture(tmp.path, "t3.csv", {2.4, 1.1, 1.6, 1.2, 3.8, 0.5}, "2021-09-22T08:10:00Z");
    const fs::path out = tmp.path / "out";
    CHECK(run("timeseries " + (tmp.path / "t1.csv").string() + " " +
              (tmp.path / "t2.csv").string() + " " + (tmp.path / "t3.csv").string() +
              " --window work=08:00-08:10 --sun-path --out " + out.string()) == 0);
    // 4 provenance lines + header + 3 rows
    CHECK(count_lines(slurp(out / "series.csv")) == 8);
    const std::string avs = slurp(out / "avs.csv");
    CHECK(avs.find("work,") != std::string::npos);
    CHECK(avs.find("all,") != std::string::npos);
    CHECK(fs::exists(out / "stats.json"));
    CHECK(fs::exists(out / "sunpath.csv"));
    CHECK(count_lines(slurp(out / "sunpath.csv")) == 4);  // header + 3 rows
}

TEST_CASE("timeseries: constant session has zero average speeds") {
    TempDir tmp;
    for (int k = 0; k < 4; ++k) {
        char name[16], stamp[32];
        std::snprintf(name, sizeof name, "c%d.csv", k);
        std::snprintf(stamp, sizeof stamp, "2021-09-22T09:%02d:00Z", 5 * k);
        write_fixture(tmp.path, name, {1, 1, 1, 1, 1, 1}, stamp);
    }
    const fs::path out = tmp.path / "out";
    std::string inputs;
    for (int k = 0; k < 4; ++k)
        inputs += (tmp.path / ("c" + std::to_string(k) + ".csv")).string() + " ";
    CHECK(run("timeseries " + inputs + "--out " + out.string()) == 0);
    std::istringstream avs(slurp(out / "avs.csv"));
    std::string line;
    int zero_rows = 0, empty_rows = 0;
    while (std::getline(avs, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("window,", 0) == 0) continue;
        // window,quantity,method,average_speed,n
        const auto last_comma = line.rfind(',');
        const auto prev_comma = line.rfind(',', last_comma - 1);
        const std::string speed = line.substr(prev_comma + 1, last_comma - prev_comma - 1);
        if (speed.empty()) {
            // the vector is zero for an isotropic cube, so its CCT series is empty
            CHECK(line.rfind("all,vector_cct_k", 0) == 0);
            ++empty_rows;
        } else {
            CHECK(std::stod(speed) == doctest::Approx(0.0));
            ++zero_rows;
        }
    }
    CHECK(zero_rows == 5);
    CHECK(empty_rows == 1);
}

TEST_CASE("compare: identical pair yields zero deltas and unit ratios") {
    TempDir tmp;
    write_fixture(tmp.path, "lit.csv", {3, 1, 2, 2, 5, 1}, "2021-07-14T11:00:00Z");
    write_fixture(tmp.path, "shade.csv", {3, 1, 2, 2, 5, 1}, "2021-07-14T11:00:30Z");
    std::ofstream(tmp.path / "pairs.csv") << "scene_id,lit,shaded\n1,lit.csv,shade.csv\n";
    const fs::path out = tmp.path / "out";
    CHECK(run("compare " + (tmp.path / "pairs.csv").string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out / "comparisons.csv");
    std::istringstream in(csv);
    std::string line, data;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line.rfind("scene_id", 0) != 0) data = line;
    REQUIRE(!data.empty());
    std::istringstream cells(data);
    std::string cell;
    std::getline(cells, cell, ',');
    CHECK(cell == "1");
    int idx = 0;
    while (std::getline(cells, cell, ',')) {
        REQUIRE(!cell.empty());
        const double v = std::stod(cell);
        // columns cycle cct_delta, ratio, color_difference per component
        const bool is_ratio = idx % 3 == 1 && idx < 9;
        CHECK(v == doctest::Approx(is_ratio ? 1.0 : 0.0).epsilon(1e-9));
        ++idx;
    }
    CHECK(fs::exists(out / "aggregate.csv"));
}

TEST_CASE("compare: aggregate mean over two synthetic pairs equals hand mean") {
    TempDir tmp;
    // pair 1: shade = light → ratio 1; pair 2: shade = light/2 → ratio 2
    write_fixture(tmp.path, "l1.csv", {2, 1, 1.5, 1.2, 3, 0.5}, "2021-07-14T11:00:00Z");
    write_fixture(tmp.path, "s1.csv", {2, 1, 1.5, 1.2, 3, 0.5}, "2021-07-14T11:00:30Z");
    write_fixture(tmp.path, "l2.csv", {2, 1, 1.5, 1.2, 3, 0.5}, "2021-07-14T12:00:00Z");
    write_fixture(tmp.path, "s2.csv", {1, 0.5, 0.75, 0.6, 1.5, 0.25}, "2021-07-14T12:00:30Z");
    std::ofstream(tmp.path / "pairs.csv")
        << "scene_id,lit,shaded\n1,l1.csv,s1.csv\n2,l2.csv,s2.csv\n";
    const fs::path out = tmp.path / "out";
    CHECK(run("compare " + (tmp.path / "pairs.csv").string() + " --out " + out.string()) == 0);
    std::istringstream in(slurp(out / "aggregate.csv"));
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("scalar,illuminance_ratio,", 0) == 0) {
            found = true;
            std::istringstream cells(line);
            std::string c;
            std::getline(cells, c, ',');
            std::getline(cells, c, ',');
            std::getline(cells, c, ',');
            CHECK(std::stod(c) == doctest::Approx(1.5).epsilon(1e-9));  // mean(1,2)
            std::getline(cells, c, ',');
            CHECK(std::stod(c) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));  // sd
        }
    }
    CHECK(found);
}

TEST_CASE("compare: unmatched pair ids listed, exit 2") {
    TempDir tmp;
    write_fixture(tmp.path, "l1.csv", {2, 1, 1, 1, 2, 1}, "2021-07-14T11:00:00Z");
    std::ofstream(tmp.path / "pairs.csv")
        << "scene_id,lit,shaded\n1,l1.csv,does_not_exist.csv\n";
    const fs::path out = tmp.path / "out";
    CHECK(run("compare " + (tmp.path / "pairs.csv").string() + " --out " + out.string()) == 2);
    CHECK(fs::exists(out / "errors.csv"));
}

TEST_CASE("render: probe PNG for an isotropic fixture") {
    TempDir tmp;
    write_fixture(tmp.path, "iso.csv", {1, 1, 1, 1, 1, 1}, "2021-09-22T12:00:00Z");
    const fs::path out = tmp.path / "out";
    CHECK(run("render " + (tmp.path / "iso.csv").string() + " --kind probe --size 32 --out " +
              out.string()) == 0);
    CHECK(fs::exists(out / "iso_20210922T120000Z_probe.png"));
}

TEST_CASE("render: spectral kind emits 20 sub-bands plus 2 composites") {
    TempDir tmp;
    write_fixture(tmp.path, "m.csv", {3, 1, 2, 2, 5, 1}, "2021-09-22T12:00:00Z");
    const fs::path out = tmp.path / "out";
    CHECK(run("render " + (tmp.path / "m.csv").string() +
              " --kind spectral --bands-nm 20 --size 24 --out " + out.string()) == 0);
    int pngs = 0;
    for (const auto& e : fs::directory_iterator(out))
        if (e.path().extension() == ".png") ++pngs;
    CHECK(pngs == 22);
    CHECK(fs::exists(out / "m_20210922T120000Z_spectral_superposed.png"));
    CHECK(fs::exists(out / "m_20210922T120000Z_spectral_luminance.png"));
}

TEST_CASE("render: unknown kind is a usage error") {
    TempDir tmp;
    write_fixture(tmp.path, "m.csv", {1, 1, 1, 1, 1, 1}, "2021-09-22T12:00:00Z");
    CHECK(run("render " + (tmp.path / "m.csv").string() + " --kind holo --out " +
              (tmp.path / "o").string()) == 64);
}

TEST_CASE("render: missing input file is an io error (1)") {
    TempDir tmp;
    CHECK(run("render " + (tmp.path / "nope.csv").string() + " --kind probe --out " +
              (tmp.path / "o").string()) == 1);
}
