#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + CARDIOSEIS_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("cardioseis_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("synth, run and check end to end", "[cli]")
{
    const fs::path dir = scratch_dir("e2e");
    REQUIRE(cli("synth --seed 3 --coupling volume --duration 60 --out " + q(dir)) == 0);
    CHECK(fs::exists(dir / "recording.csv"));
    CHECK(fs::exists(dir / "truth.json"));
    REQUIRE(fs::exists(dir / "run.cfg"));

    REQUIRE(cli("run --config " + q(dir / "run.cfg")) == 0);
    const fs::path report = dir / "results" / "report.json";
    REQUIRE(fs::exists(report));
    CHECK(read_file(report).find("\"overall\": \"LungVolume\"") != std::string::npos);
    CHECK(cli("report --check " + q(report)) == 0);

    SECTION("--out and --set override the config")
    {
        const fs::path other = dir / "other";
        CHECK(cli("run --config " + q(dir / "run.cfg") + " --out " + q(other) + " --set outlier_screen=false") == 0);
        CHECK(fs::exists(other / "report.json"));
        CHECK(cli("run --config " + q(dir / "run.cfg") + " --set no_such_key=1") == 2);
    }
    SECTION("tampered report fails the check with exit 4")
    {
        std::string text = read_file(report);
        const std::regex rd("\"rd\": (-?[0-9.]+)");
        std::smatch m;
        REQUIRE(std::regex_search(text, m, rd));
        text.replace(static_cast<std::size_t>(m.position(1)), static_cast<std::size_t>(m.length(1)), "999.0");
        std::ofstream(dir / "tampered.json", std::ios::binary) << text;
        CHECK(cli("report --check " + q(dir / "tampered.json")) == 4);
    }
}

TEST_CASE("exit codes", "[cli]")
{
    const fs::path dir = scratch_dir("codes");

    SECTION("reference tables pass the consistency check")
    {
        CHECK(cli(std::string("report --check \"") + CARDIOSEIS_FIXTURES + "/reference_tables.json\"") == 0);
    }
    SECTION("usage and input errors exit 2")
    {
        CHECK(cli("") == 2);
        CHECK(cli("synth --coupling lung") == 2);
        CHECK(cli("synth --bpm 400 --out " + q(dir / "fast")) == 2);
        CHECK(cli("report --check " + q(dir / "missing.json")) == 2);
        CHECK(cli("run --input " + q(dir / "missing.csv")) == 2);

        std::ofstream(dir / "noflow.csv") << "time_s,scg_z,ecg\n0,0,0\n0.001,0,0\n";
        CHECK(cli("run --input " + q(dir / "noflow.csv") + " --set acquisition_fs=auto --set analysis_fs=320") == 2);
    }
    SECTION("morphologies from files")
    {
        std::ofstream low(dir / "low.txt"), high(dir / "high.txt"), shorter(dir / "short.txt");
        for (int i = 0; i < 250; ++i) {
            const double t = i / 1000.0;
            low << std::sin(2 * 3.141592653589793 * 20 * t) * std::exp(-t / 0.05) << "\n";
            high << std::sin(2 * 3.141592653589793 * 28 * t) * std::exp(-t / 0.03) << "\n";
            if (i < 200) shorter << 0.5 << "\n";
        }
        low.close();
        high.close();
        shorter.close();
        CHECK(cli("synth --duration 20 --morph-low " + q(dir / "low.txt") + " --morph-high " + q(dir / "high.txt") +
                  " --out " + q(dir / "m")) == 0);
        CHECK(fs::exists(dir / "m" / "recording.csv"));
        CHECK(cli("synth --duration 20 --morph-low " + q(dir / "low.txt") + " --morph-high " + q(dir / "short.txt") +
                  " --out " + q(dir / "m2")) == 2);
    }
    SECTION("zero flow is a degenerate analysis, exit 3")
    {
        REQUIRE(cli("synth --seed 1 --duration 40 --out " + q(dir / "s")) == 0);
        std::ifstream in(dir / "s" / "recording.csv");
        std::ofstream out(dir / "s" / "flat.csv");
        std::string line;
        std::getline(in, line);
        out << line << "\n";
        while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << ",0\n";
        out.close();
        CHECK(cli("run --config " + q(dir / "s" / "run.cfg") + " --input " + q(dir / "s" / "flat.csv")) == 3);
    }
}
