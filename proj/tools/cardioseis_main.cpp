#include "cardioseis/config.hpp"
#include "cardioseis/csv_io.hpp"
#include "cardioseis/error.hpp"
#include "cardioseis/pipeline.hpp"
#include "cardioseis/report.hpp"
#include "cardioseis/synth.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kInput = 2, kDegenerate = 3, kInternal = 4 };

int cmd_run(const std::string& config_path, const std::vector<std::string>& inputs, const std::string& out_dir,
            const std::vector<std::string>& overrides)
{
    using namespace cardioseis;
    PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (!inputs.empty()) cfg.inputs = inputs;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InputError("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }

    const PipelineOutput out = run_pipeline(cfg);
    for (const auto& r : out.results) {
        std::cout << r.id << ": " << r.events_detected << " events detected, " << r.events_screened_out
                  << " screened out\n";
        for (const auto& s : r.comparison.stats)
            std::cout << "  " << to_string(s.group) << " n=" << s.n << " same=" << s.same.mean << " alt=" << s.alt.mean
                      << " rd=" << s.rd << "%\n";
        std::cout << "  winners: Inspiration/LLV=" << to_string(r.comparison.pair_winner[0])
                  << " Expiration/HLV=" << to_string(r.comparison.pair_winner[1])
                  << " overall=" << to_string(r.comparison.overall) << "\n";
    }
    for (const auto& f : out.files_written) std::cout << "wrote " << f << "\n";
    return kOk;
}

cardioseis::Waveform read_samples(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw cardioseis::InputError("cannot open morphology file: " + path);
    cardioseis::Waveform w;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            w.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw cardioseis::InputError(path + ": cannot parse sample '" + tok + "'");
        }
    }
    if (w.empty()) throw cardioseis::InputError(path + ": no samples");
    return w;
}

int cmd_synth(const cardioseis::synth::SynthConfig& cfg, const std::string& out_dir, const std::string& low_path,
              const std::string& high_path)
{
    using namespace cardioseis;
    namespace fs = std::filesystem;
    auto morph = synth::default_morphologies(cfg.fs);
    if (!low_path.empty()) morph.low = read_samples(low_path);
    if (!high_path.empty()) morph.high = read_samples(high_path);
    if (morph.low.size() != morph.high.size())
        throw InputError("morphologies differ in length (" + std::to_string(morph.low.size()) + " vs " +
                         std::to_string(morph.high.size()) + " samples)");
    auto [rec, truth] = synth::gen_recording(cfg, morph.low, morph.high);
    rec.id = "recording";

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create output directory " + out_dir + ": " + ec.message());
    const fs::path dir(out_dir);
    write_csv((dir / "recording.csv").string(), rec);
    write_truth_json((dir / "truth.json").string(), truth, cfg.fs);

    PipelineConfig run;
    run.inputs = {"recording.csv"};
    run.acquisition_fs = cfg.fs;
    run.analysis_fs = std::min(320.0, cfg.fs);
    run.lowpass_cutoff_hz = std::min(100.0, 0.45 * run.analysis_fs);
    const std::size_t beat = synth::representative_beat(truth);
    const double len_s = static_cast<double>(truth.window_length) / cfg.fs;
    run.template_start_s =
        static_cast<double>(truth.beat_indices[beat] - truth.window_length / 2) / cfg.fs;
    run.template_length_s = len_s;
    run.out_dir = "results";
    run.seed = cfg.seed;
    std::ofstream(dir / "run.cfg") << to_config_text(run);

    std::cout << "wrote " << (dir / "recording.csv").string() << " (" << rec.size() << " samples at " << cfg.fs
              << " Hz, " << truth.beat_indices.size() << " beats)\n"
              << "wrote " << (dir / "truth.json").string() << "\n"
              << "wrote " << (dir / "run.cfg").string() << "\n";
    return kOk;
}

int cmd_check(const std::string& path)
{
    using namespace cardioseis;
    std::ifstream in(path);
    if (!in) throw InputError("cannot open report: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = parse_report_json(ss.str());
    const CheckResult res = check_report(rows);
    for (const auto& p : res.problems) std::cerr << "inconsistent: " << p << "\n";
    std::cout << (res.ok ? "OK" : "FAILED") << ": " << rows.size() << " row(s) checked\n";
    return res.ok ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cardioseis: SCG event detection and respiratory grouping analysis"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> inputs, overrides;
    auto* run = app.add_subcommand("run", "Run the analysis pipeline on CSV recordings");
    run->add_option("--config", config_path, "key = value configuration file");
    run->add_option("--input", inputs, "Input CSV (repeatable; replaces config inputs)");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--set", overrides, "Override a config key (key=value, repeatable)");

    cardioseis::synth::SynthConfig scfg;
    std::string coupling = "volume";
    std::string synth_out = "synth_out";
    auto* synth = app.add_subcommand("synth", "Generate a synthetic recording with ground truth");
    synth->add_option("--seed", scfg.seed, "RNG seed")->capture_default_str();
    synth->add_option("--coupling", coupling, "volume|flow|none")
        ->check(CLI::IsMember({"volume", "flow", "none"}))
        ->capture_default_str();
    synth->add_option("--out", synth_out, "Output directory")->capture_default_str();
    scfg.fs = 1000.0;
    synth->add_option("--fs", scfg.fs, "Sampling rate (Hz)")->capture_default_str();
    synth->add_option("--duration", scfg.duration_s, "Duration (s)")->capture_default_str();
    synth->add_option("--bpm", scfg.heart_rate_bpm, "Heart rate (bpm)")->capture_default_str();
    synth->add_option("--resp-freq", scfg.resp_freq, "Respiration frequency (Hz)")->capture_default_str();
    synth->add_option("--snr", scfg.snr_db, "SNR in dB (inf disables noise)")->capture_default_str();
    synth->add_option("--alpha-max", scfg.alpha_max, "Coupling strength in [0,1]")->capture_default_str();
    std::string morph_low, morph_high;
    synth->add_option("--morph-low", morph_low, "Low-alpha beat morphology (whitespace-separated samples at --fs)");
    synth->add_option("--morph-high", morph_high, "High-alpha beat morphology (same length as --morph-low)");

    std::string report_path;
    auto* report = app.add_subcommand("report", "Inspect a report");
    report->add_option("--check", report_path, "Recompute RD consistency of report.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*run) return cmd_run(config_path, inputs, out_dir, overrides);
        if (*synth) {
            try {
                scfg.coupling = cardioseis::synth::parse_coupling(coupling);
                return cmd_synth(scfg, synth_out, morph_low, morph_high);
            } catch (const std::invalid_argument& e) {
                throw cardioseis::InputError(std::string("synth: ") + e.what());
            }
        }
        if (*report) return cmd_check(report_path);
    } catch (const cardioseis::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const cardioseis::DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
