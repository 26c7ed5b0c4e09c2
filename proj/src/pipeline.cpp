#include "cardioseis/pipeline.hpp"

#include "cardioseis/csv_io.hpp"
#include "cardioseis/error.hpp"
#include "cardioseis/event_detection.hpp"
#include "cardioseis/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace cardioseis {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn())
{
    const std::string tag = std::string("[") + name + "] ";
    try {
        return fn();
    } catch (const InputError& e) {
        throw InputError(tag + e.what());
    } catch (const DegenerateError& e) {
        throw DegenerateError(tag + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(tag + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text, std::vector<std::string>& written)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    written.push_back(path.string());
}

std::string ensemble_csv(const PipelineResult& r)
{
    std::ostringstream os;
    os << "t_s,Inspiration,Expiration,LLV,HLV\n";
    const std::size_t len = r.comparison.stats[0].ensemble_avg.size();
    char buf[64];
    for (std::size_t i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(i) / r.analysis_fs);
        os << buf;
        for (const auto& s : r.comparison.stats) {
            std::snprintf(buf, sizeof buf, ",%.9g", s.ensemble_avg[i]);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

PipelineResult run_recording(const Recording& rec, const PipelineConfig& cfg)
{
    stage("config", [&] { validate(cfg); });
    stage("ingest", [&] { validate(rec); });
    if (cfg.acquisition_fs > 0.0 && std::abs(rec.fs() - cfg.acquisition_fs) > 0.01 * cfg.acquisition_fs)
        throw InputError("[ingest] recording rate does not match acquisition_fs");
    if (cfg.analysis_fs > rec.fs() * (1.0 + 1e-9))
        throw InputError("[config] analysis_fs must not exceed the acquisition rate");

    PipelineResult out;
    out.id = rec.id;
    out.analysis_fs = cfg.analysis_fs;

    out.scg = stage("condition", [&] { return lowpass(resample(rec.scg, cfg.analysis_fs), cfg.lowpass_cutoff_hz); });
    const Template tpl =
        stage("template", [&] { return Template::from_channel(out.scg, cfg.template_start_s, cfg.template_length_s); });

    std::vector<ScgEvent> events = stage("detect", [&] {
        auto ev = detect_events(out.scg, tpl, {cfg.threshold_frac, cfg.min_separation_s});
        if (ev.empty()) throw DegenerateError("no events detected");
        return ev;
    });
    out.events_detected = events.size();

    if (cfg.outlier_screen) {
        auto screened = stage("screen", [&] { return screen_outliers(out.scg, std::move(events), cfg.max_shift); });
        events = std::move(screened.events);
        out.events_screened_out = screened.dropped;
    }

    out.respiration = stage("respiration", [&] { return integrate_flow(resample(rec.flow, cfg.analysis_fs), cfg.detrend); });
    out.events = stage("label", [&] { return label_events(std::move(events), out.respiration, out.scg.fs); });
    out.comparison = stage("group", [&] { return compare_criteria(out.scg, out.events, {cfg.max_shift}); });
    out.row = make_row(out.id, out.comparison, out.events_detected, out.events_screened_out);
    return out;
}

std::vector<std::string> write_artifacts(const std::vector<PipelineResult>& results, const std::string& out_dir)
{
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create output directory " + out_dir + ": " + ec.message());

    std::vector<ReportRow> rows;
    for (const auto& r : results) rows.push_back(r.row);
    const fs::path dir(out_dir);
    write_text(dir / "report.json", report_json(rows), written);
    write_text(dir / "report.csv", report_csv(rows), written);

    for (const auto& r : results) {
        const auto& st = r.comparison.stats;
        write_text(dir / ("ensemble_" + r.id + ".csv"), ensemble_csv(r), written);
        const std::vector<svg::Panel> panels{
            {"Flow-rate groups", {{"Inspiration", st[0].ensemble_avg, "#1f77b4"}, {"Expiration", st[1].ensemble_avg, "#ff7f0e"}}},
            {"Lung-volume groups", {{"LLV", st[2].ensemble_avg, "#2ca02c"}, {"HLV", st[3].ensemble_avg, "#d62728"}}},
        };
        write_text(dir / ("ensemble_" + r.id + ".svg"),
                   svg::line_panels(panels, r.analysis_fs, "Ensemble-averaged SCG: " + r.id), written);
        const std::vector<svg::Bar> bars{
            {"Inspiration", st[0].rd, "#1f77b4"},
            {"Expiration", st[1].rd, "#ff7f0e"},
            {"LLV", st[2].rd, "#2ca02c"},
            {"HLV", st[3].rd, "#d62728"},
        };
        write_text(dir / ("rd_" + r.id + ".svg"), svg::bar_chart(bars, "Relative difference: " + r.id, "RD (%)"),
                   written);
    }
    return written;
}

PipelineOutput run_pipeline(const PipelineConfig& cfg)
{
    stage("config", [&] { validate(cfg); });
    if (cfg.inputs.empty()) throw InputError("[config] no input files given");

    const CsvColumns cols = columns_from(cfg);
    auto run_one = [&](const std::string& path) {
        const Recording rec = stage("ingest", [&] { return ingest_csv(path, cols, cfg.acquisition_fs); });
        return run_recording(rec, cfg);
    };

    PipelineOutput out;
    const auto jobs = static_cast<std::size_t>(cfg.jobs);
    for (std::size_t begin = 0; begin < cfg.inputs.size(); begin += jobs) {
        const std::size_t end = std::min(cfg.inputs.size(), begin + jobs);
        if (end - begin == 1) {
            out.results.push_back(run_one(cfg.inputs[begin]));
            continue;
        }
        std::vector<std::future<PipelineResult>> batch;
        for (std::size_t i = begin; i < end; ++i)
            batch.push_back(std::async(std::launch::async, run_one, cfg.inputs[i]));
        for (auto& f : batch) out.results.push_back(f.get());
    }
    std::stable_sort(out.results.begin(), out.results.end(),
                     [](const PipelineResult& a, const PipelineResult& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < out.results.size(); ++i)
        if (out.results[i].id == out.results[i - 1].id)
            throw InputError("[config] duplicate recording id '" + out.results[i].id + "'");

    out.files_written = stage("report", [&] { return write_artifacts(out.results, cfg.out_dir); });
    return out;
}

}  // namespace cardioseis
