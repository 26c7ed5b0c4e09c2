#pragma once

#include "cardioseis/config.hpp"
#include "cardioseis/grouping.hpp"
#include "cardioseis/recording.hpp"
#include "cardioseis/report.hpp"
#include "cardioseis/respiration.hpp"

#include <string>
#include <vector>

namespace cardioseis {

struct PipelineResult {
    std::string id;
    double analysis_fs = 0.0;
    Channel scg;  // conditioned, at analysis rate
    RespirationTrace respiration;
    std::vector<ScgEvent> events;  // labeled, after screening
    std::size_t events_detected = 0;
    std::size_t events_screened_out = 0;
    CriterionComparison comparison;
    ReportRow row;
};

/// resample -> lowpass -> template -> detect -> screen -> integrate flow ->
/// label -> compare. Errors carry a "[stage]" prefix and keep their type
/// (InputError, DegenerateError, or std::runtime_error for the rest).
PipelineResult run_recording(const Recording& rec, const PipelineConfig& cfg);

struct PipelineOutput {
    std::vector<PipelineResult> results;  // sorted by id
    std::vector<std::string> files_written;
};

/// Ingests every configured input, runs them (up to cfg.jobs at a time) and
/// writes report.json, report.csv, ensemble_<id>.csv, ensemble_<id>.svg and
/// rd_<id>.svg under cfg.out_dir.
PipelineOutput run_pipeline(const PipelineConfig& cfg);

/// Writes the report and per-recording artifacts for finished results.
std::vector<std::string> write_artifacts(const std::vector<PipelineResult>& results, const std::string& out_dir);

}  // namespace cardioseis
