#pragma once

#include "cardioseis/config.hpp"
#include "cardioseis/recording.hpp"
#include "cardioseis/synth.hpp"

#include <string>

namespace cardioseis {

struct CsvColumns {
    std::string time = "time_s";
    std::string scg = "scg_z";
    std::string ecg = "ecg";
    std::string flow = "flow_lps";
};

CsvColumns columns_from(const PipelineConfig& cfg);

/// Parses a headered CSV into a Recording. The sampling rate comes from the
/// time column; when expected_fs > 0 it must agree within 1%. Errors
/// (InputError) name the missing column or the offending row.
Recording ingest_csv(const std::string& path, const CsvColumns& cols = {}, double expected_fs = 0.0);

void write_csv(const std::string& path, const Recording& rec, const CsvColumns& cols = {});

/// Ground-truth sidecar: beat_indices, alpha, flow_phase, volume_phase.
void write_truth_json(const std::string& path, const synth::GroundTruth& truth, double fs);

}  // namespace cardioseis
