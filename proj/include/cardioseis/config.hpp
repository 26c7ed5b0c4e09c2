#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cardioseis {

/// Pipeline settings. Defaults: 10 kHz capture, 320 Hz analysis, 100 Hz
/// low-pass.
struct PipelineConfig {
    std::vector<std::string> inputs;
    std::string time_column = "time_s";
    std::string scg_column = "scg_z";
    std::string ecg_column = "ecg";
    std::string flow_column = "flow_lps";
    double acquisition_fs = 10000.0;  // 0 = take the rate from the time column
    double analysis_fs = 320.0;
    double lowpass_cutoff_hz = 100.0;
    double template_start_s = 1.0;
    double template_length_s = 0.25;
    double threshold_frac = 0.5;
    double min_separation_s = 0.4;
    bool detrend = true;
    int max_shift = -1;  // samples; -1 = template length / 4
    bool outlier_screen = true;
    std::string out_dir = "cardioseis_out";
    std::uint64_t seed = 1;
    int jobs = 1;
};

/// Applies one `key = value` setting. Throws InputError for unknown keys or
/// unparsable values. Repeated `input` keys accumulate.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat `key = value` file; `#` starts a comment. Relative input
/// paths are resolved against the config file's directory.
PipelineConfig load_config(const std::string& path);

/// Range checks that do not need the data. Throws InputError.
void validate(const PipelineConfig& cfg);

/// Documented `key = value` text for every setting.
std::string to_config_text(const PipelineConfig& cfg);

}  // namespace cardioseis
