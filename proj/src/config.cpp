#include "cardioseis/config.hpp"

#include "cardioseis/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cardioseis {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d))
        throw InputError("config: '" + key + "' expects a number, got '" + v + "'");
    return d;
}

long long parse_int(const std::string& key, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw InputError("config: '" + key + "' expects an integer, got '" + v + "'");
    return i;
}

bool parse_bool(const std::string& key, std::string v)
{
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InputError("config: '" + key + "' expects true/false, got '" + v + "'");
}

}  // namespace

void apply_setting(PipelineConfig& cfg, const std::string& raw_key, const std::string& raw_value)
{
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "input") cfg.inputs.push_back(value);
    else if (key == "time_column") cfg.time_column = value;
    else if (key == "scg_column") cfg.scg_column = value;
    else if (key == "ecg_column") cfg.ecg_column = value;
    else if (key == "flow_column") cfg.flow_column = value;
    else if (key == "acquisition_fs") cfg.acquisition_fs = (value == "auto") ? 0.0 : parse_double(key, value);
    else if (key == "analysis_fs") cfg.analysis_fs = parse_double(key, value);
    else if (key == "lowpass_cutoff_hz") cfg.lowpass_cutoff_hz = parse_double(key, value);
    else if (key == "template_start_s") cfg.template_start_s = parse_double(key, value);
    else if (key == "template_length_s") cfg.template_length_s = parse_double(key, value);
    else if (key == "threshold_frac") cfg.threshold_frac = parse_double(key, value);
    else if (key == "min_separation_s") cfg.min_separation_s = parse_double(key, value);
    else if (key == "detrend") cfg.detrend = parse_bool(key, value);
    else if (key == "max_shift") cfg.max_shift = (value == "auto") ? -1 : static_cast<int>(parse_int(key, value));
    else if (key == "outlier_screen") cfg.outlier_screen = parse_bool(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "jobs") cfg.jobs = static_cast<int>(parse_int(key, value));
    else throw InputError("config: unknown key '" + key + "'");
}

PipelineConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    const auto base = std::filesystem::path(path).parent_path();

    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config " + path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if ((key == "input" || key == "out_dir") && !value.empty() && std::filesystem::path(value).is_relative())
            value = (base / value).lexically_normal().string();
        apply_setting(cfg, key, value);
    }
    return cfg;
}

void validate(const PipelineConfig& cfg)
{
    if (cfg.acquisition_fs < 0.0) throw InputError("config: acquisition_fs must be positive or auto");
    if (!(cfg.analysis_fs > 0.0)) throw InputError("config: analysis_fs must be positive");
    if (cfg.acquisition_fs > 0.0 && cfg.analysis_fs > cfg.acquisition_fs)
        throw InputError("config: analysis_fs must not exceed acquisition_fs");
    if (!(cfg.lowpass_cutoff_hz > 0.0) || cfg.lowpass_cutoff_hz >= cfg.analysis_fs / 2.0)
        throw InputError("config: lowpass_cutoff_hz must lie in (0, analysis_fs/2): cutoff above Nyquist");
    if (cfg.template_start_s < 0.0 || !(cfg.template_length_s > 0.0))
        throw InputError("config: template span must have start >= 0 and length > 0");
    if (!(cfg.threshold_frac > 0.0 && cfg.threshold_frac < 1.0))
        throw InputError("config: threshold_frac must lie in (0, 1)");
    if (cfg.min_separation_s < 0.0) throw InputError("config: min_separation_s must be non-negative");
    if (cfg.max_shift < -1) throw InputError("config: max_shift must be >= 0 or auto");
    if (cfg.jobs < 1) throw InputError("config: jobs must be >= 1");
}

std::string to_config_text(const PipelineConfig& cfg)
{
    std::ostringstream os;
    os.precision(12);
    os << "# cardioseis pipeline configuration\n";
    for (const auto& in : cfg.inputs) os << "input = " << in << "\n";
    os << "time_column = " << cfg.time_column << "\n"
       << "scg_column = " << cfg.scg_column << "\n"
       << "ecg_column = " << cfg.ecg_column << "\n"
       << "flow_column = " << cfg.flow_column << "\n";
    if (cfg.acquisition_fs > 0.0)
        os << "acquisition_fs = " << cfg.acquisition_fs << "\n";
    else
        os << "acquisition_fs = auto\n";
    os << "analysis_fs = " << cfg.analysis_fs << "\n"
       << "lowpass_cutoff_hz = " << cfg.lowpass_cutoff_hz << "\n"
       << "template_start_s = " << cfg.template_start_s << "\n"
       << "template_length_s = " << cfg.template_length_s << "\n"
       << "threshold_frac = " << cfg.threshold_frac << "\n"
       << "min_separation_s = " << cfg.min_separation_s << "\n"
       << "detrend = " << (cfg.detrend ? "true" : "false") << "\n";
    if (cfg.max_shift >= 0)
        os << "max_shift = " << cfg.max_shift << "\n";
    else
        os << "max_shift = auto\n";
    os << "outlier_screen = " << (cfg.outlier_screen ? "true" : "false") << "\n"
       << "out_dir = " << cfg.out_dir << "\n"
       << "seed = " << cfg.seed << "\n"
       << "jobs = " << cfg.jobs << "\n";
    return os.str();
}

}  // namespace cardioseis
