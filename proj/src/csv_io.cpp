#include "cardioseis/csv_io.hpp"

#include "cardioseis/error.hpp"

#include "json.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace cardioseis {

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        const auto b = f.find_first_not_of(" \t\"");
        const auto e = f.find_last_not_of(" \t\"");
        f = (b == std::string::npos) ? std::string{} : f.substr(b, e - b + 1);
    }
    return out;
}

std::string phase_name(FlowPhase p) { return p == FlowPhase::Inspiration ? "Inspiration" : "Expiration"; }
std::string phase_name(VolumePhase p) { return p == VolumePhase::LLV ? "LLV" : "HLV"; }

}  // namespace

CsvColumns columns_from(const PipelineConfig& cfg)
{
    return {cfg.time_column, cfg.scg_column, cfg.ecg_column, cfg.flow_column};
}

Recording ingest_csv(const std::string& path, const CsvColumns& cols, double expected_fs)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file (header row required)");
    const auto header = split_fields(line);
    auto find = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        std::string role = name;
        if (name == cols.scg) role = "scg";
        else if (name == cols.ecg) role = "ecg";
        else if (name == cols.flow) role = "flow";
        else if (name == cols.time) role = "time";
        throw InputError(path + ": missing channel: " + role + " (column '" + name + "')");
    };
    const std::size_t it = find(cols.time), is = find(cols.scg), ie = find(cols.ecg), iff = find(cols.flow);

    Waveform time, scg, ecg, flow;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto f = split_fields(line);
        auto value = [&](std::size_t col) {
            if (col >= f.size()) throw InputError(path + ": row " + std::to_string(lineno) + ": too few columns");
            const std::string& s = f[col];
            errno = 0;
            char* end = nullptr;
            const double d = std::strtod(s.c_str(), &end);
            if (s.empty() || end != s.c_str() + s.size())
                throw InputError(path + ": row " + std::to_string(lineno) + ": cannot parse '" + s + "' in column '" + header[col] + "'");
            if (!std::isfinite(d))
                throw InputError(path + ": row " + std::to_string(lineno) + ": non-finite value in column '" + header[col] + "'");
            return d;
        };
        time.push_back(value(it));
        scg.push_back(value(is));
        ecg.push_back(value(ie));
        flow.push_back(value(iff));
    }
    if (time.size() < 2) throw InputError(path + ": need at least two samples");

    const double dt = (time.back() - time.front()) / static_cast<double>(time.size() - 1);
    if (!(dt > 0.0)) throw InputError(path + ": timestamps must increase");
    for (std::size_t i = 0; i < time.size(); ++i) {
        const double expect = time.front() + dt * static_cast<double>(i);
        if (std::abs(time[i] - expect) >= 0.1 * dt)
            throw InputError(path + ": non-uniform timestamps at row " + std::to_string(i + 2));
    }
    const double fs = 1.0 / dt;
    if (expected_fs > 0.0 && std::abs(fs - expected_fs) > 0.01 * expected_fs) {
        std::ostringstream os;
        os << path << ": sampling rate mismatch: time column gives " << fs << " Hz, configured acquisition_fs is "
           << expected_fs << " Hz";
        throw InputError(os.str());
    }
    const double rate = expected_fs > 0.0 ? expected_fs : fs;

    Recording rec;
    rec.id = std::filesystem::path(path).stem().string();
    rec.scg = Channel(std::move(scg), rate, cols.scg);
    rec.ecg = Channel(std::move(ecg), rate, cols.ecg);
    rec.flow = Channel(std::move(flow), rate, cols.flow);
    return rec;
}

void write_csv(const std::string& path, const Recording& rec, const CsvColumns& cols)
{
    validate(rec);
    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "w"), &std::fclose);
    if (!fp) throw InputError("cannot write " + path);
    std::fprintf(fp.get(), "%s,%s,%s,%s\n", cols.time.c_str(), cols.scg.c_str(), cols.ecg.c_str(), cols.flow.c_str());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        std::fprintf(fp.get(), "%.12g,%.12g,%.12g,%.12g\n", static_cast<double>(i) / rec.fs(), rec.scg.samples[i],
                     rec.ecg.samples[i], rec.flow.samples[i]);
    }
}

void write_truth_json(const std::string& path, const synth::GroundTruth& truth, double fs)
{
    nlohmann::ordered_json j;
    j["fs"] = fs;
    j["window_length"] = truth.window_length;
    j["beat_indices"] = truth.beat_indices;
    j["alpha"] = truth.alpha;
    auto& fp = j["flow_phase"] = nlohmann::ordered_json::array();
    for (auto p : truth.flow_phase) fp.push_back(phase_name(p));
    auto& vp = j["volume_phase"] = nlohmann::ordered_json::array();
    for (auto p : truth.volume_phase) vp.push_back(phase_name(p));
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace cardioseis
