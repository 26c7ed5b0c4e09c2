#include "cardioseis/config.hpp"
#include "cardioseis/error.hpp"
#include "cardioseis/event_detection.hpp"
#include "cardioseis/grouping.hpp"
#include "cardioseis/pipeline.hpp"
#include "cardioseis/report.hpp"
#include "cardioseis/respiration.hpp"
#include "cardioseis/signal_core.hpp"
#include "cardioseis/synth.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cardioseis;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_array(const Waveform& w)
{
    return py::array_t<double>(static_cast<py::ssize_t>(w.size()), w.data());
}

Waveform from_array(const Array& a)
{
    if (a.ndim() != 1) throw InputError("expected a 1-D array");
    return Waveform(a.data(), a.data() + a.size());
}

py::dict result_dict(const PipelineResult& r)
{
    py::list groups;
    for (const auto& s : r.comparison.stats) {
        py::dict g;
        g["group"] = std::string(to_string(s.group));
        g["n"] = s.n;
        g["same_mean"] = s.same.mean;
        g["same_sd"] = s.same.sd;
        g["alt_mean"] = s.alt.mean;
        g["alt_sd"] = s.alt.sd;
        g["rd"] = s.rd;
        g["ensemble_avg"] = to_array(s.ensemble_avg);
        groups.append(g);
    }
    std::vector<std::size_t> refs;
    for (const auto& ev : r.events) refs.push_back(ev.ref_index);
    py::dict d;
    d["id"] = r.id;
    d["analysis_fs"] = r.analysis_fs;
    d["events_detected"] = r.events_detected;
    d["events_screened_out"] = r.events_screened_out;
    d["ref_indices"] = refs;
    d["groups"] = groups;
    d["winners"] = py::dict(py::arg("Inspiration/LLV") = std::string(to_string(r.comparison.pair_winner[0])),
                            py::arg("Expiration/HLV") = std::string(to_string(r.comparison.pair_winner[1])),
                            py::arg("overall") = std::string(to_string(r.comparison.overall)));
    return d;
}

// Python values become `key = value` settings; an `input` entry (str or list)
// replaces the configured inputs.
PipelineConfig with_settings(PipelineConfig cfg, const py::dict& settings)
{
    for (const auto& [k, v] : settings) {
        const auto key = py::str(k).cast<std::string>();
        if (key == "input") {
            cfg.inputs.clear();
            if (py::isinstance<py::str>(v)) cfg.inputs.push_back(v.cast<std::string>());
            else
                for (const auto& item : v) cfg.inputs.push_back(py::str(item).cast<std::string>());
            continue;
        }
        if (py::isinstance<py::bool_>(v)) apply_setting(cfg, key, v.cast<bool>() ? "true" : "false");
        else apply_setting(cfg, key, py::str(v).cast<std::string>());
    }
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_cardioseis, m)
{
    m.doc() = "SCG event detection and respiratory grouping analysis";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);

    m.def("rms", [](const Array& x) { return rms(from_array(x)); });
    m.def(
        "lowpass", [](const Array& x, double fs, double cutoff_hz) {
            return to_array(lowpass(Channel(from_array(x), fs), cutoff_hz).samples);
        },
        py::arg("x"), py::arg("fs"), py::arg("cutoff_hz"));
    m.def(
        "resample", [](const Array& x, double fs, double target_fs) {
            return to_array(resample(Channel(from_array(x), fs), target_fs).samples);
        },
        py::arg("x"), py::arg("fs"), py::arg("target_fs"));
    m.def("hilbert_envelope", [](const Array& x) { return to_array(hilbert_envelope(from_array(x))); });
    m.def(
        "best_lag", [](const Array& x, const Array& y, int max_lag) { return best_lag(from_array(x), from_array(y), max_lag); },
        py::arg("x"), py::arg("y"), py::arg("max_lag"));
    m.def("build_matched_filter", [](const Array& l) { return to_array(build_matched_filter(from_array(l))); });
    m.def("matched_filter_output",
          [](const Array& x, const Array& w) { return to_array(matched_filter_output(from_array(x), from_array(w))); });
    m.def(
        "detect_events",
        [](const Array& scg, double fs, double template_start_s, double template_length_s, double threshold_frac,
           double min_separation_s) {
            const Channel ch(from_array(scg), fs);
            const Template tpl = Template::from_channel(ch, template_start_s, template_length_s);
            std::vector<std::size_t> refs;
            for (const auto& ev : detect_events(ch, tpl, {threshold_frac, min_separation_s})) refs.push_back(ev.ref_index);
            return refs;
        },
        py::arg("scg"), py::arg("fs"), py::arg("template_start_s"), py::arg("template_length_s"),
        py::arg("threshold_frac") = 0.5, py::arg("min_separation_s") = 0.4);

    m.def(
        "integrate_flow",
        [](const Array& flow, double fs, bool detrend) {
            const auto tr = integrate_flow(Channel(from_array(flow), fs), detrend);
            return py::make_tuple(to_array(tr.volume.samples), tr.mean_volume);
        },
        py::arg("flow"), py::arg("fs"), py::arg("detrend") = true);

    m.def("drms", [](const Array& w, const Array& avg) { return drms(from_array(w), from_array(avg)); });
    m.def("normalized_dissim",
          [](const Array& w, const Array& avg) { return normalized_dissim(from_array(w), from_array(avg)); });
    m.def("relative_difference", &relative_difference, py::arg("mean_same"), py::arg("mean_alt"));
    m.def(
        "pick_winner", [](double rd_fr, double rd_lv, double tol) { return std::string(to_string(pick_winner(rd_fr, rd_lv, tol))); },
        py::arg("rd_fr"), py::arg("rd_lv"), py::arg("tol") = 0.01);

    m.def(
        "synth",
        [](const std::string& coupling, std::uint64_t seed, double duration_s, double fs, double snr_db,
           double heart_rate_bpm, double resp_freq, double alpha_max) {
            synth::SynthConfig cfg;
            cfg.coupling = synth::parse_coupling(coupling);
            cfg.seed = seed;
            cfg.duration_s = duration_s;
            cfg.fs = fs;
            cfg.snr_db = snr_db;
            cfg.heart_rate_bpm = heart_rate_bpm;
            cfg.resp_freq = resp_freq;
            cfg.alpha_max = alpha_max;
            const auto morph = synth::default_morphologies(fs);
            const auto [rec, truth] = synth::gen_recording(cfg, morph.low, morph.high);
            py::list flow_phase, volume_phase;
            for (auto p : truth.flow_phase) flow_phase.append(p == FlowPhase::Inspiration ? "Inspiration" : "Expiration");
            for (auto p : truth.volume_phase) volume_phase.append(p == VolumePhase::LLV ? "LLV" : "HLV");
            py::dict d;
            d["fs"] = fs;
            d["scg"] = to_array(rec.scg.samples);
            d["ecg"] = to_array(rec.ecg.samples);
            d["flow"] = to_array(rec.flow.samples);
            d["beat_indices"] = truth.beat_indices;
            d["alpha"] = truth.alpha;
            d["flow_phase"] = flow_phase;
            d["volume_phase"] = volume_phase;
            d["window_length"] = truth.window_length;
            d["representative_beat"] = synth::representative_beat(truth);
            return d;
        },
        py::arg("coupling") = "volume", py::arg("seed") = 1, py::arg("duration_s") = 120.0, py::arg("fs") = 320.0,
        py::arg("snr_db") = 20.0, py::arg("heart_rate_bpm") = 66.0, py::arg("resp_freq") = 0.25,
        py::arg("alpha_max") = 1.0);

    m.def(
        "analyze",
        [](const Array& scg, const Array& flow, double fs, const py::dict& settings, const std::string& id) {
            Recording rec;
            rec.id = id;
            rec.scg = Channel(from_array(scg), fs, "scg_z");
            rec.flow = Channel(from_array(flow), fs, "flow_lps");
            rec.ecg = Channel(Waveform(rec.scg.size(), 0.0), fs, "ecg");
            PipelineConfig cfg = with_settings({}, settings);
            if (!settings.contains("acquisition_fs")) cfg.acquisition_fs = fs;
            if (!settings.contains("analysis_fs")) cfg.analysis_fs = std::min(cfg.analysis_fs, fs);
            return result_dict(run_recording(rec, cfg));
        },
        py::arg("scg"), py::arg("flow"), py::arg("fs"), py::arg("settings") = py::dict(), py::arg("id") = "recording");

    m.def(
        "run",
        [](const std::string& config_path, const py::dict& overrides) {
            const PipelineConfig cfg =
                with_settings(config_path.empty() ? PipelineConfig{} : load_config(config_path), overrides);
            const PipelineOutput out = run_pipeline(cfg);
            py::list results;
            for (const auto& r : out.results) results.append(result_dict(r));
            return py::make_tuple(results, out.files_written);
        },
        py::arg("config_path") = "", py::arg("overrides") = py::dict());

    m.def(
        "check_report",
        [](const std::string& text) {
            const auto res = check_report(parse_report_json(text));
            return py::make_tuple(res.ok, res.problems);
        },
        py::arg("report_json"));
}
