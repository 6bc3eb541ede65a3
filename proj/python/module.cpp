#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gazesynth/assess.hpp"
#include "gazesynth/cli.hpp"
#include "gazesynth/degrade.hpp"
#include "gazesynth/metrics.hpp"
#include "gazesynth/oracle.hpp"

namespace py = pybind11;
using namespace gazesynth;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vec(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return {a.data(), a.data() + a.size()};
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

DegradeOptions options(const std::string& noise_order, bool jitter_correction) {
  DegradeOptions o;
  if (noise_order == "pre") {
    o.noise_order = NoiseOrder::pre;
  } else if (noise_order == "post") {
    o.noise_order = NoiseOrder::post;
  } else {
    throw py::value_error("noise_order must be 'pre' or 'post'");
  }
  o.jitter_correction = jitter_correction;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Eye-tracking data quality metrics and device degradation.";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

  py::class_<GazeRecording>(m, "GazeRecording")
      .def(py::init([](const Array& t, const Array& gx, const Array& gy, const Array& tx, const Array& ty,
                       double rate_hz, std::string id) {
             return GazeRecording(std::move(id), rate_hz,
                                  GazeSamples{to_vec(t), to_vec(gx), to_vec(gy), to_vec(tx), to_vec(ty)});
           }),
           py::arg("t_ms"), py::arg("gaze_x"), py::arg("gaze_y"), py::arg("tgt_x"), py::arg("tgt_y"),
           py::arg("rate_hz"), py::arg("recording_id") = "recording")
      .def_property_readonly("id", &GazeRecording::id)
      .def_property_readonly("rate_hz", &GazeRecording::nominal_rate_hz)
      .def_property_readonly("t_ms", [](const GazeRecording& r) { return to_array(r.t_ms()); })
      .def_property_readonly("gaze_x", [](const GazeRecording& r) { return to_array(r.gaze_x()); })
      .def_property_readonly("gaze_y", [](const GazeRecording& r) { return to_array(r.gaze_y()); })
      .def_property_readonly("tgt_x", [](const GazeRecording& r) { return to_array(r.tgt_x()); })
      .def_property_readonly("tgt_y", [](const GazeRecording& r) { return to_array(r.tgt_y()); })
      .def_property_readonly("missing_count", &GazeRecording::missing_count)
      .def("__len__", &GazeRecording::size);

  py::class_<QualityVector>(m, "QualityVector")
      .def_readonly("acc_h", &QualityVector::acc_h)
      .def_readonly("acc_v", &QualityVector::acc_v)
      .def_readonly("acc_c", &QualityVector::acc_c)
      .def_readonly("prec_h", &QualityVector::prec_h)
      .def_readonly("prec_v", &QualityVector::prec_v)
      .def_readonly("prec_c", &QualityVector::prec_c)
      .def_readonly("temporal_prec_ms", &QualityVector::temporal_prec_ms)
      .def_readonly("n_fixations_used", &QualityVector::n_fixations_used)
      .def("as_dict", [](const QualityVector& q) {
        py::dict d;
        d["acc_h"] = q.acc_h;
        d["acc_v"] = q.acc_v;
        d["acc_c"] = q.acc_c;
        d["prec_h"] = q.prec_h;
        d["prec_v"] = q.prec_v;
        d["prec_c"] = q.prec_c;
        d["temporal_prec_ms"] = q.temporal_prec_ms;
        d["n_fixations_used"] = q.n_fixations_used;
        return d;
      });

  m.def("recording_quality", [](const GazeRecording& r) { return recording_quality(r); }, py::arg("recording"),
        py::call_guard<py::gil_scoped_release>());
  m.def("estimate_latency", [](const GazeRecording& r) { return estimate_latency(r).shift_ms; },
        py::arg("recording"), "Latency in ms that best aligns gaze with the target.");
  m.def("temporal_precision", [](const Array& t) { return temporal_precision(to_vec(t)); }, py::arg("t_ms"));

  py::class_<DegradationPlan>(m, "DegradationPlan")
      .def(py::init([](double rate, double sigma0_sq, double acc_h, double acc_v, double jitter, std::uint64_t seed) {
             DegradationPlan p;
             p.target_rate_hz = rate;
             p.sigma0_sq = sigma0_sq;
             p.acc_offset_h = acc_h;
             p.acc_offset_v = acc_v;
             p.jitter_sigma_ms = jitter;
             p.rng_seed = seed;
             return p;
           }),
           py::arg("target_rate_hz"), py::arg("sigma0_sq") = 0.0, py::arg("acc_offset_h") = 0.0,
           py::arg("acc_offset_v") = 0.0, py::arg("jitter_sigma_ms") = 0.0, py::arg("rng_seed") = 0)
      .def_readwrite("target_rate_hz", &DegradationPlan::target_rate_hz)
      .def_readwrite("sigma0_sq", &DegradationPlan::sigma0_sq)
      .def_readwrite("acc_offset_h", &DegradationPlan::acc_offset_h)
      .def_readwrite("acc_offset_v", &DegradationPlan::acc_offset_v)
      .def_readwrite("jitter_sigma_ms", &DegradationPlan::jitter_sigma_ms)
      .def_readwrite("rng_seed", &DegradationPlan::rng_seed);

  m.def(
      "degrade_benchmark",
      [](const GazeRecording& r, const DegradationPlan& p, const std::string& order) {
        return degrade_benchmark(r, p, options(order, false));
      },
      py::arg("recording"), py::arg("plan"), py::arg("noise_order") = "pre");
  m.def(
      "degrade_modified",
      [](const GazeRecording& r, const DegradationPlan& p, const std::string& order, bool correction) {
        return degrade_modified(r, p, options(order, correction));
      },
      py::arg("recording"), py::arg("plan"), py::arg("noise_order") = "pre", py::arg("jitter_correction") = false);

  m.def(
      "oracle_recording",
      [](double rate_hz, double latency_ms, double noise, double bias, double jitter, std::size_t n_targets,
         std::uint64_t seed) {
        OracleSpec s;
        s.rate_hz = rate_hz;
        s.latency_ms = latency_ms;
        s.noise_sigma_dva = noise;
        s.bias_sigma_dva = bias;
        s.isi_jitter_ms = jitter;
        s.n_targets = n_targets;
        s.seed = seed;
        return generate_recording(s).recording;
      },
      py::arg("rate_hz") = 1000.0, py::arg("latency_ms") = 200.0, py::arg("noise_sigma_dva") = 0.0,
      py::arg("bias_sigma_dva") = 0.0, py::arg("isi_jitter_ms") = 0.0, py::arg("n_targets") = 20,
      py::arg("seed") = 0);
  m.def(
      "oracle_corpus",
      [](const std::string& preset, std::size_t n, std::uint64_t seed) {
        return generate_corpus(corpus_preset(preset), n, seed).recordings;
      },
      py::arg("preset"), py::arg("n"), py::arg("seed") = 0);

  m.def(
      "one_nn_accuracy",
      [](const std::vector<QualityVector>& real, const std::vector<QualityVector>& synth, int repeats,
         std::uint64_t seed) {
        const auto r = repeated_assessment(real, synth, repeats, seed);
        py::dict d;
        d["combined"] = r.combined_accuracy;
        d["real"] = r.real_accuracy;
        d["synthetic"] = r.synthetic_accuracy;
        d["combined_range"] = r.combined_range;
        d["n_per_class"] = r.n_per_class;
        return d;
      },
      py::arg("real"), py::arg("synthetic"), py::arg("repeats") = 5, py::arg("seed") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one gazesynth command line; returns (exit code, stdout, stderr).");
}
