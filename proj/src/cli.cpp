#include "gazesynth/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gazesynth/assess.hpp"
#include "gazesynth/calibrate.hpp"
#include "gazesynth/degrade.hpp"
#include "gazesynth/io.hpp"
#include "gazesynth/metrics.hpp"
#include "gazesynth/oracle.hpp"
#include "gazesynth/parallel.hpp"
#include "gazesynth/seeding.hpp"
#include "gazesynth/serialize.hpp"
#include "gazesynth/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gazesynth::cli {
namespace {

struct Options {
  std::string manifest;
  std::string out;
  std::string model = "baseline";
  std::optional<double> rate_hz;
  std::optional<double> sigma0_sq;
  std::string grid = "0.02:0.30:0.02";
  std::uint64_t seed = 0;
  std::size_t repeats = 5;
  bool skip_bad = false;
  std::string noise_order = "pre";
  std::string jitter_correction = "off";
  std::string calibration_inverse = "monotone";
  std::string jitter_matching = "percentile";
  std::string accuracy_matching = "difference";
  std::string preset;
  std::string spec;
  std::size_t n = 50;
  std::string target_metrics;
  std::string calibration;
  std::string real;
  std::string synth;
  std::vector<std::string> tables;
};

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

NoiseOrder noise_order_of(const Options& o) { return o.noise_order == "post" ? NoiseOrder::post : NoiseOrder::pre; }

DegradeOptions degrade_options(const Options& o) {
  DegradeOptions d;
  d.noise_order = noise_order_of(o);
  d.jitter_correction = o.jitter_correction == "on";
  return d;
}

std::string file_hash(const fs::path& p) { return hex64(fnv1a(read_text(p))); }

std::uint64_t recording_hash(const GazeRecording& rec, std::uint64_t h) {
  h = fnv1a(rec.id(), h);
  for (const auto* v : {&rec.t_ms(), &rec.gaze_x(), &rec.gaze_y(), &rec.tgt_x(), &rec.tgt_y()}) {
    h = fnv1a(std::string_view(reinterpret_cast<const char*>(v->data()), v->size() * sizeof(double)), h);
  }
  return h;
}

std::string corpus_hash(const std::vector<GazeRecording>& corpus) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& r : corpus) h = recording_hash(r, h);
  return hex64(h);
}

// Run manifests carry no wall-clock data so reruns are byte-identical.
void write_run_manifest(const fs::path& path, const std::string& command, const std::vector<std::string>& args,
                        const Options& o, json inputs, json extra = json::object()) {
  json doc{{"command", command},
           {"args", args},
           {"seed", o.seed},
           {"version", kVersion},
           {"quantile_convention", stats::kQuantileConvention},
           {"inputs", std::move(inputs)}};
  for (auto& [k, v] : extra.items()) doc[k] = v;
  write_text_atomic(path, to_text(doc));
}

fs::path sidecar(const fs::path& out) { return fs::path(out.string() + ".run.json"); }

// Loads every manifest entry. Unreadable entries abort unless skip_bad.
std::vector<GazeRecording> load_corpus(const Options& o, std::ostream& err) {
  if (o.manifest.empty()) throw Failure("--manifest is required");
  const CorpusManifest manifest = read_manifest(o.manifest);
  if (manifest.entries.empty()) throw Failure("manifest " + o.manifest + " is empty");
  const std::size_t n = manifest.entries.size();
  std::vector<std::optional<GazeRecording>> loaded(n);
  std::vector<std::string> errors(n);
  parallel_for(n, [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    try {
      loaded[i] = read_recording(e.path, e.format, e.rate_hz, e.recording_id);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  std::vector<GazeRecording> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      if (!o.skip_bad) throw Failure(manifest.entries[i].recording_id + ": " + errors[i]);
      err << "warning: skipping " << manifest.entries[i].recording_id << ": " << errors[i] << "\n";
      continue;
    }
    out.push_back(std::move(*loaded[i]));
  }
  if (out.empty()) throw Failure("no readable recordings in " + o.manifest);
  return out;
}

struct MetricsRun {
  std::vector<QualityRow> rows;
  std::vector<std::size_t> index;  // corpus index for each row
};

MetricsRun corpus_metrics(const std::vector<GazeRecording>& corpus, bool skip_bad, std::ostream& err,
                          const MetricsConfig& config = {}) {
  const std::size_t n = corpus.size();
  std::vector<std::optional<QualityReport>> reports(n);
  std::vector<std::string> errors(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      reports[i] = recording_quality_report(corpus[i], config);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  MetricsRun run;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      if (!skip_bad) throw Failure(corpus[i].id() + ": " + errors[i]);
      err << "warning: skipping " << corpus[i].id() << ": " << errors[i] << "\n";
      continue;
    }
    for (const auto& w : reports[i]->warnings) err << "warning: " << corpus[i].id() << ": " << w << "\n";
    run.rows.push_back({corpus[i].id(), reports[i]->quality});
    run.index.push_back(i);
  }
  return run;
}

std::vector<QualityVector> vectors_of(const std::vector<QualityRow>& rows) {
  std::vector<QualityVector> v;
  for (const auto& r : rows) v.push_back(r.quality);
  return v;
}

int cmd_metrics(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) throw Failure("--out is required");
  const auto corpus = load_corpus(o, err);
  const auto run = corpus_metrics(corpus, o.skip_bad, err);
  if (run.rows.empty()) throw Failure("no recording produced metrics");
  write_quality_table(run.rows, o.out);
  write_run_manifest(sidecar(o.out), "metrics", args, o, {{"manifest", file_hash(o.manifest)}},
                     {{"corpus_hash", corpus_hash(corpus)}, {"rows", run.rows.size()}});
  out << "wrote " << run.rows.size() << " rows to " << o.out << "\n";
  return 0;
}

int cmd_calibrate(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) throw Failure("--out is required");
  if (!o.rate_hz) throw Failure("--rate-hz is required");
  const auto grid = parse_grid(o.grid);
  const auto corpus = load_corpus(o, err);
  std::vector<std::string> warnings;
  const CalibrationCurve curve = sweep_sigma(corpus, grid, *o.rate_hz, o.seed, degrade_options(o), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";

  CalibrationProvenance prov{corpus_hash(corpus), o.grid, o.seed, *o.rate_hz, o.noise_order};
  const json doc = calibration_to_json(curve, prov);
  write_text_atomic(o.out, to_text(doc));
  write_run_manifest(sidecar(o.out), "calibrate", args, o, {{"manifest", file_hash(o.manifest)}},
                     {{"calibration_id", doc["id"]}});

  out << "sigma0_sq,mad_h,fit\n";
  for (const auto& p : curve.samples) {
    out << format_double(p.sigma0_sq) << "," << format_double(p.mad_h) << ","
        << format_double(curve.evaluate(p.sigma0_sq)) << "\n";
  }
  out << "MAD_h = " << format_double(curve.slope) << " * sigma0_sq + " << format_double(curve.intercept)
      << "  (max residual " << format_double(max_fit_residual(curve)) << ", " << corpus.size() << " recordings)\n";
  return 0;
}

int cmd_degrade(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) throw Failure("--out is required");
  if (!o.rate_hz) throw Failure("--rate-hz is required");
  const bool modified = o.model == "modified";
  if (modified && (o.target_metrics.empty() || o.calibration.empty())) {
    throw Failure("--model modified needs --target-metrics and --calibration");
  }
  if (!modified && !o.sigma0_sq && (o.calibration.empty() || o.target_metrics.empty())) {
    throw Failure("--model baseline needs --sigma0-sq, or --calibration with --target-metrics");
  }

  const auto corpus = load_corpus(o, err);
  const DegradeOptions dopt = degrade_options(o);
  json inputs{{"manifest", file_hash(o.manifest)}};

  std::optional<CalibrationCurve> curve;
  std::string calib_id;
  if (!o.calibration.empty()) {
    const json doc = read_json(o.calibration);
    curve = calibration_from_json(doc);
    calib_id = doc.value("id", calibration_id(doc));
    inputs["calibration"] = file_hash(o.calibration);
    const auto& prov = doc.value("provenance", json::object());
    if (prov.value("noise_order", o.noise_order) != o.noise_order) {
      err << "warning: calibration was built with noise order " << prov.value("noise_order", std::string{}) << "\n";
    }
    if (prov.contains("target_rate_hz") && prov["target_rate_hz"].get<double>() != *o.rate_hz) {
      err << "warning: calibration was built for " << format_double(prov["target_rate_hz"].get<double>())
          << " Hz\n";
    }
  }
  std::vector<QualityVector> target;
  std::string target_hash;
  if (!o.target_metrics.empty()) {
    target = vectors_of(read_quality_table(o.target_metrics));
    target_hash = file_hash(o.target_metrics);
    inputs["target_metrics"] = target_hash;
  }
  const std::string source_hash = corpus_hash(corpus);

  std::optional<double> baseline_sigma;
  if (!modified) {
    if (o.sigma0_sq) {
      baseline_sigma = *o.sigma0_sq;
    } else {
      std::vector<double> h;
      for (const auto& q : target) h.push_back(q.prec_h);
      const auto inv = invert_curve(*curve, stats::median(h), parse_inverse_method(o.calibration_inverse));
      if (inv.clamped) err << "warning: baseline sigma0_sq clamped to the calibrated range\n";
      baseline_sigma = inv.sigma0_sq;
    }
  }

  // Percentile matching needs every source file's own metrics, before and
  // after a noise-free pass through the pipeline.
  std::vector<std::optional<QualityVector>> source_qv(corpus.size());
  std::vector<double> post_prec_c(corpus.size(), 0.0);
  std::vector<QualityVector> source_corpus;
  if (modified) {
    const auto run = corpus_metrics(corpus, o.skip_bad, err);
    for (std::size_t k = 0; k < run.rows.size(); ++k) source_qv[run.index[k]] = run.rows[k].quality;
    source_corpus = vectors_of(run.rows);
    if (source_corpus.empty()) throw Failure("no source recording produced metrics");
    std::vector<std::string> errors(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) {
      if (!source_qv[i]) return;
      DegradationPlan clean;
      clean.target_rate_hz = *o.rate_hz;
      clean.rng_seed = derive_seed(o.seed, corpus[i].id(), "degrade");
      try {
        post_prec_c[i] = recording_quality(degrade_benchmark(corpus[i], clean, dopt), dopt.metrics).prec_c;
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    });
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (errors[i].empty()) continue;
      if (!o.skip_bad) throw Failure(corpus[i].id() + ": " + errors[i]);
      err << "warning: skipping " << corpus[i].id() << ": " << errors[i] << "\n";
      source_qv[i].reset();
    }
  }

  PlanOptions popt;
  popt.inverse = parse_inverse_method(o.calibration_inverse);
  popt.jitter = parse_jitter_matching(o.jitter_matching);
  popt.accuracy = parse_accuracy_matching(o.accuracy_matching);

  fs::create_directories(o.out);
  const fs::path dir(o.out);
  std::vector<std::string> errors(corpus.size());
  std::vector<std::vector<std::string>> warnings(corpus.size());
  std::vector<bool> written(corpus.size(), false);
  parallel_for(corpus.size(), [&](std::size_t i) {
    const auto& rec = corpus[i];
    if (modified && !source_qv[i]) return;
    try {
      DegradationPlan plan;
      const std::uint64_t seed = derive_seed(o.seed, rec.id(), "degrade");
      PlanDiagnostics diag;
      if (modified) {
        plan = plan_modified(*source_qv[i], post_prec_c[i], source_corpus, target, *curve, *o.rate_hz, seed, &diag, popt);
        warnings[i] = diag.warnings;
      } else {
        plan.target_rate_hz = *o.rate_hz;
        plan.sigma0_sq = *baseline_sigma;
        plan.rng_seed = seed;
      }
      validate_plan(plan, rec.nominal_rate_hz());
      const GazeRecording degraded = modified ? degrade_modified(rec, plan, dopt) : degrade_benchmark(rec, plan, dopt);
      PlanProvenance prov{rec.id(), o.model, o.noise_order, dopt.jitter_correction, source_hash, target_hash, calib_id};
      write_recording(degraded, dir / (rec.id() + ".csv"));
      write_text_atomic(dir / (rec.id() + ".plan.json"), to_text(plan_to_json(plan, prov)));
      written[i] = true;
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });

  CorpusManifest manifest;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& w : warnings[i]) err << "warning: " << corpus[i].id() << ": " << w << "\n";
    if (!errors[i].empty()) {
      if (!o.skip_bad) throw Failure(corpus[i].id() + ": " + errors[i]);
      err << "warning: skipping " << corpus[i].id() << ": " << errors[i] << "\n";
    }
    if (written[i]) manifest.entries.push_back({corpus[i].id(), dir / (corpus[i].id() + ".csv"), FormatTag::canonical, *o.rate_hz});
  }
  if (manifest.entries.empty()) throw Failure("no recording was degraded");
  write_manifest(manifest, dir / "manifest.csv");
  write_run_manifest(dir / "run.json", "degrade", args, o, inputs,
                     {{"source_corpus_hash", source_hash}, {"recordings", manifest.entries.size()}});
  out << "degraded " << manifest.entries.size() << " recordings into " << o.out << "\n";
  return 0;
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
  return buf;
}

int cmd_assess(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  if (o.real.empty() || o.synth.empty()) throw Failure("--real and --synth are required");
  if (o.out.empty()) throw Failure("--out is required");
  const auto real = vectors_of(read_quality_table(o.real));
  const auto synth = vectors_of(read_quality_table(o.synth));
  const TwoSampleResult r = repeated_assessment(real, synth, o.repeats, o.seed);
  json doc = assessment_to_json(r);
  doc["n_real_available"] = real.size();
  write_text_atomic(o.out, to_text(doc));
  write_run_manifest(sidecar(o.out), "assess", args, o,
                     {{"real", file_hash(o.real)}, {"synth", file_hash(o.synth)}});
  out << "1-NN accuracy (%), median +- half-range over " << r.repeats.size() << " repeats, n = " << r.n_per_class
      << " per class\n";
  out << "combined  " << percent(r.combined_accuracy) << " +- " << percent(r.combined_range / 2) << "\n";
  out << "real      " << percent(r.real_accuracy) << " +- " << percent(r.real_range / 2) << "\n";
  out << "synthetic " << percent(r.synthetic_accuracy) << " +- " << percent(r.synthetic_range / 2) << "\n";
  return 0;
}

std::string ground_truth_csv(const std::vector<GroundTruth>& truth) {
  std::string s = "recording_id,latency_ms,noise_sigma_dva,bias_sigma_dva,isi_jitter_ms,rate_hz,n_targets,seed\n";
  for (const auto& t : truth) {
    const auto& sp = t.spec;
    s += sp.recording_id + "," + format_double(sp.latency_ms) + "," + format_double(sp.noise_sigma_dva) + "," +
         format_double(sp.bias_sigma_dva) + "," + format_double(sp.isi_jitter_ms) + "," + format_double(sp.rate_hz) +
         "," + std::to_string(sp.n_targets) + "," + std::to_string(sp.seed) + "\n";
  }
  return s;
}

std::string dwells_csv(const std::vector<GroundTruth>& truth) {
  std::string s = "recording_id,dwell,onset_ms,duration_ms,tgt_x,tgt_y,bias_x,bias_y\n";
  for (const auto& t : truth) {
    for (std::size_t k = 0; k < t.dwells.size(); ++k) {
      const auto& d = t.dwells[k];
      s += t.spec.recording_id + "," + std::to_string(k) + "," + format_double(d.onset_ms) + "," +
           format_double(d.duration_ms) + "," + format_double(d.tgt_x) + "," + format_double(d.tgt_y) + "," +
           format_double(d.bias_x) + "," + format_double(d.bias_y) + "\n";
    }
  }
  return s;
}

int cmd_synth(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  if (o.out.empty()) throw Failure("--out is required");
  if (o.preset.empty() == o.spec.empty()) throw Failure("exactly one of --preset and --spec is required");
  if (o.n < 1) throw Failure("--n must be >= 1");
  json inputs = json::object();
  CorpusSpec spec;
  if (!o.preset.empty()) {
    spec = corpus_preset(o.preset);
  } else {
    spec = corpus_spec_from_json(read_json(o.spec));
    inputs["spec"] = file_hash(o.spec);
  }
  const OracleCorpus corpus = generate_corpus(spec, o.n, o.seed);

  fs::create_directories(o.out);
  const fs::path dir(o.out);
  parallel_for(corpus.recordings.size(),
               [&](std::size_t i) { write_recording(corpus.recordings[i], dir / (corpus.recordings[i].id() + ".csv")); });
  CorpusManifest manifest;
  for (const auto& r : corpus.recordings) {
    manifest.entries.push_back({r.id(), dir / (r.id() + ".csv"), FormatTag::canonical, r.nominal_rate_hz()});
  }
  write_manifest(manifest, dir / "manifest.csv");
  write_text_atomic(dir / "ground_truth.csv", ground_truth_csv(corpus.truth));
  write_text_atomic(dir / "ground_truth_dwells.csv", dwells_csv(corpus.truth));
  write_run_manifest(dir / "run.json", "synth", args, o, inputs, {{"corpus_spec", corpus_spec_to_json(spec)}});
  out << "generated " << corpus.recordings.size() << " recordings into " << o.out << "\n";
  return 0;
}

int cmd_report(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  if (o.tables.empty()) throw Failure("at least one quality table is required");
  if (o.out.empty()) throw Failure("--out is required");
  std::string csv = "table," + summary_csv_header();
  json inputs = json::object();
  std::map<std::string, int> seen;
  for (const auto& t : o.tables) {
    std::string name = fs::path(t).stem().string();
    if (const int k = seen[name]++; k > 0) name += "_" + std::to_string(k);
    const auto qvs = vectors_of(read_quality_table(t));
    csv += summary_csv_rows(distribution_summary(qvs), name);
    inputs[t] = file_hash(t);
  }
  write_text_atomic(o.out, csv);
  write_run_manifest(sidecar(o.out), "report", args, o, inputs);
  out << "wrote summary of " << o.tables.size() << " tables to " << o.out << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eye-tracking signal quality metrics, synthetic degradation and realism assessment", "gazesynth"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  const auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "master seed")->capture_default_str(); };
  const auto add_manifest = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--manifest", o.manifest, "corpus manifest CSV (recording_id,path,format_tag,rate_hz)");
    if (required) opt->required();
  };
  const auto add_noise_order = [&](CLI::App* c) {
    c->add_option("--noise-order", o.noise_order, "noise before or after the filter and resampler")
        ->check(CLI::IsMember({"pre", "post"}))
        ->capture_default_str();
  };

  auto* metrics = app.add_subcommand("metrics", "quality table for every recording in a manifest");
  add_manifest(metrics, true);
  metrics->add_option("--out", o.out, "quality table CSV")->required();
  metrics->add_flag("--skip-bad", o.skip_bad, "skip unreadable or unusable recordings with a warning");

  auto* calibrate = app.add_subcommand("calibrate", "sweep sigma0^2 and fit the MAD_h calibration line");
  add_manifest(calibrate, true);
  calibrate->add_option("--rate-hz", o.rate_hz, "target sampling rate")->required();
  calibrate->add_option("--grid", o.grid, "sigma0^2 grid a:b:step")->capture_default_str();
  calibrate->add_option("--out", o.out, "calibration JSON")->required();
  add_seed(calibrate);
  add_noise_order(calibrate);
  calibrate->add_flag("--skip-bad", o.skip_bad, "skip unreadable recordings with a warning");

  auto* degrade = app.add_subcommand("degrade", "degrade a source corpus toward a target device");
  add_manifest(degrade, true);
  degrade->add_option("--model", o.model, "degradation model")
      ->check(CLI::IsMember({"baseline", "modified"}))
      ->capture_default_str();
  degrade->add_option("--rate-hz", o.rate_hz, "target sampling rate")->required();
  degrade->add_option("--sigma0-sq", o.sigma0_sq, "baseline noise variance (dva^2)");
  degrade->add_option("--target-metrics", o.target_metrics, "quality table of the target corpus");
  degrade->add_option("--calibration", o.calibration, "calibration JSON from the calibrate command");
  degrade->add_option("--out", o.out, "output directory")->required();
  add_seed(degrade);
  add_noise_order(degrade);
  degrade->add_option("--jitter-correction", o.jitter_correction, "scale stamp jitter by 1/sqrt(2)")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  degrade->add_option("--calibration-inverse", o.calibration_inverse, "how the calibration curve is inverted")
      ->check(CLI::IsMember({"monotone", "linear"}))
      ->capture_default_str();
  degrade->add_option("--jitter-matching", o.jitter_matching, "how the modified model picks each file's jitter")
      ->check(CLI::IsMember({"percentile", "median"}))
      ->capture_default_str();
  degrade->add_option("--accuracy-matching", o.accuracy_matching, "how the modified model sizes accuracy offsets")
      ->check(CLI::IsMember({"difference", "folded"}))
      ->capture_default_str();
  degrade->add_flag("--skip-bad", o.skip_bad, "skip unreadable or unusable recordings with a warning");

  auto* assess = app.add_subcommand("assess", "repeated 1-NN two-sample test of real vs synthetic tables");
  assess->add_option("--real", o.real, "real quality table")->required();
  assess->add_option("--synth", o.synth, "synthetic quality table")->required();
  assess->add_option("--repeats", o.repeats, "number of subsampled repeats")->capture_default_str();
  assess->add_option("--out", o.out, "report JSON")->required();
  add_seed(assess);

  auto* synth = app.add_subcommand("synth", "generate an oracle corpus with ground truth");
  synth->add_option("--preset", o.preset, "built-in corpus preset")->check(CLI::IsMember({"eyelink-like", "vr-like"}));
  synth->add_option("--spec", o.spec, "corpus spec JSON");
  synth->add_option("--n", o.n, "number of recordings")->capture_default_str();
  synth->add_option("--out", o.out, "output directory")->required();
  add_seed(synth);

  auto* report = app.add_subcommand("report", "per-feature distribution summaries of quality tables");
  report->add_option("tables", o.tables, "quality table CSVs")->required();
  report->add_option("--out", o.out, "summary CSV")->required();

  std::vector<const char*> argv{"gazesynth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*metrics) return cmd_metrics(o, args, out, err);
    if (*calibrate) return cmd_calibrate(o, args, out, err);
    if (*degrade) return cmd_degrade(o, args, out, err);
    if (*assess) return cmd_assess(o, args, out, err);
    if (*synth) return cmd_synth(o, args, out, err);
    if (*report) return cmd_report(o, args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gazesynth::cli
