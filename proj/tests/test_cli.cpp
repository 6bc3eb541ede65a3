#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gazesynth/cli.hpp"
#include "gazesynth/io.hpp"
#include "gazesynth/serialize.hpp"
#include "helpers.hpp"

using namespace gazesynth;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("synth then metrics") {
  const auto dir = testutil::scratch_dir("cli_metrics");
  const auto src = (dir / "src").string();
  REQUIRE(run({"synth", "--preset", "eyelink-like", "--n", "3", "--out", src, "--seed", "2"}).code == 0);
  CHECK(fs::exists(dir / "src" / "ground_truth.csv"));
  CHECK(line_count(read_text(dir / "src" / "ground_truth_dwells.csv")) == 1 + 3 * 40);

  const auto q = (dir / "q.csv").string();
  auto r = run({"metrics", "--manifest", src + "/manifest.csv", "--out", q});
  REQUIRE(r.code == 0);
  CHECK(read_quality_table(q).size() == 3);
  CHECK(fs::exists(q + ".run.json"));

  SUBCASE("a corrupt file") {
    write_text_atomic(dir / "src" / "eyelink-like_0001.csv", "t_ms,gaze_x_dva\n0,garbage\n");
    r = run({"metrics", "--manifest", src + "/manifest.csv", "--out", q, "--skip-bad"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning: skipping eyelink-like_0001") != std::string::npos);
    CHECK(read_quality_table(q).size() == 2);
    r = run({"metrics", "--manifest", src + "/manifest.csv", "--out", (dir / "q2.csv").string()});
    CHECK(r.code != 0);
    CHECK(r.err.rfind("error:", 0) == 0);
    CHECK_FALSE(fs::exists(dir / "q2.csv"));
  }
}

TEST_CASE("full pipeline reruns are byte-identical") {
  const auto dir = testutil::scratch_dir("cli_pipeline");
  const auto s = [&](const char* p) { return (dir / p).string(); };
  REQUIRE(run({"synth", "--preset", "eyelink-like", "--n", "4", "--out", s("src"), "--seed", "1"}).code == 0);
  REQUIRE(run({"synth", "--preset", "vr-like", "--n", "4", "--out", s("tgt"), "--seed", "2"}).code == 0);
  REQUIRE(run({"metrics", "--manifest", s("src/manifest.csv"), "--out", s("src_q.csv")}).code == 0);
  REQUIRE(run({"metrics", "--manifest", s("tgt/manifest.csv"), "--out", s("tgt_q.csv")}).code == 0);
  auto cal = run({"calibrate", "--manifest", s("src/manifest.csv"), "--rate-hz", "250", "--grid", "0.02:0.1:0.04",
                  "--out", s("cal.json"), "--seed", "3"});
  REQUIRE(cal.code == 0);
  CHECK(cal.out.find("\nMAD_h = ") != std::string::npos);

  const std::vector<std::string> degrade{"degrade",       "--manifest",      s("src/manifest.csv"), "--model",
                                         "modified",      "--rate-hz",       "250",                 "--target-metrics",
                                         s("tgt_q.csv"), "--calibration",   s("cal.json"),         "--out",
                                         s("syn"),        "--seed",          "4"};
  REQUIRE(run(degrade).code == 0);
  const auto plan = read_json(dir / "syn" / "eyelink-like_0002.plan.json");
  CHECK(plan["model"] == "modified");
  CHECK(plan["calibration_id"] == read_json(dir / "cal.json")["id"]);
  CHECK(plan["target_rate_hz"] == 250.0);
  const std::string first_csv = read_text(dir / "syn" / "eyelink-like_0002.csv");
  const std::string first_plan = read_text(dir / "syn" / "eyelink-like_0002.plan.json");
  const std::string first_run = read_text(dir / "syn" / "run.json");
  REQUIRE(run(degrade).code == 0);
  CHECK(read_text(dir / "syn" / "eyelink-like_0002.csv") == first_csv);
  CHECK(read_text(dir / "syn" / "eyelink-like_0002.plan.json") == first_plan);
  CHECK(read_text(dir / "syn" / "run.json") == first_run);

  REQUIRE(run({"degrade", "--manifest", s("src/manifest.csv"), "--model", "baseline", "--rate-hz", "250",
               "--sigma0-sq", "0.05", "--out", s("base")})
              .code == 0);
  CHECK(read_json(dir / "base" / "eyelink-like_0000.plan.json")["sigma0_sq"] == 0.05);

  REQUIRE(run({"metrics", "--manifest", s("syn/manifest.csv"), "--out", s("syn_q.csv")}).code == 0);
  auto a = run({"assess", "--real", s("tgt_q.csv"), "--synth", s("syn_q.csv"), "--out", s("a.json")});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("combined") != std::string::npos);
  const auto doc = read_json(dir / "a.json");
  CHECK(doc["repeats"].size() == 5);
  CHECK(doc["n_per_class"] == 4);

  REQUIRE(run({"report", s("tgt_q.csv"), s("syn_q.csv"), "--out", s("summary.csv")}).code == 0);
  const auto summary = read_text(dir / "summary.csv");
  CHECK(summary.rfind("table,", 0) == 0);
  CHECK(line_count(summary) == 1 + 2 * 7);
  CHECK(summary.find("\nsyn_q,") != std::string::npos);
}

TEST_CASE("usage errors") {
  const auto dir = testutil::scratch_dir("cli_errors");
  CHECK(run({}).code != 0);
  CHECK(run({"nope"}).code != 0);
  CHECK(run({"metrics", "--manifest", (dir / "absent.csv").string(), "--out", (dir / "q.csv").string()}).code == 1);
  CHECK(run({"degrade", "--manifest", "m.csv", "--model", "modified", "--rate-hz", "250", "--out", "x"}).code == 1);
  CHECK(run({"synth", "--out", (dir / "s").string()}).code == 1);
  CHECK(run({"calibrate", "--manifest", "m", "--rate-hz", "250", "--out", "c", "--grid", "1:2"}).code != 0);
  CHECK(run({"--version"}).out.find(cli::kVersion) != std::string::npos);
}
