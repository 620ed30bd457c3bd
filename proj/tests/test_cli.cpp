#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adtrack/sequence.hpp"
#include "cli.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = adtrack::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

std::string dir_bytes(const fs::path& root) {
  std::string all;
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().filename() != "manifest.json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) all += fs::relative(f, root).string() + "\n" + testutil::slurp(f);
  return all;
}

}  // namespace

TEST_CASE("synth writes a loadable default sequence deterministically") {
  const testutil::TempDir tmp("cli-synth");
  const auto a = tmp.path / "a";
  const auto b = tmp.path / "b";
  REQUIRE(cli({"synth", "--out", a.string(), "--seed", "5"}).code == 0);
  REQUIRE(cli({"synth", "--out", b.string(), "--seed", "5"}).code == 0);
  CHECK(dir_bytes(a) == dir_bytes(b));
  const auto seq = adtrack::load_otb_sequence(a);
  CHECK(seq.size() == 60);
  const auto gt = seq.groundtruth();
  for (std::size_t i = 2; i < gt.size(); ++i) {
    CHECK(gt[i].cx - gt[i - 1].cx == doctest::Approx(gt[1].cx - gt[0].cx));
  }

  const json m = json::parse(testutil::slurp(a / "manifest.json"));
  CHECK(m["command"] == "synth");
  CHECK(m["seed"] == 5);
  CHECK(m["specs"][0]["frames"] == 60);
  CHECK(m.dump().find("time") == std::string::npos);

  const auto blur = tmp.path / "blur";
  REQUIRE(cli({"synth", "--out", blur.string(), "--seed", "5", "--blur"}).code == 0);
  const auto bseq = adtrack::load_otb_sequence(blur);
  CHECK(bseq.has_attribute("motion-blur"));
  for (std::size_t i = 0; i < gt.size(); ++i) CHECK(bseq.groundtruth()[i].cx == gt[i].cx);
  CHECK(!(bseq.frame(5) == seq.frame(5)));

  const auto suite = tmp.path / "suite";
  REQUIRE(cli({"synth", "--out", suite.string(), "--suite", "synth-slow"}).code == 0);
  CHECK(adtrack::find_otb_sequences(suite).size() == 3);

  CHECK(cli({"synth", "--out", (tmp.path / "x").string(), "--set", "frames=500", "--set", "velocity=[9,0]"}).code == 2);
  CHECK(cli({"synth", "--out", (tmp.path / "y").string(), "--set", "warp=1"}).code == 2);
  CHECK(cli({"synth"}).code == 2);
}

TEST_CASE("track writes one row per frame and honors the flags") {
  const testutil::TempDir tmp("cli-track");
  const auto seq = tmp.path / "seq";
  REQUIRE(cli({"synth", "--out", seq.string(), "--set", "frames=25"}).code == 0);

  const auto out = tmp.path / "run";
  const auto r = cli({"track", seq.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(count_lines(out / "track.csv") == 26);
  const json m = json::parse(testutil::slurp(out / "manifest.json"));
  CHECK(m["command"] == "track");
  CHECK(m["config"]["adaptive"] == true);

  const auto fixed = tmp.path / "fixed";
  REQUIRE(cli({"track", seq.string(), "--box", "141,101,40,40", "--padding-mode", "fixed", "--out", fixed.string(),
               "--set", "thresholds.t3=0.3"})
              .code == 0);
  const json mf = json::parse(testutil::slurp(fixed / "manifest.json"));
  CHECK(mf["config"]["adaptive"] == false);
  CHECK(mf["config"]["thresholds"]["t3"] == 0.3);
  CHECK(testutil::slurp(fixed / "track.csv").find(",S2,") == std::string::npos);

  const auto model = tmp.path / "model.bin";
  REQUIRE(cli({"track", seq.string(), "--out", (tmp.path / "m").string(), "--save-model", model.string(),
               "--resize-method", "spatial", "--threshold-mode", "hysteresis"})
              .code == 0);
  CHECK(fs::file_size(model) > 0);

  const auto bad = cli({"track", seq.string(), "--box", "1,2,3", "--out", (tmp.path / "bad").string()});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("box") != std::string::npos);
  CHECK(cli({"track", (tmp.path / "nothing").string(), "--out", (tmp.path / "n").string()}).code != 0);
  CHECK(cli({"track", seq.string(), "--out", (tmp.path / "p").string(), "--padding-mode", "wide"}).code == 2);
  CHECK(cli({"track", seq.string(), "--out", (tmp.path / "q").string(), "--config", "missing.json"}).code != 0);
}

TEST_CASE("bench compares configs and reports failures") {
  const testutil::TempDir tmp("cli-bench");
  const auto out = tmp.path / "fast";
  const auto r = cli({"bench", "--suite", "synth-slow", "--out", out.string(), "--oracle", "--attributes", "all"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("dcf_fixed") != std::string::npos);
  CHECK(r.out.find("dcf_sasa") != std::string::npos);
  for (const char* f : {"summary.csv", "curves.csv", "frames.csv", "sequences.csv", "precision.svg", "success.svg",
                        "manifest.json"}) {
    CHECK(fs::exists(out / f));
  }
  CHECK(count_lines(out / "summary.csv") == 4);
  const json m = json::parse(testutil::slurp(out / "manifest.json"));
  CHECK(m["trackers"].size() == 2);
  CHECK(m["trackers"][0]["config"]["adaptive"] == false);

  const auto two = tmp.path / "two";
  REQUIRE(cli({"bench", "--suite", "synth-slow", "--out", two.string(), "--config", "base=dcf_sasa", "--config",
               "dsst_sasa", "--padding-mode", "fixed"})
              .code == 0);
  CHECK(testutil::slurp(two / "summary.csv").find("base,") != std::string::npos);

  const auto data = tmp.path / "data";
  REQUIRE(cli({"synth", "--out", data.string(), "--suite", "synth-slow"}).code == 0);
  CHECK(cli({"bench", "--dataset", data.string(), "--out", (tmp.path / "d").string()}).code == 0);
  std::ofstream(data / "slow-line-1" / "groundtruth_rect.txt") << "garbage\n";
  const auto partial = cli({"bench", "--dataset", data.string(), "--out", (tmp.path / "e").string()});
  CHECK(partial.code == 1);
  CHECK(partial.err.find("slow-line-1") != std::string::npos);

  CHECK(cli({"bench", "--dataset", (tmp.path / "absent").string(), "--out", (tmp.path / "f").string()}).code != 0);
  CHECK(cli({"bench", "--suite", "synth-huge", "--out", (tmp.path / "g").string()}).code == 2);
  CHECK(cli({"bench", "--out", (tmp.path / "h").string()}).code == 2);
  CHECK(cli({"bench", "--suite", "synth-slow", "--config", "dcf_sasa", "--config", "dcf_sasa", "--out",
             (tmp.path / "i").string()})
            .code == 2);
}

TEST_CASE("help and unknown commands") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
}
