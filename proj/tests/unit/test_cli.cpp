#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "collapse/io.hpp"

namespace fs = std::filesystem;
using collapse::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Fresh directory under the system temp dir, removed on scope exit.
struct TempDir {
  TempDir() : path(fs::temp_directory_path() / ("collapse_cli_" + std::to_string(counter++))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }

  fs::path path;
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("region prints vertices, tv and collapse flags") {
  TempDir dir;
  collapse::write_text_file(dir.file("pq.json"), R"({"p": [0.5, 0.5], "q": [0.3, 0.7]})");
  const auto r = invoke({"region", dir.file("pq.json"), "--eps", "0.15", "--delta", "0.2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("epsilon,delta\n0,0\n", 0) == 0);
  CHECK(r.err.find("tv=0.2\n") != std::string::npos);
  CHECK(r.err.find("mode_augmentation(0.15,0.2)=yes") != std::string::npos);
  CHECK(invoke({"region", dir.file("pq.json"), "--eps", "0.1"}).code == 2);
  CHECK(invoke({"region", dir.file("missing.json")}).code == 2);
  collapse::write_text_file(dir.file("bad.json"), R"({"p": [0.5, 0.6], "q": [0.3, 0.7]})");
  const auto bad = invoke({"region", dir.file("bad.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NotNormalized") != std::string::npos);
}

TEST_CASE("band writes the per-m CSV") {
  const auto r = invoke({"band", "thm1", "--tau", "0.1", "--m-max", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "m,lower,upper,feasible\n1,0.1,0.1,true\n2,0.1,0.19,true\n");
  const auto sweep = invoke({"band", "thm2", "--m-max", "2"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("# eps=0.05\n") != std::string::npos);
  CHECK(invoke({"band", "thm4"}).code == 2);
  CHECK(invoke({"band", "thm1", "--m-max", "0"}).code == 2);
}

TEST_CASE("band reports infeasible parameters without failing") {
  const auto r = invoke({"band", "thm2", "--tau", "0.05", "--eps", "0.02", "--delta", "0.1", "--m-max", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1,,,false") != std::string::npos);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("separate") {
  const auto none = invoke({"separate", "--m-max", "10"});
  CHECK(none.code == 0);
  CHECK(none.out == "no separation <= 10\n");
  const auto pinned = invoke({"separate", "--h0-eps", "0.05", "--h1-eps", "0", "--h0-tau", "0.11", "--h1-tau",
                              "0.11", "--delta", "0.11", "--m-max", "5"});
  CHECK(pinned.code == 0);
  CHECK(pinned.out == "2\n");
  CHECK(invoke({"separate", "--h0-tau", "0.1", "--h1-tau", "0.2"}).code == 2);
  CHECK(invoke({"separate", "--h0-tau", "0.1", "--tau", "0.1"}).code == 2);
}

TEST_CASE("verify exit status follows violations") {
  TempDir dir;
  const auto ok = invoke({"verify", "--trials", "20", "--seed", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("violations=0") != std::string::npos);
  CHECK(ok.out == invoke({"verify", "--trials", "20", "--seed", "3"}).out);
  const auto broken = invoke({"verify", "--trials", "5", "--corrupt-upper", "0.05", "--out", dir.file("v.csv")});
  CHECK(broken.code == 1);
  CHECK(collapse::read_text_file(dir.file("v.csv")).rfind("trial,kind,", 0) == 0);
  CHECK(invoke({"verify", "--trials", "0"}).code == 2);
}

TEST_CASE("sample then metrics through files") {
  TempDir dir;
  CHECK(invoke({"sample", "--spec", "grid", "--n", "2500", "--seed", "3", "--out", dir.file("a.csv")}).code == 0);
  CHECK(invoke({"sample", "--spec", "grid", "--n", "2500", "--seed", "4", "--out", dir.file("b.csv")}).code == 0);
  const auto again = invoke({"sample", "--spec", "grid", "--n", "2500", "--seed", "3"});
  CHECK(again.out == collapse::read_text_file(dir.file("a.csv")));
  const auto r = invoke({"metrics", dir.file("a.csv"), dir.file("b.csv"), "--spec", "grid"});
  CHECK(r.code == 0);
  CHECK(r.out.find("modes=25/25") != std::string::npos);
  CHECK(r.out.find("reverse_kl=") != std::string::npos);
  CHECK(invoke({"sample", "--spec", "moon"}).code == 2);
  CHECK(invoke({"sample", "--n", "0"}).code == 2);
}

TEST_CASE("ganview on a known pair matches region") {
  TempDir dir;
  collapse::write_text_file(dir.file("pq.json"), R"({"p": [0.1, 0.3, 0.6], "q": [0.4, 0.4, 0.2]})");
  const auto region = invoke({"region", dir.file("pq.json")});
  const auto estimate = invoke({"ganview", dir.file("pq.json"), "--out", dir.file("hull.csv"), "--emit-svg"});
  CHECK(estimate.code == 0);
  const std::string hull = collapse::read_text_file(dir.file("hull.csv"));
  CHECK(region.out.rfind(hull, 0) == 0);
  CHECK(fs::exists(dir.file("hull_points.csv")));
  CHECK(invoke({"ganview", dir.file("pq.json"), "--emit-svg"}).code == 2);
  CHECK(invoke({"ganview", dir.file("pq.json"), "--alphas", "1,x"}).code == 2);
}

TEST_CASE("reduce emits a pair JSON") {
  TempDir dir;
  collapse::write_text_file(dir.file("pw.json"), R"({"breaks": [0, 0.2, 1], "p": [1, 1], "q": [0, 1.25]})");
  const auto r = invoke({"reduce", dir.file("pw.json")});
  CHECK(r.code == 0);
  const auto pair = collapse::parse_pair_json(r.out);
  CHECK(pair.size() == 2);
}

TEST_CASE("help and usage errors") {
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Exit status") != std::string::npos);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
}
