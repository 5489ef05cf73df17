#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "cat0.hpp"

using cat0::io::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(CAT0_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(CAT0_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("decide", "[cli]") {
  const auto bad = cli("decide " + data("example_space.json"));
  CHECK(bad.code == 1);
  const auto j = json::parse(bad.out);
  CHECK(j["verdict"] == "NotEmbeddable");
  CHECK(std::abs(j["certificate"]["value"].get<double>() + 0.125) < 1e-9);
  CHECK(cli("decide " + data("square.json")).code == 0);
  CHECK(cli("check-boxtimes " + data("square.json")).code == 0);
}

TEST_CASE("input errors", "[cli]") {
  CHECK(cli("decide " + data("broken.json")).code == 2);
  CHECK(cli("decide " + data("missing.json")).code == 2);
  CHECK(cli("classify-quad " + data("square.json")).code == 2);
  CHECK(cli("no-such-command").code == 2);
  CHECK(cli("classify-quad " + data("square.json") + " --roles a,b,c,d --pivot a,b").code == 2);
}

TEST_CASE("classify-quad", "[cli]") {
  const auto r = cli("classify-quad " + data("example_space.json") + " --roles x1,x2,x3,x4 --pivot x2,x4");
  CHECK(r.code == 1);
  const auto j = json::parse(r.out);
  CHECK(j["verdict"] == "OverDistance");
  CHECK(std::abs(j["hi"].get<double>() - 1.5667) < 1e-3);
  const auto sq = cli("classify-quad " + data("square.json") + " --roles 0,1,2,3 --pivot 0,2");
  CHECK(sq.code == 0);
  CHECK(json::parse(sq.out).contains("embedding"));
}

TEST_CASE("witness", "[cli]") {
  const auto bad = cli("witness " + data("example_space.json") + " --graph C4");
  CHECK((bad.code == 1 || bad.code == 3));
  CHECK(json::parse(bad.out)["error"] == "BoxtimesViolated");
  const auto ok = cli("witness --metric " + data("square.json") + " --graph 1-2,2-3,3-4,1-4");
  CHECK(ok.code == 0);
  const auto j = json::parse(ok.out);
  CHECK(j["report"]["pass"] == true);
  CHECK(j["assignment"].size() == 4);
}

TEST_CASE("complex-dist and qmi-eval", "[cli]") {
  const auto r = cli("--mesh 32 complex-dist " + data("flat_square.json"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["distances"][0][1].get<double>() - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(j["distances"][0][2].get<double>() - std::sqrt(0.5)) < 1e-9);
  const auto q = cli("qmi-eval " + data("quadrilateral.json") + " " + data("example_space.json"));
  CHECK(q.code == 0);
  CHECK(std::abs(json::parse(q.out)["min"].get<double>()) < 1e-9);
}

TEST_CASE("gen output is reproducible", "[cli]") {
  const auto a = cli("--seed 9 gen --kind tree --n 5");
  const auto b = cli("--seed 9 gen --kind tree --n 5");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(cli("--seed 10 gen --kind tree --n 5").out != a.out);
  const auto j = json::parse(a.out);
  CHECK(j["d"].size() == 5);
  CHECK(j["boxtimes_holds"] == true);
  const auto w1 = cli("--seed 3 witness " + data("square.json") + " --graph C4");
  const auto w2 = cli("--seed 3 witness " + data("square.json") + " --graph C4");
  CHECK(w1.out == w2.out);
}

TEST_CASE("json round trips", "[io]") {
  const auto x = cat0::generate(cat0::gen::Euclidean{3}, 5, 2);
  const auto y = cat0::io::metric_from_json(cat0::io::to_json(x));
  CHECK(y.matrix() == x.matrix());
  const auto q = cat0::io::qmi_from_json(cat0::io::to_json(cat0::boxtimes_family(0.25, 0.5)));
  CHECK(q.coeff(1, 3) == -0.1875);
  const auto c = cat0::io::complex_from_json(cat0::io::parse_file(data("flat_square.json")));
  const auto c2 = cat0::io::complex_from_json(cat0::io::to_json(c));
  CHECK(std::abs(cat0::distance(c2, "b", "d") - std::sqrt(2.0)) < 1e-9);
}
