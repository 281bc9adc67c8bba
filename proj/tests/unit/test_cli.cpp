#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "pss/classify/classify.hpp"
#include "pss/cli/cli.hpp"

using namespace pss;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result pss_run(std::vector<std::string> args) {
  args.insert(args.begin(), "pss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(PSS_TEST_DATA_DIR) + "/" + name; }

fs::path scratch_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("pss_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_json(const fs::path& dir, const char* name, const Json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p.string();
}

const CatalogEntry& entry(const char* name) {
  const auto* e = find_catalog_entry(name);
  REQUIRE(e != nullptr);
  return *e;
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(cli::fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(cli::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(cli::fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(cli::hash_hex(0xabcull) == "0000000000000abc");
}

TEST_CASE("help, version and usage errors") {
  CHECK(pss_run({"--version"}).code == cli::kExitOk);
  CHECK(pss_run({"--version"}).out.find(cli::version()) != std::string::npos);
  CHECK(pss_run({"--help"}).code == cli::kExitOk);
  CHECK(pss_run({}).code == cli::kExitUsage);
  CHECK(pss_run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(pss_run({"verify", "example", "cubic-ch2", "--delta", "2"}).code == cli::kExitUsage);
  CHECK(pss_run({"verify", "example", "cubic-ch2", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(pss_run({"build", "thm34"}).code == cli::kExitUsage);
}

TEST_CASE("verify example over the catalog") {
  for (const auto& e : catalog()) {
    const auto r = pss_run({"verify", "example", e.name});
    CHECK_MESSAGE(r.code == cli::kExitOk, e.name, r.err);
    const Json j = r.json();
    CHECK(j["tool"] == "pss");
    CHECK(j["version"] == cli::version());
    CHECK(j["command"].get<std::string>().rfind("verify example", 0) == 0);
    CHECK(j["config_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    CHECK(j["config_hash"].get<std::string>().size() == 8 + 16);
    CHECK(j["verdict"] == "pass");
  }
  const auto unknown = pss_run({"verify", "example", "no-such-example"});
  CHECK(unknown.code == cli::kExitUsage);
  CHECK(unknown.err.find("cubic-ch2") != std::string::npos);

  const auto flipped = pss_run({"verify", "example", "mch-type", "--delta", "1"});
  CHECK(flipped.code == cli::kExitFailure);
  CHECK(flipped.json()["verdict"] == "fail");

  const auto table = pss_run({"verify", "example", "cubic-ch2", "--format", "table"});
  CHECK(table.code == cli::kExitOk);
  CHECK(table.out.find("overall: pass") != std::string::npos);
}

TEST_CASE("reports are deterministic and hashes track the config") {
  const auto a = pss_run({"build", "thm34", "--config", data("cubic_ch2_surface.json")});
  const auto b = pss_run({"build", "thm34", "--config", data("cubic_ch2_surface.json")});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  const auto c = pss_run({"verify", "example", "mch-type"});
  const auto d = pss_run({"verify", "example", "mch-type", "--delta", "-1"});
  CHECK(c.json()["config_hash"] != d.json()["config_hash"]);
  CHECK(pss_run({"verify", "example", "mch-type"}).out == c.out);
}

TEST_CASE("build thm34 reproduces the catalog system") {
  const auto& e = entry("cubic-ch2");
  const auto r = pss_run({"build", "thm34", "--config", data("cubic_ch2_surface.json")});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = r.json();
  CHECK(j["verdict"] == "pass");
  CHECK(parse(j["system"]["F"].get<std::string>()) == e.system.F);
  CHECK(parse(j["system"]["G"].get<std::string>()) == e.system.G);

  const fs::path dir = scratch_dir("out");
  const auto w = pss_run({"build", "thm34", "--config", data("cubic_ch2_surface.json"), "--out", dir.string()});
  CHECK(w.code == cli::kExitOk);
  for (const char* f : {"system.json", "forms.json", "lax.json", "report.json"}) CHECK_MESSAGE(fs::exists(dir / f), f);
  std::ifstream in(dir / "system.json");
  const Json sys = Json::parse(in);
  CHECK(parse(sys["G"].get<std::string>()) == e.system.G);
  fs::remove_all(dir);
}

TEST_CASE("build thm36 reproduces the catalog system") {
  const auto& e = entry("mch-type");
  const auto r = pss_run({"build", "thm36", "--config", data("mch_third_order.json")});
  REQUIRE_MESSAGE(r.code == cli::kExitOk, r.err);
  const Json j = r.json();
  CHECK(parse(j["system"]["F"].get<std::string>()) == e.system.F);
  CHECK(parse(j["system"]["G"].get<std::string>()) == e.system.G);
}

TEST_CASE("hypothesis violations exit with failure") {
  const auto mixed = pss_run({"build", "thm36", "--config", data("mixed_violation.json")});
  CHECK(mixed.code == cli::kExitFailure);
  const Json j = mixed.json();
  CHECK(j["verdict"] == "hypothesis-violation");
  CHECK(j["condition"].get<std::string>().find("mixed-derivative") != std::string::npos);
  // (g N1 - h L1) = -(v - v2) u1 v1: the u2 v1 derivative is 0, the u1 v2 derivative is v1.
  CHECK(parse(j["residual"].get<std::string>()) == parse("-v1"));

  const auto w = pss_run({"build", "thm34", "--config", data("degenerate_w.json")});
  CHECK(w.code == cli::kExitFailure);
  CHECK(w.json()["condition"].get<std::string>().find("W") != std::string::npos);
}

TEST_CASE("malformed configs are usage errors") {
  CHECK(pss_run({"build", "thm34", "--config", data("malformed.json")}).code == cli::kExitUsage);
  CHECK(pss_run({"build", "thm34", "--config", data("no_such_file.json")}).code == cli::kExitUsage);
  const fs::path dir = scratch_dir("bad");
  const auto missing = write_json(dir, "missing.json", Json{{"expressions", {{"g", "u - u2"}}}});
  const auto r = pss_run({"build", "thm34", "--config", missing});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("'h'") != std::string::npos);
  const auto unresolved = write_json(dir, "unresolved.json", Json{{"expressions", {{"g", "Q*(u - u2)"}}}});
  CHECK(pss_run({"build", "thm34", "--config", unresolved}).err.find("'Q'") != std::string::npos);
  const auto cycle = write_json(dir, "cycle.json", Json{{"expressions", {{"A", "B"}, {"B", "A"}}}});
  CHECK(pss_run({"build", "thm34", "--config", cycle}).code == cli::kExitUsage);
  const auto delta = write_json(dir, "delta.json",
                                Json{{"expressions", {{"g", "u - u2"}}}, {"params", {{"delta", 3}}}});
  CHECK(pss_run({"build", "thm34", "--config", delta}).code == cli::kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("named subexpressions resolve in any order") {
  const fs::path dir = scratch_dir("names");
  std::ifstream in(data("mch_third_order.json"));
  Json j = Json::parse(in);
  j["expressions"]["R"] = j["expressions"]["A"];
  j["expressions"]["A"] = "R";
  const auto r = pss_run({"build", "thm36", "--config", write_json(dir, "named.json", j)});
  CHECK(r.code == cli::kExitOk);
  CHECK(parse(r.json()["system"]["F"].get<std::string>()) == entry("mch-type").system.F);
  fs::remove_all(dir);
}

TEST_CASE("lax check and lemma verification from configs") {
  CHECK(pss_run({"lax", "check", "--config", data("cubic_ch2_lax.json")}).code == cli::kExitOk);
  CHECK(pss_run({"verify", "lemma31", "--config", data("mch_forms.json")}).code == cli::kExitOk);
  CHECK(pss_run({"verify", "lemma31", "--config", data("cubic_ch2_forms.json")}).code == cli::kExitOk);
  CHECK(pss_run({"verify", "lemma31", "--config", data("mch_forms.json"), "--delta", "1"}).code ==
        cli::kExitFailure);

  const fs::path dir = scratch_dir("lax");
  std::ifstream in(data("cubic_ch2_lax.json"));
  Json j = Json::parse(in);
  j["expressions"]["F"] = j["expressions"]["F"].get<std::string>() + " + u1";
  const auto r = pss_run({"lax", "check", "--config", write_json(dir, "broken.json", j)});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.json()["verdict"] == "fail");
  fs::remove_all(dir);
}

TEST_CASE("ch2 symbolic commands") {
  for (const char* c : {"symmetry", "prolong", "taylor"}) {
    const auto r = pss_run({"ch2", c});
    CHECK_MESSAGE(r.code == cli::kExitOk, c, r.err);
    CHECK(r.json()["verdict"] == "pass");
  }
}

TEST_CASE("ch2 solution header and domain errors") {
  const auto r = pss_run({"ch2", "solution", "--grid=-1:1:0.125,-1:1:0.125"});
  REQUIRE_MESSAGE(r.code == cli::kExitOk, r.err);
  const std::string header = r.out.substr(0, r.out.find('\n'));
  CHECK(header.rfind("# pss ", 0) == 0);
  CHECK(header.find("k=0.5") != std::string::npos);
  CHECK(header.find("config_hash=fnv1a64:") != std::string::npos);
  const std::string columns = r.out.substr(header.size() + 1, r.out.find('\n', header.size() + 1) - header.size() - 1);
  CHECK(columns == "x,t,x_param,u,v,m,n,res_m,res_n,masked");

  const auto bad = pss_run({"ch2", "solution", "--u0", "2"});
  CHECK(bad.code == cli::kExitFailure);
  CHECK(bad.err.find("1 - eta^2*u0") != std::string::npos);
  CHECK(pss_run({"ch2", "residual", "--eta", "0"}).code == cli::kExitFailure);
  CHECK(pss_run({"ch2", "solution", "--grid", "garbage"}).code == cli::kExitUsage);
}
