#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "support.hpp"

#include "hodge/cli.hpp"

using namespace hodge;
using hodge::testing::single_block;
using hodge::testing::space_of;

namespace {

namespace fs = std::filesystem;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("hodgecx-test-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HODGECX_BIN + " " + args + " >" + (scratch() / "out.txt").string() +
                          " 2>" + (scratch() / "err.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

const char* kSo3 = R"({"format": "hodgecx-structure", "version": 1, "dim": 3, "bivector": [
  {"coefficient": "1", "monomial": [0, 0, 1], "indices": [1, 2]},
  {"coefficient": "1", "monomial": [1, 0, 0], "indices": [2, 3]},
  {"coefficient": "-1", "monomial": [0, 1, 0], "indices": [1, 3]}]})";

const char* kNotPoisson = R"({"format": "hodgecx-structure", "version": 1, "dim": 3, "bivector": [
  {"coefficient": "1", "monomial": [0, 1, 0], "indices": [1, 2]},
  {"coefficient": "1", "monomial": [0, 0, 0], "indices": [2, 3]}]})";

const char* kJacobi = R"({"format": "hodgecx-structure", "version": 1, "dim": 3, "bivector": [
  {"coefficient": "1", "monomial": [0, 0, 0], "indices": [1, 2]},
  {"coefficient": "1", "monomial": [0, 1, 0], "indices": [2, 3]}],
  "vector": [{"coefficient": "1", "monomial": [0, 0, 0], "indices": [3]}]})";

bool check_named(const Json& checks, const std::string& prefix, bool pass) {
  for (const Json& c : checks) {
    if (c["name"].get<std::string>().rfind(prefix, 0) == 0) return c["pass"].get<bool>() == pass;
  }
  return false;
}

}  // namespace

TEST_CASE("validate") {
  const GradedSpace a = space_of({{0, 1}, {1, 1}, {2, 1}});
  const Report ok = validate_report(Multicomplex::zero(a));
  CHECK(ok.exit_code == exit_code::kPass);
  CHECK(ok.json["pass"] == true);

  // D_1 breaks the n = 1 relation only.
  const GradedSpace b = space_of({{0, 1}, {1, 1}});
  const Multicomplex broken =
      Multicomplex::mixed(single_block(b, -1, 1, Matrix{{1}}), single_block(b, 1, 0, Matrix{{1}}));
  const Report bad = validate_report(broken);
  CHECK(bad.exit_code == exit_code::kCheckFailed);
  CHECK(check_named(bad.json["checks"], "relation n=0", true));
  CHECK(check_named(bad.json["checks"], "relation n=1", false));
  bool witnessed = false;
  for (const Json& c : bad.json["checks"]) {
    if (c.contains("witness")) {
      CHECK(c["witness"]["n"] == 1);
      witnessed = true;
    }
  }
  CHECK(witnessed);
  CHECK(bad.text.find("FAIL  relation n=1") != std::string::npos);

  const std::string path = write("zero.json", print_multicomplex(Multicomplex::zero(a)));
  CHECK(cmd_validate(path).exit_code == exit_code::kPass);
  CHECK_THROWS_AS(cmd_validate((scratch() / "missing.json").string()), ParseError);
}

TEST_CASE("analyze verdicts") {
  SUBCASE("acyclic pair: R = 0") {
    const GradedSpace a = space_of({{0, 1}, {1, 1}});
    const Report r = analyze_report(Multicomplex(a, {single_block(a, -1, 1, Matrix{{1}})}));
    CHECK(r.exit_code == exit_code::kPass);
    CHECK(r.json["verdicts"]["hodge_data"] == true);
    CHECK(r.json["verdicts"]["gauge_exists"] == true);
    CHECK(r.json["gauge"]["R"]["coefficients"].empty());
    CHECK(r.json["homology"].empty());
  }
  SUBCASE("d = 0 and D_1 != 0: every verdict false") {
    const GradedSpace a = space_of({{0, 1}, {1, 1}});
    const Report r = analyze_report(
        Multicomplex::mixed(GradedMap::zero(a, -1), single_block(a, 1, 0, Matrix{{1}})));
    CHECK(r.exit_code == exit_code::kPass);
    CHECK(r.json["verdicts"]["hodge_data"] == false);
    CHECK(r.json["verdicts"]["degenerates"] == false);
    CHECK(r.json["verdicts"]["gauge_exists"] == false);
    CHECK(r.json["verdicts"]["agree"] == true);
    CHECK(r.json["hodge_data"]["witness"]["n"] == 1);
    CHECK(r.json["gauge"]["obstruction"] == 1);
    CHECK_FALSE(r.json.contains("timing_ms"));
  }
  SUBCASE("gauge-orbit instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      AnalyzeOptions opts;
      opts.seed = seed + 5;
      opts.timing = true;
      const Report r = analyze_report(generate_gauge_orbit(seed).m, opts);
      CHECK(r.exit_code == exit_code::kPass);
      CHECK(r.json["verdicts"]["hodge_data"] == true);
      CHECK(r.json["verdicts"]["gauge_exists"] == true);
      CHECK(r.json["randomized_retract"]["hodge_data"]["holds"] == true);
      CHECK(r.json.contains("timing_ms"));
      // The reported R solves the gauge equation.
      const OperatorSeries rz = series_from_json(r.json["gauge"]["R"]);
      CHECK(check_gauge_hodge(rz, generate_gauge_orbit(seed).m).holds);
    }
  }
  SUBCASE("invalid input is not analyzed") {
    const GradedSpace c = space_of({{0, 1}, {1, 1}, {2, 1}});
    const Report r = analyze_report(
        Multicomplex(c, {single_block(c, -1, 1, Matrix{{1}}) + single_block(c, -1, 2, Matrix{{1}})}));
    CHECK(r.exit_code == exit_code::kCheckFailed);
    CHECK_FALSE(r.json.contains("verdicts"));
  }
  SUBCASE("pages option") {
    AnalyzeOptions opts;
    opts.pages = 3;
    const Report r = analyze_report(generate_obstructed(2).m, opts);
    CHECK(r.json["pages"].size() == 3);
  }
}

TEST_CASE("geometry reports") {
  GeometryOptions opts;
  opts.kind = GeometryKind::Poisson;
  opts.dim = 3;
  opts.trunc = 2;
  const Report zero = geometry_report(Structure{3, PolyVector(3), PolyVector(3)}, opts);
  CHECK(zero.exit_code == exit_code::kPass);
  CHECK(zero.json["degeneration"]["degenerates"] == true);

  const Report lie = cmd_geometry(write("so3.json", kSo3), opts);
  CHECK(lie.exit_code == exit_code::kPass);
  CHECK(lie.json["orders"]["d"] == 1);
  CHECK(lie.json["orders"]["Delta_1"] == 2);
  const Multicomplex exported = multicomplex_from_json(lie.json["multicomplex"]);
  CHECK(validate_multicomplex(exported).ok());
  CHECK(lie.json["multicomplex"]["metadata"]["kind"] == "poisson");

  const Report bad = cmd_geometry(write("bad.json", kNotPoisson), opts);
  CHECK(bad.exit_code == exit_code::kCheckFailed);
  CHECK(bad.text.find("= -2 d1^d2^d3") != std::string::npos);
  CHECK_FALSE(bad.json.contains("multicomplex"));

  opts.kind = GeometryKind::Jacobi;
  const Report jac = cmd_geometry(write("jacobi.json", kJacobi), opts);
  CHECK(jac.exit_code == exit_code::kPass);
  CHECK(jac.json["orders"]["Delta_2"].get<int>() <= 3);
  opts.kind = GeometryKind::Basic;
  CHECK(cmd_geometry(write("jacobi.json", kJacobi), opts).exit_code == exit_code::kPass);

  opts.dim = 2;
  CHECK_THROWS_AS(cmd_geometry(write("jacobi.json", kJacobi), opts), ParseError);
  CHECK(parse_geometry_kind("jacobi") == GeometryKind::Jacobi);
  CHECK_FALSE(parse_geometry_kind("contact").has_value());
}

TEST_CASE("generate") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (const char* profile : {"a", "b", "c"}) {
      const Json doc = cmd_generate(profile, seed);
      CHECK(doc.dump() == cmd_generate(profile, seed).dump());
      CHECK(doc["metadata"]["profile"] == profile);
      CHECK(doc["metadata"]["seed"] == seed);
      const Multicomplex m = multicomplex_from_json(doc);
      CHECK(validate_multicomplex(m).ok());
      const Report r = analyze_report(m);
      CHECK(r.json["verdicts"]["agree"] == true);
      CHECK(r.json["verdicts"]["degenerates"] == doc["metadata"]["expect_degenerate"]);
      if (std::string(profile) == "a") CHECK(doc["metadata"]["expect_degenerate"] == true);
      if (std::string(profile) == "b") CHECK(doc["metadata"]["expect_degenerate"] == false);
    }
  }
  CHECK_THROWS_AS(cmd_generate("z", 0), std::invalid_argument);
}

TEST_CASE("binary exit codes and output files") {
  const std::string zero = write("zero.json", print_multicomplex(Multicomplex::zero(space_of({{0, 1}}))));
  CHECK(run("validate " + zero) == 0);
  CHECK(run("--json validate " + zero) == 0);
  CHECK(parse_json(slurp(scratch() / "out.txt"))["pass"] == true);

  const GradedSpace b = space_of({{0, 1}, {1, 1}});
  const std::string broken = write(
      "broken.json",
      print_multicomplex(Multicomplex::mixed(single_block(b, -1, 1, Matrix{{1}}), single_block(b, 1, 0, Matrix{{1}}))));
  CHECK(run("validate " + broken) == 1);
  CHECK(run("validate " + (scratch() / "missing.json").string()) == 2);
  CHECK(run("validate " + write("garbage.json", "{\n  \"format\": ,\n}")) == 2);
  CHECK(slurp(scratch() / "err.txt").find("line 2") != std::string::npos);
  CHECK(run("frobnicate") == 2);
  CHECK(run("generate --profile q --seed 1") == 2);

  CHECK(run("analyze " + zero + " --pages 2 --seed 3") == 0);
  CHECK(run("geometry --kind poisson --dim 3 --trunc 2 --structure " + write("bad.json", kNotPoisson)) == 1);
  CHECK(slurp(scratch() / "out.txt").find("[w, w] = 0") != std::string::npos);

  const fs::path outdir = scratch() / "outputs";
  CHECK(run("generate --profile a --seed 4", "HODGECX_OUTPUT_DIR=" + outdir.string()) == 0);
  const std::string printed = slurp(scratch() / "out.txt");
  CHECK(run("generate --profile a --seed 4") == 0);
  CHECK(slurp(scratch() / "out.txt") == printed);
  const fs::path file = outdir / "generated-a-4.json";
  REQUIRE(fs::exists(file));
  CHECK(run("validate " + file.string()) == 0);

  CHECK(run("geometry --kind poisson --dim 3 --trunc 2 --structure " + write("so3.json", kSo3),
            "HODGECX_OUTPUT_DIR=" + outdir.string()) == 0);
  const fs::path geo = outdir / "geometry-poisson-m3-D2.json";
  REQUIRE(fs::exists(geo));
  CHECK(run("validate " + geo.string()) == 0);
  fs::remove_all(scratch());
}
