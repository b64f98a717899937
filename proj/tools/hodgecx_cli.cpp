// hodgecx: validate, analyze, build geometric examples and generate
// multicomplex files. Exit codes: 0 pass, 1 failed check, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hodge/cli.hpp"

namespace {

using namespace hodge;

void emit(const Report& r, bool as_json) {
  if (as_json) std::cout << r.json.dump(2) << "\n";
  else std::cout << r.text;
}

// Writes `doc` under the output directory; returns the path written.
std::string write_output(const std::string& dir, const std::string& name, const Json& doc) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multicomplex toolkit: homotopy transfer, spectral sequences, gauge"};
  app.require_subcommand(1);
  bool as_json = false;
  bool timing = false;
  app.add_flag("--json", as_json, "Print the machine-readable report");
  app.add_flag("--timing", timing, "Include wall-clock timing in reports");

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check the multicomplex relations");
  validate->add_option("file", file, "Multicomplex file")->required();

  AnalyzeOptions aopts;
  auto* analyze = app.add_subcommand(
      "analyze", "Homology, transferred operators, spectral pages and the gauge verdict");
  analyze->add_option("file", file, "Multicomplex file")->required();
  analyze->add_option("--pages", aopts.pages, "Last spectral page to print")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--seed", aopts.seed, "Seed of the randomized retract");

  std::string kind;
  std::string structure;
  GeometryOptions gopts;
  auto* geometry =
      app.add_subcommand("geometry", "Poisson / Jacobi complexes of polynomial forms");
  geometry->add_option("--kind", kind, "poisson, jacobi or basic")
      ->required()
      ->check(CLI::IsMember({"poisson", "jacobi", "basic"}));
  geometry->add_option("--dim", gopts.dim, "Dimension m of R^m")->required();
  geometry->add_option("--trunc", gopts.trunc, "Weight truncation D")->required();
  geometry->add_option("--structure", structure, "Structure file")->required();

  std::string profile;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("generate", "Emit a generated multicomplex file");
  gen->add_option("--profile", profile, "a (gauge orbit), b (obstructed) or c (library)")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c"}));
  gen->add_option("--seed", seed, "Generator seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::kPass : exit_code::kInputError;
  }

  try {
    if (*validate) {
      const Report r = cmd_validate(file);
      emit(r, as_json);
      return r.exit_code;
    }
    if (*analyze) {
      aopts.timing = timing;
      const Report r = cmd_analyze(file, aopts);
      emit(r, as_json);
      return r.exit_code;
    }
    if (*geometry) {
      gopts.kind = *parse_geometry_kind(kind);
      gopts.timing = timing;
      Report r = cmd_geometry(structure, gopts);
      if (auto dir = output_dir(); dir && r.json.contains("multicomplex")) {
        const std::string name = "geometry-" + kind + "-m" + std::to_string(gopts.dim) + "-D" +
                                 std::to_string(gopts.trunc) + ".json";
        const std::string path = write_output(*dir, name, r.json["multicomplex"]);
        r.json["output"] = path;
        r.text += "wrote " + path + "\n";
      }
      emit(r, as_json);
      return r.exit_code;
    }
    const Json doc = cmd_generate(profile, seed);
    if (auto dir = output_dir()) {
      const std::string path =
          write_output(*dir, "generated-" + profile + "-" + std::to_string(seed) + ".json", doc);
      std::cerr << "wrote " << path << "\n";
    }
    std::cout << doc.dump(2) << "\n";
    return exit_code::kPass;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_code::kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kCheckFailed;
  }
}
