#pragma once

// Subcommands behind the hodgecx tool. Each returns a Report; input errors
// (unreadable or malformed files) surface as ParseError and map to exit 2.

#include <cstdint>
#include <optional>
#include <string>

#include "hodge/io.hpp"

namespace hodge {

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;
}  // namespace exit_code

struct Report {
  Json json;
  std::string text;
  int exit_code = exit_code::kPass;
};

struct AnalyzeOptions {
  /// Last spectral page to tabulate; defaults to the stable page.
  std::optional<int> pages;
  /// Seed of the extra randomized retract used for the uniform-vanishing check.
  std::uint64_t seed = 0;
  bool timing = false;
};

Report validate_report(const Multicomplex& m);
Report cmd_validate(const std::string& path);

Report analyze_report(const Multicomplex& m, const AnalyzeOptions& opts = {});
Report cmd_analyze(const std::string& path, const AnalyzeOptions& opts = {});

enum class GeometryKind { Poisson, Jacobi, Basic };
std::optional<GeometryKind> parse_geometry_kind(const std::string& s);

struct GeometryOptions {
  GeometryKind kind = GeometryKind::Poisson;
  int dim = 0;
  int trunc = 0;
  bool timing = false;
};

/// The report's json carries the exported file under "multicomplex" when
/// the structure passes its identities.
Report geometry_report(const Structure& s, const GeometryOptions& opts);
Report cmd_geometry(const std::string& structure_path, const GeometryOptions& opts);

/// Generated file with the generator profile, seed and label in metadata.
Json cmd_generate(const std::string& profile, std::uint64_t seed);

/// Value of HODGECX_OUTPUT_DIR, when set and nonempty.
std::optional<std::string> output_dir();

}  // namespace hodge
