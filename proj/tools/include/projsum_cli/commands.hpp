#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace projsum::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformed = 1,
  kNotDecomposable = 2,
  kDimensionCap = 3,
  kInvalidCertificate = 4,
};

struct DecomposeArgs {
  std::string k0;
  std::string element;
  std::optional<double> tol;
  std::optional<std::size_t> dim_cap;
  std::string out;  ///< empty: stdout
};

/// --dim-cap, else PROJSUM_DIM_CAP, else the library default. Throws on a bad env value.
std::size_t resolve_dim_cap(std::optional<std::size_t> flag);

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);
/// Presets "o2", "o3", ..., "oN" or "on(N)" for N >= 2.
int cmd_demo(const std::string& preset, std::ostream& out, std::ostream& err);

}  // namespace projsum::cli
