#pragma once

#include <exception>
#include <iosfwd>
#include <map>
#include <string>

#include "json.hpp"
#include "kdvlab/config.hpp"

namespace kdvlab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int numeric = 3;
inline constexpr int io = 4;
}  // namespace exit_code

/// Maps library errors to CLI exit codes (precondition and numeric errors
/// both count as numeric failures).
int exit_code_for(const std::exception& e);

/// {"error": {"kind": ..., "message": ..., "exit_code": ...}}
nlohmann::json error_json(const std::exception& e);

/// In-memory artifacts of one run: file name -> content. Numeric content is
/// a pure function of the configuration.
struct RunArtifacts {
  std::map<std::string, std::string> files;
  nlohmann::json summary;
  /// Nonzero when the computation finished but a built-in check failed.
  int status = exit_code::ok;
};

/// Computes every artifact of the configured command without touching disk.
RunArtifacts compute(const RunConfig& cfg);

/// compute() followed by writing the artifacts and manifest.json into
/// cfg.out_dir. Errors are reported on `err` and as error.json; the return
/// value is the process exit status.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// Library version string written to manifests.
const char* version();

}  // namespace kdvlab
