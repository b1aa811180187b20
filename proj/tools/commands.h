#ifndef ROUTEQ_TOOLS_COMMANDS_H_
#define ROUTEQ_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "routeq/error.h"
#include "routeq/instance.h"

namespace routeq::tools {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitSemantic = 3,
  kExitPathExplosion = 4,
  kExitNoConvergence = 5,
  kExitConforming = 6,
  kExitVerification = 7,
};

int ExitCodeFor(ErrorCode code);

struct Options {
  double eps = 1e-6;
  std::size_t max_iters = 200000;
  std::size_t cap = 10000;
  std::optional<std::uint64_t> seed;
  std::string out;   // Report path (instance path for construct).
  bool json = false;  // Report to stdout instead of a summary.
  bool polish = true;  // Off runs plain averaging, for diagnosis.
};

// Default path cap: ROUTEQ_CAP when set and valid, else 10000.
std::size_t DefaultCap();

// "r:amount,r:amount". Throws Error(kInvalidInstance) on bad syntax.
std::vector<DemandClass> ParseClasses(const std::string& spec);

int RunValidate(const std::string& path, const Options& opt, std::ostream& out,
                std::ostream& err);
int RunClassify(const std::string& path, const Options& opt,
                std::ostream& out, std::ostream& err);
int RunCompare(const std::string& path, const Options& opt, std::ostream& out,
               std::ostream& err);
int RunAudit(const std::string& path, const Options& opt, std::ostream& out,
             std::ostream& err);

struct ConstructOptions {
  std::string kind;
  std::string network_path;  // embed-braess and non-block-matching.
  std::string classes;       // Braess kinds; empty means the default.
  std::string report;        // Defaults to <out stem>.report.json.
};

int RunConstruct(const ConstructOptions& copt, const Options& opt,
                 std::ostream& out, std::ostream& err);

// Full command line entry point.
int Main(int argc, char** argv);

}  // namespace routeq::tools

#endif  // ROUTEQ_TOOLS_COMMANDS_H_
