#include "commands.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "report_json.h"
#include "routeq/adversarial.h"
#include "routeq/audit.h"
#include "routeq/classify.h"
#include "routeq/io.h"

namespace routeq::tools {

using nlohmann::json;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
      return kExitParse;
    case ErrorCode::kPathExplosion:
      return kExitPathExplosion;
    case ErrorCode::kNoConvergence:
      return kExitNoConvergence;
    case ErrorCode::kClassifiedConforming:
      return kExitConforming;
    case ErrorCode::kVerificationFailed:
    case ErrorCode::kConstructionFailed:
      return kExitVerification;
    default:
      return kExitSemantic;
  }
}

std::size_t DefaultCap() {
  const char* env = std::getenv("ROUTEQ_CAP");
  if (env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultPathCap;
}

std::vector<DemandClass> ParseClasses(const std::string& spec) {
  std::vector<DemandClass> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidInstance,
                  "class '" + item + "' is not of the form r:amount");
    }
    try {
      std::size_t used = 0;
      double r = std::stod(item.substr(0, colon), &used);
      double a = std::stod(item.substr(colon + 1));
      out.push_back({r, a});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidInstance,
                  "class '" + item + "' has a non-numeric field");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidInstance, "no classes");
  return out;
}

namespace {

SolverConfig ConfigOf(const Options& opt) {
  SolverConfig cfg;
  cfg.eps = opt.eps;
  cfg.max_iters = opt.max_iters;
  cfg.cap = opt.cap;
  cfg.seed = opt.seed;
  cfg.polish = opt.polish;
  return cfg;
}

json Settings(const Options& opt) {
  return {{"eps", opt.eps},
          {"max_iters", opt.max_iters},
          {"cap", opt.cap},
          {"seed", opt.seed ? json(*opt.seed) : json(nullptr)},
          {"polish", opt.polish}};
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidInstance, "cannot write '" + path + "'");
  f << text;
}

// Writes the report to --out when given and to stdout with --json.
void Emit(const json& report, const Options& opt, std::ostream& out,
          const std::string& summary) {
  std::string text = report.dump(2) + "\n";
  if (!opt.out.empty()) WriteFile(opt.out, text);
  if (opt.json) {
    out << text;
  } else {
    out << summary;
  }
}

int Fail(const Error& e, std::ostream& err) {
  err << "routeq: " << e.what() << "\n";
  return ExitCodeFor(e.code());
}

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

int RunValidate(const std::string& path, const Options& opt, std::ostream& out,
                std::ostream& err) {
  try {
    Instance inst = LoadInstanceFile(path);
    json report = {{"command", "validate"},
                   {"digest", InstanceDigest(inst)},
                   {"valid", true},
                   {"vertices", inst.network.num_vertices()},
                   {"edges", inst.network.num_edges()},
                   {"commodities", inst.commodities.size()},
                   {"max_r", inst.MaxR()}};
    Emit(report, opt, out, "valid: " + path + "\n");
    return kExitOk;
  } catch (const Error& e) {
    return Fail(e, err);
  }
}

// Topology commands accept files without cost functions or demand.
int RunClassify(const std::string& path, const Options& opt,
                std::ostream& out, std::ostream& err) {
  try {
    Instance inst = LoadInstanceFile(path, ParseMode::kNetworkOnly);
    ClassificationResult c = ClassifyNetwork(inst.network, inst.Specs(), opt.cap);
    json report = {{"command", "classify"},
                   {"digest", InstanceDigest(inst)},
                   {"classification", ToJson(c)}};
    std::string ar = "n/a";
    try {
      bool v = IsAverageRespecting(inst);
      report["average_respecting"] = v;
      ar = v ? "yes" : "no";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroDemand) throw;
      report["average_respecting"] = nullptr;
    }
    Emit(report, opt, out,
         "classification: " + ClassificationTag(c.outcome) +
             "\naverage-respecting: " + ar + "\n");
    return kExitOk;
  } catch (const Error& e) {
    return Fail(e, err);
  }
}

int RunCompare(const std::string& path, const Options& opt, std::ostream& out,
               std::ostream& err) {
  Instance inst;
  json report;
  try {
    inst = LoadInstanceFile(path);
    report = {{"command", "compare"},
              {"digest", InstanceDigest(inst)},
              {"settings", Settings(opt)}};
    SolverConfig cfg = ConfigOf(opt);
    VerdictResult v = DiversityVerdict(inst, cfg);
    report.update(VerdictJson(inst, v));
    report["status"] = "ok";
    if (opt.seed) {
      // Non-uniqueness probe against the unperturbed start.
      SolverConfig plain = cfg;
      plain.seed.reset();
      SolveResult base = SolveEquilibrium(inst, plain);
      EdgeFlows a = ComputeEdgeFlows(inst, v.heterogeneous.flow);
      EdgeFlows b = ComputeEdgeFlows(inst, base.flow);
      double diff = 0;
      for (const auto& [e, f] : a) diff = std::max(diff, std::abs(f - b[e]));
      report["non_uniqueness"] = {{"max_edge_flow_difference", diff},
                                  {"flagged", diff > 1e-4}};
    }
    Emit(report, opt, out,
         "verdict: " + VerdictName(v.verdict) +
             "\nC_ht: " + Fmt(v.heterogeneous_cost) +
             "\nC_hm: " + Fmt(v.homogeneous_cost) + "\n");
    return kExitOk;
  } catch (const NoConvergence& e) {
    report["status"] = "no-convergence";
    report["stage"] = e.stage;
    report["partial"] = {{"path_flows", ToJson(e.flow())},
                         {"verification", ToJson(e.report())},
                         {"solver", ToJson(e.stats())}};
    try {
      Emit(report, opt, out, "");
    } catch (const Error&) {
    }
    return Fail(e, err);
  } catch (const Error& e) {
    return Fail(e, err);
  }
}

int RunAudit(const std::string& path, const Options& opt, std::ostream& out,
             std::ostream& err) {
  try {
    Instance inst = LoadInstanceFile(path, ParseMode::kNetworkOnly);
    json per = json::array();
    std::size_t total = 0;
    for (std::size_t k = 0; k < inst.commodities.size(); ++k) {
      json vs = json::array();
      for (const AuditViolation& v :
           StructuralAudit(inst.network, inst.commodities[k].spec, opt.cap)) {
        vs.push_back(ToJson(v));
        ++total;
      }
      per.push_back({{"commodity", k}, {"violations", vs}});
    }
    json report = {{"command", "audit"},
                   {"digest", InstanceDigest(inst)},
                   {"commodities", per},
                   {"violation_count", total}};
    Emit(report, opt, out, "violations: " + std::to_string(total) + "\n");
    return kExitOk;
  } catch (const Error& e) {
    return Fail(e, err);
  }
}

int RunConstruct(const ConstructOptions& copt, const Options& opt,
                 std::ostream& out, std::ostream& err) {
  if (opt.out.empty()) {
    err << "routeq: construct needs --out\n";
    return kExitUsage;
  }
  bool needs_net =
      copt.kind == "embed-braess" || copt.kind == "non-block-matching";
  if (needs_net && copt.network_path.empty()) {
    err << "routeq: --kind " << copt.kind << " needs a network file\n";
    return kExitUsage;
  }
  std::vector<DemandClass> classes;
  try {
    classes = ParseClasses(copt.classes.empty() ? "0:0.5,2:0.5" : copt.classes);
  } catch (const Error& e) {
    err << "routeq: --classes: " << e.what() << "\n";
    return kExitUsage;
  }
  std::string report_path = copt.report;
  if (report_path.empty()) {
    std::filesystem::path p(opt.out);
    report_path = (p.parent_path() / p.stem()).string() + ".report.json";
  }
  try {
    SolverConfig cfg = ConfigOf(opt);
    HurtCertificate cert;
    if (copt.kind == "braess") {
      cert = BraessHurt(classes, cfg);
    } else if (copt.kind == "braess-affine") {
      cert = BraessHurtAffine(classes, cfg);
    } else if (copt.kind == "two-commodity") {
      cert = TwoCommodityHurt(cfg);
    } else if (copt.kind == "non-average-respecting") {
      cert = NonAverageRespectingExample(cfg);
    } else if (needs_net) {
      Instance in = LoadInstanceFile(copt.network_path, ParseMode::kNetworkOnly);
      if (in.commodities.empty()) {
        throw Error(ErrorCode::kInvalidInstance, "network file has no commodity");
      }
      if (copt.kind == "embed-braess") {
        const CommoditySpec& c = in.commodities.front().spec;
        cert = EmbedBraess(in.network, c.source, c.sink, classes, cfg);
      } else {
        cert = NonBlockMatchingHurt(in.network, in.Specs(), cfg);
      }
    } else {
      err << "routeq: unknown --kind '" << copt.kind << "'\n";
      return kExitUsage;
    }
    WriteFile(opt.out, InstanceToJson(cert.instance));
    json report = {{"command", "construct"},
                   {"kind", copt.kind},
                   {"digest", InstanceDigest(cert.instance)},
                   {"settings", Settings(opt)},
                   {"average_respecting", IsAverageRespecting(cert.instance)}};
    report.update(CertificateJson(cert));
    std::string text = report.dump(2) + "\n";
    WriteFile(report_path, text);
    if (opt.json) {
      out << text;
    } else {
      out << "constructed " << copt.kind << ": C_ht "
          << Fmt(cert.solved.heterogeneous_cost) << ", C_hm "
          << Fmt(cert.solved.homogeneous_cost) << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    return Fail(e, err);
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Heterogeneous selfish routing: equilibria, topology "
               "classification and constructions."};
  app.require_subcommand(1);
  Options opt;
  opt.cap = DefaultCap();
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--eps", opt.eps, "Equilibrium tolerance")
        ->capture_default_str();
    sub->add_option("--max-iters", opt.max_iters, "Averaging iteration limit")
        ->capture_default_str();
    sub->add_option("--cap", opt.cap, "Simple path enumeration cap")
        ->capture_default_str();
    sub->add_option("--seed", seed, "Perturb the solver's starting point");
    sub->add_option("--out", opt.out, "Output file");
    sub->add_flag("--json", opt.json, "Print the JSON report to stdout");
    sub->add_flag("!--no-polish", opt.polish,
                  "Skip the Newton polish (plain averaging only)");
  };
  std::string path;
  auto* validate = app.add_subcommand("validate", "Parse and validate");
  auto* classify = app.add_subcommand("classify", "Classify the topology");
  auto* compare =
      app.add_subcommand("compare", "Compare both equilibria's total costs");
  auto* audit = app.add_subcommand("audit", "Structural block audit");
  for (CLI::App* sub : {validate, classify, compare, audit}) {
    add_common(sub);
    sub->add_option("instance", path, "Instance file")->required();
  }
  ConstructOptions copt;
  auto* construct = app.add_subcommand("construct", "Build a hurt instance");
  add_common(construct);
  construct->add_option("--kind", copt.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"braess", "braess-affine", "embed-braess",
                             "two-commodity", "non-block-matching",
                             "non-average-respecting"}));
  construct->add_option("--classes", copt.classes, "Demand classes r:amount,...");
  construct->add_option("--report", copt.report, "Certificate report path");
  construct->add_option("network", copt.network_path, "Network file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  opt.seed = seed;
  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;
  if (validate->parsed()) return RunValidate(path, opt, out, err);
  if (classify->parsed()) return RunClassify(path, opt, out, err);
  if (compare->parsed()) return RunCompare(path, opt, out, err);
  if (audit->parsed()) return RunAudit(path, opt, out, err);
  return RunConstruct(copt, opt, out, err);
}

}  // namespace routeq::tools
