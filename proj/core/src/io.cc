#include "routeq/io.h"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "routeq/error.h"

namespace routeq {
namespace {

using nlohmann::json;

[[noreturn]] void FieldError(const std::string& ptr, const std::string& msg) {
  throw Error(ErrorCode::kParseError,
              "field " + (ptr.empty() ? std::string("/") : ptr) + ": " + msg);
}

const json& Require(const json& obj, const std::string& key,
                    const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) FieldError(ptr + "/" + key, "missing");
  return *it;
}

void CheckKeys(const json& obj, const std::set<std::string>& allowed,
               const std::string& ptr) {
  if (!obj.is_object()) FieldError(ptr, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      FieldError(ptr + "/" + it.key(), "unknown field");
    }
  }
}

double Number(const json& j, const std::string& ptr) {
  if (!j.is_number()) FieldError(ptr, "expected a number");
  return j.get<double>();
}

std::string String(const json& j, const std::string& ptr) {
  if (!j.is_string()) FieldError(ptr, "expected a string");
  return j.get<std::string>();
}

const json& Array(const json& j, const std::string& ptr) {
  if (!j.is_array()) FieldError(ptr, "expected an array");
  return j;
}

CostFn ParseFn(const json& j, const std::string& ptr) {
  if (!j.is_object()) FieldError(ptr, "expected an object");
  std::string kind = String(Require(j, "kind", ptr), ptr + "/kind");
  if (kind == "constant") {
    CheckKeys(j, {"kind", "c"}, ptr);
    return CostFn::Constant(Number(Require(j, "c", ptr), ptr + "/c"));
  }
  if (kind == "affine") {
    CheckKeys(j, {"kind", "a", "b"}, ptr);
    return CostFn::Affine(Number(Require(j, "a", ptr), ptr + "/a"),
                          Number(Require(j, "b", ptr), ptr + "/b"));
  }
  if (kind == "pwl") {
    CheckKeys(j, {"kind", "points", "min_slope", "left_slope", "right_slope"},
              ptr);
    std::string pp = ptr + "/points";
    const json& pts = Array(Require(j, "points", ptr), pp);
    if (pts.empty()) FieldError(pp, "needs at least one point");
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::string ip = pp + "/" + std::to_string(i);
      if (!pts[i].is_array() || pts[i].size() != 2) {
        FieldError(ip, "expected [x, y]");
      }
      points.emplace_back(Number(pts[i][0], ip + "/0"),
                          Number(pts[i][1], ip + "/1"));
    }
    bool explicit_slopes = j.contains("left_slope") || j.contains("right_slope");
    if (explicit_slopes) {
      if (j.contains("min_slope")) {
        FieldError(ptr + "/min_slope",
                   "cannot be combined with explicit extension slopes");
      }
      std::vector<double> xs, ys;
      for (const auto& [x, y] : points) {
        xs.push_back(x);
        ys.push_back(y);
      }
      for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
          FieldError(pp, "x coordinates must strictly increase");
        }
      }
      return CostFn::PiecewiseLinear(
          xs, ys,
          Number(Require(j, "left_slope", ptr), ptr + "/left_slope"),
          Number(Require(j, "right_slope", ptr), ptr + "/right_slope"));
    }
    double min_slope = 1.0;
    if (j.contains("min_slope")) {
      min_slope = Number(j["min_slope"], ptr + "/min_slope");
    }
    return CostFn::MonotoneThrough(points, min_slope);
  }
  FieldError(ptr + "/kind", "unknown kind '" + kind + "'");
}

json FnToJson(const CostFn& f) {
  switch (f.kind()) {
    case CostFn::Kind::kConstant:
      return {{"kind", "constant"}, {"c", f.params()[0]}};
    case CostFn::Kind::kAffine:
      return {{"kind", "affine"}, {"a", f.params()[0]}, {"b", f.params()[1]}};
    case CostFn::Kind::kPiecewiseLinear:
      break;
  }
  json pts = json::array();
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < f.xs().size(); ++i) {
    pts.push_back({f.xs()[i], f.ys()[i]});
    points.emplace_back(f.xs()[i], f.ys()[i]);
  }
  json out = {{"kind", "pwl"}, {"points", pts}};
  bool monotone = false;
  try {
    monotone = CostFn::MonotoneThrough(points, 1.0) == f;
  } catch (const Error&) {
  }
  if (monotone) {
    out["min_slope"] = 1.0;
  } else {
    out["left_slope"] = f.left_slope();
    out["right_slope"] = f.right_slope();
  }
  return out;
}

std::string Location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void WriteCanonical(const json& j, std::string* out) {
  char buf[32];
  switch (j.type()) {
    case json::value_t::object: {
      *out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted.
        if (!first) *out += ',';
        first = false;
        *out += json(it.key()).dump();
        *out += ':';
        WriteCanonical(it.value(), out);
      }
      *out += '}';
      return;
    }
    case json::value_t::array: {
      *out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) *out += ',';
        WriteCanonical(j[i], out);
      }
      *out += ']';
      return;
    }
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float:
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      *out += buf;
      return;
    default:
      *out += j.dump();
  }
}

}  // namespace

Instance ParseInstanceJson(const std::string& text, ParseMode mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto pos = what.find("]: ");
    std::string detail = pos == std::string::npos ? what : what.substr(pos + 3);
    throw Error(ErrorCode::kParseError,
                Location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + detail);
  }
  bool full = mode == ParseMode::kInstance;
  CheckKeys(doc, {"vertices", "edges", "commodities"}, "");

  std::vector<VertexId> vertices;
  const json& vs = Array(Require(doc, "vertices", ""), "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    vertices.push_back(String(vs[i], "/vertices/" + std::to_string(i)));
  }

  Instance inst;
  std::vector<Edge> edges;
  const json& es = Array(Require(doc, "edges", ""), "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string p = "/edges/" + std::to_string(i);
    CheckKeys(es[i], {"id", "tail", "head", "latency", "deviation"}, p);
    Edge e{String(Require(es[i], "id", p), p + "/id"),
           String(Require(es[i], "tail", p), p + "/tail"),
           String(Require(es[i], "head", p), p + "/head")};
    bool has_l = es[i].contains("latency");
    bool has_d = es[i].contains("deviation");
    if (full || has_l || has_d) {
      CostFn l = ParseFn(Require(es[i], "latency", p), p + "/latency");
      CostFn d = ParseFn(Require(es[i], "deviation", p), p + "/deviation");
      inst.functions[e.id] = {std::move(l), std::move(d)};
    }
    edges.push_back(std::move(e));
  }
  inst.network = Network(std::move(vertices), std::move(edges));

  const json& cs = Array(Require(doc, "commodities", ""), "/commodities");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    std::string p = "/commodities/" + std::to_string(k);
    CheckKeys(cs[k], {"source", "sink", "classes"}, p);
    Commodity c;
    c.spec.source = String(Require(cs[k], "source", p), p + "/source");
    c.spec.sink = String(Require(cs[k], "sink", p), p + "/sink");
    if (full || cs[k].contains("classes")) {
      const json& cl = Array(Require(cs[k], "classes", p), p + "/classes");
      for (std::size_t i = 0; i < cl.size(); ++i) {
        std::string q = p + "/classes/" + std::to_string(i);
        if (cl[i].is_object() &&
            (cl[i].contains("density") || cl[i].contains("distribution"))) {
          FieldError(q, "continuous diversity distributions are not "
                        "supported; give discrete classes");
        }
        CheckKeys(cl[i], {"r", "amount"}, q);
        c.classes.push_back({Number(Require(cl[i], "r", q), q + "/r"),
                             Number(Require(cl[i], "amount", q),
                                    q + "/amount")});
      }
    }
    inst.commodities.push_back(std::move(c));
  }
  if (full) ValidateInstance(inst);
  return inst;
}

Instance LoadInstanceFile(const std::string& path, ParseMode mode) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseInstanceJson(ss.str(), mode);
}

std::string InstanceToJson(const Instance& inst) {
  json doc;
  doc["vertices"] = inst.network.vertices();
  json edges = json::array();
  for (const Edge& e : inst.network.edges()) {
    json je = {{"id", e.id}, {"tail", e.tail}, {"head", e.head}};
    auto it = inst.functions.find(e.id);
    if (it != inst.functions.end()) {
      je["latency"] = FnToJson(it->second.latency);
      je["deviation"] = FnToJson(it->second.deviation);
    }
    edges.push_back(std::move(je));
  }
  doc["edges"] = std::move(edges);
  json cs = json::array();
  for (const Commodity& c : inst.commodities) {
    json classes = json::array();
    for (const DemandClass& dc : c.classes) {
      classes.push_back({{"r", dc.r}, {"amount", dc.amount}});
    }
    cs.push_back({{"source", c.spec.source},
                  {"sink", c.spec.sink},
                  {"classes", std::move(classes)}});
  }
  doc["commodities"] = std::move(cs);
  return doc.dump(2) + "\n";
}

std::string CanonicalJson(const std::string& json_text) {
  std::string out;
  WriteCanonical(json::parse(json_text), &out);
  return out;
}

std::string Sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string InstanceDigest(const Instance& inst) {
  return Sha256Hex(CanonicalJson(InstanceToJson(inst)));
}

}  // namespace routeq
