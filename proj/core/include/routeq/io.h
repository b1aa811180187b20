#ifndef ROUTEQ_IO_H_
#define ROUTEQ_IO_H_

#include <string>

#include "routeq/instance.h"

namespace routeq {

enum class ParseMode {
  kInstance,     // Everything required; the result is validated.
  kNetworkOnly,  // Functions and classes may be omitted; no validation.
};

// Reads the instance JSON format. Syntax and shape problems raise
// Error(kParseError) whose message carries "line L, column C" or the JSON
// pointer of the offending field. Semantic problems raise the network or
// instance error codes.
Instance ParseInstanceJson(const std::string& text,
                           ParseMode mode = ParseMode::kInstance);
Instance LoadInstanceFile(const std::string& path,
                          ParseMode mode = ParseMode::kInstance);

// Pretty-printed instance JSON that ParseInstanceJson reads back to an equal
// instance.
std::string InstanceToJson(const Instance& inst);

// Sorted keys, compact, every number printed with %.17g.
std::string CanonicalJson(const std::string& json_text);

std::string Sha256Hex(const std::string& data);

// SHA-256 of the canonical form of InstanceToJson(inst).
std::string InstanceDigest(const Instance& inst);

}  // namespace routeq

#endif  // ROUTEQ_IO_H_
