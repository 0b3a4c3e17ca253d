#ifndef QMCERT_JSONIO_HPP
#define QMCERT_JSONIO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "qmcert/bigint.hpp"

namespace qmcert {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "qmcert";
inline constexpr const char* kToolVersion = "1.0.0";

/// Integers are emitted as JSON numbers while they fit into 53 bits and as
/// decimal strings beyond, so certificates survive double-precision parsers.
Json json_int(const Int& v);
Int parse_int(const Json& j);

/// Rationals serialize as "num/den" (or plain integer form when den = 1).
Json json_rat(const Rat& v);
Rat parse_rat(const Json& j);

Json json_int_array(const std::vector<Int>& v);
std::vector<Int> parse_int_array(const Json& j);
std::vector<Rat> parse_rat_array(const Json& j);

std::string read_file(const std::string& path);        // throws input_error
void write_file(const std::string& path, const std::string& data);

/// Canonical certificate serialization: fixed key order, two-space indent,
/// trailing newline.  Byte-identical across runs for equal documents.
std::string dump_canonical(const Json& j);

}  // namespace qmcert

#endif
