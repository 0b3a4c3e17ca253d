#ifndef QMCERT_SHA256_HPP
#define QMCERT_SHA256_HPP

#include <string>

namespace qmcert {

/// SHA-256 digest of a byte string, lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace qmcert

#endif
