#ifndef QMCERT_FIELDSPEC_HPP
#define QMCERT_FIELDSPEC_HPP

#include <string>

#include "qmcert/numberfield.hpp"

namespace qmcert {

/// Parse a field-spec JSON document.  Throws input_error with key context on
/// malformed input.  Recognized keys: name, defining_poly, integral_basis,
/// automorphisms, class_number, class_generators, quadratic_subfields,
/// prime_factorizations, assume_maximal.
FieldSpecData parse_field_spec(const std::string& json_text, const std::string& source_path = "");

/// Read and parse a field-spec file; records the file's SHA-256.
FieldSpecData load_field_spec(const std::string& path);

}  // namespace qmcert

#endif
