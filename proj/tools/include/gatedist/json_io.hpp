#pragma once

// Matrix files and JSON/CSV output for the command-line tool.
//
// Matrix file: {"dim": n, "rows": [[[re, im], ...], ...]}.
// Gate set file: {"gates": [<matrix file>, ...]}.

#include <string>
#include <vector>

#include <json.hpp>

#include "gatedist/linalg.hpp"

namespace gatedist::io {

using Json = nlohmann::ordered_json;

/// Parses a file as JSON. Malformed input raises ValidationError naming the
/// byte offset of the failure.
Json read_json_file(const std::string& path);

ComplexMatrix matrix_from_json(const Json& doc, const std::string& where);
Json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix read_matrix_file(const std::string& path);
std::vector<ComplexMatrix> read_gate_set(const std::string& path);

/// Compact JSON text; numbers carry 17 significant digits and non-finite
/// values are written as null.
std::string dump(const Json& doc);

/// Locale-independent %.17g.
std::string format_double(double v);

/// Comma-separated list of reals, e.g. "0.1,0.2,-3".
std::vector<double> parse_real_list(const std::string& text, const std::string& what);

/// Two-column CSV with header "x,y".
void write_csv(const std::string& path, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gatedist::io
