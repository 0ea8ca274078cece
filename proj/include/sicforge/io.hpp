#pragma once

// JSON artifact formats.
//
// Every file is an object carrying "format_version": 1 and "dim": d. Complex
// numbers are [re, im] pairs; matrices are arrays of rows. Readers ignore
// fields they do not know about.
//
//   fiducial / state   {"components": [[re, im], ...], "residuals": {...}}
//   density_matrix     {"matrix": [[[re, im], ...], ...]}
//   probabilities      {"p": [...]}
//   run_report         {"command", "residuals", "wall_time_ms", "seed", "artifact_paths", ...}

#include "sicforge/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace sicforge::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Malformed input; the message names the offending field.
class InputError : public std::runtime_error {
public:
  InputError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

Json complex_to_json(cd z);
Json vector_to_json(const ComplexVector& v);
Json matrix_to_json(const ComplexMatrix& m);

/// Header object {"format_version": 1, "kind": kind, "dim": d}.
Json header(const std::string& kind, Dim d);

Json state_to_json(const StateVector& psi, const std::string& kind = "fiducial");
Json density_to_json(const ComplexMatrix& rho);
Json probabilities_to_json(Dim d, std::span<const double> p);

/// Checks format_version and returns dim.
Dim read_header(const Json& j);
StateVector state_from_json(const Json& j);
ComplexMatrix matrix_from_json(const Json& j);
std::vector<double> probabilities_from_json(const Json& j);

/// Canonical text form: two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace sicforge::io
