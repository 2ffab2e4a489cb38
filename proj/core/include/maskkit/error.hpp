#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maskkit {

enum class Errc {
  invalid_dimension,
  ratio_out_of_range,
  ratio_below_half,
  kept_exceeds_candidates,
  impossible_geometry,
  geometry_mismatch,
  dimension_mismatch,
  invalid_parameter,
  length_mismatch,
  unknown_label,
  zero_count,
  parse_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

// Every validation failure in the library surfaces as this type; the code
// lets callers (and the CLI exit-code mapping) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace maskkit
