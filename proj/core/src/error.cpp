#include "maskkit/error.hpp"

namespace maskkit {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::ratio_out_of_range: return "ratio-out-of-range";
    case Errc::ratio_below_half: return "ratio-below-half";
    case Errc::kept_exceeds_candidates: return "kept-exceeds-candidates";
    case Errc::impossible_geometry: return "impossible-geometry";
    case Errc::geometry_mismatch: return "geometry-mismatch";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::unknown_label: return "unknown-label";
    case Errc::zero_count: return "zero-count";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace maskkit
