#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace rsim {

enum class AncillaLevel : uint8_t { G = 0, E = 1, F = 2, H = 3, Higher = 4 };

// Single-readout assignment probabilities P(reported o | level at readout
// start), as calibrated by preparing each level and measuring. The rows
// include everything that happens inside the readout window (noise overlap
// and mid-window relaxation), so they compose directly with state populations.
// The extra row models levels above h, which the four-outcome readout cannot
// report faithfully.
struct AncillaConfusion {
  std::array<std::array<double, 4>, 4> rows{};  // [true level][outcome]
  std::array<double, 4> higher_row{};           // [outcome] for level > h

  double prob(AncillaLevel level, int outcome) const {
    return level == AncillaLevel::Higher
               ? higher_row[static_cast<size_t>(outcome)]
               : rows[static_cast<size_t>(level)][static_cast<size_t>(outcome)];
  }

  // Rows sum to 1 within 1e-12, diagonal > 0.5.
  void validate() const;

  // Calibrated defaults: aggregate g/h misassignment ~4e-4, e read as g
  // ~1.1e-2 (dominated by decay during the window).
  static AncillaConfusion defaults();
  // Exact outcome reporting; levels above h still read as h.
  static AncillaConfusion perfect();
};

}  // namespace rsim
