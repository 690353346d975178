#include "core/confusion.hpp"

#include <cmath>
#include <stdexcept>

namespace rsim {

void AncillaConfusion::validate() const {
  auto check_row = [](const std::array<double, 4>& row, bool need_diag,
                      size_t diag) {
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("AncillaConfusion: entry outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("AncillaConfusion: row does not sum to 1");
    if (need_diag && !(row[diag] > 0.5))
      throw std::invalid_argument("AncillaConfusion: diagonal must exceed 0.5");
  };
  for (size_t i = 0; i < 4; ++i) check_row(rows[i], true, i);
  check_row(higher_row, false, 0);
}

AncillaConfusion AncillaConfusion::defaults() {
  AncillaConfusion c;
  // g: thermal excitation during the window dominates
  c.rows[0] = {1.0 - 2.1e-4, 2.0e-4, 9e-6, 1e-6};
  // e: decay to g during the first half of the window
  c.rows[1] = {1.1e-2, 1.0 - 1.131e-2, 3.0e-4, 1e-5};
  // f: single decay lands in e, double decay in g
  c.rows[2] = {6.0e-4, 2.2e-2, 1.0 - 2.29e-2, 3.0e-4};
  // h: cascade decays; reaching g needs three steps
  c.rows[3] = {2.0e-4, 1.5e-3, 2.5e-2, 1.0 - 2.67e-2};
  // above h: reported mostly as h or f, almost never as g
  c.higher_row = {0.02, 0.08, 0.30, 0.60};
  c.validate();
  return c;
}

AncillaConfusion AncillaConfusion::perfect() {
  AncillaConfusion c;
  for (size_t i = 0; i < 4; ++i) {
    c.rows[i] = {0, 0, 0, 0};
    c.rows[i][i] = 1.0;
  }
  c.higher_row = {0, 0, 0, 1.0};
  c.validate();
  return c;
}

}  // namespace rsim
