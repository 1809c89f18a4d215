#pragma once

namespace netform {

/// Insider-outsider costs: linking with a same-type agent costs c_low,
/// with a different-type agent c_high. Benefits decay by delta per hop.
struct CostStructure {
  double delta = 0.7;
  double c_low = 0.2;
  double c_high = 1.0;

  double cost(bool same_type) const { return same_type ? c_low : c_high; }

  /// Throws std::invalid_argument unless 0 < delta < 1 and 0 < c_low < c_high.
  void validate() const;
};

}  // namespace netform
