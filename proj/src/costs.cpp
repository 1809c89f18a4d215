#include "netform/costs.hpp"

#include <stdexcept>

namespace netform {

void CostStructure::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("costs: require 0 < delta < 1");
  if (!(c_low > 0.0)) throw std::invalid_argument("costs: require c_low > 0");
  if (!(c_low < c_high)) throw std::invalid_argument("costs: require c_low < c_high");
}

}  // namespace netform
