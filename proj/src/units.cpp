#include "ambsc/units.hpp"

#include <cmath>
#include <stdexcept>

namespace ambsc::units {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
  if (!(linear > 0.0)) throw std::domain_error("linear_to_db: value must be > 0");
  return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::domain_error("watts_to_dbm: power must be > 0");
  return 10.0 * std::log10(watts) + 30.0;
}

}  // namespace ambsc::units
