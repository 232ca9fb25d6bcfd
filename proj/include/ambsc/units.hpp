#pragma once

namespace ambsc::units {

inline constexpr double kSpeedOfLight = 299792458.0;

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace ambsc::units
