#pragma once

#include <cmath>

namespace rfisim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

// Serialized stand-in for "no received power" (empty or fully cancelled sums).
inline constexpr double kPowerFloorDbw = -300.0;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// All dB <-> linear conversions live here. Fields carry amplitude =
// sqrt(linear power), so a power of P dBW maps to amplitude 10^(P/20).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_dbw(double dbm) { return dbm - 30.0; }
inline double amplitude_from_dbw(double dbw) { return std::pow(10.0, dbw / 20.0); }
inline double dbw_from_amplitude(double amp) { return 20.0 * std::log10(amp); }

inline double wavelength(double frequency_hz) { return kSpeedOfLight / frequency_hz; }

}  // namespace rfisim
