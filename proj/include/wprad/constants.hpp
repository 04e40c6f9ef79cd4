#pragma once

// SI values, CODATA 2018. h, e and c are exact by definition of the 2019 SI;
// hbar is h/2pi rounded to double.

namespace wprad {

inline constexpr double pi      = 3.14159265358979323846;
inline constexpr double c0      = 299792458.0;          // m/s
inline constexpr double hbar    = 1.054571817e-34;      // J s
inline constexpr double q_e     = 1.602176634e-19;      // C
inline constexpr double m_e     = 9.1093837015e-31;     // kg

inline constexpr double eV      = q_e;                  // J
inline constexpr double femto   = 1e-15;
inline constexpr double atto    = 1e-18;

} // namespace wprad
