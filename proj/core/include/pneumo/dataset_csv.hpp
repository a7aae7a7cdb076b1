#pragma once

// Calibration dataset CSV:
//
//   # zero_indication=2.341453525      (optional metadata, before the header;
//   # temp_start_C=20                   keys: zero_indication, temp_start_C,
//   # force_unit=kgf                    temp_end_C, resolution_V, force_unit)
//   force_kgf,X1_0,X2_0,X3_360,X4_360,X5_180,X6_180
//   0,<leading zeros, all six>
//   0.5,...                             (one row per level, ascending)
//   0,<trailing zeros, empty cells allowed>
//
// Blank lines are ignored and a trailing CR is tolerated. Columns may come in
// any order; serialize_dataset always writes the canonical order with the
// shortest round-tripping decimal form.

#include <string>
#include <string_view>

#include "pneumo/calibration.hpp"

namespace pneumo {

// Throws ParseError with 1-based line/column coordinates.
CalibrationDataset parse_dataset(std::string_view text);

std::string serialize_dataset(const CalibrationDataset& ds);

}  // namespace pneumo
