#pragma once

#include <string>

#include "measure.hpp"

namespace cubex {

// Config serialization: k = 2 uses the hex truth-table encoding; alphabets up
// to 36 use base-k digit strings (0-9 then a-z), most significant digit
// first, the symbol at point 0 last.  One string length per (n, k).
std::string config_to_string(const Config& c);
Config config_from_string(int n, int k, const std::string& s);

// Measure file, version-tagged text:
//   cubex-measure v1
//   n <dim>
//   k <alphabet>
//   <config> <num/den>    (one line per support entry, ascending config)
// Loading validates everything the in-memory type does (positive weights,
// exact total 1, no duplicates) and reports the offending line; saving is
// canonical, so save(load(f)) reproduces f byte for byte.
std::string measure_to_text(const ExactMeasure& mu);
ExactMeasure measure_from_text(const std::string& text);

void save_measure(const ExactMeasure& mu, const std::string& path);
ExactMeasure load_measure(const std::string& path);

}  // namespace cubex
