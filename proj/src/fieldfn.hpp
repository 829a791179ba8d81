#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cubex {

// A function F_q^d -> F_q as a flat value table.  Entry index is the mixed
// radix number with coordinate 0 least significant (same convention as cube
// configs).  q must be one of the supported primes.
struct FieldFn {
  int q;
  int d;
  std::vector<uint8_t> values;

  FieldFn(int q_, int d_, std::vector<uint8_t> values_);
};

bool field_q_supported(int q);
uint64_t field_table_size(int q, int d);

// Which embedded copies of the discrete r-cube the zero-sum test ranges over:
//  - affine:    {a + sum_j x_j b_j : x in {0,1}^r} with b_1..b_r linearly
//               independent over F_q
//  - isometric: r distinct coordinates each varying over an unordered pair of
//               distinct values, all other coordinates fixed
// Every isometric copy is an affine copy, so passing the affine test implies
// passing the isometric one.
enum class CopyMode { affine, isometric };

const char* copy_mode_name(CopyMode m);
CopyMode copy_mode_from_name(const std::string& s);

// True iff the sum of f over every copy of the r-cube (in the given mode)
// vanishes in F_q.
bool field_face_sum_test(const FieldFn& f, int r, CopyMode mode);

// Total degree of the unique polynomial with per-variable degree < q that
// represents f, computed by per-axis inverse-Vandermonde interpolation.
// The zero function has degree -1.
int field_degree(const FieldFn& f);

// Coefficient tensor of that polynomial (same indexing as the value table;
// entry e is the coefficient of prod_i x_i^{e_i}).
std::vector<uint8_t> field_coefficients(const FieldFn& f);

struct FieldSearchReport {
  int q = 0;
  int d = 0;
  int r = 0;
  CopyMode mode = CopyMode::affine;
  bool exhaustive = false;
  uint64_t scanned = 0;
  uint64_t passing = 0;          // functions passing the zero-sum test
  int max_passing_degree = -1;   // over passing functions
  uint64_t witness_count = 0;    // passing functions with degree > r
  std::vector<FieldFn> witnesses;  // first few witnesses, capped
};

// Scan every function F_q^d -> F_q (q^(q^d) of them; guarded by max_scan) and
// report how many pass the zero-sum test and whether any passing function has
// degree > r.  The scan itself is the ground truth for existence questions.
FieldSearchReport field_search_exhaustive(int q, int d, int r, CopyMode mode,
                                          uint64_t max_scan = 200000);

// Same report over `trials` functions drawn uniformly via the counter RNG.
FieldSearchReport field_search_sampled(int q, int d, int r, CopyMode mode, uint64_t trials,
                                       uint64_t seed);

// Digit-string serialization, base q, fixed width q^d, most significant digit
// first (entry 0 is the last character).
std::string field_fn_to_digits(const FieldFn& f);
FieldFn field_fn_from_digits(int q, int d, const std::string& s);

}  // namespace cubex
