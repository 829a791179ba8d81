#pragma once

#include <vector>

#include "boolfn.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace cubex {

// Coordinate set of the combination with the given rank among all J-subsets
// of {0..n-1}; ranks in [0, C(n,J)) enumerate subsets bijectively.
uint32_t unrank_combination(uint64_t rank, int n, int j);

struct FaceTestResult {
  uint64_t passes = 0;
  uint64_t trials = 0;
};

// Sample `trials` uniform J-faces (free set uniform among C(n,J), base
// uniform among completions); a trial passes iff the restriction of fn to
// the face has degree <= r in the face chart.  Counter-based streams make
// trial i's face a function of (seed, i) alone.
FaceTestResult face_test(const BoolFn& fn, int J, int r, uint64_t trials, uint64_t seed);

// Pass probability of the face test for a monomial subject of degree r+1:
// the restriction keeps degree <= r unless every monomial coordinate is
// free, so this is 1 - C(n-(r+1), J-(r+1)) / C(n, J).
Rational exact_pass_probability(int n, int J, int r);

// Exact 3-sigma binomial check, entirely in integers:
// (passes*den - num*trials)^2 <= 9 * num * (den-num) * trials for p = num/den.
bool within_three_sigma(uint64_t passes, uint64_t trials, const Rational& p);

struct NontestabilityRow {
  int n = 0;
  int J = 0;
  int r = 0;
  uint64_t trials = 0;
  uint64_t passes = 0;
  Rational exact_p;
  uint64_t distance = 0;        // Hamming distance to the degree-<=r class
  bool distance_brute = false;  // true when found by exhaustive search
  Rational rel_distance;        // distance / 2^n
};

// The witness table for the degree-(r+1) monomial subject: as n grows with J
// fixed, the sampled and exact pass probabilities climb toward 1 while the
// relative distance to the property stays at 2^-(r+1) — so no constant-size
// face sampler can separate this family from the property.  Distances are
// brute-forced up to brute_max_n and taken from the closed form above it.
std::vector<NontestabilityRow> nontestability_report(int r, const std::vector<int>& n_list, int J,
                                                     uint64_t trials, uint64_t seed,
                                                     int brute_max_n = 5);

}  // namespace cubex
