#pragma once

#include <optional>
#include <vector>

#include "cube.hpp"
#include "rational.hpp"

namespace cubex {

// A finite index set T with a group acting on it, fully enumerated.  Two
// kinds: k-subsets of n vertices under all vertex permutations, and the cube
// F_2^n under its isometries.  Elements of T are addressed by encodings:
// vertex bitmasks for subsets, point values for the cube.
struct FiniteContext {
  enum class Kind { hypergraph, cube };

  Kind kind;
  int n = 0;  // vertices, or cube dimension
  int k = 0;  // subset size (hypergraph only)

  std::vector<uint32_t> elems;              // T encodings, index order
  std::vector<std::vector<uint8_t>> perms;  // hypergraph group, lexicographic
  std::vector<Isometry> isos;               // cube group, enumeration order
  std::vector<std::vector<uint32_t>> act;   // [g][t index] -> t index

  static FiniteContext hypergraph(int n, int k);
  static FiniteContext cube(int n);

  uint64_t order() const { return act.size(); }
  uint32_t t_count() const { return static_cast<uint32_t>(elems.size()); }
  uint32_t t_index(uint32_t enc) const;  // throws on encodings outside T
};

// Smallest group element (in enumeration order) fixing every element of I
// and carrying g1's restriction to J onto g2's, or nothing if none exists.
// Hypergraph search backtracks over vertex images with per-vertex pruning;
// the cube group is small enough to scan.
std::optional<uint32_t> dmt_witness(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                                    const std::vector<uint32_t>& J, uint32_t g1, uint32_t g2);

// Direct evaluation of both defining conditions, independent of the search.
bool verify_witness(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                    const std::vector<uint32_t>& J, uint32_t g1, uint32_t g2, uint32_t xi);

// Exact fraction of ordered pairs (g1, g2) admitting a witness.  Pairs are
// grouped by their restriction to J: the pair count is sum of M(O)^2 over
// orbits O of the I-stabilizer acting on restriction signatures, where M(O)
// is how many group elements restrict into O.  Exhaustive-mode size caps:
// hypergraph n <= 7, cube n <= 4.
Rational dmt_fraction(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                      const std::vector<uint32_t>& J);

struct FractionSample {
  uint64_t hits = 0;
  uint64_t trials = 0;
};

// Uniform pairs, per-pair witness search; trial i depends only on (seed, i).
FractionSample dmt_fraction_sampled(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                                    const std::vector<uint32_t>& J, uint64_t trials,
                                    uint64_t seed);

}  // namespace cubex
