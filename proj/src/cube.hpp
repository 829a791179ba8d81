#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace cubex {

inline constexpr int kMaxDim = 24;      // point indices fit comfortably in uint32_t
inline constexpr int kMaxEnumDim = 8;   // full isometry-group enumeration cap

// A vertex of the discrete cube {0,1}^n.  Coordinates are 0-based: coordinate
// c is bit c of `index`.  This encoding is fixed; every hex/digit string in
// file formats refers to it.
struct CubePoint {
  int n;
  uint32_t index;

  CubePoint(int n_, uint32_t index_);
};

uint32_t hamming_distance(const CubePoint& a, const CubePoint& b);

// Permute the bits of `x`: bit c moves to bit perm[c].
uint32_t permute_bits(const std::vector<uint8_t>& perm, uint32_t x);

// An isometry of the Hamming cube: x |-> perm(x) ^ trans.  Composing a
// coordinate permutation with an XOR-translation gives every isometry of
// {0,1}^n, and distinct (perm, trans) pairs give distinct maps.
class Isometry {
 public:
  Isometry(int n, std::vector<uint8_t> perm, uint32_t trans);

  static Isometry identity(int n);
  static Isometry bit_flip(int n, int coord);
  static Isometry transposition(int n, int c1, int c2);

  int n() const { return n_; }
  const std::vector<uint8_t>& perm() const { return perm_; }
  uint32_t trans() const { return trans_; }

  uint32_t apply_index(uint32_t x) const;
  CubePoint apply(const CubePoint& x) const;

  bool operator==(const Isometry& o) const {
    return n_ == o.n_ && perm_ == o.perm_ && trans_ == o.trans_;
  }

 private:
  int n_;
  std::vector<uint8_t> perm_;
  uint32_t trans_;
};

// compose(g, h) is the map x |-> g(h(x)).
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);

// Image of every point index under g, as a flat table of size 2^n.
std::vector<uint32_t> action_table(const Isometry& g);

// Number of cycles of the permutation given as a table on [0, size).
int cycle_count(const std::vector<uint32_t>& table);

// The full isometry group of {0,1}^n, in a fixed deterministic order
// (permutations lexicographic, translations ascending).  Elements are
// deduplicated by their action (images of 0 and the basis points), which
// determines the whole map; the count must come out to 2^n * n!.
std::vector<Isometry> enumerate_group(int n);

uint64_t isometry_group_order(int n);

// Generating set used for invariance checks and orbit closures: adjacent
// coordinate transpositions plus every single-coordinate flip.  These
// generate the whole group.
std::vector<Isometry> group_generators(int n);

// An axis-aligned face: coordinates in free_mask range over {0,1}, the rest
// are pinned to the bits of base (base & free_mask == 0).  (free_mask, base)
// is the canonical key; enumeration is duplicate-free by construction.
struct Face {
  int n;
  uint32_t free_mask;
  uint32_t base;

  Face(int n_, uint32_t free_mask_, uint32_t base_);
  int dimension() const;

  bool operator==(const Face& o) const {
    return n == o.n && free_mask == o.free_mask && base == o.base;
  }
};

// Points of the face in chart order: chart index y sets the free coordinates
// in increasing coordinate order.  For a fixed face this order is also
// ascending point order.
std::vector<uint32_t> face_points(const Face& f);

// All r-dimensional faces of {0,1}^n; count is C(n,r) * 2^(n-r).  Order:
// free sets by ascending mask, bases ascending within a free set.
std::vector<Face> enumerate_faces(int n, int r);

// g maps faces to faces; returns the canonical (free_mask, base) image.
Face face_image(const Isometry& g, const Face& f);

// A K-coloring of the cube: values[x] is the symbol at point x, 0 <= value < k.
// Orderings compare (n, k, values-as-base-k-integer with point 0 least
// significant), matching the serialized digit encoding.
struct Config {
  int n;
  int k;
  std::vector<uint8_t> values;

  Config(int n_, int k_, std::vector<uint8_t> values_);

  std::strong_ordering operator<=>(const Config& o) const;
  bool operator==(const Config& o) const = default;
};

uint32_t config_size(int n);  // 2^n, validated

// The action on configurations is contravariant: (g . c)(x) = c(g(x)).
// Consequently act(compose(g,h), c) == act(h, act(g, c)).
Config act_on_config(const Isometry& g, const Config& c);
Config act_on_config_table(const std::vector<uint32_t>& tab, const Config& c);

// Mixed-radix index of a configuration (point 0 least significant digit).
uint64_t config_to_ordinal(const Config& c);
Config config_from_ordinal(int n, int k, uint64_t ordinal);

// Orbit closure of a single configuration under the full group, sorted.
std::vector<Config> orbit_of_config(const Config& c, uint64_t max_size = 1u << 20);

// Full orbit table of the configuration space K^{2^n}.  Requires
// k^(2^n) <= 65536.  Orbits are numbered by ascending minimal ordinal.
struct OrbitTable {
  int n;
  int k;
  std::vector<int32_t> orbit_id;  // indexed by ordinal
  std::vector<uint64_t> rep;      // minimal ordinal per orbit
  std::vector<uint64_t> size;
};

OrbitTable config_orbits(int n, int k);

// Orbit count by averaging fixed configurations over the group:
// (1/|G|) * sum_g k^{#cycles of g}.  Independent of the orbit table.
uint64_t burnside_orbit_count(int n, int k);

}  // namespace cubex
