#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cube.hpp"

namespace cubex {

// Bit-packed table indexed by cube points; bit x holds the value at point x.
// Unused bits above 2^n are kept zero as an invariant.
struct BitVec {
  int n;
  std::vector<uint64_t> w;

  explicit BitVec(int n_);

  bool get(uint32_t x) const { return w[x >> 6] >> (x & 63) & 1u; }
  void set(uint32_t x, bool v) {
    uint64_t m = 1ull << (x & 63);
    if (v)
      w[x >> 6] |= m;
    else
      w[x >> 6] &= ~m;
  }
  uint64_t count_ones() const;
  uint32_t size() const { return 1u << n; }

  bool operator==(const BitVec&) const = default;
};

// An F2-valued function on the cube, as its truth table.
struct BoolFn {
  BitVec table;

  explicit BoolFn(int n) : table(n) {}
  explicit BoolFn(BitVec t) : table(std::move(t)) {}

  int n() const { return table.n; }
  bool value(uint32_t x) const { return table.get(x); }
  bool operator==(const BoolFn&) const = default;
};

// Multilinear coefficients over F2: bit `mask` is the coefficient of the
// monomial prod_{c in mask} x_c (mask 0 = constant term).
struct AnfCoeffs {
  BitVec coeffs;

  explicit AnfCoeffs(int n) : coeffs(n) {}
  explicit AnfCoeffs(BitVec c) : coeffs(std::move(c)) {}

  int n() const { return coeffs.n; }
  bool operator==(const AnfCoeffs&) const = default;
};

// Sum coefficients over subsets: table[v] = XOR of coeffs[a] over a subseteq v.
BoolFn mobius_forward(const AnfCoeffs& c);

// Recover coefficients from the table.  Over F2 the two transforms are the
// same XOR butterfly, so forward(inverse(f)) == f identically.
AnfCoeffs mobius_inverse(const BoolFn& f);

// Largest monomial size with a nonzero coefficient; the zero function has
// degree -1 by convention.
int degree(const AnfCoeffs& c);
int degree(const BoolFn& f);

// XOR of f over the points of an axis-aligned face.
int face_sum(const BoolFn& f, const Face& face);

// True iff every r-dimensional face sums to zero.  Equivalent to
// degree(f) <= r - 1; the equivalence is pinned by exhaustive tests.
bool omega_member(const BoolFn& f, int r);

// Restriction of f to a face, as a function of the face's chart coordinates
// (free coordinates in increasing order).
BoolFn restrict_to_face(const BoolFn& f, const Face& face);

// Hamming distance from f to the closest function of degree <= r, by
// exhaustive enumeration of that space.  Requires sum_{i<=r} C(n,i) <= 20.
uint64_t rm_distance(const BoolFn& f, int r);

// Truth table of the monomial prod_{c in mask} x_c.
BoolFn monomial_fn(int n, uint32_t mask);

// Hex serialization: lowercase, fixed width ceil(2^n / 4), most significant
// digit first, bit x of the value = f(x).
std::string to_hex(const BitVec& v);
BitVec bitvec_from_hex(int n, const std::string& hex);

}  // namespace cubex
