#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boolfn.hpp"
#include "fieldfn.hpp"
#include "rng.hpp"

using namespace cubex;

namespace {

// Independent slow verdicts used as oracles for the library test, written as
// direct loops specialised to d=2.
bool naive_isometric_d2(const FieldFn& f, int r) {
  int q = f.q;
  auto at = [&](int x, int y) { return f.values[x + q * y]; };
  if (r == 1) {
    for (int u = 0; u < q; ++u)
      for (int w = u + 1; w < q; ++w)
        for (int fixed = 0; fixed < q; ++fixed) {
          if ((at(u, fixed) + at(w, fixed)) % q != 0) return false;
          if ((at(fixed, u) + at(fixed, w)) % q != 0) return false;
        }
    return true;
  }
  for (int u = 0; u < q; ++u)
    for (int w = u + 1; w < q; ++w)
      for (int s = 0; s < q; ++s)
        for (int t = s + 1; t < q; ++t)
          if ((at(u, s) + at(w, s) + at(u, t) + at(w, t)) % q != 0) return false;
  return true;
}

bool naive_affine_d2(const FieldFn& f, int r) {
  int q = f.q;
  auto at = [&](int x, int y) { return f.values[((x % q + q) % q) + q * ((y % q + q) % q)]; };
  if (r == 1) {
    for (int ax = 0; ax < q; ++ax)
      for (int ay = 0; ay < q; ++ay)
        for (int bx = 0; bx < q; ++bx)
          for (int by = 0; by < q; ++by) {
            if (bx == 0 && by == 0) continue;
            if ((at(ax, ay) + at(ax + bx, ay + by)) % q != 0) return false;
          }
    return true;
  }
  for (int ax = 0; ax < q; ++ax)
    for (int ay = 0; ay < q; ++ay)
      for (int bx = 0; bx < q; ++bx)
        for (int by = 0; by < q; ++by)
          for (int cx = 0; cx < q; ++cx)
            for (int cy = 0; cy < q; ++cy) {
              // independent iff the 2x2 determinant is nonzero
              if ((bx * cy - by * cx) % q == 0) continue;
              int s = at(ax, ay) + at(ax + bx, ay + by) + at(ax + cx, ay + cy) +
                      at(ax + bx + cx, ay + by + cy);
              if (s % q != 0) return false;
            }
  return true;
}

}  // namespace

TEST_CASE("interpolation recovers polynomial coefficients (worked examples)") {
  // f(x) = x^2 over F_3
  FieldFn sq(3, 1, {0, 1, 1});
  CHECK(field_coefficients(sq) == std::vector<uint8_t>{0, 0, 1});
  CHECK(field_degree(sq) == 2);

  // f(x) = 2x + 1 over F_3
  FieldFn lin(3, 1, {1, 0, 2});
  CHECK(field_coefficients(lin) == std::vector<uint8_t>{1, 2, 0});
  CHECK(field_degree(lin) == 1);

  CHECK(field_degree(FieldFn(3, 2, std::vector<uint8_t>(9, 0))) == -1);
  CHECK(field_degree(FieldFn(3, 2, std::vector<uint8_t>(9, 1))) == 0);
  CHECK(field_degree(FieldFn(5, 1, {0, 1, 2, 3, 4})) == 1);

  // x0 * x1^2 over F_3: fill the table from the formula, expect degree 3
  std::vector<uint8_t> vals(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) vals[x + 3 * y] = (uint8_t)(x * y * y % 3);
  CHECK(field_degree(FieldFn(3, 2, vals)) == 3);
}

TEST_CASE("coefficients reproduce the table (round trip through evaluation)") {
  CounterRng rng(21);
  for (int q : {2, 3, 5}) {
    auto s = rng.stream(q);
    for (int trial = 0; trial < 25; ++trial) {
      int d = 1 + (int)s.below(2);
      uint64_t size = field_table_size(q, d);
      std::vector<uint8_t> vals(size);
      for (auto& v : vals) v = (uint8_t)s.below(q);
      FieldFn f(q, d, vals);
      auto coeffs = field_coefficients(f);
      for (uint64_t x = 0; x < size; ++x) {
        // evaluate sum_e c_e * prod_i x_i^{e_i}
        int acc = 0;
        for (uint64_t e = 0; e < size; ++e) {
          if (coeffs[e] == 0) continue;
          int term = coeffs[e];
          uint64_t xx = x, ee = e;
          for (int i = 0; i < d; ++i) {
            int xi = (int)(xx % q), ei = (int)(ee % q);
            for (int p = 0; p < ei; ++p) term = term * xi % q;
            xx /= q;
            ee /= q;
          }
          acc = (acc + term) % q;
        }
        CHECK(acc == f.values[x]);
      }
    }
  }
}

TEST_CASE("zero-sum tests: hand-checked small cases") {
  // the zero function passes everything
  FieldFn zero(3, 2, std::vector<uint8_t>(9, 0));
  for (int r : {1, 2})
    for (auto m : {CopyMode::affine, CopyMode::isometric}) CHECK(field_face_sum_test(zero, r, m));

  // nonzero constants fail over F_3 (pair sums 2c != 0, corner sums 4c != 0)
  FieldFn cone(3, 2, std::vector<uint8_t>(9, 1));
  for (int r : {1, 2})
    for (auto m : {CopyMode::affine, CopyMode::isometric}) CHECK(!field_face_sum_test(cone, r, m));

  // f(x0,x1) = x0 fails r=1 already
  std::vector<uint8_t> proj(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) proj[x + 3 * y] = (uint8_t)x;
  CHECK(!field_face_sum_test(FieldFn(3, 2, proj), 1, CopyMode::isometric));

  CHECK_THROWS_AS(field_face_sum_test(zero, 0, CopyMode::affine), std::invalid_argument);
  CHECK_THROWS_AS(field_face_sum_test(zero, 3, CopyMode::affine), std::invalid_argument);
}

TEST_CASE("library verdicts match the naive d=2 oracles") {
  CounterRng rng(22);
  for (int q : {2, 3, 5}) {
    auto s = rng.stream(q);
    for (int trial = 0; trial < 60; ++trial) {
      uint64_t size = field_table_size(q, 2);
      std::vector<uint8_t> vals(size);
      // bias towards sparse tables so passes are not vanishingly rare
      for (auto& v : vals) v = s.below(3) == 0 ? (uint8_t)s.below(q) : 0;
      FieldFn f(q, 2, vals);
      for (int r : {1, 2}) {
        CHECK(field_face_sum_test(f, r, CopyMode::isometric) == naive_isometric_d2(f, r));
        CHECK(field_face_sum_test(f, r, CopyMode::affine) == naive_affine_d2(f, r));
      }
    }
  }
}

TEST_CASE("affine pass implies isometric pass") {
  CounterRng rng(23);
  auto s = rng.stream(0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<uint8_t> vals(9);
    for (auto& v : vals) v = s.below(4) == 0 ? (uint8_t)s.below(3) : 0;
    FieldFn f(3, 2, vals);
    for (int r : {1, 2})
      if (field_face_sum_test(f, r, CopyMode::affine))
        CHECK(field_face_sum_test(f, r, CopyMode::isometric));
  }
}

TEST_CASE("q=2 isometric verdict coincides with the cube zero-sum classes") {
  for (uint32_t v = 0; v < 256; ++v) {
    std::vector<uint8_t> vals(8);
    for (int x = 0; x < 8; ++x) vals[x] = (uint8_t)(v >> x & 1);
    FieldFn f(2, 3, vals);
    BitVec bits(3);
    bits.w[0] = v;
    BoolFn g{bits};
    for (int r : {1, 2, 3})
      CHECK(field_face_sum_test(f, r, CopyMode::isometric) == omega_member(g, r));
  }
}

TEST_CASE("exhaustive search over F_3^2: only the zero function passes") {
  // Hand derivation for d=2: the three pair-vectors delta_u + delta_w form a
  // basis of F_3^3, so vanishing of all isometric corner sums forces the whole
  // value matrix to vanish; affine mode only adds constraints.  The scan is
  // the ground truth for this and must agree.
  for (auto mode : {CopyMode::affine, CopyMode::isometric}) {
    for (int r : {1, 2}) {
      auto rep = field_search_exhaustive(3, 2, r, mode);
      CHECK(rep.scanned == 19683);
      CHECK(rep.passing == 1);
      CHECK(rep.max_passing_degree == -1);
      CHECK(rep.witness_count == 0);
      CHECK(rep.witnesses.empty());
    }
  }
}

TEST_CASE("exhaustive search over F_2: zero-sum classes are low degree") {
  // (2,2) r=1: passing = constants
  auto r22 = field_search_exhaustive(2, 2, 1, CopyMode::isometric);
  CHECK(r22.scanned == 16);
  CHECK(r22.passing == 2);
  CHECK(r22.max_passing_degree == 0);
  CHECK(r22.witness_count == 0);

  // (2,3) r=2: passing = all 16 functions of degree <= 1, in both modes
  for (auto mode : {CopyMode::affine, CopyMode::isometric}) {
    auto rep = field_search_exhaustive(2, 3, 2, mode);
    CHECK(rep.scanned == 256);
    CHECK(rep.passing == 16);
    CHECK(rep.max_passing_degree == 1);
    CHECK(rep.witness_count == 0);
  }
}

TEST_CASE("sampled search is deterministic in the seed") {
  auto a = field_search_sampled(3, 3, 2, CopyMode::isometric, 500, 99);
  auto b = field_search_sampled(3, 3, 2, CopyMode::isometric, 500, 99);
  CHECK(a.scanned == 500);
  CHECK(a.passing == b.passing);
  CHECK(a.witness_count == b.witness_count);
  CHECK(a.max_passing_degree == b.max_passing_degree);
}

TEST_CASE("search guard") {
  CHECK_THROWS_AS(field_search_exhaustive(2, 5, 1, CopyMode::affine), LimitError);
  CHECK_THROWS_AS(field_search_exhaustive(5, 2, 1, CopyMode::affine), LimitError);
}

TEST_CASE("digit serialization") {
  FieldFn f(3, 1, {2, 0, 1});
  CHECK(field_fn_to_digits(f) == "102");
  FieldFn g = field_fn_from_digits(3, 1, "102");
  CHECK(g.values == f.values);
  CHECK_THROWS_AS(field_fn_from_digits(3, 1, "10"), ParseError);
  CHECK_THROWS_AS(field_fn_from_digits(3, 1, "103"), ParseError);
}
