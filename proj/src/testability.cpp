#include "testability.hpp"

#include <stdexcept>

#include "errors.hpp"

namespace cubex {

namespace {

uint64_t binom64(int n, int k) { return binomial(n, k).convert_to<uint64_t>(); }

}  // namespace

uint32_t unrank_combination(uint64_t rank, int n, int j) {
  if (j < 0 || j > n || n > kMaxDim) throw std::invalid_argument("unrank_combination: bad shape");
  if (rank >= binom64(n, j)) throw std::invalid_argument("unrank_combination: rank too large");
  uint32_t mask = 0;
  int need = j;
  for (int coord = 0; coord < n && need > 0; ++coord) {
    uint64_t skip = binom64(n - coord - 1, need);  // subsets avoiding this coordinate
    if (rank < skip) continue;
    rank -= skip;
    mask |= 1u << coord;
    --need;
  }
  return mask;
}

FaceTestResult face_test(const BoolFn& fn, int J, int r, uint64_t trials, uint64_t seed) {
  const int n = fn.n();
  if (J < 0 || J > n) throw std::invalid_argument("face_test: face dimension out of range");
  if (r < 0) throw std::invalid_argument("face_test: negative degree threshold");

  const uint64_t nfree = binom64(n, J);
  const uint64_t nbase = 1ull << (n - J);
  CounterRng rng(seed);
  FaceTestResult res;
  res.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    auto st = rng.stream(t);
    const uint32_t free_mask = unrank_combination(st.below(nfree), n, J);
    uint64_t bits = st.below(nbase);
    uint32_t base = 0;
    for (int c = 0; c < n; ++c) {
      if (free_mask >> c & 1u) continue;
      base |= static_cast<uint32_t>(bits & 1u) << c;
      bits >>= 1;
    }
    const BoolFn restr = restrict_to_face(fn, Face(n, free_mask, base));
    if (degree(restr) <= r) ++res.passes;
  }
  return res;
}

Rational exact_pass_probability(int n, int J, int r) {
  if (J < 0 || J > n) throw std::invalid_argument("face dimension out of range");
  if (r < 0 || r + 1 > n) throw std::invalid_argument("monomial degree out of range");
  return 1 - Rational(binomial(n - (r + 1), J - (r + 1))) / Rational(binomial(n, J));
}

bool within_three_sigma(uint64_t passes, uint64_t trials, const Rational& p) {
  if (passes > trials) throw std::invalid_argument("more passes than trials");
  if (p < 0 || p > 1) throw std::invalid_argument("probability out of range");
  const BigInt num = numerator(p), den = denominator(p);
  BigInt lhs = BigInt(passes) * den - num * BigInt(trials);
  lhs *= lhs;
  const BigInt rhs = 9 * num * (den - num) * BigInt(trials);
  return lhs <= rhs;
}

std::vector<NontestabilityRow> nontestability_report(int r, const std::vector<int>& n_list, int J,
                                                     uint64_t trials, uint64_t seed,
                                                     int brute_max_n) {
  std::vector<NontestabilityRow> rows;
  for (int n : n_list) {
    if (r < 0 || r + 1 > n) throw std::invalid_argument("monomial degree out of range");
    if (J > n) throw std::invalid_argument("face dimension out of range");
    const BoolFn subject = monomial_fn(n, (1u << (r + 1)) - 1);

    NontestabilityRow row;
    row.n = n;
    row.J = J;
    row.r = r;
    row.exact_p = exact_pass_probability(n, J, r);
    const FaceTestResult ft = face_test(subject, J, r, trials, seed);
    row.trials = ft.trials;
    row.passes = ft.passes;

    // Codeword space for brute force is sum_{i<=r} C(n,i) basis functions.
    BigInt dim = 0;
    for (int i = 0; i <= r; ++i) dim += binomial(n, i);
    if (n <= brute_max_n && dim <= 20) {
      row.distance = rm_distance(subject, r);
      row.distance_brute = true;
    } else {
      row.distance = 1ull << (n - r - 1);
      row.distance_brute = false;
    }
    row.rel_distance = Rational(row.distance) / Rational(BigInt(1) << n);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cubex
