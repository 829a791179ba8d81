#include "dmt.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "errors.hpp"
#include "rng.hpp"

namespace cubex {

namespace {

// Subset encodings in ascending mask order via Gosper's hack.
std::vector<uint32_t> k_subsets(int n, int k) {
  std::vector<uint32_t> out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const uint32_t limit = 1u << n;
  for (uint32_t v = (1u << k) - 1; v < limit;) {
    out.push_back(v);
    uint32_t c = v & -v, r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

void check_elements(const FiniteContext& ctx, const std::vector<uint32_t>& els,
                    const char* name) {
  if (els.empty()) throw std::invalid_argument(std::string(name) + " must be nonempty");
  for (uint32_t e : els) ctx.t_index(e);
}

}  // namespace

FiniteContext FiniteContext::hypergraph(int n, int k) {
  if (n < 1 || n > 8 || k < 1 || k > n) throw std::invalid_argument("bad hypergraph shape");
  FiniteContext ctx;
  ctx.kind = Kind::hypergraph;
  ctx.n = n;
  ctx.k = k;
  ctx.elems = k_subsets(n, k);

  std::map<uint32_t, uint32_t> idx;
  for (uint32_t i = 0; i < ctx.elems.size(); ++i) idx.emplace(ctx.elems[i], i);

  std::vector<uint8_t> p(n);
  for (int v = 0; v < n; ++v) p[v] = static_cast<uint8_t>(v);
  do {
    std::vector<uint32_t> row(ctx.elems.size());
    for (uint32_t i = 0; i < ctx.elems.size(); ++i) {
      uint32_t img = 0;
      for (int v = 0; v < n; ++v)
        if (ctx.elems[i] >> v & 1u) img |= 1u << p[v];
      row[i] = idx.at(img);
    }
    ctx.perms.push_back(p);
    ctx.act.push_back(std::move(row));
  } while (std::next_permutation(p.begin(), p.end()));
  return ctx;
}

FiniteContext FiniteContext::cube(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("bad cube shape");
  FiniteContext ctx;
  ctx.kind = Kind::cube;
  ctx.n = n;
  const uint32_t points = 1u << n;
  ctx.elems.resize(points);
  for (uint32_t x = 0; x < points; ++x) ctx.elems[x] = x;
  ctx.isos = enumerate_group(n);
  for (const auto& g : ctx.isos) {
    std::vector<uint32_t> row(points);
    for (uint32_t x = 0; x < points; ++x) row[x] = g.apply_index(x);
    ctx.act.push_back(std::move(row));
  }
  return ctx;
}

uint32_t FiniteContext::t_index(uint32_t enc) const {
  if (kind == Kind::cube) {
    if (enc >= elems.size()) throw std::invalid_argument("point outside the cube");
    return enc;
  }
  const auto it = std::lower_bound(elems.begin(), elems.end(), enc);
  if (it == elems.end() || *it != enc)
    throw std::invalid_argument("subset is not an element of the context");
  return static_cast<uint32_t>(it - elems.begin());
}

std::optional<uint32_t> dmt_witness(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                                    const std::vector<uint32_t>& J, uint32_t g1, uint32_t g2) {
  check_elements(ctx, I, "I");
  check_elements(ctx, J, "J");
  if (g1 >= ctx.order() || g2 >= ctx.order())
    throw std::invalid_argument("group element out of range");

  // The witness must map A to B setwise for every constraint pair below.
  std::vector<std::pair<uint32_t, uint32_t>> want;  // (A enc, B enc)
  for (uint32_t e : I) want.emplace_back(e, e);
  for (uint32_t e : J) {
    const uint32_t ti = ctx.t_index(e);
    want.emplace_back(ctx.elems[ctx.act[g1][ti]], ctx.elems[ctx.act[g2][ti]]);
  }

  if (ctx.kind == FiniteContext::Kind::cube) {
    // points map to points: scan the group for one satisfying every pair
    for (uint32_t xi = 0; xi < ctx.order(); ++xi) {
      bool ok = true;
      for (const auto& [a, b] : want)
        if (ctx.act[xi][a] != b) {
          ok = false;
          break;
        }
      if (ok) return xi;
    }
    return std::nullopt;
  }

  // Backtracking over vertex images.  A bijection maps subset A onto subset B
  // exactly when v in A <=> image(v) in B, so each placement is checked
  // locally and a full assignment needs no global recheck.
  const int n = ctx.n;
  std::vector<int> img(n, -1);
  uint32_t used = 0;
  int v = 0;
  while (v >= 0) {
    int w = img[v] + 1;
    if (img[v] >= 0) {
      used &= ~(1u << img[v]);
      img[v] = -1;
    }
    for (; w < n; ++w) {
      if (used >> w & 1u) continue;
      bool ok = true;
      for (const auto& [a, b] : want)
        if (((a >> v) & 1u) != ((b >> w) & 1u)) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    if (w == n) {
      --v;  // dead end: undo the previous vertex on the next pass
      continue;
    }
    img[v] = w;
    used |= 1u << w;
    if (++v == n) {
      // rank in lexicographic order (the group's enumeration order)
      uint64_t rank = 0, fact = 1;
      for (int i = 2; i <= n; ++i) fact *= i;
      uint32_t left = (1u << n) - 1;
      for (int i = 0; i < n; ++i) {
        fact /= (n - i);
        rank += fact * std::popcount(left & ((1u << img[i]) - 1));
        left &= ~(1u << img[i]);
      }
      return static_cast<uint32_t>(rank);
    }
  }
  return std::nullopt;
}

bool verify_witness(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                    const std::vector<uint32_t>& J, uint32_t g1, uint32_t g2, uint32_t xi) {
  check_elements(ctx, I, "I");
  check_elements(ctx, J, "J");
  if (g1 >= ctx.order() || g2 >= ctx.order() || xi >= ctx.order())
    throw std::invalid_argument("group element out of range");
  for (uint32_t e : I) {
    const uint32_t ti = ctx.t_index(e);
    if (ctx.act[xi][ti] != ti) return false;
  }
  for (uint32_t e : J) {
    const uint32_t ti = ctx.t_index(e);
    if (ctx.act[xi][ctx.act[g1][ti]] != ctx.act[g2][ti]) return false;
  }
  return true;
}

Rational dmt_fraction(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                      const std::vector<uint32_t>& J) {
  check_elements(ctx, I, "I");
  check_elements(ctx, J, "J");
  if ((ctx.kind == FiniteContext::Kind::hypergraph && ctx.n > 7) ||
      (ctx.kind == FiniteContext::Kind::cube && ctx.n > 4))
    throw LimitError("context too large for exhaustive mode");

  std::vector<uint32_t> i_idx, j_idx;
  for (uint32_t e : I) i_idx.push_back(ctx.t_index(e));
  for (uint32_t e : J) j_idx.push_back(ctx.t_index(e));

  // stabilizer of I, element by element
  std::vector<uint32_t> stab;
  for (uint32_t g = 0; g < ctx.order(); ++g) {
    bool fixes = true;
    for (uint32_t ti : i_idx)
      if (ctx.act[g][ti] != ti) {
        fixes = false;
        break;
      }
    if (fixes) stab.push_back(g);
  }

  // multiplicity of each restriction signature over the whole group
  std::map<std::vector<uint32_t>, uint64_t> mult;
  for (uint32_t g = 0; g < ctx.order(); ++g) {
    std::vector<uint32_t> sig(j_idx.size());
    for (std::size_t t = 0; t < j_idx.size(); ++t) sig[t] = ctx.act[g][j_idx[t]];
    ++mult[sig];
  }

  // (g1, g2) admits a witness iff their signatures share a stabilizer orbit,
  // so the pair count is the sum of squared orbit multiplicities
  BigInt pairs = 0;
  std::map<std::vector<uint32_t>, bool> seen;
  for (const auto& [sig0, m0] : mult) {
    if (seen.count(sig0)) continue;
    BigInt orbit_mass = 0;
    std::vector<std::vector<uint32_t>> queue{sig0};
    seen[sig0] = true;
    while (!queue.empty()) {
      std::vector<uint32_t> s = std::move(queue.back());
      queue.pop_back();
      orbit_mass += mult.at(s);
      for (uint32_t xi : stab) {
        std::vector<uint32_t> s2(s.size());
        for (std::size_t t = 0; t < s.size(); ++t) s2[t] = ctx.act[xi][s[t]];
        if (!seen[s2]) {
          seen[s2] = true;
          queue.push_back(std::move(s2));
        }
      }
    }
    pairs += orbit_mass * orbit_mass;
  }
  const BigInt order(ctx.order());
  return Rational(pairs) / Rational(order * order);
}

FractionSample dmt_fraction_sampled(const FiniteContext& ctx, const std::vector<uint32_t>& I,
                                    const std::vector<uint32_t>& J, uint64_t trials,
                                    uint64_t seed) {
  check_elements(ctx, I, "I");
  check_elements(ctx, J, "J");
  CounterRng rng(seed);
  FractionSample out;
  out.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    auto st = rng.stream(t);
    const uint32_t g1 = static_cast<uint32_t>(st.below(ctx.order()));
    const uint32_t g2 = static_cast<uint32_t>(st.below(ctx.order()));
    if (dmt_witness(ctx, I, J, g1, g2)) ++out.hits;
  }
  return out;
}

}  // namespace cubex
