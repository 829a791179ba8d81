#include "cube.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

namespace cubex {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("cube dimension must be in [1, " +
                                std::to_string(kMaxDim) + "], got " + std::to_string(n));
}

}  // namespace

CubePoint::CubePoint(int n_, uint32_t index_) : n(n_), index(index_) {
  check_dim(n);
  if (n < 32 && index >= (1u << n))
    throw std::invalid_argument("point index out of range for dimension " + std::to_string(n));
}

uint32_t hamming_distance(const CubePoint& a, const CubePoint& b) {
  if (a.n != b.n) throw std::invalid_argument("hamming_distance: dimension mismatch");
  return std::popcount(a.index ^ b.index);
}

uint32_t permute_bits(const std::vector<uint8_t>& perm, uint32_t x) {
  uint32_t y = 0;
  for (std::size_t c = 0; c < perm.size(); ++c)
    if (x >> c & 1u) y |= 1u << perm[c];
  return y;
}

Isometry::Isometry(int n, std::vector<uint8_t> perm, uint32_t trans)
    : n_(n), perm_(std::move(perm)), trans_(trans) {
  check_dim(n_);
  if ((int)perm_.size() != n_) throw std::invalid_argument("isometry: perm size != n");
  uint32_t seen = 0;
  for (uint8_t p : perm_) {
    if (p >= n_) throw std::invalid_argument("isometry: perm entry out of range");
    seen |= 1u << p;
  }
  if (seen != (n_ == 32 ? ~0u : (1u << n_) - 1))
    throw std::invalid_argument("isometry: perm is not a bijection");
  if (trans_ >= (1u << n_)) throw std::invalid_argument("isometry: translation out of range");
}

Isometry Isometry::identity(int n) {
  check_dim(n);
  std::vector<uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return Isometry(n, std::move(p), 0);
}

Isometry Isometry::bit_flip(int n, int coord) {
  check_dim(n);
  if (coord < 0 || coord >= n) throw std::invalid_argument("bit_flip: coordinate out of range");
  std::vector<uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return Isometry(n, std::move(p), 1u << coord);
}

Isometry Isometry::transposition(int n, int c1, int c2) {
  check_dim(n);
  if (c1 < 0 || c1 >= n || c2 < 0 || c2 >= n || c1 == c2)
    throw std::invalid_argument("transposition: bad coordinate pair");
  std::vector<uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::swap(p[c1], p[c2]);
  return Isometry(n, std::move(p), 0);
}

uint32_t Isometry::apply_index(uint32_t x) const { return permute_bits(perm_, x) ^ trans_; }

CubePoint Isometry::apply(const CubePoint& x) const {
  if (x.n != n_) throw std::invalid_argument("isometry applied to point of wrong dimension");
  return CubePoint(n_, apply_index(x.index));
}

Isometry compose(const Isometry& g, const Isometry& h) {
  if (g.n() != h.n()) throw std::invalid_argument("compose: dimension mismatch");
  // g(h(x)) = perm_g(perm_h(x) ^ trans_h) ^ trans_g
  //         = (perm_g . perm_h)(x) ^ perm_g(trans_h) ^ trans_g
  std::vector<uint8_t> p(g.n());
  for (int c = 0; c < g.n(); ++c) p[c] = g.perm()[h.perm()[c]];
  uint32_t t = permute_bits(g.perm(), h.trans()) ^ g.trans();
  return Isometry(g.n(), std::move(p), t);
}

Isometry inverse(const Isometry& g) {
  std::vector<uint8_t> p(g.n());
  for (int c = 0; c < g.n(); ++c) p[g.perm()[c]] = (uint8_t)c;
  uint32_t t = permute_bits(p, g.trans());
  return Isometry(g.n(), std::move(p), t);
}

std::vector<uint32_t> action_table(const Isometry& g) {
  std::vector<uint32_t> tab(config_size(g.n()));
  for (uint32_t x = 0; x < tab.size(); ++x) tab[x] = g.apply_index(x);
  return tab;
}

int cycle_count(const std::vector<uint32_t>& table) {
  std::vector<bool> seen(table.size(), false);
  int cycles = 0;
  for (uint32_t s = 0; s < table.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (uint32_t x = s; !seen[x]; x = table[x]) seen[x] = true;
  }
  return cycles;
}

std::vector<Isometry> enumerate_group(int n) {
  check_dim(n);
  if (n > kMaxEnumDim)
    throw LimitError("enumerate_group: dimension " + std::to_string(n) + " exceeds cap " +
                     std::to_string(kMaxEnumDim));
  std::vector<Isometry> out;
  out.reserve(isometry_group_order(n));
  // Dedupe by the action itself: images of 0 and of the basis points pin the
  // affine map, so two elements with equal keys are the same function.
  std::unordered_set<uint64_t> seen;
  seen.reserve(out.capacity() * 2);
  std::vector<uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (uint32_t t = 0; t < (1u << n); ++t) {
      Isometry g(n, p, t);
      uint64_t key = g.apply_index(0);
      for (int c = 0; c < n; ++c) {
        uint32_t img = g.apply_index(1u << c) ^ g.apply_index(0);
        if (std::popcount(img) != 1)
          throw std::logic_error("enumerate_group: action is not affine");
        key |= (uint64_t)std::countr_zero(img) << (8 + 4 * c);
      }
      if (!seen.insert(key).second)
        throw std::logic_error("enumerate_group: representation aliasing detected");
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(p.begin(), p.end()));
  if (out.size() != isometry_group_order(n))
    throw std::logic_error("enumerate_group: order mismatch");
  return out;
}

uint64_t isometry_group_order(int n) {
  check_dim(n);
  if (n > kMaxEnumDim) throw LimitError("isometry_group_order: dimension exceeds cap");
  uint64_t o = 1u << n;
  for (int i = 2; i <= n; ++i) o *= i;
  return o;
}

std::vector<Isometry> group_generators(int n) {
  check_dim(n);
  std::vector<Isometry> gens;
  for (int c = 0; c + 1 < n; ++c) gens.push_back(Isometry::transposition(n, c, c + 1));
  for (int c = 0; c < n; ++c) gens.push_back(Isometry::bit_flip(n, c));
  return gens;
}

Face::Face(int n_, uint32_t free_mask_, uint32_t base_)
    : n(n_), free_mask(free_mask_), base(base_) {
  check_dim(n);
  uint32_t all = (1u << n) - 1;
  if ((free_mask & ~all) || (base & ~all)) throw std::invalid_argument("face: mask out of range");
  if (base & free_mask) throw std::invalid_argument("face: base overlaps free coordinates");
}

int Face::dimension() const { return std::popcount(free_mask); }

std::vector<uint32_t> face_points(const Face& f) {
  int r = f.dimension();
  std::vector<int> coords;
  for (int c = 0; c < f.n; ++c)
    if (f.free_mask >> c & 1u) coords.push_back(c);
  std::vector<uint32_t> pts(1u << r);
  for (uint32_t y = 0; y < pts.size(); ++y) {
    uint32_t x = f.base;
    for (int j = 0; j < r; ++j)
      if (y >> j & 1u) x |= 1u << coords[j];
    pts[y] = x;
  }
  return pts;
}

std::vector<Face> enumerate_faces(int n, int r) {
  check_dim(n);
  if (r < 0 || r > n) throw std::invalid_argument("enumerate_faces: bad face dimension");
  std::vector<Face> out;
  // Free sets in ascending mask order = combinations via bit tricks.
  uint32_t all = (1u << n) - 1;
  auto emit_bases = [&](uint32_t free) {
    uint32_t fixed = all & ~free;
    uint32_t b = 0;
    while (true) {
      out.emplace_back(n, free, b);
      if (b == fixed) break;
      b = (b - fixed) & fixed;
    }
  };
  if (r == 0) {
    for (uint32_t b = 0; b <= all; ++b) out.emplace_back(n, 0, b);
    return out;
  }
  uint32_t free = (1u << r) - 1;
  while (free <= all) {
    emit_bases(free);
    // next mask with the same popcount (Gosper's hack)
    uint32_t c = free & -free;
    uint32_t rr = free + c;
    free = (((rr ^ free) >> 2) / c) | rr;
    if (rr > all) break;
  }
  return out;
}

Face face_image(const Isometry& g, const Face& f) {
  if (g.n() != f.n) throw std::invalid_argument("face_image: dimension mismatch");
  uint32_t free = permute_bits(g.perm(), f.free_mask);
  uint32_t base = g.apply_index(f.base) & ~free;
  return Face(f.n, free, base);
}

Config::Config(int n_, int k_, std::vector<uint8_t> values_)
    : n(n_), k(k_), values(std::move(values_)) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("config: bad dimension");
  if (k < 2 || k > 255) throw std::invalid_argument("config: alphabet size must be in [2, 255]");
  if (values.size() != (std::size_t)1 << n)
    throw std::invalid_argument("config: wrong number of values");
  for (uint8_t v : values)
    if (v >= k) throw std::invalid_argument("config: value out of alphabet");
}

std::strong_ordering Config::operator<=>(const Config& o) const {
  if (auto c = n <=> o.n; c != 0) return c;
  if (auto c = k <=> o.k; c != 0) return c;
  // base-k integer order, point 0 least significant
  return std::lexicographical_compare_three_way(values.rbegin(), values.rend(),
                                                o.values.rbegin(), o.values.rend());
}

uint32_t config_size(int n) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("config_size: bad dimension");
  return 1u << n;
}

Config act_on_config(const Isometry& g, const Config& c) {
  if (g.n() != c.n) throw std::invalid_argument("act_on_config: dimension mismatch");
  std::vector<uint8_t> out(c.values.size());
  for (uint32_t x = 0; x < out.size(); ++x) out[x] = c.values[g.apply_index(x)];
  return Config(c.n, c.k, std::move(out));
}

Config act_on_config_table(const std::vector<uint32_t>& tab, const Config& c) {
  if (tab.size() != c.values.size())
    throw std::invalid_argument("act_on_config_table: table size mismatch");
  std::vector<uint8_t> out(c.values.size());
  for (uint32_t x = 0; x < out.size(); ++x) out[x] = c.values[tab[x]];
  return Config(c.n, c.k, std::move(out));
}

uint64_t config_to_ordinal(const Config& c) {
  uint64_t v = 0;
  for (std::size_t i = c.values.size(); i-- > 0;) v = v * c.k + c.values[i];
  return v;
}

Config config_from_ordinal(int n, int k, uint64_t ordinal) {
  std::vector<uint8_t> vals(config_size(n));
  for (auto& v : vals) {
    v = (uint8_t)(ordinal % k);
    ordinal /= k;
  }
  if (ordinal != 0) throw std::invalid_argument("config_from_ordinal: ordinal out of range");
  return Config(n, k, std::move(vals));
}

std::vector<Config> orbit_of_config(const Config& c, uint64_t max_size) {
  if (c.n == 0) return {c};  // the trivial cube has no nontrivial isometries
  std::vector<std::vector<uint32_t>> gens;
  for (const auto& g : group_generators(c.n)) gens.push_back(action_table(g));
  std::set<Config> seen{c};
  std::vector<Config> queue{c};
  while (!queue.empty()) {
    Config cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& tab : gens) {
      Config img = act_on_config_table(tab, cur);
      if (seen.insert(img).second) {
        if (seen.size() > max_size) throw LimitError("orbit_of_config: orbit exceeds cap");
        queue.push_back(std::move(img));
      }
    }
  }
  return std::vector<Config>(seen.begin(), seen.end());
}

OrbitTable config_orbits(int n, int k) {
  uint64_t total = 1;
  for (uint32_t i = 0; i < config_size(n); ++i) {
    total *= (uint64_t)k;
    if (total > 65536) throw LimitError("config_orbits: k^(2^n) exceeds 65536");
  }
  std::vector<std::vector<uint32_t>> gens;
  for (const auto& g : group_generators(n)) gens.push_back(action_table(g));

  OrbitTable t;
  t.n = n;
  t.k = k;
  t.orbit_id.assign(total, -1);
  for (uint64_t start = 0; start < total; ++start) {
    if (t.orbit_id[start] != -1) continue;
    int32_t id = (int32_t)t.rep.size();
    t.rep.push_back(start);
    t.size.push_back(0);
    std::vector<uint64_t> queue{start};
    t.orbit_id[start] = id;
    while (!queue.empty()) {
      uint64_t cur = queue.back();
      queue.pop_back();
      ++t.size[id];
      Config cc = config_from_ordinal(n, k, cur);
      for (const auto& tab : gens) {
        uint64_t img = config_to_ordinal(act_on_config_table(tab, cc));
        if (t.orbit_id[img] == -1) {
          t.orbit_id[img] = id;
          queue.push_back(img);
        }
      }
    }
  }
  return t;
}

uint64_t burnside_orbit_count(int n, int k) {
  uint64_t order = isometry_group_order(n);
  // Guarded by the same cap as config_orbits: every term k^{cycles} <= 65536
  // and |G| <= 2^8 * 8!, so the sum stays well inside uint64.
  uint64_t total = 1;
  for (uint32_t i = 0; i < config_size(n); ++i) {
    total *= (uint64_t)k;
    if (total > 65536) throw LimitError("burnside_orbit_count: k^(2^n) exceeds 65536");
  }
  uint64_t sum = 0;
  for (const auto& g : enumerate_group(n)) {
    int cyc = cycle_count(action_table(g));
    uint64_t term = 1;
    for (int i = 0; i < cyc; ++i) term *= (uint64_t)k;
    sum += term;
  }
  if (sum % order != 0) throw std::logic_error("burnside_orbit_count: sum not divisible by order");
  return sum / order;
}

}  // namespace cubex
