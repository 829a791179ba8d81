#include "fieldfn.hpp"

#include <algorithm>

#include "rng.hpp"

namespace cubex {

namespace {

constexpr uint64_t kMaxTable = 1u << 20;

void check_qd(int q, int d) {
  if (!field_q_supported(q)) throw std::invalid_argument("field: q must be 2, 3 or 5");
  if (d < 1) throw std::invalid_argument("field: arity must be >= 1");
  uint64_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= (uint64_t)q;
    if (size > kMaxTable) throw LimitError("field: q^d table too large");
  }
}

// Gauss-Jordan inverse of the Vandermonde matrix V[i][j] = i^j over F_q.
std::vector<std::vector<int>> vandermonde_inverse(int q) {
  std::vector<std::vector<int>> m(q, std::vector<int>(2 * q, 0));
  for (int i = 0; i < q; ++i) {
    int p = 1;
    for (int j = 0; j < q; ++j) {
      m[i][j] = p;
      p = p * i % q;
    }
    m[i][q + i] = 1;
  }
  auto inv_mod = [&](int a) {
    for (int x = 1; x < q; ++x)
      if (a * x % q == 1) return x;
    throw std::logic_error("field: non-invertible pivot");
  };
  for (int col = 0; col < q; ++col) {
    int piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    int s = inv_mod(m[col][col]);
    for (int j = 0; j < 2 * q; ++j) m[col][j] = m[col][j] * s % q;
    for (int row = 0; row < q; ++row) {
      if (row == col || m[row][col] == 0) continue;
      int f = m[row][col];
      for (int j = 0; j < 2 * q; ++j) m[row][j] = ((m[row][j] - f * m[col][j]) % q + q) % q;
    }
  }
  std::vector<std::vector<int>> inv(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) inv[i][j] = m[i][q + j];
  return inv;
}

// Rank of a set of vectors in F_q^d (row reduction).
int rank_mod(std::vector<std::vector<int>> rows, int q, int d) {
  int rank = 0;
  for (int col = 0; col < d && rank < (int)rows.size(); ++col) {
    int piv = -1;
    for (int i = rank; i < (int)rows.size(); ++i)
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    int inv = 0;
    for (int x = 1; x < q; ++x)
      if (rows[rank][col] * x % q == 1) inv = x;
    for (int j = 0; j < d; ++j) rows[rank][j] = rows[rank][j] * inv % q;
    for (int i = 0; i < (int)rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      int f = rows[i][col];
      for (int j = 0; j < d; ++j) rows[i][j] = ((rows[i][j] - f * rows[rank][j]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

std::vector<int> decode_point(uint64_t idx, int q, int d) {
  std::vector<int> p(d);
  for (int i = 0; i < d; ++i) {
    p[i] = (int)(idx % q);
    idx /= q;
  }
  return p;
}

uint64_t encode_point(const std::vector<int>& p, int q) {
  uint64_t idx = 0;
  for (std::size_t i = p.size(); i-- > 0;) idx = idx * q + p[i];
  return idx;
}

}  // namespace

bool field_q_supported(int q) { return q == 2 || q == 3 || q == 5; }

uint64_t field_table_size(int q, int d) {
  check_qd(q, d);
  uint64_t size = 1;
  for (int i = 0; i < d; ++i) size *= (uint64_t)q;
  return size;
}

FieldFn::FieldFn(int q_, int d_, std::vector<uint8_t> values_)
    : q(q_), d(d_), values(std::move(values_)) {
  check_qd(q, d);
  if (values.size() != field_table_size(q, d))
    throw std::invalid_argument("field fn: wrong table size");
  for (uint8_t v : values)
    if (v >= q) throw std::invalid_argument("field fn: value out of field");
}

const char* copy_mode_name(CopyMode m) { return m == CopyMode::affine ? "affine" : "isometric"; }

CopyMode copy_mode_from_name(const std::string& s) {
  if (s == "affine") return CopyMode::affine;
  if (s == "isometric") return CopyMode::isometric;
  throw ParseError("unknown copy mode: '" + s + "'");
}

bool field_face_sum_test(const FieldFn& f, int r, CopyMode mode) {
  int q = f.q, d = f.d;
  if (r < 1 || r > d) throw std::invalid_argument("field test: r must be in [1, d]");
  uint64_t size = f.values.size();

  if (mode == CopyMode::isometric) {
    // choose r distinct axes, a pair of distinct values per axis, fix the rest
    std::vector<int> axes(r);
    std::vector<bool> choose(d, false);
    std::fill(choose.begin(), choose.begin() + r, true);
    do {
      int j = 0;
      for (int i = 0; i < d; ++i)
        if (choose[i]) axes[j++] = i;
      // pairs per chosen axis: (lo, hi) with lo < hi
      std::vector<std::pair<int, int>> pairs(r, {0, 1});
      auto next_pairs = [&]() {
        for (int i = 0; i < r; ++i) {
          auto& [lo, hi] = pairs[i];
          if (hi + 1 < q) {
            ++hi;
            return true;
          }
          if (lo + 2 < q) {
            ++lo;
            hi = lo + 1;
            return true;
          }
          pairs[i] = {0, 1};
        }
        return false;
      };
      do {
        // bases: all settings of the unchosen axes
        std::vector<int> pt(d, 0);
        uint64_t fixed_count = 1;
        for (int i = 0; i < d; ++i)
          if (!choose[i]) fixed_count *= q;
        for (uint64_t b = 0; b < fixed_count; ++b) {
          uint64_t bb = b;
          for (int i = 0; i < d; ++i) {
            if (choose[i]) continue;
            pt[i] = (int)(bb % q);
            bb /= q;
          }
          int sum = 0;
          for (uint32_t corner = 0; corner < (1u << r); ++corner) {
            for (int i = 0; i < r; ++i)
              pt[axes[i]] = (corner >> i & 1) ? pairs[i].second : pairs[i].first;
            sum += f.values[encode_point(pt, q)];
          }
          if (sum % q != 0) return false;
        }
      } while (next_pairs());
    } while (std::prev_permutation(choose.begin(), choose.end()));
    return true;
  }

  // affine mode: ordered tuples of independent vectors, all translations,
  // enumerated depth-first with rank pruning
  std::vector<std::vector<int>> chosen;
  std::vector<int> corner_pt(d);
  auto check_copy = [&](uint64_t a_idx) {
    std::vector<int> a = decode_point(a_idx, q, d);
    int sum = 0;
    for (uint32_t corner = 0; corner < (1u << r); ++corner) {
      for (int i = 0; i < d; ++i) corner_pt[i] = a[i];
      for (int j = 0; j < r; ++j)
        if (corner >> j & 1)
          for (int i = 0; i < d; ++i) corner_pt[i] = (corner_pt[i] + chosen[j][i]) % q;
      sum += f.values[encode_point(corner_pt, q)];
    }
    return sum % q == 0;
  };
  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == r) {
      for (uint64_t a = 0; a < size; ++a)
        if (!check_copy(a)) return false;
      return true;
    }
    for (uint64_t v = 1; v < size; ++v) {
      chosen.push_back(decode_point(v, q, d));
      if (rank_mod(chosen, q, d) == depth + 1) {
        if (!self(self, depth + 1)) return false;
      }
      chosen.pop_back();
    }
    return true;
  };
  return rec(rec, 0);
}

std::vector<uint8_t> field_coefficients(const FieldFn& f) {
  int q = f.q, d = f.d;
  auto vinv = vandermonde_inverse(q);
  std::vector<int> cur(f.values.begin(), f.values.end());
  std::vector<int> next(cur.size());
  uint64_t stride = 1;
  for (int axis = 0; axis < d; ++axis) {
    // contract vinv against axis `axis`
    for (uint64_t base = 0; base < cur.size(); ++base) {
      uint64_t digit = base / stride % q;
      uint64_t rest = base - digit * stride;
      int acc = 0;
      for (int j = 0; j < q; ++j) acc += vinv[(int)digit][j] * cur[rest + (uint64_t)j * stride];
      next[base] = acc % q;
    }
    std::swap(cur, next);
    stride *= q;
  }
  return std::vector<uint8_t>(cur.begin(), cur.end());
}

int field_degree(const FieldFn& f) {
  auto coeffs = field_coefficients(f);
  int best = -1;
  for (uint64_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e] == 0) continue;
    uint64_t ee = e;
    int total = 0;
    for (int i = 0; i < f.d; ++i) {
      total += (int)(ee % f.q);
      ee /= f.q;
    }
    best = std::max(best, total);
  }
  return best;
}

namespace {

constexpr std::size_t kWitnessCap = 16;

FieldSearchReport run_search(int q, int d, int r, CopyMode mode, bool exhaustive,
                             uint64_t count, uint64_t seed) {
  FieldSearchReport rep;
  rep.q = q;
  rep.d = d;
  rep.r = r;
  rep.mode = mode;
  rep.exhaustive = exhaustive;
  uint64_t table = field_table_size(q, d);
  CounterRng rng(seed);
  std::vector<uint8_t> vals(table);
  for (uint64_t i = 0; i < count; ++i) {
    if (exhaustive) {
      uint64_t v = i;
      for (uint64_t x = 0; x < table; ++x) {
        vals[x] = (uint8_t)(v % q);
        v /= q;
      }
    } else {
      auto s = rng.stream(i);
      for (uint64_t x = 0; x < table; ++x) vals[x] = (uint8_t)s.below(q);
    }
    FieldFn f(q, d, vals);
    if (!field_face_sum_test(f, r, mode)) continue;
    ++rep.passing;
    int deg = field_degree(f);
    rep.max_passing_degree = std::max(rep.max_passing_degree, deg);
    if (deg > r) {
      ++rep.witness_count;
      if (rep.witnesses.size() < kWitnessCap) rep.witnesses.push_back(f);
    }
  }
  rep.scanned = count;
  return rep;
}

}  // namespace

FieldSearchReport field_search_exhaustive(int q, int d, int r, CopyMode mode, uint64_t max_scan) {
  uint64_t table = field_table_size(q, d);
  // total function count is q^(q^d); refuse anything beyond the guard
  uint64_t total = 1;
  for (uint64_t i = 0; i < table; ++i) {
    if (total > max_scan / q) throw LimitError("field_search: q^(q^d) exceeds scan guard");
    total *= (uint64_t)q;
  }
  return run_search(q, d, r, mode, true, total, 0);
}

FieldSearchReport field_search_sampled(int q, int d, int r, CopyMode mode, uint64_t trials,
                                       uint64_t seed) {
  return run_search(q, d, r, mode, false, trials, seed);
}

std::string field_fn_to_digits(const FieldFn& f) {
  static const char* digits = "0123456789";
  std::string s(f.values.size(), '0');
  for (std::size_t i = 0; i < f.values.size(); ++i) s[s.size() - 1 - i] = digits[f.values[i]];
  return s;
}

FieldFn field_fn_from_digits(int q, int d, const std::string& s) {
  uint64_t table = field_table_size(q, d);
  if (s.size() != table) throw ParseError("field fn: expected exactly " + std::to_string(table) + " digits");
  std::vector<uint8_t> vals(table);
  for (std::size_t i = 0; i < table; ++i) {
    char ch = s[s.size() - 1 - i];
    if (ch < '0' || ch >= '0' + q) throw ParseError("field fn: digit out of field");
    vals[i] = (uint8_t)(ch - '0');
  }
  return FieldFn(q, d, std::move(vals));
}

}  // namespace cubex
