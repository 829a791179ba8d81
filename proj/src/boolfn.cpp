#include "boolfn.hpp"

#include <bit>

#include "rational.hpp"

namespace cubex {

BitVec::BitVec(int n_) : n(n_) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("bitvec: bad dimension");
  w.assign(((std::size_t)1 << n) + 63 >> 6, 0);
}

uint64_t BitVec::count_ones() const {
  uint64_t c = 0;
  for (uint64_t word : w) c += std::popcount(word);
  return c;
}

namespace {

// In-place XOR butterfly: after level c, entry v accumulates the XOR of all
// entries a with a agreeing with v outside coordinate c and a_c <= v_c.
// Running all levels sums over subsets; the map is an involution over F2.
void butterfly(BitVec& v) {
  static constexpr uint64_t kLow[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
      0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
  };
  for (int c = 0; c < v.n; ++c) {
    if (c < 6) {
      int sh = 1 << c;
      for (auto& word : v.w) word ^= (word & kLow[c]) << sh;
    } else {
      std::size_t stride = (std::size_t)1 << (c - 6);
      for (std::size_t base = 0; base < v.w.size(); base += 2 * stride)
        for (std::size_t i = 0; i < stride; ++i)
          v.w[base + stride + i] ^= v.w[base + i];
    }
  }
}

}  // namespace

BoolFn mobius_forward(const AnfCoeffs& c) {
  BitVec t = c.coeffs;
  butterfly(t);
  return BoolFn(std::move(t));
}

AnfCoeffs mobius_inverse(const BoolFn& f) {
  BitVec c = f.table;
  butterfly(c);
  return AnfCoeffs(std::move(c));
}

int degree(const AnfCoeffs& c) {
  int best = -1;
  for (uint32_t mask = 0; mask < c.coeffs.size(); ++mask)
    if (c.coeffs.get(mask)) best = std::max(best, (int)std::popcount(mask));
  return best;
}

int degree(const BoolFn& f) { return degree(mobius_inverse(f)); }

int face_sum(const BoolFn& f, const Face& face) {
  if (f.n() != face.n) throw std::invalid_argument("face_sum: dimension mismatch");
  int s = 0;
  for (uint32_t x : face_points(face)) s ^= (int)f.value(x);
  return s;
}

bool omega_member(const BoolFn& f, int r) {
  if (r < 1 || r > f.n()) throw std::invalid_argument("omega_member: r out of range");
  for (const Face& face : enumerate_faces(f.n(), r))
    if (face_sum(f, face)) return false;
  return true;
}

BoolFn restrict_to_face(const BoolFn& f, const Face& face) {
  if (f.n() != face.n) throw std::invalid_argument("restrict_to_face: dimension mismatch");
  auto pts = face_points(face);
  BitVec out(face.dimension());
  for (uint32_t y = 0; y < pts.size(); ++y) out.set(y, f.value(pts[y]));
  return BoolFn(std::move(out));
}

BoolFn monomial_fn(int n, uint32_t mask) {
  BitVec t(n);
  if (mask >= t.size()) throw std::invalid_argument("monomial_fn: mask out of range");
  for (uint32_t x = 0; x < t.size(); ++x)
    if ((x & mask) == mask) t.set(x, true);
  return BoolFn(std::move(t));
}

uint64_t rm_distance(const BoolFn& f, int r) {
  int n = f.n();
  if (r < 0) return f.table.count_ones();  // empty code: distance to zero only
  BigInt dim_big = 0;
  for (int i = 0; i <= r && i <= n; ++i) dim_big += binomial(n, i);
  if (dim_big > 20) throw LimitError("rm_distance: coefficient space dimension exceeds 20");
  int dim = (int)dim_big;

  // Basis tables for all monomials of size <= r, ascending mask order.
  std::vector<BitVec> basis;
  basis.reserve(dim);
  for (uint32_t mask = 0; mask < config_size(n); ++mask)
    if (std::popcount(mask) <= r) basis.push_back(monomial_fn(n, mask).table);

  // Gray-code walk over all 2^dim codewords, tracking f ^ codeword.
  BitVec cur = f.table;
  uint64_t best = cur.count_ones();
  for (uint64_t i = 1; i < (1ull << dim); ++i) {
    int j = std::countr_zero(i);
    for (std::size_t wi = 0; wi < cur.w.size(); ++wi) cur.w[wi] ^= basis[j].w[wi];
    best = std::min(best, cur.count_ones());
    if (best == 0) break;
  }
  return best;
}

std::string to_hex(const BitVec& v) {
  static const char* digits = "0123456789abcdef";
  std::size_t width = (v.size() + 3) / 4;
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    uint32_t nib = (uint32_t)(v.w[i >> 4] >> (4 * (i & 15)) & 0xf);
    s[width - 1 - i] = digits[nib];
  }
  return s;
}

BitVec bitvec_from_hex(int n, const std::string& hex) {
  BitVec v(n);
  std::size_t width = (v.size() + 3) / 4;
  if (hex.size() != width)
    throw ParseError("hex table: expected exactly " + std::to_string(width) +
                     " digits for dimension " + std::to_string(n));
  for (std::size_t i = 0; i < width; ++i) {
    char ch = hex[width - 1 - i];
    uint32_t nib;
    if (ch >= '0' && ch <= '9')
      nib = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      nib = ch - 'a' + 10;
    else
      throw ParseError("hex table: invalid digit");
    v.w[i >> 4] |= (uint64_t)nib << (4 * (i & 15));
  }
  // spare bits beyond 2^n must be zero (n < 2 leaves headroom in the last digit)
  for (uint32_t x = v.size(); x < 64 * v.w.size() && x < 4 * width; ++x)
    if (v.get(x)) throw ParseError("hex table: value bits beyond 2^n must be zero");
  return v;
}

}  // namespace cubex
