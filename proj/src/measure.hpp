#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cube.hpp"
#include "rational.hpp"

namespace cubex {

// A finitely supported probability measure on the configuration space
// K^{2^n}, with exact rational weights.  Invariants: every stored weight is
// strictly positive and the total mass is exactly 1; construction rejects
// anything else (no silent renormalization anywhere).
class ExactMeasure {
 public:
  using Entry = std::pair<Config, Rational>;

  ExactMeasure(int n, int k, std::vector<Entry> entries);

  static ExactMeasure dirac(Config c);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t support_size() const { return w_.size(); }
  const std::map<Config, Rational>& entries() const { return w_; }

  // Zero for configs outside the support.
  Rational weight(const Config& c) const;

  bool operator==(const ExactMeasure& o) const = default;

 private:
  int n_;
  int k_;
  std::map<Config, Rational> w_;
};

// Mass transported along the configuration action: the weight of c moves to
// (g . c).  The map is a bijection on configs, so this is again a probability
// measure.
ExactMeasure pushforward(const ExactMeasure& mu, const Isometry& g);

// Exact equality of mu with its pushforward under every generator (adjacent
// transpositions and single-coordinate flips), which generate the group.
bool is_invariant(const ExactMeasure& mu);

// sum_i coeffs[i] * mus[i]; coefficients must be positive and sum to 1.
ExactMeasure convex_combine(const std::vector<std::pair<Rational, ExactMeasure>>& parts);

// The uniform measure on the orbit of c.
ExactMeasure orbit_uniform(const Config& c);

struct ErgodicComponent {
  Rational weight;        // mass of the orbit under mu
  Config rep;             // minimal config of the orbit
  ExactMeasure measure;   // uniform on the orbit
};

// Decompose an invariant measure as a convex combination of orbit-uniform
// measures (the extreme invariant measures at finite scale).  Components are
// ordered by their representative; weights are exact and reconstruct mu.
std::vector<ErgodicComponent> ergodic_decompose(const ExactMeasure& mu);

ExactMeasure reconstruct(const std::vector<ErgodicComponent>& parts);

// Image of mu under restriction to a face, as a measure on the face's chart
// cube (dimension = face dimension, same alphabet).
ExactMeasure marginal(const ExactMeasure& mu, const Face& face);

// Half the L1 distance between the two marginals on a face: the largest
// discrepancy mu vs nu can show on cylinder events of that face.
Rational cylinder_tv(const ExactMeasure& mu, const ExactMeasure& nu, const Face& face);

// Product pairing of alphabets: symbol a (alphabet k1) with symbol b
// (alphabet k2) becomes a*k2 + b in alphabet k1*k2.
Config pair_configs(const Config& a, const Config& b);
std::pair<Config, Config> unpair_config(const Config& c, int k1, int k2);

// Product measure on paired configs; invariant when both factors are.
ExactMeasure product_measure(const ExactMeasure& mu, const ExactMeasure& nu);

// Marginals of a measure on paired configs.
ExactMeasure pair_first_marginal(const ExactMeasure& lambda, int k1, int k2);
ExactMeasure pair_second_marginal(const ExactMeasure& lambda, int k1, int k2);

}  // namespace cubex
