#include "constructions.hpp"

#include <bit>

namespace cubex {

ExactMeasure affine_form_measure(int n, const Rational& p) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("affine_form_measure: bad dimension");
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("affine_form_measure: p must satisfy 0 < p < 1");
  uint64_t support = (uint64_t)2 << n;
  if ((uint64_t)config_size(n) * support > (1u << 26))
    throw LimitError("affine_form_measure: support too large");
  std::vector<ExactMeasure::Entry> entries;
  entries.reserve(support);
  Rational q = 1 - p;
  for (uint32_t z = 0; z < config_size(n); ++z) {
    Rational w = Rational(1, 2);
    for (int c = 0; c < n; ++c) w *= (z >> c & 1u) ? p : q;
    for (uint32_t eta = 0; eta < 2; ++eta) {
      std::vector<uint8_t> vals(config_size(n));
      for (uint32_t x = 0; x < vals.size(); ++x)
        vals[x] = (uint8_t)((std::popcount(x & z) + eta) & 1);
      entries.emplace_back(Config(n, 2, std::move(vals)), w);
    }
  }
  ExactMeasure mu(n, 2, std::move(entries));
  if (mu.support_size() != support)
    throw std::logic_error("affine_form_measure: coefficient pairs collided");
  return mu;
}

Rational affine_form_allzero_marginal(int m, const Rational& p) {
  if (m < 0) throw std::invalid_argument("affine_form_allzero_marginal: bad face dimension");
  Rational r(1, 2);
  for (int i = 0; i < m; ++i) r *= 1 - p;
  return r;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors_) : factors(std::move(factors_)) {
  if (factors.empty()) throw std::invalid_argument("abelian group: no factors");
  for (int m : factors) {
    if (m < 2) throw std::invalid_argument("abelian group: factors must be >= 2");
    order_ *= m;
    if (order_ > 10000) throw LimitError("abelian group: order exceeds 10000");
  }
}

int FiniteAbelianGroup::add(int a, int b) const {
  if (a < 0 || a >= order_ || b < 0 || b >= order_)
    throw std::invalid_argument("abelian group: element out of range");
  int out = 0, scale = 1;
  for (int m : factors) {
    out += (a % m + b % m) % m * scale;
    a /= m;
    b /= m;
    scale *= m;
  }
  return out;
}

int FiniteAbelianGroup::neg(int a) const {
  if (a < 0 || a >= order_) throw std::invalid_argument("abelian group: element out of range");
  int out = 0, scale = 1;
  for (int m : factors) {
    out += (m - a % m) % m * scale;
    a /= m;
    scale *= m;
  }
  return out;
}

void validate_step_distribution(const FiniteAbelianGroup& U, const StepDistribution& nu) {
  if ((int)nu.size() != U.order())
    throw std::invalid_argument("step distribution: size must equal the group order");
  Rational total = 0;
  for (const Rational& w : nu) {
    if (w < 0) throw std::invalid_argument("step distribution: negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("step distribution: weights must sum to exactly 1");
}

bool check_nu_symmetry(const FiniteAbelianGroup& U, const StepDistribution& nu) {
  validate_step_distribution(U, nu);
  int m = U.order();
  // push (uniform g, nu-step z) through (g, g+z) and through (g+z, g)
  std::vector<Rational> fwd((std::size_t)m * m, Rational(0));
  std::vector<Rational> bwd((std::size_t)m * m, Rational(0));
  Rational unif(1, (unsigned)m);
  for (int g = 0; g < m; ++g)
    for (int z = 0; z < m; ++z) {
      if (nu[z] == 0) continue;
      Rational w = unif * nu[z];
      fwd[(std::size_t)g * m + U.add(g, z)] += w;
      bwd[(std::size_t)U.add(g, z) * m + g] += w;
    }
  return fwd == bwd;
}

ExactMeasure random_walk_measure(const FiniteAbelianGroup& U, const StepDistribution& nu, int n,
                                 uint64_t max_tuples) {
  validate_step_distribution(U, nu);
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("random_walk_measure: bad dimension");
  if (U.order() > 255) throw LimitError("random_walk_measure: alphabet exceeds config limit");
  std::vector<int> steps;  // support of nu
  for (int z = 0; z < U.order(); ++z)
    if (nu[z] != 0) steps.push_back(z);
  uint64_t tuples = U.order();
  for (int i = 0; i < n; ++i) {
    tuples *= steps.size();
    if (tuples > max_tuples) throw LimitError("random_walk_measure: tuple count exceeds guard");
  }

  std::map<Config, Rational> acc;
  Rational unif(1, (unsigned)U.order());
  std::vector<int> pick(n, 0);
  std::vector<uint8_t> vals(config_size(n));
  while (true) {
    for (int g0 = 0; g0 < U.order(); ++g0) {
      Rational w = unif;
      for (int i = 0; i < n; ++i) w *= nu[steps[pick[i]]];
      // symbol at x: g0 plus the steps of coordinates present in x
      for (uint32_t x = 0; x < vals.size(); ++x) {
        int s = g0;
        for (int i = 0; i < n; ++i)
          if (x >> i & 1u) s = U.add(s, steps[pick[i]]);
        vals[x] = (uint8_t)s;
      }
      acc[Config(n, U.order(), vals)] += w;
    }
    int i = 0;
    while (i < n && ++pick[i] == (int)steps.size()) pick[i++] = 0;
    if (i == n) break;
  }
  std::vector<ExactMeasure::Entry> entries(acc.begin(), acc.end());
  return ExactMeasure(n, U.order(), std::move(entries));
}

Config psi_combine(const Config& eta, const Config& w1, const Config& w2) {
  if (eta.k != 2) throw std::invalid_argument("psi_combine: selector must be binary");
  if (eta.n != w1.n || eta.n != w2.n || w1.k != w2.k)
    throw std::invalid_argument("psi_combine: mismatched configs");
  std::vector<uint8_t> vals(eta.values.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = eta.values[i] ? w2.values[i] : w1.values[i];
  return Config(w1.n, w1.k, std::move(vals));
}

ExactMeasure psi_pushforward(const ExactMeasure& mu0, const ExactMeasure& lambda, int k) {
  if (mu0.k() != 2) throw std::invalid_argument("psi_pushforward: selector measure must be binary");
  if (lambda.k() != k * k) throw std::invalid_argument("psi_pushforward: lambda alphabet mismatch");
  if (mu0.n() != lambda.n()) throw std::invalid_argument("psi_pushforward: dimension mismatch");
  std::map<Config, Rational> acc;
  for (const auto& [eta, we] : mu0.entries())
    for (const auto& [pair, wp] : lambda.entries()) {
      auto [w1, w2] = unpair_config(pair, k, k);
      acc[psi_combine(eta, w1, w2)] += we * wp;
    }
  std::vector<ExactMeasure::Entry> entries(acc.begin(), acc.end());
  return ExactMeasure(mu0.n(), k, std::move(entries));
}

MixtureReport mixture_experiment(const ExactMeasure& mu1, const ExactMeasure& mu2,
                                 const Rational& p, const Face& window,
                                 uint64_t max_assignments) {
  if (mu1.n() != mu2.n() || mu1.k() != mu2.k())
    throw std::invalid_argument("mixture_experiment: mismatched inputs");
  if (window.n != mu1.n()) throw std::invalid_argument("mixture_experiment: window dimension");
  if (!is_invariant(mu1) || !is_invariant(mu2))
    throw std::invalid_argument("mixture_experiment: inputs must be invariant");
  int n = mu1.n(), k = mu1.k();

  MixtureReport rep;
  rep.n = n;
  rep.k = k;
  rep.p = p;
  rep.window = window;

  // the coupling: heaviest ergodic component of the product, smallest rep on ties
  ExactMeasure prod = product_measure(mu1, mu2);
  auto comps = ergodic_decompose(prod);
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].weight > comps[best].weight) best = i;
  const ErgodicComponent& lambda = comps[best];
  rep.lambda_rep = lambda.rep;
  rep.lambda_weight = lambda.weight;
  rep.lambda_is_joining = pair_first_marginal(lambda.measure, k, k) == mu1 &&
                          pair_second_marginal(lambda.measure, k, k) == mu2;

  ExactMeasure mu0 = affine_form_measure(n, p);
  rep.combined = psi_pushforward(mu0, lambda.measure, k);
  rep.combined_invariant = is_invariant(rep.combined);
  rep.combined_components = ergodic_decompose(rep.combined).size();

  int m = window.dimension();
  rep.epsilon = 1;
  Rational keep = 1;
  for (int i = 0; i < m; ++i) keep *= 1 - p;
  rep.epsilon -= keep;
  rep.bound = 2 * rep.epsilon;

  // cylinder masses on the window for all three measures
  ExactMeasure m0 = marginal(rep.combined, window);
  ExactMeasure m1 = marginal(mu1, window);
  ExactMeasure m2 = marginal(mu2, window);
  uint64_t assignments = 1;
  for (uint32_t i = 0; i < config_size(m); ++i) {
    assignments *= (uint64_t)k;
    if (assignments > max_assignments)
      throw LimitError("mixture_experiment: assignment table exceeds guard");
  }
  rep.max_deviation = 0;
  for (uint64_t a = 0; a < assignments; ++a) {
    Config ca = config_from_ordinal(m, k, a);
    Rational dev = abs(m0.weight(ca) - (m1.weight(ca) + m2.weight(ca)) / 2);
    if (dev > rep.max_deviation) rep.max_deviation = dev;
    rep.deviations.emplace_back(std::move(ca), std::move(dev));
  }
  rep.within_bound = rep.max_deviation <= rep.bound;
  return rep;
}

}  // namespace cubex
