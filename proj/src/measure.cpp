#include "measure.hpp"

#include <algorithm>
#include <set>

namespace cubex {

ExactMeasure::ExactMeasure(int n, int k, std::vector<Entry> entries) : n_(n), k_(k) {
  Rational total = 0;
  for (auto& [c, w] : entries) {
    if (c.n != n_ || c.k != k_)
      throw std::invalid_argument("measure: config with mismatched dimension or alphabet");
    if (w <= 0) throw std::invalid_argument("measure: weights must be strictly positive");
    auto [it, fresh] = w_.emplace(std::move(c), w);
    if (!fresh) throw std::invalid_argument("measure: duplicate config in support");
    total += w;
  }
  if (total != 1)
    throw std::invalid_argument("measure: weights sum to " + to_fraction_string(total) +
                                ", expected exactly 1");
}

ExactMeasure ExactMeasure::dirac(Config c) {
  int n = c.n, k = c.k;
  std::vector<Entry> e;
  e.emplace_back(std::move(c), Rational(1));
  return ExactMeasure(n, k, std::move(e));
}

Rational ExactMeasure::weight(const Config& c) const {
  auto it = w_.find(c);
  return it == w_.end() ? Rational(0) : it->second;
}

ExactMeasure pushforward(const ExactMeasure& mu, const Isometry& g) {
  if (g.n() != mu.n()) throw std::invalid_argument("pushforward: dimension mismatch");
  auto tab = action_table(g);
  std::vector<ExactMeasure::Entry> out;
  out.reserve(mu.support_size());
  for (const auto& [c, w] : mu.entries()) out.emplace_back(act_on_config_table(tab, c), w);
  return ExactMeasure(mu.n(), mu.k(), std::move(out));
}

bool is_invariant(const ExactMeasure& mu) {
  if (mu.n() == 0) return true;
  for (const auto& g : group_generators(mu.n()))
    if (!(pushforward(mu, g) == mu)) return false;
  return true;
}

ExactMeasure convex_combine(const std::vector<std::pair<Rational, ExactMeasure>>& parts) {
  if (parts.empty()) throw std::invalid_argument("convex_combine: empty combination");
  int n = parts.front().second.n(), k = parts.front().second.k();
  Rational total = 0;
  std::map<Config, Rational> acc;
  for (const auto& [coef, m] : parts) {
    if (coef <= 0) throw std::invalid_argument("convex_combine: coefficients must be positive");
    if (m.n() != n || m.k() != k)
      throw std::invalid_argument("convex_combine: mixed dimensions or alphabets");
    total += coef;
    for (const auto& [c, w] : m.entries()) acc[c] += coef * w;
  }
  if (total != 1) throw std::invalid_argument("convex_combine: coefficients must sum to 1");
  std::vector<ExactMeasure::Entry> out(acc.begin(), acc.end());
  return ExactMeasure(n, k, std::move(out));
}

ExactMeasure orbit_uniform(const Config& c) {
  auto orbit = orbit_of_config(c);
  Rational w(1, (unsigned long)orbit.size());
  std::vector<ExactMeasure::Entry> out;
  out.reserve(orbit.size());
  for (auto& oc : orbit) out.emplace_back(std::move(oc), w);
  return ExactMeasure(c.n, c.k, std::move(out));
}

std::vector<ErgodicComponent> ergodic_decompose(const ExactMeasure& mu) {
  if (!is_invariant(mu)) throw std::invalid_argument("ergodic_decompose: measure is not invariant");
  std::vector<ErgodicComponent> parts;
  std::set<Config> visited;
  for (const auto& [c, w] : mu.entries()) {
    if (visited.count(c)) continue;
    auto orbit = orbit_of_config(c);
    for (const auto& oc : orbit) {
      if (mu.weight(oc) != w)
        throw std::logic_error("ergodic_decompose: invariant measure uneven on an orbit");
      visited.insert(oc);
    }
    Rational uniform(1, (unsigned long)orbit.size());
    std::vector<ExactMeasure::Entry> entries;
    entries.reserve(orbit.size());
    Config rep = orbit.front();  // orbit is sorted; front is minimal
    for (auto& oc : orbit) entries.emplace_back(std::move(oc), uniform);
    parts.push_back(ErgodicComponent{w * (unsigned long)orbit.size(), std::move(rep),
                                     ExactMeasure(mu.n(), mu.k(), std::move(entries))});
  }
  // map iteration makes reps already ascend, but keep the contract explicit
  std::sort(parts.begin(), parts.end(),
            [](const ErgodicComponent& a, const ErgodicComponent& b) { return a.rep < b.rep; });
  return parts;
}

ExactMeasure reconstruct(const std::vector<ErgodicComponent>& parts) {
  std::vector<std::pair<Rational, ExactMeasure>> terms;
  terms.reserve(parts.size());
  for (const auto& p : parts) terms.emplace_back(p.weight, p.measure);
  return convex_combine(terms);
}

ExactMeasure marginal(const ExactMeasure& mu, const Face& face) {
  if (face.n != mu.n()) throw std::invalid_argument("marginal: dimension mismatch");
  auto pts = face_points(face);
  std::map<Config, Rational> acc;
  for (const auto& [c, w] : mu.entries()) {
    std::vector<uint8_t> vals(pts.size());
    for (std::size_t y = 0; y < pts.size(); ++y) vals[y] = c.values[pts[y]];
    acc[Config(face.dimension(), mu.k(), std::move(vals))] += w;
  }
  std::vector<ExactMeasure::Entry> out(acc.begin(), acc.end());
  return ExactMeasure(face.dimension(), mu.k(), std::move(out));
}

Rational cylinder_tv(const ExactMeasure& mu, const ExactMeasure& nu, const Face& face) {
  if (mu.n() != nu.n() || mu.k() != nu.k())
    throw std::invalid_argument("cylinder_tv: mismatched measures");
  ExactMeasure a = marginal(mu, face), b = marginal(nu, face);
  Rational sum = 0;
  for (const auto& [c, w] : a.entries()) sum += abs(w - b.weight(c));
  for (const auto& [c, w] : b.entries())
    if (a.weight(c) == 0) sum += w;
  return sum / 2;
}

Config pair_configs(const Config& a, const Config& b) {
  if (a.n != b.n) throw std::invalid_argument("pair_configs: dimension mismatch");
  if (a.k * b.k > 255) throw std::invalid_argument("pair_configs: paired alphabet too large");
  std::vector<uint8_t> vals(a.values.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = (uint8_t)(a.values[i] * b.k + b.values[i]);
  return Config(a.n, a.k * b.k, std::move(vals));
}

std::pair<Config, Config> unpair_config(const Config& c, int k1, int k2) {
  if (c.k != k1 * k2) throw std::invalid_argument("unpair_config: alphabet mismatch");
  std::vector<uint8_t> a(c.values.size()), b(c.values.size());
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    a[i] = (uint8_t)(c.values[i] / k2);
    b[i] = (uint8_t)(c.values[i] % k2);
  }
  return {Config(c.n, k1, std::move(a)), Config(c.n, k2, std::move(b))};
}

ExactMeasure product_measure(const ExactMeasure& mu, const ExactMeasure& nu) {
  if (mu.n() != nu.n()) throw std::invalid_argument("product_measure: dimension mismatch");
  std::vector<ExactMeasure::Entry> out;
  out.reserve(mu.support_size() * nu.support_size());
  for (const auto& [a, wa] : mu.entries())
    for (const auto& [b, wb] : nu.entries()) out.emplace_back(pair_configs(a, b), wa * wb);
  return ExactMeasure(mu.n(), mu.k() * nu.k(), std::move(out));
}

ExactMeasure pair_first_marginal(const ExactMeasure& lambda, int k1, int k2) {
  std::map<Config, Rational> acc;
  for (const auto& [c, w] : lambda.entries()) acc[unpair_config(c, k1, k2).first] += w;
  std::vector<ExactMeasure::Entry> out(acc.begin(), acc.end());
  return ExactMeasure(lambda.n(), k1, std::move(out));
}

ExactMeasure pair_second_marginal(const ExactMeasure& lambda, int k1, int k2) {
  std::map<Config, Rational> acc;
  for (const auto& [c, w] : lambda.entries()) acc[unpair_config(c, k1, k2).second] += w;
  std::vector<ExactMeasure::Entry> out(acc.begin(), acc.end());
  return ExactMeasure(lambda.n(), k2, std::move(out));
}

}  // namespace cubex
