#include "joining.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace cubex {

Rational coupling_disagreement(const ExactMeasure& lambda, int k1, int k2, uint32_t vertex) {
  if (vertex >= config_size(lambda.n())) throw std::invalid_argument("vertex out of range");
  Rational total = 0;
  for (const auto& [c, w] : lambda.entries()) {
    auto [a, b] = unpair_config(c, k1, k2);
    if (a.values[vertex] != b.values[vertex]) total += w;
  }
  return total;
}

std::vector<DiagonalBand> coupling_bands(const ExactMeasure& lambda, int k1, int k2,
                                         uint32_t vertex) {
  std::vector<DiagonalBand> out;
  Rational recombined = 0;
  for (const auto& comp : ergodic_decompose(lambda)) {
    out.push_back({comp.weight, comp.rep, coupling_disagreement(comp.measure, k1, k2, vertex)});
    recombined += out.back().weight * out.back().disagreement;
  }
  if (recombined != coupling_disagreement(lambda, k1, k2, vertex))
    throw std::logic_error("band disagreements must average to the total");
  return out;
}

JoiningProgram build_joining_program(const ExactMeasure& mu, const ExactMeasure& nu,
                                     uint32_t vertex, uint64_t max_pairs) {
  if (mu.n() != nu.n() || mu.k() != nu.k())
    throw std::invalid_argument("coupling needs measures on the same space");
  const int n = mu.n();
  if (vertex >= config_size(n)) throw std::invalid_argument("vertex out of range");
  if (!is_invariant(mu) || !is_invariant(nu))
    throw std::invalid_argument("couplings here are between invariant measures");

  std::vector<Config> sa, sb;
  std::vector<Rational> wa, wb;
  for (const auto& [c, w] : mu.entries()) sa.push_back(c), wa.push_back(w);
  for (const auto& [c, w] : nu.entries()) sb.push_back(c), wb.push_back(w);
  const uint64_t na = sa.size(), nb = sb.size();
  if (na > max_pairs / (nb ? nb : 1)) throw LimitError("coupling support too large");

  // Index lookup inside each support; invariance guarantees closure.
  std::map<Config, uint32_t> ia, ib;
  for (uint32_t i = 0; i < na; ++i) ia.emplace(sa[i], i);
  for (uint32_t j = 0; j < nb; ++j) ib.emplace(sb[j], j);

  const auto gens = group_generators(n);
  std::vector<std::vector<uint32_t>> ga(gens.size(), std::vector<uint32_t>(na));
  std::vector<std::vector<uint32_t>> gb(gens.size(), std::vector<uint32_t>(nb));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto tab = action_table(gens[g]);
    for (uint32_t i = 0; i < na; ++i) ga[g][i] = ia.at(act_on_config_table(tab, sa[i]));
    for (uint32_t j = 0; j < nb; ++j) gb[g][j] = ib.at(act_on_config_table(tab, sb[j]));
  }

  // Diagonal orbits on supp(mu) x supp(nu); pairs scanned in ascending order,
  // so each orbit's first pair is its minimal one.
  const uint64_t total = na * nb;
  std::vector<int32_t> orbit_of(total, -1);
  std::vector<CouplingOrbit> orbits;
  std::vector<std::vector<uint64_t>> cnt_a, cnt_b;  // per orbit, per support index
  for (uint64_t start = 0; start < total; ++start) {
    if (orbit_of[start] >= 0) continue;
    const int32_t id = static_cast<int32_t>(orbits.size());
    CouplingOrbit ob;
    ob.rep = pair_configs(sa[start / nb], sb[start % nb]);
    ob.cost = 0;
    ob.weight = 0;
    uint64_t disagree = 0;
    cnt_a.emplace_back(na, 0);
    cnt_b.emplace_back(nb, 0);
    std::vector<uint64_t> stack{start};
    orbit_of[start] = id;
    while (!stack.empty()) {
      const uint64_t p = stack.back();
      stack.pop_back();
      const uint32_t i = static_cast<uint32_t>(p / nb), j = static_cast<uint32_t>(p % nb);
      ++ob.size;
      ++cnt_a[id][i];
      ++cnt_b[id][j];
      if (sa[i].values[vertex] != sb[j].values[vertex]) ++disagree;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const uint64_t q = uint64_t{ga[g][i]} * nb + gb[g][j];
        if (orbit_of[q] < 0) {
          orbit_of[q] = id;
          stack.push_back(q);
        }
      }
    }
    ob.cost = Rational(disagree) / ob.size;
    orbits.push_back(std::move(ob));
  }

  // One variable per orbit (mass of the orbit), one constraint per support
  // config of either side pinning the coupling's marginals.
  const std::size_t nv = orbits.size();
  JoiningProgram prog;
  prog.n = n;
  prog.k = mu.k();
  prog.vertex = vertex;
  prog.mu_support = std::move(sa);
  prog.nu_support = std::move(sb);
  prog.orbit_of = std::move(orbit_of);
  prog.lp.A.assign(na + nb, std::vector<Rational>(nv, Rational(0)));
  prog.lp.b.resize(na + nb);
  prog.lp.c.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    prog.lp.c[v] = orbits[v].cost;
    for (uint32_t i = 0; i < na; ++i)
      if (cnt_a[v][i]) prog.lp.A[i][v] = Rational(cnt_a[v][i]) / orbits[v].size;
    for (uint32_t j = 0; j < nb; ++j)
      if (cnt_b[v][j]) prog.lp.A[na + j][v] = Rational(cnt_b[v][j]) / orbits[v].size;
  }
  for (uint32_t i = 0; i < na; ++i) prog.lp.b[i] = wa[i];
  for (uint32_t j = 0; j < nb; ++j) prog.lp.b[na + j] = wb[j];
  prog.orbits = std::move(orbits);
  return prog;
}

DbarResult dbar_distance(const ExactMeasure& mu, const ExactMeasure& nu, uint32_t vertex,
                         uint64_t max_pairs) {
  JoiningProgram prog = build_joining_program(mu, nu, vertex, max_pairs);
  const int k = prog.k;
  const uint64_t nb = prog.nu_support.size();
  const uint64_t total = prog.mu_support.size() * nb;

  const LpResult res = solve_lp(prog.lp);
  if (res.status != LpStatus::optimal)
    throw std::logic_error("coupling program must be solvable");  // product measure is feasible

  DbarResult out;
  out.value = res.objective;
  std::vector<ExactMeasure::Entry> entries;
  for (uint64_t p = 0; p < total; ++p) {
    const auto& ob = prog.orbits[prog.orbit_of[p]];
    const Rational w = res.x[prog.orbit_of[p]];
    if (w != 0)
      entries.emplace_back(pair_configs(prog.mu_support[p / nb], prog.nu_support[p % nb]),
                           w / ob.size);
  }
  out.coupling = ExactMeasure(prog.n, k * k, std::move(entries));
  for (std::size_t v = 0; v < prog.orbits.size(); ++v) prog.orbits[v].weight = res.x[v];
  out.orbits = std::move(prog.orbits);

  if (pair_first_marginal(out.coupling, k, k) != mu ||
      pair_second_marginal(out.coupling, k, k) != nu || !is_invariant(out.coupling))
    throw std::logic_error("optimal coupling failed validation");
  return out;
}

ExactMeasure compose_couplings(const ExactMeasure& lambda12, const ExactMeasure& lambda23,
                               int k1, int k2, int k3) {
  if (lambda12.n() != lambda23.n()) throw std::invalid_argument("dimension mismatch");
  if (lambda12.k() != k1 * k2 || lambda23.k() != k2 * k3)
    throw std::invalid_argument("alphabet mismatch");
  const ExactMeasure mid = pair_second_marginal(lambda12, k1, k2);
  if (mid != pair_first_marginal(lambda23, k2, k3))
    throw std::invalid_argument("couplings do not share the middle marginal");

  std::map<Config, std::vector<std::pair<Config, Rational>>> by_first;
  for (const auto& [c, w] : lambda23.entries()) {
    auto [b, cc] = unpair_config(c, k2, k3);
    by_first[b].emplace_back(cc, w);
  }

  std::map<Config, Rational> acc;
  for (const auto& [c, w12] : lambda12.entries()) {
    auto [a, b] = unpair_config(c, k1, k2);
    const Rational mb = mid.weight(b);
    for (const auto& [cc, w23] : by_first.at(b)) acc[pair_configs(a, cc)] += w12 * w23 / mb;
  }
  std::vector<ExactMeasure::Entry> entries(acc.begin(), acc.end());
  return ExactMeasure(lambda12.n(), k1 * k3, std::move(entries));
}

}  // namespace cubex
