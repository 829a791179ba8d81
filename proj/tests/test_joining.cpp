#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "joining.hpp"

using namespace cubex;

namespace {

Config constant_config(int n, int k, uint8_t v) {
  return Config(n, k, std::vector<uint8_t>(config_size(n), v));
}

LpResult solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
               std::vector<Rational> c) {
  return solve_lp({std::move(A), std::move(b), std::move(c)});
}

}  // namespace

TEST_CASE("simplex basics") {
  // min 2x + y  st  x + y = 1  ->  (0, 1)
  auto r = solve({{1, 1}}, {1}, {2, 1});
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.objective == 1);
  CHECK(r.x == std::vector<Rational>{0, 1});

  // exactness: min x st 3x = 1
  r = solve({{3}}, {1}, {1});
  CHECK(r.objective == Rational(1, 3));

  // negative rhs is handled by the sign flip in phase 1
  r = solve({{-1}}, {-5}, {1});
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.x == std::vector<Rational>{5});

  r = solve({{1}, {1}}, {1, 2}, {1});
  CHECK(r.status == LpStatus::infeasible);

  // min -x st x - y = 0: x can grow without bound
  r = solve({{1, -1}}, {0}, {-1, 0});
  CHECK(r.status == LpStatus::unbounded);

  // duplicated constraint: phase 1 must shed the redundant row
  r = solve({{1, 1}, {1, 1}}, {1, 1}, {1, 0});
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.objective == 0);
  CHECK(r.x == std::vector<Rational>{0, 1});

  // with a flat objective Bland's rule still yields one specific vertex
  r = solve({{1, 1}}, {1}, {0, 0});
  CHECK(r.x == std::vector<Rational>{1, 0});
}

TEST_CASE("simplex input validation") {
  CHECK_THROWS_AS(solve({{1, 1}, {1}}, {1, 1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(solve({{1, 1}}, {1, 2}, {1, 1}), std::invalid_argument);
}

TEST_CASE("distance between point masses") {
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  ExactMeasure d1 = ExactMeasure::dirac(constant_config(2, 2, 1));

  CHECK(dbar_distance(d0, d0).value == 0);
  auto r = dbar_distance(d0, d1);
  CHECK(r.value == 1);  // the only coupling disagrees at every vertex
  CHECK(r.coupling.support_size() == 1);
  CHECK(r.orbits.size() == 1);
  CHECK(r.orbits[0].weight == 1);

  // half-and-half target: best coupling keeps the matching half on the diagonal
  ExactMeasure mix = convex_combine({{Rational(1, 2), d0}, {Rational(1, 2), d1}});
  CHECK(dbar_distance(d0, mix).value == Rational(1, 2));
  CHECK(dbar_distance(mix, d0).value == Rational(1, 2));
}

TEST_CASE("distance is zero on the diagonal and symmetric") {
  ExactMeasure u = orbit_uniform(Config(2, 2, {1, 0, 0, 0}));
  CHECK(dbar_distance(u, u).value == 0);

  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  auto lr = dbar_distance(u, d0), rl = dbar_distance(d0, u);
  CHECK(lr.value == rl.value);
  CHECK(lr.value == Rational(1, 4));  // single pair orbit, one vertex in four differs

  // the one-orbit program is forced: weight 1 on that orbit
  CHECK(lr.orbits.size() == 1);
  CHECK(lr.orbits[0].size == 4);
  CHECK(lr.orbits[0].cost == Rational(1, 4));
}

TEST_CASE("distance does not depend on the reference vertex") {
  ExactMeasure u1 = orbit_uniform(Config(2, 2, {1, 0, 0, 0}));
  ExactMeasure u3 = orbit_uniform(Config(2, 2, {0, 1, 1, 1}));
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  for (uint32_t v = 0; v < 4; ++v) {
    CHECK(dbar_distance(u1, d0, v).value == Rational(1, 4));
    CHECK(dbar_distance(u1, u3, v).value == Rational(1, 2));
    CHECK(dbar_distance(d0, u3, v).value == Rational(3, 4));
  }
}

TEST_CASE("unique coupling case") {
  // uniform on {01,10} against the fair constant mixture: every invariant
  // coupling is the product, so the distance is 1/2 at either vertex
  ExactMeasure single = orbit_uniform(Config(1, 2, {0, 1}));
  ExactMeasure consts =
      convex_combine({{Rational(1, 2), ExactMeasure::dirac(constant_config(1, 2, 0))},
                      {Rational(1, 2), ExactMeasure::dirac(constant_config(1, 2, 1))}});
  auto r = dbar_distance(single, consts);
  CHECK(r.value == Rational(1, 2));
  CHECK(r.coupling == product_measure(single, consts));
  CHECK(r.orbits.size() == 2);
  CHECK(r.orbits[0].weight == Rational(1, 2));
  CHECK(r.orbits[1].weight == Rational(1, 2));

  // both ergodic bands of that coupling sit at disagreement 1/2
  auto bands = coupling_bands(r.coupling, 2, 2, 0);
  REQUIRE(bands.size() == 2);
  Rational mass = 0;
  for (const auto& b : bands) {
    CHECK(b.weight == Rational(1, 2));
    CHECK(b.disagreement == Rational(1, 2));
    mass += b.weight;
  }
  CHECK(mass == 1);
}

TEST_CASE("distance sandwiched by cylinder discrepancies") {
  // TV on a single vertex <= distance <= TV on the full window
  ExactMeasure u1 = orbit_uniform(Config(2, 2, {1, 0, 0, 0}));
  ExactMeasure u3 = orbit_uniform(Config(2, 2, {0, 1, 1, 1}));
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  const Face full(2, 0b11, 0);
  auto sandwich = [&](const ExactMeasure& a, const ExactMeasure& b) {
    Rational d = dbar_distance(a, b).value;
    for (uint32_t v = 0; v < 4; ++v) CHECK(cylinder_tv(a, b, Face(2, 0, v)) <= d);
    CHECK(d <= cylinder_tv(a, b, full));
  };
  sandwich(u1, d0);
  sandwich(u1, u3);
  sandwich(d0, u3);
}

TEST_CASE("triangle inequality and coupling composition") {
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  ExactMeasure u1 = orbit_uniform(Config(2, 2, {1, 0, 0, 0}));
  ExactMeasure u3 = orbit_uniform(Config(2, 2, {0, 1, 1, 1}));

  Rational d01 = dbar_distance(d0, u1).value;   // 1/4
  Rational d13 = dbar_distance(u1, u3).value;   // 1/2
  Rational d03 = dbar_distance(d0, u3).value;   // 3/4
  CHECK(d03 <= d01 + d13);  // tight here

  // gluing optimal couplings along the middle marginal yields a coupling of
  // the outer pair whose disagreement is between d(outer) and the sum
  ExactMeasure l12 = dbar_distance(u1, d0).coupling;
  ExactMeasure l23 = dbar_distance(d0, u1).coupling;
  ExactMeasure glued = compose_couplings(l12, l23, 2, 2, 2);
  CHECK(is_invariant(glued));
  CHECK(pair_first_marginal(glued, 2, 2) == u1);
  CHECK(pair_second_marginal(glued, 2, 2) == u1);
  Rational via = coupling_disagreement(glued, 2, 2, 0);
  CHECK(via == Rational(3, 8));  // the product coupling appears here
  CHECK(dbar_distance(u1, u1).value <= via);
  CHECK(via <= dbar_distance(u1, d0).value + dbar_distance(d0, u1).value);

  // gluing requires a shared middle marginal
  CHECK_THROWS_AS(compose_couplings(l12, dbar_distance(u1, u1).coupling, 2, 2, 2),
                  std::invalid_argument);
}

TEST_CASE("coupling weights recombine to the stated value") {
  ExactMeasure u1 = orbit_uniform(Config(2, 2, {1, 0, 0, 0}));
  ExactMeasure u3 = orbit_uniform(Config(2, 2, {0, 1, 1, 1}));
  auto r = dbar_distance(u1, u3);
  Rational mass = 0, val = 0;
  for (const auto& ob : r.orbits) {
    mass += ob.weight;
    val += ob.weight * ob.cost;
  }
  CHECK(mass == 1);
  CHECK(val == r.value);
  // orbit shapes on these supports are graded by the distance between the
  // marked points: antipodal and adjacent cost 1/2, matched marks cost 1
  REQUIRE(r.orbits.size() == 3);
  CHECK(r.orbits[0].cost == Rational(1, 2));
  CHECK(r.orbits[0].size == 4);
  CHECK(r.orbits[1].cost == Rational(1, 2));
  CHECK(r.orbits[1].size == 8);
  CHECK(r.orbits[2].cost == 1);
  CHECK(r.orbits[2].size == 4);
}

TEST_CASE("invariance is required") {
  ExactMeasure skew = ExactMeasure::dirac(Config(2, 2, {1, 0, 0, 0}));
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  CHECK_THROWS_AS(dbar_distance(skew, d0), std::invalid_argument);
  CHECK_THROWS_AS(dbar_distance(d0, skew), std::invalid_argument);
  ExactMeasure d3 = ExactMeasure::dirac(constant_config(3, 2, 0));
  CHECK_THROWS_AS(dbar_distance(d0, d3), std::invalid_argument);
}

TEST_CASE("coupling program shape on point masses") {
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  ExactMeasure d1 = ExactMeasure::dirac(constant_config(2, 2, 1));
  // one support pair each: a single variable whose mass is forced to 1
  auto same = build_joining_program(d0, d0);
  REQUIRE(same.orbits.size() == 1);
  CHECK(same.orbits[0].cost == 0);
  CHECK(same.lp.A.size() == 2);
  auto cross = build_joining_program(d0, d1);
  REQUIRE(cross.orbits.size() == 1);
  CHECK(cross.orbits[0].cost == 1);
  CHECK(cross.orbits[0].size == 1);
}

TEST_CASE("pair-orbit count over the full configuration space matches the"
          " paired-alphabet orbit count") {
  // couple the uniform measure with itself: the program's variables are then
  // exactly the orbits of all 16x16 pairs, which the counting formula sees as
  // 4-symbol configurations
  std::vector<ExactMeasure::Entry> entries;
  for (uint64_t o = 0; o < 16; ++o)
    entries.emplace_back(config_from_ordinal(2, 2, o), Rational(1, 16));
  ExactMeasure uniform(2, 2, std::move(entries));
  REQUIRE(is_invariant(uniform));
  auto prog = build_joining_program(uniform, uniform);
  CHECK(prog.orbits.size() == burnside_orbit_count(2, 4));
  uint64_t pairs = 0;
  for (const auto& ob : prog.orbits) pairs += ob.size;
  CHECK(pairs == 256);
}

TEST_CASE("solver finds the same optimum after permuting program columns") {
  ExactMeasure d0 = ExactMeasure::dirac(constant_config(2, 2, 0));
  ExactMeasure d1 = ExactMeasure::dirac(constant_config(2, 2, 1));
  ExactMeasure half = convex_combine({{Rational(1, 2), d0}, {Rational(1, 2), d1}});
  ExactMeasure u1 = orbit_uniform(Config(2, 2, {1, 0, 0, 0}));
  auto prog = build_joining_program(u1, half);
  const auto base = solve_lp(prog.lp);
  REQUIRE(base.status == LpStatus::optimal);
  LinearProgram rev = prog.lp;
  const std::size_t nv = rev.c.size();
  for (std::size_t v = 0; v < nv; ++v) rev.c[v] = prog.lp.c[nv - 1 - v];
  for (std::size_t r = 0; r < rev.A.size(); ++r)
    for (std::size_t v = 0; v < nv; ++v) rev.A[r][v] = prog.lp.A[r][nv - 1 - v];
  const auto flipped = solve_lp(rev);
  REQUIRE(flipped.status == LpStatus::optimal);
  CHECK(flipped.objective == base.objective);
  CHECK(base.objective == dbar_distance(u1, half).value);
}

TEST_CASE("diagonal bands on hand-built couplings") {
  Config c0 = constant_config(2, 2, 0), c1 = constant_config(2, 2, 1);
  // a single diagonal atom: one band, no disagreement
  ExactMeasure atom = ExactMeasure::dirac(pair_configs(c0, c0));
  auto bands = coupling_bands(atom, 2, 2, 0);
  REQUIRE(bands.size() == 1);
  CHECK(bands[0].disagreement == 0);
  // two matched atoms: two bands, still fully diagonal
  ExactMeasure matched(2, 4, {{pair_configs(c0, c0), Rational(1, 2)},
                              {pair_configs(c1, c1), Rational(1, 2)}});
  bands = coupling_bands(matched, 2, 2, 0);
  REQUIRE(bands.size() == 2);
  CHECK(bands[0].disagreement == 0);
  CHECK(bands[1].disagreement == 0);
  // the optimal coupling for dbar(d0, half) splits into a diagonal band and a
  // fully-off band whose weighted sum recombines to 1/2
  ExactMeasure d0 = ExactMeasure::dirac(c0);
  ExactMeasure half = convex_combine({{Rational(1, 2), d0},
                                      {Rational(1, 2), ExactMeasure::dirac(c1)}});
  auto opt = dbar_distance(d0, half);
  REQUIRE(opt.value == Rational(1, 2));
  Rational recombined = 0;
  for (const auto& b : coupling_bands(opt.coupling, 2, 2, 0))
    recombined += b.weight * b.disagreement;
  CHECK(recombined == Rational(1, 2));
}
