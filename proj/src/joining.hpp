#pragma once

#include "measure.hpp"
#include "simplex.hpp"

namespace cubex {

// One orbit of the diagonal action on supp(mu) x supp(nu).  Any invariant
// coupling is constant on such orbits, so these are the LP variables.
struct CouplingOrbit {
  Config rep{0, 2, {0}};  // minimal paired config of the orbit
  uint64_t size = 0;
  Rational cost;       // fraction of the orbit's pairs disagreeing at the vertex
  Rational weight;     // optimal mass assigned to the orbit
};

// The orbit-reduced coupling program.  Variables are pair-orbit masses; the
// first |supp(mu)| constraint rows pin the first marginal, the next
// |supp(nu)| rows the second; the objective is disagreement mass at the
// reference vertex.  Feasible weight vectors correspond exactly to invariant
// couplings of (mu, nu).
struct JoiningProgram {
  int n = 0;
  int k = 2;
  uint32_t vertex = 0;
  std::vector<Config> mu_support, nu_support;  // constraint-row labels
  std::vector<CouplingOrbit> orbits;           // one LP variable each
  std::vector<int32_t> orbit_of;               // pair i*|nu_support|+j -> orbit
  LinearProgram lp;
};

JoiningProgram build_joining_program(const ExactMeasure& mu, const ExactMeasure& nu,
                                     uint32_t vertex = 0, uint64_t max_pairs = 1u << 20);

struct DbarResult {
  Rational value;                    // the distance
  ExactMeasure coupling;             // optimal invariant coupling realising it
  std::vector<CouplingOrbit> orbits; // full program data, weights filled in

  DbarResult() : coupling(ExactMeasure::dirac(Config(0, 2, {0}))) {}
};

// Exact minimal disagreement probability at a reference vertex over all
// invariant couplings of mu and nu: the optimum of the program above.  Both
// measures must be invariant (the LP is then always feasible: the product
// measure couples them).  Invariance makes the answer independent of the
// vertex; the parameter exists so tests can confirm that.
DbarResult dbar_distance(const ExactMeasure& mu, const ExactMeasure& nu, uint32_t vertex = 0,
                         uint64_t max_pairs = 1u << 20);

// P(symbols differ at the vertex) under a measure on paired configs.
Rational coupling_disagreement(const ExactMeasure& lambda, int k1, int k2, uint32_t vertex);

// Ergodic components of a coupling graded by their disagreement fraction at
// the vertex: how much coupling mass sits how far from the diagonal.  No
// threshold is baked in; callers decide what counts as "near".  Checks the
// averaging identity (total disagreement = sum of weight * band value) before
// returning.
struct DiagonalBand {
  Rational weight;
  Config rep;
  Rational disagreement;
};

std::vector<DiagonalBand> coupling_bands(const ExactMeasure& lambda, int k1, int k2,
                                         uint32_t vertex);

// Relational composition of couplings: glue lambda12 (on mu x nu) with
// lambda23 (on nu x rho) along the common middle marginal.  The result is an
// invariant coupling of (mu, rho) whose disagreement exceeds neither sum,
// which is what makes the distance a metric.
ExactMeasure compose_couplings(const ExactMeasure& lambda12, const ExactMeasure& lambda23,
                               int k1, int k2, int k3);

}  // namespace cubex
