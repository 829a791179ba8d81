#pragma once

#include <vector>

#include "measure.hpp"

namespace cubex {

// The two-sided affine-form measure on binary configs: draw coefficients
// z_1..z_n independently with P(z_c = 1) = p and a fair constant term eta,
// and observe the config x |-> <x, z> + eta over F_2.  Each of the 2^(n+1)
// (z, eta) pairs gives a distinct config, so the support has exactly that
// size and the weight of a config is (1/2) p^|z| (1-p)^(n-|z|).
ExactMeasure affine_form_measure(int n, const Rational& p);

// Closed form for the mass of the all-zero (equally: all-one) config under
// the marginal of affine_form_measure(n, p) onto a face through the origin
// spanned by the first m coordinates: (1-p)^m / 2.
Rational affine_form_allzero_marginal(int m, const Rational& p);

// A finite abelian group Z/m1 x ... x Z/mr; elements are mixed-radix indices
// with factor 0 least significant.
struct FiniteAbelianGroup {
  std::vector<int> factors;

  explicit FiniteAbelianGroup(std::vector<int> factors_);

  int order() const { return order_; }
  int add(int a, int b) const;
  int neg(int a) const;

 private:
  int order_ = 1;
};

// A step distribution on the group: exact nonnegative weights summing to 1,
// indexed by group element.
using StepDistribution = std::vector<Rational>;

void validate_step_distribution(const FiniteAbelianGroup& U, const StepDistribution& nu);

// The symmetry the walk construction needs: pushing the uniform-start pair
// (g, g + z) forward in the two coordinate orders gives the same measure on
// U^2.  Equivalent to nu(z) = nu(-z) for every z; this function checks the
// two pushforwards directly.
bool check_nu_symmetry(const FiniteAbelianGroup& U, const StepDistribution& nu);

// Random-walk configs: a uniform start g0 at the origin and one nu-step per
// coordinate; the symbol at x is g0 plus the steps of the coordinates set in
// x.  Alphabet = group order.  Enumerates |supp(nu)|^n * |U| tuples, guarded.
ExactMeasure random_walk_measure(const FiniteAbelianGroup& U, const StepDistribution& nu, int n,
                                 uint64_t max_tuples = 1000000);

// Pointwise selection: where eta is 0 take w1, where eta is 1 take w2.
// Equivariant: combining commutes with the group action.
Config psi_combine(const Config& eta, const Config& w1, const Config& w2);

// Pushforward of mu0 (x) lambda under psi, where lambda is a measure on
// paired configs with alphabet k*k.
ExactMeasure psi_pushforward(const ExactMeasure& mu0, const ExactMeasure& lambda, int k);

struct MixtureReport {
  int n = 0;
  int k = 0;
  Rational p;
  Face window;                    // the face whose cylinders are compared
  Config lambda_rep;              // representative of the chosen pair orbit
  Rational lambda_weight;         // its mass inside mu1 (x) mu2
  bool lambda_is_joining = false; // marginals of lambda equal mu1 and mu2
  ExactMeasure combined;          // psi_#(mu0 (x) lambda)
  bool combined_invariant = false;
  std::size_t combined_components = 0;
  Rational epsilon;               // 1 - (1-p)^m, m = free coordinates of the window
  Rational bound;                 // 2 * epsilon
  // one deviation row per chart assignment a (ordinal order):
  // | combined(cyl_a) - (mu1(cyl_a) + mu2(cyl_a)) / 2 |
  std::vector<std::pair<Config, Rational>> deviations;
  Rational max_deviation;
  bool within_bound = false;

  MixtureReport()
      : window(1, 0, 0),
        lambda_rep(0, 2, {0}),
        combined(ExactMeasure::dirac(Config(0, 2, {0}))) {}
};

// The combination experiment: pick lambda as the heaviest ergodic component
// of mu1 (x) mu2 (ties broken by smallest representative), couple it with an
// independent affine-form measure, combine pointwise with psi, and compare
// cylinder masses on the window face against the even mixture of the inputs.
MixtureReport mixture_experiment(const ExactMeasure& mu1, const ExactMeasure& mu2,
                                 const Rational& p, const Face& window,
                                 uint64_t max_assignments = 65536);

}  // namespace cubex
