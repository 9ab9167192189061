#pragma once

#include <cstddef>
#include <vector>

#include "pgmlab/groups.hpp"
#include "pgmlab/linalg.hpp"

namespace pgmlab {

/// Uniform superposition over the left coset cH, in the basis C[G].
struct CosetState {
  GroupPtr group;
  CVector amplitudes;
};

/// Labeled density matrices with prior probabilities.
struct Ensemble {
  std::vector<HermitianOperator> states;
  std::vector<double> priors;

  std::size_t size() const { return states.size(); }
  std::size_t dim() const { return states.empty() ? 0 : states.front().dim(); }
};

/// One density per distinct conjugate of H, each the k-fold tensor power of
/// the single-register coset mixture; priors uniform over the conjugates.
struct DensityFamily {
  GroupPtr group;
  ConjugateFamily conjugates;
  int registers = 1;
  Ensemble ensemble;

  /// (|H|/|G|)^k: each density is this multiple of a projector.
  double scale() const;
};

/// M = sum_i p_i rho_i with cached square-root factors.
struct Mixture {
  HermitianOperator op;
  PsdFactors factors;
};

CosetState coset_state(const Subgroup& h, Element c);

/// rho = 1/|G| sum_c |cH><cH|; entry (x, y) is 1/|G| when x^-1 y is in H.
HermitianOperator conjugate_density(const Subgroup& hg);

DensityFamily density_family(const Subgroup& h, int k, std::size_t max_dim = kDefaultMaxDim);

/// Groups an ensemble: block i gets prior sum of member priors and the
/// prior-weighted average of member states.
Ensemble coarse_ensemble(const Ensemble& fine, const std::vector<std::vector<std::size_t>>& blocks);

Mixture mixture(const Ensemble& e);

/// Checks unit trace (1e-10), positivity (1e-10) and priors summing to one
/// (1e-12). Throws NumericalError on violation.
void validate_ensemble(const Ensemble& e);

/// Permutation matrices of the regular actions: L_x|y> = |xy>, R_x|y> = |yx>.
CMatrix left_multiplication(const Group& g, Element x);
CMatrix right_multiplication(const Group& g, Element x);

}  // namespace pgmlab
