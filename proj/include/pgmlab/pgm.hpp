#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pgmlab/linalg.hpp"
#include "pgmlab/states.hpp"

namespace pgmlab {

/// Measurement operators E_i (label i matches ensemble index i) plus an
/// optional residual M0 so that sum_i E_i + M0 = 1.
struct Povm {
  std::vector<HermitianOperator> operators;
  std::optional<HermitianOperator> residual;

  std::size_t size() const { return operators.size(); }
  std::size_t dim() const { return operators.empty() ? 0 : operators.front().dim(); }
};

/// max |sum_i E_i + M0 - 1| in operator norm.
double completeness_residual(const Povm& povm);

/// E_i = p_i M^-1/2 rho_i M^-1/2, completed by the projector onto ker M when
/// M is singular.
Povm build_pgm(const Ensemble& e);

/// E_i = 1/l for l outcomes.
Povm uniform_guess(std::size_t outcomes, std::size_t dim);

/// sum_i p_i tr(E_i rho_i)
double success_probability(const Povm& povm, const Ensemble& e);

/// Residuals of the three optimality conditions. The residual M0 takes part
/// as an outcome with prior zero.
///   eq4: max_i ||(Y - p_i rho_i) E_i||
///   eq5: ||Y - Y^dagger||          with Y = sum_j p_j rho_j E_j
///   eq6: min(0, min_i lambda_min(Y - p_i rho_i))
/// All norms are spectral.
struct OptimalityReport {
  double eq4_residual = 0.0;
  double eq5_residual = 0.0;
  double eq6_witness = 0.0;
  double tol = 0.0;
  bool pass = false;
};

OptimalityReport verify_optimality(const Povm& povm, const Ensemble& e, double tol);

/// 1e-8 for one register, 1e-7 otherwise, times sqrt(dim).
double default_optimality_tolerance(int registers, std::size_t dim);

/// Sums member operators per block. Blocks must partition the labels.
Povm coarse_grain(const Povm& povm, const std::vector<std::vector<std::size_t>>& blocks);

/// Fit of E to alpha times a rank-r orthogonal projector.
struct ProjectorFit {
  bool ok = false;
  double alpha = 0.0;
  std::size_t rank = 0;
  double residual = 0.0;  ///< max eigenvalue deviation from {0, alpha}
};

ProjectorFit fit_scaled_projector(const HermitianOperator& e, double tol = 1e-8);

struct CapacityBlock {
  std::size_t dim = 0;        ///< dimension of the block
  std::size_t rank = 0;       ///< common projector rank r inside the block
  double support = 0.0;       ///< tr sum_i E_i inside the block
  double weight = 0.0;        ///< max_i tr rho_i inside the block
  double mean_success = 0.0;  ///< (1/|I|) sum_i tr E_i rho_i inside the block
  double bound = 0.0;         ///< weight * support / (r |I|)
  bool structured = false;
  std::vector<double> alphas;
};

/// Holevo-capacity style bound: when every E_i is alpha_i times a rank-r
/// projector, (1/|I|) sum_i tr E_i rho_i <= tr(sum_i E_i) / (r |I|), which is
/// at most dim / (r |I|).
struct CapacityReport {
  bool structured = false;
  double mean_success = 0.0;
  double bound = 0.0;
  bool holds = false;
  std::vector<CapacityBlock> blocks;  ///< one entry for the whole-space check
};

CapacityReport capacity_check(const Povm& povm, const Ensemble& e);

/// Applies the bound inside each block given by the orthogonal projectors
/// (which must commute with every E_i and rho_i) and sums the block bounds.
/// Blocks where every E_i vanishes are skipped.
CapacityReport capacity_check(const Povm& povm, const Ensemble& e,
                              const std::vector<HermitianOperator>& block_projectors);

/// Entry (j, i) = tr(E_i rho_j): rows are true states, columns outcomes.
Eigen::MatrixXd confusion_matrix(const Povm& povm, const Ensemble& e);

}  // namespace pgmlab
