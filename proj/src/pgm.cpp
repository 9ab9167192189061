#include "pgmlab/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pgmlab/error.hpp"

namespace pgmlab {

namespace {

void check_compatible(const Povm& povm, const Ensemble& e) {
  if (povm.size() != e.size()) {
    throw InputError("POVM has " + std::to_string(povm.size()) + " outcomes but ensemble has " +
                     std::to_string(e.size()) + " states");
  }
  if (povm.dim() != e.dim()) throw InputError("POVM and ensemble dimensions differ");
}

double trace_product(const CMatrix& a, const CMatrix& b) {
  // tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum().real();
}

// Orthonormal basis of the range of an orthogonal projector.
CMatrix range_basis(const HermitianOperator& p) {
  const SpectralDecomposition sd = eig_hermitian(p);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sd.values.size(); ++i) {
    if (sd.values(i) > 0.5) cols.push_back(i);
  }
  CMatrix basis(sd.vectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = sd.vectors.col(cols[c]);
  }
  return basis;
}

CapacityBlock block_capacity(const std::vector<HermitianOperator>& ops,
                             const std::vector<HermitianOperator>& states) {
  CapacityBlock b;
  b.dim = ops.empty() ? 0 : ops.front().dim();
  const double count = static_cast<double>(ops.size());
  b.structured = true;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const ProjectorFit fit = fit_scaled_projector(ops[i]);
    b.alphas.push_back(fit.alpha);
    if (!fit.ok) b.structured = false;
    if (fit.rank > 0) {
      if (rank == 0) {
        rank = fit.rank;
      } else if (fit.rank != rank) {
        b.structured = false;
      }
    }
    b.support += ops[i].trace();
    b.weight = std::max(b.weight, states[i].trace());
    b.mean_success += trace_product(ops[i].matrix(), states[i].matrix()) / count;
  }
  b.rank = rank;
  b.bound = rank > 0 ? b.weight * b.support / (static_cast<double>(rank) * count) : 0.0;
  return b;
}

}  // namespace

double completeness_residual(const Povm& povm) {
  const auto n = static_cast<Eigen::Index>(povm.dim());
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& e : povm.operators) sum += e.matrix();
  if (povm.residual) sum += povm.residual->matrix();
  sum -= CMatrix::Identity(n, n);
  return operator_norm(sum);
}

Povm build_pgm(const Ensemble& e) {
  const Mixture m = mixture(e);
  const CMatrix& s = m.factors.pinv_sqrt.matrix();
  Povm povm;
  povm.operators.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    povm.operators.emplace_back(CMatrix(e.priors[i] * (s * e.states[i].matrix() * s)), 1e-10);
  }
  if (m.factors.rank < e.dim()) {
    povm.residual = HermitianOperator::identity(e.dim()) - m.factors.image_proj;
  }
  const double defect = completeness_residual(povm);
  if (defect > 1e-9) {
    throw NumericalError("PGM completeness residual " + std::to_string(defect));
  }
  return povm;
}

Povm uniform_guess(std::size_t outcomes, std::size_t dim) {
  if (outcomes == 0) throw InputError("uniform guess needs at least one outcome");
  Povm povm;
  povm.operators.assign(outcomes,
                        HermitianOperator::identity(dim) * (1.0 / static_cast<double>(outcomes)));
  return povm;
}

double success_probability(const Povm& povm, const Ensemble& e) {
  check_compatible(povm, e);
  double p = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    p += e.priors[i] * trace_product(povm.operators[i].matrix(), e.states[i].matrix());
  }
  return p;
}

OptimalityReport verify_optimality(const Povm& povm, const Ensemble& e, double tol) {
  check_compatible(povm, e);
  const auto n = static_cast<Eigen::Index>(e.dim());
  CMatrix y = CMatrix::Zero(n, n);
  for (std::size_t j = 0; j < e.size(); ++j) {
    y.noalias() += e.priors[j] * (e.states[j].matrix() * povm.operators[j].matrix());
  }
  OptimalityReport r;
  r.tol = tol;
  r.eq5_residual = operator_norm(y - y.adjoint());
  const CMatrix y_herm = (y + y.adjoint()) * 0.5;

  double eq4 = 0.0;
  double witness = std::numeric_limits<double>::infinity();
  auto visit = [&](const CMatrix& weighted_state, const CMatrix& op) {
    eq4 = std::max(eq4, operator_norm((y - weighted_state) * op));
    witness = std::min(witness, eigenvalues_hermitian(y_herm - weighted_state).minCoeff());
  };
  for (std::size_t i = 0; i < e.size(); ++i) {
    visit(e.priors[i] * e.states[i].matrix(), povm.operators[i].matrix());
  }
  if (povm.residual) visit(CMatrix::Zero(n, n), povm.residual->matrix());
  r.eq4_residual = eq4;
  r.eq6_witness = std::min(0.0, witness);
  r.pass = r.eq4_residual <= tol && r.eq5_residual <= tol && r.eq6_witness >= -tol;
  return r;
}

double default_optimality_tolerance(int registers, std::size_t dim) {
  const double base = registers <= 1 ? 1e-8 : 1e-7;
  return base * std::sqrt(static_cast<double>(std::max<std::size_t>(dim, 1)));
}

Povm coarse_grain(const Povm& povm, const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<int> hits(povm.size(), 0);
  Povm out;
  out.residual = povm.residual;
  for (const auto& block : blocks) {
    if (block.empty()) throw InputError("partition block is empty");
    HermitianOperator acc = HermitianOperator::zero(povm.dim());
    for (std::size_t i : block) {
      if (i >= povm.size()) throw InputError("partition label out of range");
      ++hits[i];
      acc += povm.operators[i];
    }
    out.operators.push_back(std::move(acc));
  }
  for (int h : hits) {
    if (h != 1) throw InputError("partition must cover every label exactly once");
  }
  return out;
}

ProjectorFit fit_scaled_projector(const HermitianOperator& e, double tol) {
  ProjectorFit fit;
  const Eigen::VectorXd ev = eigenvalues_hermitian(e.matrix());
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  if (top <= tol) {
    fit.ok = ev.size() == 0 || ev.cwiseAbs().maxCoeff() <= tol;
    fit.residual = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
    return fit;
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0.5 * top) {
      sum += ev(i);
      ++fit.rank;
    }
  }
  fit.alpha = sum / static_cast<double>(fit.rank);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double target = ev(i) > 0.5 * top ? fit.alpha : 0.0;
    fit.residual = std::max(fit.residual, std::abs(ev(i) - target));
  }
  fit.ok = fit.residual <= tol;
  return fit;
}

CapacityReport capacity_check(const Povm& povm, const Ensemble& e) {
  check_compatible(povm, e);
  CapacityReport r;
  r.blocks.push_back(block_capacity(povm.operators, e.states));
  const CapacityBlock& b = r.blocks.front();
  r.structured = b.structured;
  r.mean_success = b.mean_success;
  r.bound = b.bound;
  r.holds = r.structured && r.mean_success <= r.bound + 1e-9;
  return r;
}

CapacityReport capacity_check(const Povm& povm, const Ensemble& e,
                              const std::vector<HermitianOperator>& block_projectors) {
  check_compatible(povm, e);
  CapacityReport r;
  r.structured = true;
  bool per_block = true;
  for (const auto& p : block_projectors) {
    const CMatrix v = range_basis(p);
    std::vector<HermitianOperator> ops, states;
    for (std::size_t i = 0; i < povm.size(); ++i) {
      ops.emplace_back(CMatrix(v.adjoint() * povm.operators[i].matrix() * v), 1e-9);
      states.emplace_back(CMatrix(v.adjoint() * e.states[i].matrix() * v), 1e-9);
    }
    CapacityBlock b = block_capacity(ops, states);
    if (b.rank == 0) continue;  // block lies in the kernel of every E_i
    if (!b.structured) r.structured = false;
    if (b.mean_success > b.bound + 1e-9) per_block = false;
    r.bound += b.bound;
    r.blocks.push_back(std::move(b));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    total += trace_product(povm.operators[i].matrix(), e.states[i].matrix());
  }
  r.mean_success = total / static_cast<double>(e.size());
  r.holds = r.structured && per_block && r.mean_success <= r.bound + 1e-9;
  return r;
}

Eigen::MatrixXd confusion_matrix(const Povm& povm, const Ensemble& e) {
  check_compatible(povm, e);
  Eigen::MatrixXd c(static_cast<Eigen::Index>(e.size()), static_cast<Eigen::Index>(povm.size()));
  for (std::size_t j = 0; j < e.size(); ++j) {
    for (std::size_t i = 0; i < povm.size(); ++i) {
      c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          trace_product(povm.operators[i].matrix(), e.states[j].matrix());
    }
  }
  return c;
}

}  // namespace pgmlab
