#include "pgmlab/states.hpp"

#include <cmath>
#include <string>

#include "pgmlab/error.hpp"

namespace pgmlab {

double DensityFamily::scale() const {
  const double ratio = static_cast<double>(conjugates.subgroup.order()) /
                       static_cast<double>(group->order());
  return std::pow(ratio, registers);
}

CosetState coset_state(const Subgroup& h, Element c) {
  const Group& g = h.group();
  if (c >= g.order()) throw InputError("coset representative out of range");
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(g.order()));
  const double a = 1.0 / std::sqrt(static_cast<double>(h.order()));
  for (Element x : h.elements()) amp(g.mult(c, x)) = a;
  return {h.parent(), std::move(amp)};
}

HermitianOperator conjugate_density(const Subgroup& hg) {
  const Group& g = hg.group();
  const auto n = static_cast<Eigen::Index>(g.order());
  CMatrix rho = CMatrix::Zero(n, n);
  const double v = 1.0 / static_cast<double>(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    for (Element h : hg.elements()) rho(x, g.mult(x, h)) = v;
  }
  return HermitianOperator(rho);
}

DensityFamily density_family(const Subgroup& h, int k, std::size_t max_dim) {
  if (k < 1) throw InputError("number of registers must be positive");
  std::size_t dim = 1;
  for (int r = 0; r < k; ++r) {
    dim *= h.group().order();
    if (dim > max_dim) {
      throw GuardError("density dimension exceeds guard " + std::to_string(max_dim));
    }
  }
  DensityFamily fam{h.parent(), conjugate_family(h), k, {}};
  const std::size_t count = fam.conjugates.size();
  fam.ensemble.states.reserve(count);
  for (const Subgroup& c : fam.conjugates.conjugates) {
    const HermitianOperator single = conjugate_density(c);
    HermitianOperator rho = single;
    for (int r = 1; r < k; ++r) rho = kron(rho, single, max_dim);
    fam.ensemble.states.push_back(std::move(rho));
  }
  fam.ensemble.priors.assign(count, 1.0 / static_cast<double>(count));
  return fam;
}

Ensemble coarse_ensemble(const Ensemble& fine,
                         const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<int> hits(fine.size(), 0);
  Ensemble out;
  for (const auto& block : blocks) {
    if (block.empty()) throw InputError("partition block is empty");
    double p = 0.0;
    HermitianOperator acc = HermitianOperator::zero(fine.dim());
    for (std::size_t i : block) {
      if (i >= fine.size()) throw InputError("partition label out of range");
      ++hits[i];
      p += fine.priors[i];
      acc += fine.states[i] * fine.priors[i];
    }
    out.priors.push_back(p);
    out.states.push_back(p > 0.0 ? acc * (1.0 / p) : acc);
  }
  for (int h : hits) {
    if (h != 1) throw InputError("partition must cover every label exactly once");
  }
  return out;
}

Mixture mixture(const Ensemble& e) {
  if (e.size() == 0) throw InputError("empty ensemble");
  HermitianOperator m = HermitianOperator::zero(e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) m += e.states[i] * e.priors[i];
  PsdFactors f = psd_sqrt_pinv(m);
  return {std::move(m), std::move(f)};
}

void validate_ensemble(const Ensemble& e) {
  if (e.states.size() != e.priors.size()) throw InputError("states and priors differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const HermitianOperator& rho = e.states[i];
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
      throw NumericalError("state " + std::to_string(i) + " does not have unit trace");
    }
    if (!loewner_geq(rho, HermitianOperator::zero(rho.dim()), 1e-10).holds) {
      throw NumericalError("state " + std::to_string(i) + " is not positive semidefinite");
    }
    if (e.priors[i] < 0.0) throw InputError("negative prior");
    total += e.priors[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw NumericalError("priors do not sum to one");
}

CMatrix left_multiplication(const Group& g, Element x) {
  const auto n = static_cast<Eigen::Index>(g.order());
  CMatrix p = CMatrix::Zero(n, n);
  for (Element y = 0; y < g.order(); ++y) p(g.mult(x, y), y) = 1.0;
  return p;
}

CMatrix right_multiplication(const Group& g, Element x) {
  const auto n = static_cast<Eigen::Index>(g.order());
  CMatrix p = CMatrix::Zero(n, n);
  for (Element y = 0; y < g.order(); ++y) p(g.mult(y, x), y) = 1.0;
  return p;
}

}  // namespace pgmlab
