#include "pgmlab/analysis.hpp"

#include <cmath>

#include "pgmlab/error.hpp"
#include "pgmlab/gelfand.hpp"
#include "pgmlab/reps.hpp"
#include "pgmlab/states.hpp"

namespace pgmlab {

std::string to_string(PlanchSource s) {
  return s == PlanchSource::IrrepTable ? "irrep-table" : "rank-of-M";
}

double planch_from_rank(const Subgroup& h, std::size_t max_dim) {
  const DensityFamily fam = density_family(h, 1, max_dim);
  const Mixture m = mixture(fam.ensemble);
  return static_cast<double>(m.factors.rank) / static_cast<double>(h.group().order());
}

double predicted_success_single(const Subgroup& h, double planch) {
  const auto conjugates = static_cast<double>(conjugate_family(h).size());
  return static_cast<double>(h.order()) / conjugates * planch;
}

double predicted_success_single(const Subgroup& h) {
  return predicted_success_single(h, planch_from_rank(h));
}

double core_bound_single(const Subgroup& h) {
  const auto conjugates = static_cast<double>(conjugate_family(h).size());
  const auto core = static_cast<double>(normal_core(h).order());
  return static_cast<double>(h.order()) / (conjugates * core);
}

Rational dihedral_closed_form_exact(int n) {
  if (n < 3 || n % 2 == 0) throw InputError("dihedral closed form needs odd n >= 3");
  return Rational(2, n) * (Rational(1) - Rational(1, 2 * n));
}

double dihedral_closed_form(int n) { return boost::rational_cast<double>(dihedral_closed_form_exact(n)); }

Rational affine_closed_form_exact(int p) {
  if (p < 3 || !is_prime(p)) throw InputError("affine closed form needs prime p >= 3");
  return Rational(1) - Rational(2 * (p - 1), static_cast<long long>(p) * p);
}

double affine_closed_form(int p) { return boost::rational_cast<double>(affine_closed_form_exact(p)); }

MultiregisterBound multiregister_bound(const Subgroup& h, int k, double planch, bool gelfand) {
  if (k < 1) throw InputError("number of registers must be positive");
  const auto conjugates = static_cast<double>(conjugate_family(h).size());
  const auto order = static_cast<double>(h.order());
  const auto core = static_cast<double>(normal_core(h).order());
  MultiregisterBound b;
  b.registers = k;
  b.planch_form = std::pow(order * planch, k) / conjugates;
  b.core_form = std::pow(order / core, k) / conjugates;
  b.proven = gelfand;
  return b;
}

MultiregisterBound multiregister_bound(const Subgroup& h, int k) {
  return multiregister_bound(h, k, planch_from_rank(h), is_gelfand(h));
}

bool Prediction::sources_agree() const {
  if (planch_rank && planch_irrep) return std::abs(*planch_rank - *planch_irrep) <= 1e-9;
  return true;
}

Prediction predict(const Subgroup& h, int max_k, std::size_t rank_limit) {
  Prediction p;
  const Group& g = h.group();
  if (has_irrep_table(g)) {
    p.planch_irrep = plancherel_SH(irrep_table(h.parent()), h);
  }
  if (g.order() <= rank_limit) p.planch_rank = planch_from_rank(h);
  if (p.planch_irrep) {
    p.planch_SH = *p.planch_irrep;
    p.source = PlanchSource::IrrepTable;
  } else if (p.planch_rank) {
    p.planch_SH = *p.planch_rank;
    p.source = PlanchSource::RankOfMixture;
  } else {
    throw GuardError("group too large for the rank path and no closed-form irreps available");
  }
  p.gelfand = is_gelfand(h);
  p.p_success_formula = predicted_success_single(h, p.planch_SH);
  p.core_bound = core_bound_single(h);
  for (int k = 1; k <= max_k; ++k) {
    p.multiregister.push_back(multiregister_bound(h, k, p.planch_SH, p.gelfand));
  }
  return p;
}

}  // namespace pgmlab
