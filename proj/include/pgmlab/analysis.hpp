#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "pgmlab/groups.hpp"

namespace pgmlab {

using Rational = boost::rational<long long>;

enum class PlanchSource { RankOfMixture, IrrepTable };
std::string to_string(PlanchSource s);

/// Plancherel mass of S_H computed as rank(M) / |G| for the single-register
/// mixture M over the conjugates of H.
double planch_from_rank(const Subgroup& h, std::size_t max_dim = kDefaultMaxDim);

/// (|H| / |C(H)|) * Planch(S_H), using the rank path.
double predicted_success_single(const Subgroup& h);
double predicted_success_single(const Subgroup& h, double planch);

/// |H| / (|C(H)| |core(H)|)
double core_bound_single(const Subgroup& h);

/// (2/n)(1 - 1/(2n)) for odd n >= 3.
Rational dihedral_closed_form_exact(int n);
double dihedral_closed_form(int n);

/// 1 - 2(p-1)/p^2 for prime p >= 3.
Rational affine_closed_form_exact(int p);
double affine_closed_form(int p);

struct MultiregisterBound {
  int registers = 1;
  double planch_form = 0.0;  ///< |H|^k Planch(S_H)^k / |C(H)|
  double core_form = 0.0;    ///< (|H| / |core|)^k / |C(H)|
  bool proven = false;       ///< (G, H) is a Gel'fand pair
};

MultiregisterBound multiregister_bound(const Subgroup& h, int k, double planch, bool gelfand);
MultiregisterBound multiregister_bound(const Subgroup& h, int k);

struct Prediction {
  double p_success_formula = 0.0;
  double core_bound = 0.0;
  std::vector<MultiregisterBound> multiregister;  ///< k = 1..max_k
  double planch_SH = 0.0;
  PlanchSource source = PlanchSource::RankOfMixture;
  std::optional<double> planch_rank;   ///< rank path, when computed
  std::optional<double> planch_irrep;  ///< irrep path, when irreps exist
  bool gelfand = false;

  /// Both paths present and within 1e-9, or only one path present.
  bool sources_agree() const;
};

/// Closed forms and bounds for k = 1..max_k. The rank path builds |G|-sized
/// matrices and runs only when |G| <= rank_limit; the irrep path runs
/// whenever a closed-form table exists.
Prediction predict(const Subgroup& h, int max_k, std::size_t rank_limit = kDefaultMaxDim);

}  // namespace pgmlab
