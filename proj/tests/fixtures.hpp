#pragma once

#include <random>
#include <string>
#include <vector>

#include "pgmlab/group_spec.hpp"
#include "pgmlab/groups.hpp"
#include "pgmlab/linalg.hpp"

namespace fixtures {

inline pgmlab::Subgroup sub(const std::string& group, const std::string& subgroup) {
  return pgmlab::parse_subgroup_spec(pgmlab::parse_group_spec(group), subgroup);
}

inline pgmlab::Subgroup d5_reflection() { return sub("dihedral:n=5", "reflection"); }

/// 1-based cycle notation is easier to read in tests; converts a 1-based
/// one-line permutation of {1..n}.
inline pgmlab::Element s4(std::vector<int> one_line) {
  for (int& x : one_line) --x;
  return pgmlab::permutation_index(one_line);
}

inline pgmlab::HermitianOperator random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  pgmlab::CMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = {normal(rng), normal(rng)};
  }
  return pgmlab::HermitianOperator(pgmlab::CMatrix((z + z.adjoint()) * 0.5));
}

inline pgmlab::HermitianOperator random_psd(std::mt19937_64& rng, int n, int rank) {
  std::normal_distribution<double> normal;
  pgmlab::CMatrix z(n, rank);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) z(i, j) = {normal(rng), normal(rng)};
  }
  return pgmlab::HermitianOperator(pgmlab::CMatrix(z * z.adjoint()));
}

}  // namespace fixtures
