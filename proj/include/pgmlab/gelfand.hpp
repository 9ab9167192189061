#pragma once

#include <cstdint>
#include <vector>

#include "pgmlab/groups.hpp"

namespace pgmlab {

/// Double-coset algebra of (G, H). structure[a][b][c] is the convolution
/// (1_{D_a} * 1_{D_b})(x) = #{(u, v) in D_a x D_b : uv = x}, evaluated at any
/// x in D_c (the value is constant on double cosets).
struct HeckeAlgebra {
  GroupPtr group;
  Subgroup subgroup;
  Partition double_cosets;
  std::vector<std::vector<std::vector<std::uint64_t>>> structure;
  bool bi_invariant = false;

  std::size_t size() const { return double_cosets.size(); }
};

HeckeAlgebra hecke_algebra(const Subgroup& h);

/// Exact integer test that the double-coset algebra is commutative.
bool is_gelfand(const HeckeAlgebra& algebra);
bool is_gelfand(const Subgroup& h);

/// is_gelfand returns the same answer for every conjugate of H.
bool conjugate_stability_check(const Subgroup& h);

}  // namespace pgmlab
