#include "pgmlab/gelfand.hpp"

#include "pgmlab/error.hpp"

namespace pgmlab {

HeckeAlgebra hecke_algebra(const Subgroup& h) {
  const Group& g = h.group();
  HeckeAlgebra alg{h.parent(), h, double_cosets(h), {}, true};
  const std::size_t m = alg.double_cosets.size();

  alg.structure.assign(m, std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(m)));
  std::vector<std::uint64_t> conv(g.order());
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::fill(conv.begin(), conv.end(), 0);
      for (Element u : alg.double_cosets[a])
        for (Element v : alg.double_cosets[b]) ++conv[g.mult(u, v)];
      for (std::size_t c = 0; c < m; ++c) {
        const std::uint64_t first = conv[alg.double_cosets[c].front()];
        alg.structure[a][b][c] = first;
        for (Element x : alg.double_cosets[c]) {
          if (conv[x] != first) alg.bi_invariant = false;
        }
      }
    }
  }
  if (!alg.bi_invariant) throw NumericalError("double-coset convolution is not bi-invariant");
  return alg;
}

bool is_gelfand(const HeckeAlgebra& algebra) {
  const std::size_t m = algebra.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (algebra.structure[a][b] != algebra.structure[b][a]) return false;
  return true;
}

bool is_gelfand(const Subgroup& h) { return is_gelfand(hecke_algebra(h)); }

bool conjugate_stability_check(const Subgroup& h) {
  const bool reference = is_gelfand(h);
  for (const Subgroup& c : conjugate_family(h).conjugates) {
    if (is_gelfand(c) != reference) return false;
  }
  return true;
}

}  // namespace pgmlab
