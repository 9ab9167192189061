#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pgmlab/groups.hpp"
#include "pgmlab/linalg.hpp"

namespace pgmlab {

/// Unitary irreducible representation given by one matrix per element.
struct Irrep {
  std::string name;
  std::size_t dim = 0;
  std::vector<CMatrix> matrices;

  const CMatrix& operator()(Element x) const { return matrices[x]; }
  std::complex<double> character(Element x) const { return matrices[x].trace(); }
};

struct IrrepTable {
  GroupPtr group;
  std::vector<Irrep> irreps;

  /// Column offset of each irrep's d^2 block in fourier_basis.
  std::vector<std::size_t> offsets() const;
};

struct IrrepCheck {
  double homomorphism = 0.0;       ///< max |s(x)s(y) - s(xy)|
  double unitarity = 0.0;          ///< max |s(x)s(x)^dagger - 1|
  double character_norm = 0.0;     ///< |(1/|G|) sum |chi|^2 - 1|
};

IrrepCheck check_irrep(const Group& g, const Irrep& s);

bool has_irrep_table(const Group& g);

/// Closed-form irreps for cyclic n, dihedral n (odd), and affine p groups.
///   dihedral: trivial, sign, then the 2-dim r^a -> diag(w^ja, w^-ja), s -> swap
///   affine:   the p-1 characters of Z_p^* (trivial first), then the
///             (p-1)-dim irrep  e_u -> exp(2 pi i b/(a u) / p) e_{a u}
/// Throws InputError for other families.
IrrepTable irrep_table(const GroupPtr& g);

/// pi = 1/|H| sum_{h in H} s(h), an orthogonal projector.
HermitianOperator subgroup_projector(const Irrep& s, const Subgroup& h);
std::size_t projector_rank(const Irrep& s, const Subgroup& h);

/// Unitary whose column (s, i, j) at offsets()[s] + i*d + j holds
/// sqrt(d/|G|) s(x)_ij in row x.
CMatrix fourier_basis(const IrrepTable& table);

struct BlockReport {
  double max_residual = 0.0;  ///< worst in-block mismatch
  double leakage = 0.0;       ///< largest entry outside the diagonal blocks
  std::vector<double> per_block;
  double worst() const { return max_residual > leakage ? max_residual : leakage; }
};

/// In the Fourier basis rho's s-block must equal (|H|/|G|) (1_d kron pi^s),
/// the identity acting on the row index i.
BlockReport verify_block_structure(const HermitianOperator& rho, const IrrepTable& table,
                                   const Subgroup& hg);

/// PGM operator for a conjugate with prior p: the s-block must equal
/// (p d / rk pi^s) (1_d kron pi^s), and zero when rk pi^s = 0. With the
/// uniform prior 1/|G| over group elements this is d/(|G| rk pi) per block.
BlockReport verify_pgm_blocks(const HermitianOperator& e, const IrrepTable& table,
                              const Subgroup& hg, double prior);

/// Rank of every Fourier block of a k-register density, indexed by tuples of
/// irreps in register-major order.
struct TensorBlockRank {
  std::vector<std::size_t> irreps;
  std::size_t dim = 0;   ///< product of the d_s
  std::size_t rank = 0;
};

std::vector<TensorBlockRank> tensor_block_ranks(const HermitianOperator& rho,
                                                const IrrepTable& table, int k);

/// Plancherel mass of the irreps with nonzero subgroup projector.
double plancherel_SH(const IrrepTable& table, const Subgroup& h);

/// P(s) = |H| d_s rk pi^s / |G|.
std::vector<double> weak_sampling_distribution(const IrrepTable& table, const Subgroup& h);

/// True iff rk pi^s <= 1 for every irrep.
bool gelfand_multiplicity_check(const IrrepTable& table, const Subgroup& h);

/// Orthogonal projectors onto the isotypic components of the left-regular
/// action of G^k on C[G]^(x)k, built from conjugacy-class sums only (no irrep
/// data). Mutually conjugate irreps share a component. Ordered register-major.
std::vector<HermitianOperator> isotypic_projectors(const Group& g, int k,
                                                   std::size_t max_dim = kDefaultMaxDim);

}  // namespace pgmlab
