#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "pgmlab/groups.hpp"

namespace pgmlab {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Hermiticity tolerance, relative to the largest entry.
inline constexpr double kHermiticityTol = 1e-12;
/// Eigenvalue cutoff for ranks and pseudo-inverses, relative to max |lambda|.
inline constexpr double kDefaultCutoff = 1e-10;

/// Dense complex matrix known to be Hermitian. Construction symmetrizes
/// (A + A^dagger)/2 when the defect is below kHermiticityTol and rejects the
/// input otherwise.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const CMatrix& m, double tol = kHermiticityTol);

  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& o);

 private:
  CMatrix m_;
};

/// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct SpectralDecomposition {
  Eigen::VectorXd values;
  CMatrix vectors;
};

SpectralDecomposition eig_hermitian(const HermitianOperator& a);

/// Same on a raw matrix assumed Hermitian. Real input uses the real solver;
/// if the QR iteration stalls (it can on exactly degenerate spectra) the
/// solve is retried on a seeded random phase-and-permutation similarity.
/// `values` only when `vectors` is false.
SpectralDecomposition eig_hermitian(const CMatrix& a, bool vectors = true);
Eigen::VectorXd eigenvalues_hermitian(const CMatrix& a);

struct PsdFactors {
  HermitianOperator sqrt;
  HermitianOperator pinv_sqrt;   ///< inverse square root on the image, zero on the kernel
  HermitianOperator image_proj;  ///< orthogonal projector onto the image
  std::size_t rank = 0;
};

/// Square root and image-restricted inverse square root of a PSD operator.
/// Eigenvalues at or below cutoff * lambda_max count as kernel. Throws
/// InputError when lambda_min < -1e-10 * lambda_max.
PsdFactors psd_sqrt_pinv(const HermitianOperator& a, double cutoff = kDefaultCutoff);

/// Number of eigenvalues with |lambda| > cutoff * max |lambda|; 0 for the zero matrix.
std::size_t rank_eps(const HermitianOperator& a, double cutoff = kDefaultCutoff);

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b,
                       std::size_t max_dim = kDefaultMaxDim);
CMatrix kron(const CMatrix& a, const CMatrix& b);

struct LoewnerResult {
  bool holds = false;
  double min_eigenvalue = 0.0;  ///< lambda_min(A - B)
};

/// A >= B iff lambda_min(A - B) >= -tol.
LoewnerResult loewner_geq(const HermitianOperator& a, const HermitianOperator& b, double tol);

struct PowerMeanResult {
  double gap = 0.0;           ///< <v|A|v><v|A^-1|v> - |v|^4 on the image of A
  bool projected = false;     ///< v had a component outside the image that was dropped
  double outside_norm = 0.0;  ///< norm of that component
};

/// Gap in the power-mean inequality <v|A|v><v|A^-1|v> >= |v|^4, with the
/// inverse taken on the image of A. Components of v in the kernel are
/// projected away; in strict mode a component larger than 1e-9 |v| throws.
PowerMeanResult power_mean_gap(const HermitianOperator& a, const CVector& v, bool strict = false,
                               double cutoff = kDefaultCutoff);

/// Largest singular value.
double operator_norm(const CMatrix& m);
double max_abs(const CMatrix& m);

}  // namespace pgmlab
