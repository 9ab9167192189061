#include "pgmlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "pgmlab/error.hpp"

namespace pgmlab {

namespace {
constexpr double kRoundingFloor = 1e-14;
}  // namespace

HermitianOperator::HermitianOperator(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw InputError("Hermitian operator must be square");
  const double scale = max_abs(m);
  const double defect = max_abs(m - m.adjoint());
  // Entries at rounding level (an irrep averaging to zero) carry no signal.
  if (defect > tol * scale && defect > kRoundingFloor) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ", scale " << scale << ")";
    throw InputError(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(CMatrix::Identity(n, n));
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(CMatrix::Zero(n, n));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  HermitianOperator r = *this;
  r += o;
  return r;
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  HermitianOperator r;
  r.m_ = m_ - o.m_;
  return r;
}

HermitianOperator HermitianOperator::operator*(double s) const {
  HermitianOperator r;
  r.m_ = m_ * s;
  return r;
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  if (o.dim() != dim()) throw InputError("dimension mismatch in operator sum");
  m_ += o.m_;
  return *this;
}

namespace {

bool try_eig(const CMatrix& a, bool vectors, SpectralDecomposition& out) {
  const int opts = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.real(), opts);
    if (solver.info() != Eigen::Success) return false;
    out.values = solver.eigenvalues();
    if (vectors) out.vectors = solver.eigenvectors().cast<std::complex<double>>();
    return true;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, opts);
  if (solver.info() != Eigen::Success) return false;
  out.values = solver.eigenvalues();
  if (vectors) out.vectors = solver.eigenvectors();
  return true;
}

}  // namespace

SpectralDecomposition eig_hermitian(const CMatrix& a, bool vectors) {
  SpectralDecomposition out;
  if (a.size() == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  if (try_eig(a, vectors, out)) return out;

  const Eigen::Index n = a.rows();
  std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::shuffle(perm.begin(), perm.end(), rng);
    CMatrix u = CMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) u(perm[j], j) = std::polar(1.0, angle(rng));
    CMatrix b = u.adjoint() * a * u;
    b = (b + b.adjoint()) * 0.5;
    if (try_eig(b, vectors, out)) {
      if (vectors) out.vectors = u * out.vectors;
      return out;
    }
  }
  throw NumericalError("Hermitian eigensolver did not converge");
}

Eigen::VectorXd eigenvalues_hermitian(const CMatrix& a) { return eig_hermitian(a, false).values; }

SpectralDecomposition eig_hermitian(const HermitianOperator& a) {
  return eig_hermitian(a.matrix(), true);
}

PsdFactors psd_sqrt_pinv(const HermitianOperator& a, double cutoff) {
  const SpectralDecomposition sd = eig_hermitian(a);
  const Eigen::Index n = sd.values.size();
  const double lmax = n > 0 ? std::max(sd.values.maxCoeff(), 0.0) : 0.0;
  const double lmin = n > 0 ? sd.values.minCoeff() : 0.0;
  if (lmin < 0.0 && (lmax == 0.0 || lmin < -1e-10 * lmax)) {
    throw InputError("operator is not positive semidefinite (lambda_min = " +
                     std::to_string(lmin) + ")");
  }
  Eigen::VectorXd root(n), inv_root(n), proj(n);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = sd.values(i);
    if (lmax > 0.0 && l > cutoff * lmax) {
      root(i) = std::sqrt(l);
      inv_root(i) = 1.0 / std::sqrt(l);
      proj(i) = 1.0;
      ++rank;
    } else {
      root(i) = inv_root(i) = proj(i) = 0.0;
    }
  }
  const CMatrix& v = sd.vectors;
  auto assemble = [&](const Eigen::VectorXd& d) {
    return HermitianOperator(v * d.asDiagonal() * v.adjoint(), 1e-10);
  };
  return {assemble(root), assemble(inv_root), assemble(proj), rank};
}

std::size_t rank_eps(const HermitianOperator& a, double cutoff) {
  if (a.dim() == 0) return 0;
  const Eigen::VectorXd ev = eigenvalues_hermitian(a.matrix());
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  return static_cast<std::size_t>((ev.array().abs() > cutoff * top).count());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b,
                       std::size_t max_dim) {
  if (a.dim() * b.dim() > max_dim) {
    throw GuardError("Kronecker product dimension " + std::to_string(a.dim() * b.dim()) +
                     " exceeds guard " + std::to_string(max_dim));
  }
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

LoewnerResult loewner_geq(const HermitianOperator& a, const HermitianOperator& b, double tol) {
  if (a.dim() != b.dim()) throw InputError("dimension mismatch in Loewner comparison");
  const double lmin = a.dim() ? eigenvalues_hermitian(a.matrix() - b.matrix()).minCoeff() : 0.0;
  return {lmin >= -tol, lmin};
}

PowerMeanResult power_mean_gap(const HermitianOperator& a, const CVector& v, bool strict,
                               double cutoff) {
  if (static_cast<std::size_t>(v.size()) != a.dim()) {
    throw InputError("vector dimension does not match operator");
  }
  const SpectralDecomposition sd = eig_hermitian(a);
  const double lmax = sd.values.size() ? sd.values.maxCoeff() : 0.0;
  const CVector coeff = sd.vectors.adjoint() * v;

  PowerMeanResult r;
  double outside = 0.0, norm2 = 0.0, mean = 0.0, harmonic = 0.0;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) {
    const double w = std::norm(coeff(i));
    const double l = sd.values(i);
    if (lmax > 0.0 && l > cutoff * lmax) {
      norm2 += w;
      mean += w * l;
      harmonic += w / l;
    } else {
      outside += w;
    }
  }
  r.outside_norm = std::sqrt(outside);
  r.projected = outside > 0.0;
  if (strict && r.outside_norm > 1e-9 * v.norm()) {
    throw InputError("vector has a component outside the image of the operator");
  }
  r.gap = mean * harmonic - norm2 * norm2;
  return r;
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix gram = m.adjoint() * m;
  return std::sqrt(std::max(eigenvalues_hermitian(gram).maxCoeff(), 0.0));
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace pgmlab
