#include "pgmlab/reps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pgmlab/error.hpp"

namespace pgmlab {

namespace {

using cplx = std::complex<double>;

cplx root_of_unity(long long k, long long n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(((k % n) + n) % n) /
                       static_cast<double>(n);
  return std::polar(1.0, angle);
}

int mod_pow(int base, int exp, int p) {
  long long r = 1, b = base % p;
  while (exp > 0) {
    if (exp & 1) r = r * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<int>(r);
}

int primitive_root(int p) {
  for (int g = 2; g < p; ++g) {
    bool ok = true;
    for (int q = 2; q < p - 1 && ok; ++q) {
      if ((p - 1) % q == 0 && is_prime(q) && mod_pow(g, (p - 1) / q, p) == 1) ok = false;
    }
    if (ok) return g;
  }
  return 1;  // p = 2
}

Irrep one_dim(std::string name, std::size_t order, auto&& value) {
  Irrep s{std::move(name), 1, {}};
  s.matrices.reserve(order);
  for (Element x = 0; x < order; ++x) {
    CMatrix m(1, 1);
    m(0, 0) = value(x);
    s.matrices.push_back(std::move(m));
  }
  return s;
}

std::vector<Irrep> cyclic_irreps(int n) {
  std::vector<Irrep> out;
  for (int j = 0; j < n; ++j) {
    out.push_back(one_dim("chi_" + std::to_string(j), static_cast<std::size_t>(n),
                          [&](Element x) { return root_of_unity(static_cast<long long>(j) * x, n); }));
  }
  return out;
}

std::vector<Irrep> dihedral_irreps(int n) {
  const auto order = static_cast<std::size_t>(2 * n);
  std::vector<Irrep> out;
  out.push_back(one_dim("trivial", order, [](Element) { return cplx(1.0); }));
  out.push_back(one_dim("sign", order, [n](Element x) {
    return cplx(static_cast<int>(x) < n ? 1.0 : -1.0);
  }));
  for (int j = 1; 2 * j < n; ++j) {
    Irrep s{"rho_" + std::to_string(j), 2, {}};
    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    for (Element x = 0; x < order; ++x) {
      const int a = static_cast<int>(x) % n, f = static_cast<int>(x) / n;
      CMatrix rot = CMatrix::Zero(2, 2);
      rot(0, 0) = root_of_unity(static_cast<long long>(j) * a, n);
      rot(1, 1) = root_of_unity(-static_cast<long long>(j) * a, n);
      s.matrices.push_back(f == 0 ? rot : CMatrix(rot * swap));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Irrep> affine_irreps(int p) {
  const auto order = static_cast<std::size_t>(p * (p - 1));
  const int gen = primitive_root(p);
  std::vector<int> dlog(p, 0);
  for (int e = 0, v = 1; e < p - 1; ++e, v = v * gen % p) dlog[v] = e;
  std::vector<int> inverse(p, 0);
  for (int a = 1; a < p; ++a) inverse[a] = mod_pow(a, p - 2, p);

  std::vector<Irrep> out;
  for (int k = 0; k < p - 1; ++k) {
    out.push_back(one_dim(k == 0 ? "trivial" : "chi_" + std::to_string(k), order, [&](Element x) {
      const int a = static_cast<int>(x) / p + 1;
      return root_of_unity(static_cast<long long>(k) * dlog[a], p - 1);
    }));
  }
  Irrep big{"standard", static_cast<std::size_t>(p - 1), {}};
  for (Element x = 0; x < order; ++x) {
    const int a = static_cast<int>(x) / p + 1, b = static_cast<int>(x) % p;
    CMatrix m = CMatrix::Zero(p - 1, p - 1);
    for (int u = 1; u < p; ++u) {
      const int au = a * u % p;
      m(au - 1, u - 1) = root_of_unity(static_cast<long long>(b) * inverse[au], p);
    }
    big.matrices.push_back(std::move(m));
  }
  out.push_back(std::move(big));
  return out;
}

// Indices of the Fourier columns belonging to one tuple of irreps.
std::vector<Eigen::Index> tuple_indices(const std::vector<std::size_t>& tuple,
                                        const std::vector<std::size_t>& offsets,
                                        const std::vector<std::size_t>& dims, std::size_t order) {
  std::vector<Eigen::Index> idx{0};
  for (std::size_t s : tuple) {
    const std::size_t width = dims[s] * dims[s];
    std::vector<Eigen::Index> next;
    next.reserve(idx.size() * width);
    for (Eigen::Index prefix : idx)
      for (std::size_t c = 0; c < width; ++c)
        next.push_back(prefix * static_cast<Eigen::Index>(order) +
                       static_cast<Eigen::Index>(offsets[s] + c));
    idx = std::move(next);
  }
  return idx;
}

}  // namespace

std::vector<std::size_t> IrrepTable::offsets() const {
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (const Irrep& s : irreps) {
    off.push_back(acc);
    acc += s.dim * s.dim;
  }
  return off;
}

IrrepCheck check_irrep(const Group& g, const Irrep& s) {
  IrrepCheck c;
  const auto d = static_cast<Eigen::Index>(s.dim);
  const CMatrix eye = CMatrix::Identity(d, d);
  double chi2 = 0.0;
  for (Element x = 0; x < g.order(); ++x) {
    c.unitarity = std::max(c.unitarity, max_abs(s(x) * s(x).adjoint() - eye));
    chi2 += std::norm(s.character(x));
    for (Element y = 0; y < g.order(); ++y) {
      c.homomorphism = std::max(c.homomorphism, max_abs(s(x) * s(y) - s(g.mult(x, y))));
    }
  }
  c.character_norm = std::abs(chi2 / static_cast<double>(g.order()) - 1.0);
  return c;
}

bool has_irrep_table(const Group& g) {
  const FamilyTag& f = g.family();
  if (f.exponent != 1) return false;
  return f.kind == Family::Cyclic || f.kind == Family::Affine ||
         (f.kind == Family::Dihedral && f.param % 2 == 1);
}

IrrepTable irrep_table(const GroupPtr& g) {
  if (!has_irrep_table(*g)) {
    throw InputError("no closed-form irreps for " + g->family().to_string());
  }
  const FamilyTag& f = g->family();
  IrrepTable t{g, {}};
  switch (f.kind) {
    case Family::Cyclic: t.irreps = cyclic_irreps(f.param); break;
    case Family::Dihedral: t.irreps = dihedral_irreps(f.param); break;
    case Family::Affine: t.irreps = affine_irreps(f.param); break;
    default: break;
  }
  return t;
}

HermitianOperator subgroup_projector(const Irrep& s, const Subgroup& h) {
  const auto d = static_cast<Eigen::Index>(s.dim);
  CMatrix pi = CMatrix::Zero(d, d);
  for (Element x : h.elements()) pi += s(x);
  pi /= static_cast<double>(h.order());
  return HermitianOperator(pi, 1e-10);
}

std::size_t projector_rank(const Irrep& s, const Subgroup& h) {
  return static_cast<std::size_t>(std::lround(subgroup_projector(s, h).trace()));
}

CMatrix fourier_basis(const IrrepTable& table) {
  const Group& g = *table.group;
  const auto n = static_cast<Eigen::Index>(g.order());
  std::size_t total = 0;
  for (const Irrep& s : table.irreps) total += s.dim * s.dim;
  if (total != g.order()) throw InputError("irrep table is incomplete");

  CMatrix f(n, n);
  const auto offsets = table.offsets();
  for (std::size_t k = 0; k < table.irreps.size(); ++k) {
    const Irrep& s = table.irreps[k];
    const double scale = std::sqrt(static_cast<double>(s.dim) / static_cast<double>(g.order()));
    for (Element x = 0; x < g.order(); ++x) {
      for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t j = 0; j < s.dim; ++j)
          f(x, static_cast<Eigen::Index>(offsets[k] + i * s.dim + j)) =
              scale * s(x)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return f;
}

namespace {

BlockReport compare_blocks(const HermitianOperator& op, const IrrepTable& table,
                           const std::vector<CMatrix>& expected) {
  const CMatrix f = fourier_basis(table);
  CMatrix t = f.adjoint() * op.matrix() * f;
  BlockReport r;
  const auto offsets = table.offsets();
  for (std::size_t k = 0; k < table.irreps.size(); ++k) {
    const auto off = static_cast<Eigen::Index>(offsets[k]);
    const auto w = static_cast<Eigen::Index>(table.irreps[k].dim * table.irreps[k].dim);
    const double res = max_abs(t.block(off, off, w, w) - expected[k]);
    r.per_block.push_back(res);
    r.max_residual = std::max(r.max_residual, res);
    t.block(off, off, w, w).setZero();
  }
  r.leakage = max_abs(t);
  return r;
}

}  // namespace

BlockReport verify_block_structure(const HermitianOperator& rho, const IrrepTable& table,
                                   const Subgroup& hg) {
  const double ratio = static_cast<double>(hg.order()) / static_cast<double>(table.group->order());
  std::vector<CMatrix> expected;
  for (const Irrep& s : table.irreps) {
    const auto d = static_cast<Eigen::Index>(s.dim);
    expected.push_back(ratio * kron(CMatrix::Identity(d, d), subgroup_projector(s, hg).matrix()));
  }
  return compare_blocks(rho, table, expected);
}

BlockReport verify_pgm_blocks(const HermitianOperator& e, const IrrepTable& table,
                              const Subgroup& hg, double prior) {
  std::vector<CMatrix> expected;
  for (const Irrep& s : table.irreps) {
    const auto d = static_cast<Eigen::Index>(s.dim);
    const HermitianOperator pi = subgroup_projector(s, hg);
    const auto rk = static_cast<std::size_t>(std::lround(pi.trace()));
    if (rk == 0) {
      expected.push_back(CMatrix::Zero(d * d, d * d));
    } else {
      const double coeff = prior * static_cast<double>(s.dim) / static_cast<double>(rk);
      expected.push_back(coeff * kron(CMatrix::Identity(d, d), pi.matrix()));
    }
  }
  return compare_blocks(e, table, expected);
}

std::vector<TensorBlockRank> tensor_block_ranks(const HermitianOperator& rho,
                                                const IrrepTable& table, int k) {
  const std::size_t order = table.group->order();
  CMatrix f = fourier_basis(table);
  CMatrix fk = f;
  for (int r = 1; r < k; ++r) fk = kron(fk, f);
  if (static_cast<std::size_t>(fk.rows()) != rho.dim()) {
    throw InputError("density dimension does not match |G|^k");
  }
  const CMatrix t = fk.adjoint() * rho.matrix() * fk;
  const auto offsets = table.offsets();
  std::vector<std::size_t> dims;
  for (const Irrep& s : table.irreps) dims.push_back(s.dim);

  std::vector<TensorBlockRank> out;
  std::vector<std::size_t> tuple(static_cast<std::size_t>(k), 0);
  while (true) {
    const auto idx = tuple_indices(tuple, offsets, dims, order);
    const auto w = static_cast<Eigen::Index>(idx.size());
    CMatrix block(w, w);
    for (Eigen::Index a = 0; a < w; ++a)
      for (Eigen::Index b = 0; b < w; ++b) block(a, b) = t(idx[a], idx[b]);
    TensorBlockRank entry{tuple, 1, 0};
    for (std::size_t s : tuple) entry.dim *= dims[s];
    // Absolute cutoff: blocks may vanish entirely.
    const Eigen::VectorXd ev = eigenvalues_hermitian((block + block.adjoint()) * 0.5);
    const double floor = 1e-10 * std::pow(1.0 / static_cast<double>(order), k);
    entry.rank = static_cast<std::size_t>((ev.array().abs() > floor).count());
    out.push_back(std::move(entry));

    int r = k - 1;
    while (r >= 0 && ++tuple[r] == table.irreps.size()) tuple[r--] = 0;
    if (r < 0) break;
  }
  return out;
}

double plancherel_SH(const IrrepTable& table, const Subgroup& h) {
  double mass = 0.0;
  for (const Irrep& s : table.irreps) {
    if (projector_rank(s, h) > 0) mass += static_cast<double>(s.dim * s.dim);
  }
  return mass / static_cast<double>(table.group->order());
}

std::vector<double> weak_sampling_distribution(const IrrepTable& table, const Subgroup& h) {
  std::vector<double> p;
  const double scale = static_cast<double>(h.order()) / static_cast<double>(table.group->order());
  for (const Irrep& s : table.irreps) {
    p.push_back(scale * static_cast<double>(s.dim * projector_rank(s, h)));
  }
  return p;
}

bool gelfand_multiplicity_check(const IrrepTable& table, const Subgroup& h) {
  return std::all_of(table.irreps.begin(), table.irreps.end(),
                     [&](const Irrep& s) { return projector_rank(s, h) <= 1; });
}

std::vector<HermitianOperator> isotypic_projectors(const Group& g, int k, std::size_t max_dim) {
  if (k < 1) throw InputError("number of registers must be positive");
  std::size_t dim = 1;
  for (int r = 0; r < k; ++r) {
    dim *= g.order();
    if (dim > max_dim) throw GuardError("isotypic projectors exceed dimension guard");
  }
  const auto n = static_cast<Eigen::Index>(g.order());
  // Class sums act on the s-isotypic component as |K| chi_s(K) / d_s. A generic
  // real combination of K + K^-1 separates all irreps up to complex conjugation.
  std::mt19937_64 rng(0x15070b1cULL);
  std::uniform_real_distribution<double> coeff(1.0, 2.0);
  CMatrix a = CMatrix::Zero(n, n);
  for (const auto& cls : conjugacy_classes(g)) {
    const double c = coeff(rng);
    for (Element x : cls) {
      for (Element y = 0; y < g.order(); ++y) {
        a(g.mult(x, y), y) += c;
        a(y, g.mult(x, y)) += c;
      }
    }
  }
  const SpectralDecomposition sd = eig_hermitian(a);
  const Eigen::VectorXd& ev = sd.values;
  const double scale = 1.0 + ev.cwiseAbs().maxCoeff();

  std::vector<CMatrix> single;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || ev(i) - ev(i - 1) > 1e-7 * scale) {
      const CMatrix v = sd.vectors.middleCols(start, i - start);
      single.push_back(v * v.adjoint());
      start = i;
    }
  }

  std::vector<CMatrix> blocks{CMatrix::Identity(1, 1)};
  for (int r = 0; r < k; ++r) {
    std::vector<CMatrix> next;
    for (const CMatrix& prefix : blocks)
      for (const CMatrix& p : single) next.push_back(kron(prefix, p));
    blocks = std::move(next);
  }
  std::vector<HermitianOperator> out;
  out.reserve(blocks.size());
  for (const CMatrix& b : blocks) out.emplace_back(b, 1e-9);
  return out;
}

}  // namespace pgmlab
