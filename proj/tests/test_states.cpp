#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "pgmlab/error.hpp"
#include "pgmlab/states.hpp"

using namespace pgmlab;

namespace {

double dist(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

const std::vector<std::pair<std::string, std::string>> kPairs = {
    {"dihedral:n=3", "reflection"},  {"dihedral:n=5", "reflection"},
    {"affine:p=5", "zp_star"},       {"symmetric:n=4", "matching"},
    {"symmetric:n=4", "young:2"},    {"heisenberg:p=3", "gens=[9]"},
    {"dihedral:n=5", "gens=[1]"},    {"cyclic:n=6", "gens=[2]"},
};

}  // namespace

TEST_CASE("coset states") {
  const Subgroup h = fixtures::sub("dihedral:n=3", "reflection");
  const CosetState s = coset_state(h, 0);
  CHECK(s.amplitudes.size() == 6);
  CHECK(std::abs(s.amplitudes(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s.amplitudes(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(s.amplitudes.norm() == doctest::Approx(1.0));

  // c and c' = c h label the same coset
  const Group& g = h.group();
  CHECK(dist(coset_state(h, 1).amplitudes, coset_state(h, g.mult(1, 3)).amplitudes) < 1e-15);

  const CosetState e = coset_state(trivial_subgroup(h.parent()), 4);
  CHECK(std::abs(e.amplitudes(4) - 1.0) < 1e-15);
  CHECK(e.amplitudes.norm() == doctest::Approx(1.0));
}

TEST_CASE("single register densities") {
  const GroupPtr d5 = parse_group_spec("dihedral:n=5");
  const HermitianOperator mixed = conjugate_density(trivial_subgroup(d5));
  CHECK(dist(mixed.matrix(), CMatrix::Identity(10, 10) / 10.0) < 1e-15);

  const HermitianOperator whole = conjugate_density(whole_group(d5));
  CHECK(rank_eps(whole) == 1);
  CHECK(dist(whole.matrix(), CMatrix::Constant(10, 10, 0.1)) < 1e-15);

  const HermitianOperator rho = conjugate_density(fixtures::d5_reflection());
  CHECK(rho.trace() == doctest::Approx(1.0));
  CHECK(rank_eps(rho) == 5);
  CHECK(dist(rho.matrix() * rho.matrix(), rho.matrix() * 0.2) < 1e-12);
}

TEST_CASE("density families") {
  const DensityFamily d5 = density_family(fixtures::d5_reflection(), 1);
  CHECK(d5.ensemble.size() == 5);
  for (double p : d5.ensemble.priors) CHECK(p == doctest::Approx(0.2));
  CHECK(d5.scale() == doctest::Approx(0.2));

  const DensityFamily d3 = density_family(fixtures::sub("dihedral:n=3", "reflection"), 2);
  CHECK(d3.ensemble.size() == 3);
  CHECK(d3.ensemble.dim() == 36);
  for (const auto& rho : d3.ensemble.states) {
    CHECK(rho.trace() == doctest::Approx(1.0));
    CHECK(rank_eps(rho) == 9);
  }

  const DensityFamily normal = density_family(fixtures::sub("dihedral:n=5", "gens=[1]"), 3);
  CHECK(normal.ensemble.size() == 1);

  CHECK_THROWS_AS(density_family(fixtures::d5_reflection(), 0), InputError);
  CHECK_THROWS_AS(density_family(fixtures::d5_reflection(), 4), GuardError);
  CHECK_NOTHROW(density_family(fixtures::sub("dihedral:n=3", "reflection"), 3, 216));
}

TEST_CASE("density invariants") {
  for (const auto& [gs, hs] : kPairs) {
    const Subgroup h = fixtures::sub(gs, hs);
    const Group& g = h.group();
    for (int k = 1; k <= 2; ++k) {
      if (std::pow(static_cast<double>(g.order()), k) > 800) continue;
      const DensityFamily fam = density_family(h, k);
      CHECK_NOTHROW(validate_ensemble(fam.ensemble));
      const double scale = std::pow(static_cast<double>(h.order()) / g.order(), k);
      for (const auto& rho : fam.ensemble.states) {
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig_hermitian(rho).values.minCoeff() >= -1e-12);
        CHECK(dist(rho.matrix() * rho.matrix(), rho.matrix() * scale) < 1e-9);
        if (k == 1) CHECK(rank_eps(rho) == g.order() / h.order());
      }
    }
  }
}

TEST_CASE("regular action symmetries") {
  for (const auto& [gs, hs] : kPairs) {
    const Subgroup h = fixtures::sub(gs, hs);
    const Group& g = h.group();
    const DensityFamily fam = density_family(h, 1);
    const CMatrix m = mixture(fam.ensemble).op.matrix();
    for (Element x = 0; x < g.order(); ++x) {
      const CMatrix l = left_multiplication(g, x);
      const CMatrix r = right_multiplication(g, x);
      for (const auto& rho : fam.ensemble.states) {
        CHECK(dist(l * rho.matrix(), rho.matrix() * l) < 1e-12);
      }
      CHECK(dist(l * m, m * l) < 1e-12);
      CHECK(dist(r * m, m * r) < 1e-12);
      // rho for H^x is R_x rho_H R_x^dagger
      const HermitianOperator moved = conjugate_density(conjugate_subgroup(h, x));
      CHECK(dist(moved.matrix(), r * conjugate_density(h).matrix() * r.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("mixtures") {
  const DensityFamily normal = density_family(fixtures::sub("dihedral:n=5", "gens=[1]"), 1);
  const Mixture single = mixture(normal.ensemble);
  CHECK(dist(single.op.matrix(), normal.ensemble.states[0].matrix()) < 1e-15);

  const Mixture d5 = mixture(density_family(fixtures::d5_reflection(), 1).ensemble);
  CHECK(d5.factors.rank == 9);

  const GroupPtr g = parse_group_spec("dihedral:n=5");
  const Mixture mixed = mixture(density_family(trivial_subgroup(g), 1).ensemble);
  CHECK(dist(mixed.op.matrix(), CMatrix::Identity(10, 10) / 10.0) < 1e-15);
  CHECK(mixed.factors.rank == 10);
}

TEST_CASE("coarse ensembles") {
  const DensityFamily fam = density_family(fixtures::sub("dihedral:n=7", "reflection"), 1);
  const Ensemble c = coarse_ensemble(fam.ensemble, {{0, 1, 2}, {3, 4, 5, 6}});
  CHECK(c.size() == 2);
  CHECK(c.priors[0] == doctest::Approx(3.0 / 7.0));
  CHECK(c.priors[1] == doctest::Approx(4.0 / 7.0));
  const CMatrix avg = (fam.ensemble.states[0].matrix() + fam.ensemble.states[1].matrix() +
                       fam.ensemble.states[2].matrix()) /
                      3.0;
  CHECK(dist(c.states[0].matrix(), avg) < 1e-15);
  CHECK_NOTHROW(validate_ensemble(c));
  // the mixture is unchanged by grouping
  CHECK(dist(mixture(c).op.matrix(), mixture(fam.ensemble).op.matrix()) < 1e-15);

  CHECK_THROWS_AS(coarse_ensemble(fam.ensemble, {{0, 1, 2}, {3, 4, 5}}), InputError);
  CHECK_THROWS_AS(coarse_ensemble(fam.ensemble, {{0, 1, 2, 3}, {3, 4, 5, 6}}), InputError);
  CHECK_THROWS_AS(coarse_ensemble(fam.ensemble, {{0, 1, 2}, {3, 4, 5, 6}, {}}), InputError);
  CHECK_THROWS_AS(coarse_ensemble(fam.ensemble, {{0, 1, 2}, {3, 4, 5, 9}}), InputError);
}

TEST_CASE("ensemble validation") {
  Ensemble e;
  e.states = {HermitianOperator::identity(2) * 0.5};
  e.priors = {1.0};
  CHECK_NOTHROW(validate_ensemble(e));

  e.priors = {0.9};
  CHECK_THROWS_AS(validate_ensemble(e), NumericalError);

  e.priors = {1.0};
  e.states = {HermitianOperator::identity(2)};
  CHECK_THROWS_AS(validate_ensemble(e), NumericalError);

  CMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  e.states = {HermitianOperator(neg)};
  CHECK_THROWS_AS(validate_ensemble(e), NumericalError);
}
