#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgmlab/linalg.hpp"

namespace pgmlab {

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  bool inject_uniform = false;  ///< self-test: replace every PGM by uniform guessing
};

/// One fixture of the acceptance table.
struct SuiteRow {
  int criterion = 0;
  std::string fixture;
  double measured = 0.0;
  double expected = 0.0;
  double residual = 0.0;
  double limit = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<SuiteRow> run_suite(const SuiteOptions& options);

std::string suite_csv_header();
std::string to_csv_row(const SuiteRow& row);

/// A random positive semidefinite operator with a random unit vector in its
/// image. With `scalar` set the operator is c times a projector.
struct PowerMeanTrial {
  HermitianOperator a;
  CVector v;
  bool scalar = false;
};

std::vector<PowerMeanTrial> power_mean_trials(std::uint64_t seed, int count);

}  // namespace pgmlab
