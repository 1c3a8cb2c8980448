#pragma once

#include "orliczmp/functional.hpp"
#include "orliczmp/hypothesis.hpp"
#include "orliczmp/mountain_pass.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace orliczmp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An experiment file:
///
///   [problem]
///   name = plaplacian_test     ; built-in problem
///   T = 1                      ; every other key goes to the problem
///   f_amp = 0
///
///   [solver]                   ; optional, MountainPassConfig fields
///   grad_tol = 1e-8
///
///   [check]                    ; optional, HypothesisOptions fields
///   directions = 64
struct Experiment {
  std::string source;            // file path or "builtin:<name>"
  std::string problem_name;
  ProblemParams params;
  Problem problem;
  MountainPassConfig solver;
  HypothesisOptions check;
};

/// Errors name the section and key ("[solver] grad_tol: not a number: 'x'").
Experiment parse_experiment(std::istream& is, const std::string& source = "<stream>");
Experiment load_experiment(const std::string& path);
/// A built-in problem with default solver and check settings.
Experiment builtin_experiment(const std::string& name, const ProblemParams& params = {});

/// Rebuilds exp.problem after exp.params changed.
void rebuild_problem(Experiment& exp);

}  // namespace orliczmp
