#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dscsim/model.hpp"

namespace dscsim {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;  // worst observed value
  double bound = 0.0;
  std::string comparison;  // "<" or ">"
};

struct ValidationReport {
  std::vector<PropertyResult> results;

  bool all_passed() const;
  const PropertyResult* find(const std::string& name) const;
  /// Deterministic fixed-format table, one line per property.
  std::string to_text() const;
};

/// Closed forms under test. Swapping one out lets a harness check that the
/// suite notices a wrong formula.
struct ValidationHooks {
  std::function<double(const RabiParams&, double)> lf_revival;
  std::function<double(const RabiParams&, double)> lf_mean_photon;
};

ValidationHooks default_hooks();

/// Runs the numerical invariant and oracle-agreement suite at fixed seeds.
ValidationReport run_validation(const ValidationHooks& hooks = default_hooks());

}  // namespace dscsim
