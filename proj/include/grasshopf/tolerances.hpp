#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace ghf {

/// Central registry of every named tolerance the library uses.
/// Values can be overridden once at startup (e.g. from --tol name=value);
/// the library reads them at call time through tol().
inline std::map<std::string, double>& tolerance_registry() {
  static std::map<std::string, double> reg = {
      {"skew_hermitian", 1e-12},   // constructor gate, relative
      {"unitary", 1e-10},          // constructor gate
      {"frame", 1e-9},             // orthonormal-column gate
      {"projector", 1e-9},         // Hermitian/idempotent/rank gate
      {"rank", 1e-12},             // smallest admissible singular value in polar_retract
      {"m_part", 1e-10},           // diagonal-block mass tolerated by unhat, relative
      {"star", 1e-10},             // scalar-matrix extraction, relative
      {"j_invariance", 1e-9},      // least-squares residual for the complex-case test
      {"lemma", 1e-10},            // coefficient-vs-oracle relative error gate
      {"su2_model", 1e-12},        // 4x4 model identity checks
      {"loop_closed", 1e-9},
      {"basepoint", 1e-8},         // lift start frame must project onto P(0)
      {"holonomy_unitary", 1e-8},  // V must be unitary to this before phase extraction
      {"law_complex", 1e-5},       // |theta - area/2| report gate, complex surfaces
      {"law_flat", 1e-7},          // ||V - I|| report gate, flat surfaces
      {"order_low", 3.5},          // accepted observed-order window, convergence study
      {"order_high", 4.5},
  };
  return reg;
}

inline double tol(const std::string& name) {
  const auto& reg = tolerance_registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown tolerance: " + name);
  return it->second;
}

inline void set_tol(const std::string& name, double value) {
  tol(name);  // reject unknown names
  tolerance_registry()[name] = value;
}

}  // namespace ghf
