#pragma once

#include <cstdint>

namespace weavekit {

// Which side of the operator appears in the lower bound term of the
// Theta-frame inequality: `adjoint` tests A*||T^* f||^2 (the K-frame
// convention), `direct` tests A*||T f||^2. Both collapse to the ordinary
// frame inequality when T is the identity.
enum class ThetaSide { adjoint, direct };

// Tunables shared by the bound computations and the weaving checkers.
// Defaults are the desk-scale values used throughout the test suites.
struct Settings {
  // A family counts as a (Theta-)frame when its optimal lower bound
  // exceeds this; strict positivity is meaningless in floating point.
  double verdict_eps = 1e-9;

  ThetaSide theta_side = ThetaSide::adjoint;

  // Exhaustive weaving checkers refuse above this many selections.
  std::uint64_t enumeration_cap = std::uint64_t{1} << 20;
};

}  // namespace weavekit
