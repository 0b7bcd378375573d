#pragma once

#include "invar/circuit.hpp"

namespace invar::circ {

/// Splits every output polynomial into its homogeneous components with
/// respect to the MAIN variables; auxiliary variables count as degree-0
/// constants. For each original output o the result exposes r_max + 1
/// outputs H_0[o], ..., H_{r_max}[o], laid out consecutively. Components
/// that are structurally zero are emitted as empty output slots rather than
/// Const(0) gates, so the multiset of constants in the result is a subset of
/// the input's constants.
///
/// The gate count of the result is at most (r_max + 1)^2 * s, which is
/// asserted on every construction; for r_max >= 1 this is within 4 * r_max^2 * s.
Circuit homogeneous_components(const Circuit& c, int r_max);

/// Output index of H_d for original output `output_idx` in the circuit
/// returned by homogeneous_components(c, r_max).
inline std::size_t component_output_index(std::size_t output_idx, int r_max, int d) {
  return output_idx * (static_cast<std::size_t>(r_max) + 1) + static_cast<std::size_t>(d);
}

}  // namespace invar::circ
