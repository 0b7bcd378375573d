#pragma once

#include <map>
#include <optional>
#include <vector>

#include "invar/rational.hpp"
#include "invar/torus.hpp"

namespace invar::nullcone {

/// Hilbert-Mumford certificate of null-cone membership for the cube of the
/// determinant-one diagonal torus: zero-sum weight vectors with
/// x_i + y_j + z_k >= margin on every support triple, margin > 0.
struct SeparatingTriple {
  std::vector<Rat> x, y, z;
  Rat margin;

  bool verify(const std::vector<torus::Triple>& supp) const;
};

/// Dual certificate of non-membership: weights on the support summing to 1
/// whose three axis marginals are the constant vector 1/n.
struct FractionalMatching {
  std::map<torus::Triple, Rat> weights;

  bool verify(const std::vector<torus::Triple>& supp, std::uint32_t n) const;
};

struct Verdict {
  bool in_null_cone = false;
  std::optional<SeparatingTriple> triple;       // present iff in_null_cone
  std::optional<FractionalMatching> matching;   // present iff !in_null_cone
};

/// Exact membership test. Solves max t s.t. x_i + y_j + z_k >= t on
/// supp(T), zero-sum constraints and t <= 1 by exact rational simplex. The
/// tensor is in the null cone iff the optimal margin is positive. Both the
/// returned certificate and the LP-dual route are re-verified on every
/// solve; a disagreement raises std::logic_error.
Verdict null_cone_membership(const torus::Tensor3& t);

/// Independent feasibility solve for the dual polytope; engaged as a
/// cross-check inside null_cone_membership and available on its own.
std::optional<FractionalMatching> fractional_matching(const std::vector<torus::Triple>& supp,
                                                      std::uint32_t n);

}  // namespace invar::nullcone
