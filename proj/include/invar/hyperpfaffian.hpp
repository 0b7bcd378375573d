#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "invar/rational.hpp"

namespace invar::hyperpf {

/// Shape of a hyperpfaffian evaluation: order-2k tensors over a 2kn
/// dimensional space, paired against the top wedge in degree n.
struct HyperPfParams {
  std::uint32_t k = 1;
  std::uint32_t n = 1;

  std::uint32_t order() const { return 2 * k; }
  std::uint32_t dim() const { return 2 * k * n; }
  void check() const;  // k, n >= 1 and k*n <= 8
};

/// Sparse order-m tensor over an N-dimensional space; indices are 1-based.
class SparseTensor {
 public:
  SparseTensor(std::uint32_t order, std::uint32_t dim) : order_(order), dim_(dim) {}

  std::uint32_t order() const { return order_; }
  std::uint32_t dim() const { return dim_; }
  void set(std::vector<std::uint32_t> index, Rat value);
  const std::map<std::vector<std::uint32_t>, Rat>& terms() const { return terms_; }

  nlohmann::json to_json(std::uint32_t k, std::uint32_t n) const;
  static SparseTensor from_json(const nlohmann::json& j);

 private:
  std::uint32_t order_, dim_;
  std::map<std::vector<std::uint32_t>, Rat> terms_;
};

/// Pairing of a basis tensor e_{t1} x ... x e_{tN} against the top wedge:
/// zero when an index repeats, otherwise the sign of the permutation.
int wedge_pairing(std::uint32_t dim, std::span<const std::uint32_t> tuple);

/// <e_1 ^ ... ^ e_{2kn}, p tensor-power n>: the sum over ordered n-tuples of
/// terms of p of the coefficient product times the wedge pairing of the
/// concatenated indices. Tuples with colliding index sets are pruned by a
/// used-index bitmask. Guarded by k*n <= 8 and a bound on the enumeration
/// size.
Rat hyperpfaffian_eval(const HyperPfParams& params, const SparseTensor& p);

using Matrix = std::vector<std::vector<Rat>>;

/// The projection tensor p(X) = sum_{i,j=0}^{d-1} X[i][j] *
/// (e_{1+2ki} x ... x e_{k+2ki} x e_{k+1+2kj} x ... x e_{2k+2kj}),
/// with exactly d^2 terms.
SparseTensor projection_point(std::uint32_t k, std::uint32_t d, const Matrix& x);

struct ProjectionReport {
  Rat eval;
  Rat expected;      // d! * permanent for even k, d! * determinant for odd k
  bool used_permanent = false;
  bool ok = false;
};

/// Evaluates the hyperpfaffian at the projection point and compares it,
/// exactly, with d! times the permanent (even k) or determinant (odd k).
ProjectionReport projection_identity_check(std::uint32_t k, std::uint32_t d, const Matrix& x);

/// Exact permanent by Ryser's inclusion-exclusion; guarded at d <= 10.
Rat permanent(const Matrix& x);
/// Exact determinant by rational Gaussian elimination.
Rat determinant(const Matrix& x);

/// g . p with g applied to every tensor slot.
SparseTensor apply_matrix(const SparseTensor& p, const Matrix& g);

struct InvarianceReport {
  Rat before, after;
  bool ok = false;
};

/// Checks hyperpfaffian_eval(g . p) == hyperpfaffian_eval(p) exactly for a
/// matrix of determinant one; det(g) != 1 is an argument error.
InvarianceReport sl_invariance_check(const HyperPfParams& params, const SparseTensor& p,
                                     const Matrix& g);

}  // namespace invar::hyperpf
