#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "invar/circuit.hpp"
#include "invar/pit.hpp"
#include "invar/rational.hpp"

namespace invar::torus {

/// 1-based coordinate triple in [n]^3.
struct Triple {
  std::uint16_t i = 0, j = 0, k = 0;
  auto operator<=>(const Triple&) const = default;
};

inline std::uint32_t flat_index(const Triple& t, std::uint32_t n) {
  return (t.i - 1u) * n * n + (t.j - 1u) * n + (t.k - 1u);
}

/// Sparse n x n x n tensor over exact rationals; absent entries are zero.
class Tensor3 {
 public:
  explicit Tensor3(std::uint32_t n) : n_(n) {}

  std::uint32_t n() const { return n_; }
  void set(Triple t, Rat value);
  Rat at(Triple t) const;
  const std::map<Triple, Rat>& entries() const { return entries_; }
  std::vector<Triple> support() const;

  /// Total assignment for all n^3 main variables (zeros included).
  std::map<std::uint32_t, Rat> dense_point() const;

  nlohmann::json to_json() const;
  static Tensor3 from_json(const nlohmann::json& j);

 private:
  void check_range(const Triple& t) const;
  std::uint32_t n_;
  std::map<Triple, Rat> entries_;
};

/// Nonnegative-integer exponent pattern of a monomial in the x_{ijk}.
class ExponentTensor {
 public:
  explicit ExponentTensor(std::uint32_t n) : n_(n) {}

  std::uint32_t n() const { return n_; }
  void bump(Triple t, std::uint32_t by = 1);
  std::uint32_t at(Triple t) const;
  const std::map<Triple, std::uint32_t>& exponents() const { return exp_; }
  std::uint64_t degree() const;

  std::string str() const;

 private:
  std::uint32_t n_;
  std::map<Triple, std::uint32_t> exp_;
};

struct Marginals {
  std::vector<std::uint64_t> axis1, axis2, axis3;
};

/// Axis sums M1[i] = sum_{j,k} E_{ijk} and likewise for the other axes.
Marginals marginals(const ExponentTensor& e);

/// True iff each axis marginal is a constant vector, which characterizes
/// invariance under the cube of the determinant-one diagonal torus.
bool is_invariant_monomial(const ExponentTensor& e);

/// prod_i x_{i sigma(i) tau(i)} for permutations sigma, tau of [n] (1-based).
struct MatchingMonomial {
  std::vector<std::uint32_t> sigma, tau;
  ExponentTensor exponents(std::uint32_t n) const;
};

/// All n!^2 matching monomials, ordered lexicographically by the word of
/// sigma and then the word of tau. Guarded at n <= 6.
std::vector<MatchingMonomial> enumerate_matching_monomials(std::uint32_t n);

struct MinDegreeReport {
  std::uint32_t n = 0;
  std::vector<std::uint64_t> invariant_counts;  // index d-1 holds the count at degree d
  bool ok = false;
  std::optional<std::string> counterexample;
};

/// Exhaustively enumerates all exponent tensors of degree d for d = 1..n and
/// checks that no invariant monomial exists below degree n and that the
/// degree-n invariant monomials are exactly the n!^2 matching monomials.
/// Guarded at n <= 4.
MinDegreeReport verify_min_degree(std::uint32_t n);

/// Tripartite 3-uniform hypergraph instance; edge triples are 1-based and
/// duplicate-free.
struct MatchingInstance {
  std::uint32_t n = 0;
  std::set<Triple> edges;

  nlohmann::json to_json() const;
  static MatchingInstance from_json(const nlohmann::json& j);
  void check() const;
};

/// 0/1 tensor with support equal to the instance's edge set.
Tensor3 instance_to_tensor(const MatchingInstance& u);

/// Reference encoding C(x, y) = sum_m y_m * prod_i x_{i sigma(i) tau(i)}
/// over the canonically ordered matching monomials, with r = n!^2 aux
/// variables. Its specializations span exactly the matching monomials, so
/// its degree-n slice stands in for the degree-n slice of any encoding whose
/// specializations generate the invariant ring. It covers only that slice,
/// not a full generating set. Guarded at n <= 4.
circ::Circuit reference_encoding(std::uint32_t n);

enum class MatchAnswer { Yes, No };

/// Decision pipeline: slice C at degree n, substitute the instance tensor
/// for the main variables, and identity-test the resulting polynomial in y.
/// The caller asserts that C's degree-n slice spans the matching monomials.
MatchAnswer decide_matching_via_encoding(const MatchingInstance& u, const circ::Circuit& c,
                                         const pit::PitConfig& cfg);

/// Exhaustive backtracking solver; exact. Guarded at n <= 8.
bool brute_force_matching(const MatchingInstance& u);

/// Enumerates all multisets of size `degree` over `slots` (as nondecreasing
/// index sequences into `slots`), invoking fn with the chosen slot indices.
void for_each_multiset(std::size_t slot_count, std::uint32_t degree,
                       const std::function<void(std::span<const std::uint32_t>)>& fn);

}  // namespace invar::torus
