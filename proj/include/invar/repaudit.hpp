#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "invar/rational.hpp"

namespace invar::repaudit {

/// Monomial basis of Sym^d(tensor^m C^N). W-basis tuples are the m-tuples
/// over [N] in lexicographic order; a Sym-basis monomial is a nondecreasing
/// d-tuple of W indices (a multiset), again ordered lexicographically.
struct SymBasis {
  std::uint32_t N = 0, m = 0, d = 0;
  std::vector<std::vector<std::uint32_t>> w_tuples;
  std::vector<std::vector<std::uint32_t>> monomials;
  std::map<std::vector<std::uint32_t>, std::uint32_t> monomial_index;
};

SymBasis build_sym_basis(std::uint32_t N, std::uint32_t m, std::uint32_t d);

/// dim Sym^d(tensor^m C^N) = C(N^m + d - 1, d), as an exact integer.
mpz_class sym_dimension(std::uint32_t N, std::uint32_t m, std::uint32_t d);

/// Standard sl_N generator: an elementary E_{ab} (a != b) or a diagonal
/// E_{aa} - E_{a+1,a+1}. Indices are 1-based.
struct Generator {
  bool diagonal = false;
  std::uint32_t a = 0, b = 0;
};

/// The N^2 - 1 standard generators: all E_{ab} with a != b, then the N - 1
/// diagonal differences.
std::vector<Generator> sl_generators(std::uint32_t N);

/// Action of a generator on one Sym-basis monomial by the product rule
/// across all d * m slots: coefficients of the image, keyed by monomial
/// index.
std::map<std::uint32_t, Rat> apply_generator_monomial(const SymBasis& basis, const Generator& gen,
                                                      std::uint32_t monomial);

/// Generator action on a full coordinate vector; used to re-verify that
/// extracted kernel vectors are annihilated exactly.
std::vector<Rat> apply_generator_full(const SymBasis& basis, const Generator& gen,
                                      std::span<const Rat> coords);

/// Dimension of the space of SL_N-invariant vectors in Sym^d(tensor^m C^N):
/// the kernel dimension of the stacked generator-constraint matrix over
/// exact rationals. The diagonal constraints annihilate every monomial whose
/// multidegree is unbalanced, so elimination pivots on those singleton rows
/// first and the remaining system ranges over the balanced monomials only.
/// Guarded by dim Sym^d <= 20000.
std::uint32_t invariant_dimension(std::uint32_t N, std::uint32_t m, std::uint32_t d);

/// Kernel basis vector when the invariant space is one-dimensional, scaled
/// so its lexicographically-first nonzero coordinate is +1. Throws
/// std::runtime_error when the dimension is not 1.
std::vector<Rat> extract_invariant(std::uint32_t N, std::uint32_t m, std::uint32_t d);

}  // namespace invar::repaudit
