#pragma once

// Seeded random generators shared by the unit and acceptance suites.

#include <set>
#include <vector>

#include "invar/circuit.hpp"
#include "invar/hyperpfaffian.hpp"
#include "invar/splitmix.hpp"
#include "invar/torus.hpp"

namespace testsupport {

using invar::Rat;
using invar::SplitMix64;

inline Rat random_rational(SplitMix64& rng, long bound = 20) {
  return Rat(rng.range(-bound, bound), rng.range(1, bound));
}

inline Rat random_nonzero_rational(SplitMix64& rng, long bound = 20) {
  for (;;) {
    Rat r = random_rational(rng, bound);
    if (!r.is_zero()) return r;
  }
}

/// Random circuit over main and aux variables with the main-variable degree
/// of every gate capped; output is the last gate.
inline invar::circ::Circuit random_circuit(SplitMix64& rng, std::uint32_t main_vars,
                                           std::uint32_t aux_vars, std::size_t max_gates,
                                           unsigned max_xdeg) {
  invar::circ::CircuitBuilder b(main_vars, aux_vars);
  std::vector<unsigned> xdeg;

  const std::size_t leaves = 2 + rng.below(4);
  for (std::size_t q = 0; q < leaves; ++q) {
    switch (rng.below(3)) {
      case 0:
        b.constant(random_rational(rng, 9));
        xdeg.push_back(0);
        break;
      case 1:
        if (main_vars > 0) {
          b.xvar(static_cast<std::uint32_t>(rng.below(main_vars)));
          xdeg.push_back(1);
          break;
        }
        [[fallthrough]];
      default:
        b.yvar(static_cast<std::uint32_t>(rng.below(aux_vars)));
        xdeg.push_back(0);
        break;
    }
  }

  while (b.size() < max_gates) {
    auto l = static_cast<invar::circ::GateId>(rng.below(b.size()));
    auto r = static_cast<invar::circ::GateId>(rng.below(b.size()));
    if (rng.below(2) == 0 && xdeg[l] + xdeg[r] <= max_xdeg) {
      b.mul(l, r);
      xdeg.push_back(xdeg[l] + xdeg[r]);
    } else {
      b.add(l, r);
      xdeg.push_back(std::max(xdeg[l], xdeg[r]));
    }
  }
  b.output(static_cast<invar::circ::GateId>(b.size() - 1));
  return b.build();
}

/// Circuit computing a sparse polynomial in the aux variables with distinct
/// monomials and nonzero coefficients, hence provably nonzero. Gate count
/// stays at or below 40.
inline invar::circ::Circuit random_nonzero_aux_circuit(SplitMix64& rng) {
  const std::uint32_t vars = 1 + static_cast<std::uint32_t>(rng.below(4));
  std::size_t distinct_monomials = 1;  // 3^vars, saturating at the term cap
  for (std::uint32_t v = 0; v < vars && distinct_monomials < 4; ++v) distinct_monomials *= 3;
  const std::size_t terms = 1 + rng.below(std::min<std::size_t>(4, distinct_monomials));
  std::set<std::vector<std::uint32_t>> exponents;
  while (exponents.size() < terms) {
    std::vector<std::uint32_t> e(vars);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(3));
    exponents.insert(e);
  }
  invar::circ::CircuitBuilder b(0, vars);
  std::vector<invar::circ::GateId> yg(vars);
  for (std::uint32_t v = 0; v < vars; ++v) yg[v] = b.yvar(v);
  std::vector<invar::circ::GateId> term_gates;
  for (const auto& e : exponents) {
    invar::circ::GateId acc = b.constant(random_nonzero_rational(rng, 9));
    for (std::uint32_t v = 0; v < vars; ++v)
      for (std::uint32_t rep = 0; rep < e[v]; ++rep) acc = b.mul(acc, yg[v]);
    term_gates.push_back(acc);
  }
  b.output(b.sum(term_gates));
  if (b.size() > 40) throw std::logic_error("nonzero-circuit generator exceeded 40 gates");
  return b.build();
}

/// Zero circuit disguised by expanding a ring identity over shared random
/// subexpressions.
inline invar::circ::Circuit disguised_zero_circuit(SplitMix64& rng) {
  const std::uint32_t vars = 2 + static_cast<std::uint32_t>(rng.below(3));
  invar::circ::CircuitBuilder b(0, vars);

  auto leaf = [&]() -> invar::circ::GateId {
    if (rng.below(4) == 0) return b.constant(random_nonzero_rational(rng, 5));
    return b.yvar(static_cast<std::uint32_t>(rng.below(vars)));
  };
  auto expr = [&]() -> invar::circ::GateId {
    invar::circ::GateId acc = leaf();
    const std::size_t steps = rng.below(3);
    for (std::size_t q = 0; q < steps; ++q)
      acc = rng.below(2) == 0 ? b.add(acc, leaf()) : b.mul(acc, leaf());
    return acc;
  };

  const auto a = expr();
  const auto c = expr();
  const auto d = expr();
  const auto neg = [&](invar::circ::GateId g) { return b.mul(b.constant(-1L), g); };

  invar::circ::GateId zero;
  switch (rng.below(5)) {
    case 0: {  // (a+c)^2 - a^2 - 2ac - c^2
      auto s = b.add(a, c);
      auto lhs = b.mul(s, s);
      auto rhs = b.add(b.add(b.mul(a, a), b.mul(b.constant(2L), b.mul(a, c))), b.mul(c, c));
      zero = b.add(lhs, neg(rhs));
      break;
    }
    case 1: {  // (a+c)(a-c) - a^2 + c^2
      auto lhs = b.mul(b.add(a, c), b.add(a, neg(c)));
      zero = b.add(b.add(lhs, neg(b.mul(a, a))), b.mul(c, c));
      break;
    }
    case 2: {  // a(c+d) - ac - ad
      auto lhs = b.mul(a, b.add(c, d));
      zero = b.add(lhs, neg(b.add(b.mul(a, c), b.mul(a, d))));
      break;
    }
    case 3: {  // (ac)d - a(cd)
      zero = b.add(b.mul(b.mul(a, c), d), neg(b.mul(a, b.mul(c, d))));
      break;
    }
    default: {  // ac - ca
      zero = b.add(b.mul(a, c), neg(b.mul(c, a)));
      break;
    }
  }
  b.output(zero);
  return b.build();
}

inline invar::torus::MatchingInstance random_instance(SplitMix64& rng, std::uint32_t n,
                                                      std::size_t edge_count) {
  invar::torus::MatchingInstance u;
  u.n = n;
  while (u.edges.size() < edge_count) {
    u.edges.insert({static_cast<std::uint16_t>(1 + rng.below(n)),
                    static_cast<std::uint16_t>(1 + rng.below(n)),
                    static_cast<std::uint16_t>(1 + rng.below(n))});
  }
  return u;
}

/// Instance containing a random planted perfect matching plus `extra` noise
/// edges, so positive cases occur at every n.
inline invar::torus::MatchingInstance random_instance_with_matching(SplitMix64& rng,
                                                                    std::uint32_t n,
                                                                    std::size_t extra) {
  invar::torus::MatchingInstance u;
  u.n = n;
  std::vector<std::uint16_t> sigma(n), tau(n);
  for (std::uint32_t q = 0; q < n; ++q) sigma[q] = tau[q] = static_cast<std::uint16_t>(q + 1);
  for (std::uint32_t q = n; q > 1; --q) {
    std::swap(sigma[q - 1], sigma[rng.below(q)]);
    std::swap(tau[q - 1], tau[rng.below(q)]);
  }
  for (std::uint32_t i = 0; i < n; ++i)
    u.edges.insert({static_cast<std::uint16_t>(i + 1), sigma[i], tau[i]});
  while (u.edges.size() < n + extra) {
    u.edges.insert({static_cast<std::uint16_t>(1 + rng.below(n)),
                    static_cast<std::uint16_t>(1 + rng.below(n)),
                    static_cast<std::uint16_t>(1 + rng.below(n))});
  }
  return u;
}

inline std::vector<invar::torus::Triple> random_support(SplitMix64& rng, std::uint32_t n,
                                                        std::size_t edge_count) {
  auto u = random_instance(rng, n, edge_count);
  return {u.edges.begin(), u.edges.end()};
}

inline invar::hyperpf::Matrix random_int_matrix(SplitMix64& rng, std::uint32_t d, long bound = 9) {
  invar::hyperpf::Matrix x(d, std::vector<Rat>(d, Rat(0)));
  for (auto& row : x)
    for (auto& v : row) v = Rat(rng.range(-bound, bound));
  return x;
}

/// Random determinant-one matrix: a product of row shears
/// (row_i += c * row_j) and paired scalings (row_i *= s, row_j /= s).
inline invar::hyperpf::Matrix random_unimodular(SplitMix64& rng, std::uint32_t dim,
                                                unsigned ops = 8) {
  invar::hyperpf::Matrix g(dim, std::vector<Rat>(dim, Rat(0)));
  for (std::uint32_t i = 0; i < dim; ++i) g[i][i] = Rat(1);
  for (unsigned q = 0; q < ops; ++q) {
    std::uint32_t i = static_cast<std::uint32_t>(rng.below(dim));
    std::uint32_t j = static_cast<std::uint32_t>(rng.below(dim));
    if (dim >= 2) {
      while (j == i) j = static_cast<std::uint32_t>(rng.below(dim));
    }
    if (dim >= 2 && rng.below(4) != 0) {
      Rat c = random_nonzero_rational(rng, 3);
      for (std::uint32_t col = 0; col < dim; ++col) g[i][col] += c * g[j][col];
    } else if (dim >= 2) {
      Rat s = random_nonzero_rational(rng, 3);
      for (std::uint32_t col = 0; col < dim; ++col) {
        g[i][col] *= s;
        g[j][col] /= s;
      }
    }
  }
  return g;
}

inline invar::hyperpf::SparseTensor random_sparse_tensor(SplitMix64& rng,
                                                         const invar::hyperpf::HyperPfParams& params,
                                                         std::size_t term_count) {
  invar::hyperpf::SparseTensor t(params.order(), params.dim());
  for (std::size_t q = 0; q < term_count; ++q) {
    std::vector<std::uint32_t> idx(params.order());
    for (auto& v : idx) v = 1 + static_cast<std::uint32_t>(rng.below(params.dim()));
    t.set(std::move(idx), random_nonzero_rational(rng, 5));
  }
  return t;
}

/// Random element (a, b, c) of the cubed determinant-one diagonal torus:
/// each factor has nonzero rational coordinates with product one.
inline std::vector<std::vector<Rat>> random_torus_element(SplitMix64& rng, std::uint32_t n) {
  std::vector<std::vector<Rat>> abc;
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<Rat> v;
    Rat prod(1);
    for (std::uint32_t q = 0; q + 1 < n; ++q) {
      Rat r = random_nonzero_rational(rng, 5);
      v.push_back(r);
      prod *= r;
    }
    v.push_back(prod.inverse());
    abc.push_back(std::move(v));
  }
  return abc;
}

}  // namespace testsupport
