#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invar/modular.hpp"
#include "invar/rational.hpp"

namespace invar::circ {

using GateId = std::uint32_t;
inline constexpr GateId kNoGate = std::numeric_limits<GateId>::max();

enum class GateOp : std::uint8_t { Const, XVar, YVar, Add, Mul };

/// One node of the arithmetic-circuit DAG. Children always carry smaller ids
/// than the gate itself, so the gate list is a topological order by
/// construction. XVar gates read the main variables, YVar gates the
/// auxiliary ones.
struct Gate {
  GateOp op = GateOp::Const;
  Rat value;                 // Const
  std::uint32_t index = 0;   // XVar / YVar
  GateId lhs = kNoGate;      // Add / Mul
  GateId rhs = kNoGate;

  static Gate constant(Rat v) {
    Gate g;
    g.op = GateOp::Const;
    g.value = std::move(v);
    return g;
  }
  static Gate xvar(std::uint32_t idx) {
    Gate g;
    g.op = GateOp::XVar;
    g.index = idx;
    return g;
  }
  static Gate yvar(std::uint32_t idx) {
    Gate g;
    g.op = GateOp::YVar;
    g.index = idx;
    return g;
  }
  static Gate add(GateId l, GateId r) {
    Gate g;
    g.op = GateOp::Add;
    g.lhs = l;
    g.rhs = r;
    return g;
  }
  static Gate mul(GateId l, GateId r) {
    Gate g;
    g.op = GateOp::Mul;
    g.lhs = l;
    g.rhs = r;
    return g;
  }
};

struct CircuitError : std::runtime_error {
  CircuitError(std::string message, GateId gate)
      : std::runtime_error("gate " + std::to_string(gate) + ": " + std::move(message)),
        gate_id(gate) {}
  explicit CircuitError(std::string message) : std::runtime_error(std::move(message)), gate_id(kNoGate) {}
  GateId gate_id;
};

struct ValidationReport {
  std::size_t gate_count = 0;         // s
  std::uint32_t main_vars = 0;        // m
  std::uint32_t aux_vars = 0;         // r
  std::size_t max_const_bits = 0;     // b, 0 when the circuit has no constants
};

/// Immutable arithmetic circuit. Structural invariants (topological order,
/// index bounds, output validity) are established at construction; every
/// transform below returns a fresh circuit. An output slot may be empty,
/// which denotes the structurally-zero polynomial; no Const(0) gate is ever
/// synthesized for it.
class Circuit {
 public:
  Circuit(std::uint32_t main_vars, std::uint32_t aux_vars, std::vector<Gate> gates,
          std::vector<std::optional<GateId>> outputs);

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::optional<GateId>>& outputs() const { return outputs_; }
  std::uint32_t main_var_count() const { return main_vars_; }
  std::uint32_t aux_var_count() const { return aux_vars_; }
  std::size_t size() const { return gates_.size(); }

  /// Re-checks the structural invariants and reports s, m, r and the maximum
  /// constant bit complexity b.
  ValidationReport validate() const;

  /// Gate indices reachable from the outputs.
  std::vector<bool> reachable() const;

  bool has_main_vars() const;

 private:
  std::uint32_t main_vars_;
  std::uint32_t aux_vars_;
  std::vector<Gate> gates_;
  std::vector<std::optional<GateId>> outputs_;
};

/// Convenience incremental constructor; build() validates and freezes.
class CircuitBuilder {
 public:
  CircuitBuilder(std::uint32_t main_vars, std::uint32_t aux_vars)
      : main_vars_(main_vars), aux_vars_(aux_vars) {}

  GateId constant(Rat v) { return push(Gate::constant(std::move(v))); }
  GateId constant(long v) { return push(Gate::constant(Rat(v))); }
  GateId xvar(std::uint32_t idx) { return push(Gate::xvar(idx)); }
  GateId yvar(std::uint32_t idx) { return push(Gate::yvar(idx)); }
  GateId add(GateId l, GateId r) { return push(Gate::add(l, r)); }
  GateId mul(GateId l, GateId r) { return push(Gate::mul(l, r)); }
  GateId push(Gate g) {
    gates_.push_back(std::move(g));
    return static_cast<GateId>(gates_.size() - 1);
  }

  /// Left-fold sum of the given gates; at least one gate required.
  GateId sum(const std::vector<GateId>& terms);
  /// Left-fold product of the given gates; at least one gate required.
  GateId product(const std::vector<GateId>& terms);

  void output(std::optional<GateId> id) { outputs_.push_back(id); }
  std::size_t size() const { return gates_.size(); }

  Circuit build() { return Circuit(main_vars_, aux_vars_, std::move(gates_), std::move(outputs_)); }

 private:
  std::uint32_t main_vars_;
  std::uint32_t aux_vars_;
  std::vector<Gate> gates_;
  std::vector<std::optional<GateId>> outputs_;
};

/// Scalar assignment for an evaluation; totality is only required on the
/// variables reachable from the requested outputs.
template <typename Scalar>
struct Assignment {
  std::map<std::uint32_t, Scalar> main;
  std::map<std::uint32_t, Scalar> aux;
};

struct RationalRing {
  using Scalar = Rat;
  Scalar zero() const { return Rat(0); }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar from_rational(const Rat& q) const { return q; }
  bool is_zero(const Scalar& a) const { return a.is_zero(); }
};

struct PrimeField {
  explicit PrimeField(std::uint64_t prime) : p(prime) {}
  using Scalar = std::uint64_t;
  std::uint64_t p;
  Scalar zero() const { return 0; }
  Scalar add(Scalar a, Scalar b) const { return mod::addmod(a, b, p); }
  Scalar mul(Scalar a, Scalar b) const { return mod::mulmod(a, b, p); }
  Scalar from_rational(const Rat& q) const { return mod::reduce(q, p); }
  bool is_zero(Scalar a) const { return a == 0; }
};

template <typename R>
concept ScalarRing = requires(const R ring, const typename R::Scalar a, const Rat& q) {
  { ring.zero() } -> std::same_as<typename R::Scalar>;
  { ring.add(a, a) } -> std::same_as<typename R::Scalar>;
  { ring.mul(a, a) } -> std::same_as<typename R::Scalar>;
  { ring.from_rational(q) } -> std::same_as<typename R::Scalar>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
};

/// Evaluates every output in the declared ring, gate by gate in topological
/// order. Structurally-zero outputs evaluate to the ring zero. Throws
/// std::invalid_argument when a reachable variable has no assigned value and
/// mod::BadPrimeError when a constant cannot be reduced mod p.
template <ScalarRing R>
std::vector<typename R::Scalar> evaluate(const Circuit& c, const R& ring,
                                         const Assignment<typename R::Scalar>& a) {
  using Scalar = typename R::Scalar;
  const auto reach = c.reachable();
  std::vector<Scalar> val(c.size(), ring.zero());
  for (GateId id = 0; id < c.size(); ++id) {
    if (!reach[id]) continue;
    const Gate& g = c.gates()[id];
    switch (g.op) {
      case GateOp::Const:
        val[id] = ring.from_rational(g.value);
        break;
      case GateOp::XVar: {
        auto it = a.main.find(g.index);
        if (it == a.main.end())
          throw std::invalid_argument("assignment missing main variable " + std::to_string(g.index));
        val[id] = it->second;
        break;
      }
      case GateOp::YVar: {
        auto it = a.aux.find(g.index);
        if (it == a.aux.end())
          throw std::invalid_argument("assignment missing aux variable " + std::to_string(g.index));
        val[id] = it->second;
        break;
      }
      case GateOp::Add:
        val[id] = ring.add(val[g.lhs], val[g.rhs]);
        break;
      case GateOp::Mul:
        val[id] = ring.mul(val[g.lhs], val[g.rhs]);
        break;
    }
  }
  std::vector<Scalar> out;
  out.reserve(c.outputs().size());
  for (const auto& o : c.outputs()) out.push_back(o ? val[*o] : ring.zero());
  return out;
}

/// Replaces every main-variable gate by the constant it is assigned in
/// `point`, which must be total on all main variables. Auxiliary variables
/// and the gate count are untouched; the result is a circuit in the aux
/// variables only.
Circuit substitute_main_vars(const Circuit& c, const std::map<std::uint32_t, Rat>& point);

}  // namespace invar::circ
