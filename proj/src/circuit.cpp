#include "invar/circuit.hpp"

#include <algorithm>

namespace invar::circ {

namespace {

void check_structure(std::uint32_t main_vars, std::uint32_t aux_vars,
                     const std::vector<Gate>& gates,
                     const std::vector<std::optional<GateId>>& outputs) {
  for (GateId id = 0; id < gates.size(); ++id) {
    const Gate& g = gates[id];
    switch (g.op) {
      case GateOp::Const:
        break;
      case GateOp::XVar:
        if (g.index >= main_vars) throw CircuitError("main variable index out of bounds", id);
        break;
      case GateOp::YVar:
        if (g.index >= aux_vars) throw CircuitError("aux variable index out of bounds", id);
        break;
      case GateOp::Add:
      case GateOp::Mul:
        if (g.lhs >= id || g.rhs >= id)
          throw CircuitError("child id does not precede gate (topological order violated)", id);
        break;
    }
  }
  for (const auto& o : outputs) {
    if (o && *o >= gates.size())
      throw CircuitError("output references gate " + std::to_string(*o) + " past the end");
  }
}

}  // namespace

Circuit::Circuit(std::uint32_t main_vars, std::uint32_t aux_vars, std::vector<Gate> gates,
                 std::vector<std::optional<GateId>> outputs)
    : main_vars_(main_vars), aux_vars_(aux_vars), gates_(std::move(gates)), outputs_(std::move(outputs)) {
  check_structure(main_vars_, aux_vars_, gates_, outputs_);
}

ValidationReport Circuit::validate() const {
  check_structure(main_vars_, aux_vars_, gates_, outputs_);
  ValidationReport report;
  report.gate_count = gates_.size();
  report.main_vars = main_vars_;
  report.aux_vars = aux_vars_;
  for (const Gate& g : gates_) {
    if (g.op == GateOp::Const) report.max_const_bits = std::max(report.max_const_bits, g.value.bit_complexity());
  }
  return report;
}

std::vector<bool> Circuit::reachable() const {
  std::vector<bool> seen(gates_.size(), false);
  std::vector<GateId> stack;
  for (const auto& o : outputs_) {
    if (o && !seen[*o]) {
      seen[*o] = true;
      stack.push_back(*o);
    }
  }
  while (!stack.empty()) {
    GateId id = stack.back();
    stack.pop_back();
    const Gate& g = gates_[id];
    if (g.op == GateOp::Add || g.op == GateOp::Mul) {
      for (GateId child : {g.lhs, g.rhs}) {
        if (!seen[child]) {
          seen[child] = true;
          stack.push_back(child);
        }
      }
    }
  }
  return seen;
}

bool Circuit::has_main_vars() const {
  return std::any_of(gates_.begin(), gates_.end(),
                     [](const Gate& g) { return g.op == GateOp::XVar; });
}

GateId CircuitBuilder::sum(const std::vector<GateId>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum of zero gates");
  GateId acc = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) acc = add(acc, terms[i]);
  return acc;
}

GateId CircuitBuilder::product(const std::vector<GateId>& terms) {
  if (terms.empty()) throw std::invalid_argument("product of zero gates");
  GateId acc = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) acc = mul(acc, terms[i]);
  return acc;
}

Circuit substitute_main_vars(const Circuit& c, const std::map<std::uint32_t, Rat>& point) {
  for (std::uint32_t idx = 0; idx < c.main_var_count(); ++idx) {
    if (!point.contains(idx))
      throw std::invalid_argument("substitution point missing main variable " + std::to_string(idx));
  }
  std::vector<Gate> gates;
  gates.reserve(c.size());
  for (const Gate& g : c.gates()) {
    if (g.op == GateOp::XVar) {
      gates.push_back(Gate::constant(point.at(g.index)));
    } else {
      gates.push_back(g);
    }
  }
  return Circuit(0, c.aux_var_count(), std::move(gates), c.outputs());
}

}  // namespace invar::circ
