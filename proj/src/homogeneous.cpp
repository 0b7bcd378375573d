#include "invar/homogeneous.hpp"

namespace invar::circ {

Circuit homogeneous_components(const Circuit& c, int r_max) {
  if (r_max < 0) throw std::invalid_argument("r_max must be nonnegative");
  const std::size_t degrees = static_cast<std::size_t>(r_max) + 1;

  CircuitBuilder out(c.main_var_count(), c.aux_var_count());
  // comp[id][d] is the gate computing the degree-d slice of gate id, or
  // kNoGate when that slice is structurally zero.
  std::vector<std::vector<GateId>> comp(c.size(), std::vector<GateId>(degrees, kNoGate));

  for (GateId id = 0; id < c.size(); ++id) {
    const Gate& g = c.gates()[id];
    switch (g.op) {
      case GateOp::Const:
        comp[id][0] = out.constant(g.value);
        break;
      case GateOp::YVar:
        comp[id][0] = out.yvar(g.index);
        break;
      case GateOp::XVar:
        if (r_max >= 1) comp[id][1] = out.xvar(g.index);
        break;
      case GateOp::Add:
        for (std::size_t d = 0; d < degrees; ++d) {
          GateId l = comp[g.lhs][d];
          GateId r = comp[g.rhs][d];
          if (l != kNoGate && r != kNoGate) {
            comp[id][d] = out.add(l, r);
          } else if (l != kNoGate) {
            comp[id][d] = l;  // alias, no new gate
          } else {
            comp[id][d] = r;  // may itself be kNoGate
          }
        }
        break;
      case GateOp::Mul:
        for (std::size_t d = 0; d < degrees; ++d) {
          GateId acc = kNoGate;
          for (std::size_t i = 0; i <= d; ++i) {
            GateId l = comp[g.lhs][i];
            GateId r = comp[g.rhs][d - i];
            if (l == kNoGate || r == kNoGate) continue;
            GateId term = out.mul(l, r);
            acc = (acc == kNoGate) ? term : out.add(acc, term);
          }
          comp[id][d] = acc;
        }
        break;
    }
  }

  for (const auto& o : c.outputs()) {
    for (std::size_t d = 0; d < degrees; ++d) {
      if (o && comp[*o][d] != kNoGate) {
        out.output(comp[*o][d]);
      } else {
        out.output(std::nullopt);
      }
    }
  }

  if (out.size() > degrees * degrees * c.size())
    throw std::logic_error("homogeneous component circuit exceeded the (r+1)^2 * s gate bound");

  return out.build();
}

}  // namespace invar::circ
