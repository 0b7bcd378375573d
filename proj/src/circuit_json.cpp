#include "invar/circuit_json.hpp"

namespace invar::circ {

namespace {

// Side length n with n^3 == m, or 0 when m is not a perfect cube.
std::uint32_t cube_side(std::uint32_t m) {
  std::uint32_t n = 0;
  while (static_cast<std::uint64_t>(n + 1) * (n + 1) * (n + 1) <= m) ++n;
  return static_cast<std::uint64_t>(n) * n * n == m ? n : 0;
}

Rat rat_from_json(const nlohmann::json& v) {
  if (v.is_string()) return Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw std::invalid_argument("rational must be a \"num/den\" string or an integer");
}

}  // namespace

nlohmann::json to_json(const Circuit& c) {
  nlohmann::json j;
  j["m"] = c.main_var_count();
  j["r"] = c.aux_var_count();
  const std::uint32_t n = cube_side(c.main_var_count());
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates()) {
    nlohmann::json entry;
    switch (g.op) {
      case GateOp::Const:
        entry["op"] = "const";
        entry["value"] = g.value.str();
        break;
      case GateOp::XVar:
        entry["op"] = "xvar";
        if (n > 0) {
          std::uint32_t i = g.index / (n * n), rest = g.index % (n * n);
          entry["index"] = {i + 1, rest / n + 1, rest % n + 1};
        } else {
          entry["index"] = g.index;
        }
        break;
      case GateOp::YVar:
        entry["op"] = "yvar";
        entry["index"] = g.index;
        break;
      case GateOp::Add:
        entry["op"] = "add";
        entry["l"] = g.lhs;
        entry["r"] = g.rhs;
        break;
      case GateOp::Mul:
        entry["op"] = "mul";
        entry["l"] = g.lhs;
        entry["r"] = g.rhs;
        break;
    }
    gates.push_back(std::move(entry));
  }
  j["gates"] = std::move(gates);
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& o : c.outputs()) {
    if (o) {
      outputs.push_back(*o);
    } else {
      outputs.push_back(nullptr);
    }
  }
  j["outputs"] = std::move(outputs);
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  const auto m = j.at("m").get<std::uint32_t>();
  const auto r = j.at("r").get<std::uint32_t>();
  const std::uint32_t n = cube_side(m);
  std::vector<Gate> gates;
  gates.reserve(j.at("gates").size());
  for (const auto& entry : j.at("gates")) {
    const auto op = entry.at("op").get<std::string>();
    if (op == "const") {
      gates.push_back(Gate::constant(rat_from_json(entry.at("value"))));
    } else if (op == "xvar") {
      const auto& idx = entry.at("index");
      if (idx.is_array()) {
        if (idx.size() != 3) throw std::invalid_argument("xvar triple index must have 3 entries");
        if (n == 0) throw std::invalid_argument("xvar triple index requires m to be a perfect cube");
        auto i = idx[0].get<std::uint32_t>(), jj = idx[1].get<std::uint32_t>(), k = idx[2].get<std::uint32_t>();
        if (i < 1 || i > n || jj < 1 || jj > n || k < 1 || k > n)
          throw std::invalid_argument("xvar triple index out of range");
        gates.push_back(Gate::xvar((i - 1) * n * n + (jj - 1) * n + (k - 1)));
      } else {
        gates.push_back(Gate::xvar(idx.get<std::uint32_t>()));
      }
    } else if (op == "yvar") {
      gates.push_back(Gate::yvar(entry.at("index").get<std::uint32_t>()));
    } else if (op == "add") {
      gates.push_back(Gate::add(entry.at("l").get<GateId>(), entry.at("r").get<GateId>()));
    } else if (op == "mul") {
      gates.push_back(Gate::mul(entry.at("l").get<GateId>(), entry.at("r").get<GateId>()));
    } else {
      throw std::invalid_argument("unknown gate op '" + op + "'");
    }
  }
  std::vector<std::optional<GateId>> outputs;
  for (const auto& o : j.at("outputs")) {
    if (o.is_null()) {
      outputs.push_back(std::nullopt);
    } else {
      outputs.push_back(o.get<GateId>());
    }
  }
  return Circuit(m, r, std::move(gates), std::move(outputs));
}

}  // namespace invar::circ
