// Unified command-line entry point. Every subcommand reads and writes JSON:
// the result goes to stdout (byte-stable for a fixed seed), a one-line run
// manifest goes to stderr. Exit codes: 0 affirmative/success, 1 negative
// verdict, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "invar/circuit_json.hpp"
#include "invar/homogeneous.hpp"
#include "invar/hyperpfaffian.hpp"
#include "invar/nullcone.hpp"
#include "invar/pit.hpp"
#include "invar/repaudit.hpp"
#include "invar/torus.hpp"

namespace {

constexpr const char* kVersion = "invar 0.1.0";

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct RunContext {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> epsilon;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  // Prints the result on stdout and the manifest on stderr; returns the code.
  int finish(const nlohmann::json& result, int code) const {
    const std::string body = result.dump();
    std::cout << body << "\n";
    auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    nlohmann::json manifest;
    manifest["subcommand"] = subcommand;
    manifest["inputs"] = inputs;
    manifest["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    manifest["epsilon"] = epsilon ? nlohmann::json(*epsilon) : nlohmann::json(nullptr);
    manifest["version"] = kVersion;
    manifest["wall_ms"] = wall;
    manifest["digest"] = fnv1a_hex(body);
    std::cerr << manifest.dump() << "\n";
    return code;
  }
};

nlohmann::json triple_weights_json(const std::map<invar::torus::Triple, invar::Rat>& weights) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [t, w] : weights) out.push_back({t.i, t.j, t.k, w.str()});
  return out;
}

invar::hyperpf::Matrix matrix_from_json(const nlohmann::json& j) {
  const nlohmann::json& rows = j.is_object() && j.contains("rows") ? j.at("rows") : j;
  invar::hyperpf::Matrix x;
  for (const auto& row : rows) {
    std::vector<invar::Rat> r;
    for (const auto& v : row)
      r.push_back(v.is_string() ? invar::Rat::parse(v.get<std::string>()) : invar::Rat(v.get<long>()));
    x.push_back(std::move(r));
  }
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational invariant theory toolkit"};
  app.require_subcommand(1);

  std::string circuit_path, instance_path, encoding_path, tensor_path, matrix_path;
  std::string epsilon_text = "1/128";
  std::uint64_t seed = 0;
  unsigned prime_bits = 62;
  int rmax = 0;
  std::uint32_t n_arg = 0, k_arg = 0, d_arg = 0, big_n = 0, m_arg = 0;
  bool check_flag = false;

  auto* pit_cmd = app.add_subcommand("pit", "identity-test a circuit over its aux variables");
  pit_cmd->add_option("--circuit", circuit_path, "circuit JSON file")->required();
  pit_cmd->add_option("--epsilon", epsilon_text, "error budget, e.g. 1/128");
  pit_cmd->add_option("--seed", seed, "RNG seed");
  pit_cmd->add_option("--prime-bits", prime_bits, "prime bit length (32..62)");

  auto* homog_cmd = app.add_subcommand("homog", "emit the homogeneous components of a circuit");
  homog_cmd->add_option("--circuit", circuit_path, "circuit JSON file")->required();
  homog_cmd->add_option("--rmax", rmax, "largest degree to extract")->required();

  auto* match_cmd = app.add_subcommand("match", "3-dimensional matching pipelines");
  match_cmd->require_subcommand(1);
  auto* decide_cmd = match_cmd->add_subcommand("decide", "decide an instance via an encoding circuit");
  decide_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  decide_cmd->add_option("--encoding", encoding_path, "encoding circuit JSON (default: reference)");
  decide_cmd->add_option("--seed", seed, "RNG seed");
  decide_cmd->add_option("--epsilon", epsilon_text, "error budget");
  auto* mindeg_cmd = match_cmd->add_subcommand("verify-mindeg", "exhaustive minimal-degree check");
  mindeg_cmd->add_option("--n", n_arg, "side length (1..4)")->required();

  auto* nullcone_cmd = app.add_subcommand("nullcone", "exact null-cone membership for a 3-tensor");
  nullcone_cmd->add_option("--tensor", tensor_path, "tensor JSON file")->required();

  auto* hyperpf_cmd = app.add_subcommand("hyperpf", "hyperpfaffian evaluation");
  hyperpf_cmd->require_subcommand(1);
  auto* eval_cmd = hyperpf_cmd->add_subcommand("eval", "evaluate at a sparse tensor");
  eval_cmd->add_option("--tensor", tensor_path, "sparse tensor JSON file")->required();
  auto* project_cmd = hyperpf_cmd->add_subcommand("project", "projection point of a matrix");
  project_cmd->add_option("--k", k_arg, "half the tensor order")->required();
  project_cmd->add_option("--d", d_arg, "matrix size")->required();
  project_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  project_cmd->add_flag("--check", check_flag, "compare against d! * permanent (even k) or determinant (odd k)");

  auto* repaudit_cmd = app.add_subcommand("repaudit", "brute-force invariant-space audits");
  repaudit_cmd->require_subcommand(1);
  auto* dim_cmd = repaudit_cmd->add_subcommand("dim", "dimension of the invariant space");
  dim_cmd->add_option("--N", big_n, "SL_N")->required();
  dim_cmd->add_option("--m", m_arg, "tensor order")->required();
  dim_cmd->add_option("--d", d_arg, "symmetric power")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  RunContext ctx;
  try {
    if (*pit_cmd) {
      ctx = {"pit", {circuit_path}, seed, epsilon_text};
      invar::pit::PitConfig cfg{invar::Rat::parse(epsilon_text), seed, prime_bits};
      auto circuit = invar::circ::circuit_from_json(load_json(circuit_path));
      auto res = invar::pit::pit(circuit, cfg);
      nlohmann::json out;
      if (res.identically_zero) {
        out["verdict"] = "zero";
        return ctx.finish(out, 0);
      }
      out["verdict"] = "nonzero";
      nlohmann::json point = nlohmann::json::object();
      for (const auto& [idx, v] : res.witness->point) point[std::to_string(idx)] = v;
      out["witness"] = {{"prime", res.witness->prime}, {"point", point}, {"values", res.witness->values}};
      return ctx.finish(out, 1);
    }

    if (*homog_cmd) {
      ctx = {"homog", {circuit_path}, std::nullopt, std::nullopt};
      auto circuit = invar::circ::circuit_from_json(load_json(circuit_path));
      auto sliced = invar::circ::homogeneous_components(circuit, rmax);
      return ctx.finish(invar::circ::to_json(sliced), 0);
    }

    if (*decide_cmd) {
      ctx = {"match decide", {instance_path}, seed, epsilon_text};
      auto instance = invar::torus::MatchingInstance::from_json(load_json(instance_path));
      invar::pit::PitConfig cfg{invar::Rat::parse(epsilon_text), seed, prime_bits};
      invar::circ::Circuit encoding = encoding_path.empty()
                                          ? invar::torus::reference_encoding(instance.n)
                                          : invar::circ::circuit_from_json(load_json(encoding_path));
      if (!encoding_path.empty()) ctx.inputs.push_back(encoding_path);
      auto answer = invar::torus::decide_matching_via_encoding(instance, encoding, cfg);
      nlohmann::json out;
      out["answer"] = answer == invar::torus::MatchAnswer::Yes ? "YES" : "NO";
      return ctx.finish(out, answer == invar::torus::MatchAnswer::Yes ? 0 : 1);
    }

    if (*mindeg_cmd) {
      ctx = {"match verify-mindeg", {}, std::nullopt, std::nullopt};
      auto report = invar::torus::verify_min_degree(n_arg);
      nlohmann::json out;
      out["n"] = report.n;
      out["counts"] = report.invariant_counts;
      out["ok"] = report.ok;
      if (report.counterexample) out["counterexample"] = *report.counterexample;
      return ctx.finish(out, report.ok ? 0 : 1);
    }

    if (*nullcone_cmd) {
      ctx = {"nullcone", {tensor_path}, std::nullopt, std::nullopt};
      auto tensor = invar::torus::Tensor3::from_json(load_json(tensor_path));
      auto verdict = invar::nullcone::null_cone_membership(tensor);
      nlohmann::json out;
      if (verdict.in_null_cone) {
        nlohmann::json cert;
        auto vec = [](const std::vector<invar::Rat>& v) {
          nlohmann::json a = nlohmann::json::array();
          for (const auto& x : v) a.push_back(x.str());
          return a;
        };
        cert["x"] = vec(verdict.triple->x);
        cert["y"] = vec(verdict.triple->y);
        cert["z"] = vec(verdict.triple->z);
        cert["t"] = verdict.triple->margin.str();
        out["verdict"] = "in_null_cone";
        out["certificate"] = std::move(cert);
        return ctx.finish(out, 0);
      }
      out["verdict"] = "not_in_null_cone";
      out["certificate"] = {{"weights", triple_weights_json(verdict.matching->weights)}};
      return ctx.finish(out, 1);
    }

    if (*eval_cmd) {
      ctx = {"hyperpf eval", {tensor_path}, std::nullopt, std::nullopt};
      auto j = load_json(tensor_path);
      invar::hyperpf::HyperPfParams params{j.at("k").get<std::uint32_t>(), j.at("n").get<std::uint32_t>()};
      auto tensor = invar::hyperpf::SparseTensor::from_json(j);
      nlohmann::json out;
      out["eval"] = invar::hyperpf::hyperpfaffian_eval(params, tensor).str();
      return ctx.finish(out, 0);
    }

    if (*project_cmd) {
      ctx = {"hyperpf project", {matrix_path}, std::nullopt, std::nullopt};
      auto x = matrix_from_json(load_json(matrix_path));
      if (check_flag) {
        auto report = invar::hyperpf::projection_identity_check(k_arg, d_arg, x);
        nlohmann::json out;
        out["eval"] = report.eval.str();
        out["expected"] = report.expected.str();
        out["ok"] = report.ok;
        return ctx.finish(out, report.ok ? 0 : 1);
      }
      auto p = invar::hyperpf::projection_point(k_arg, d_arg, x);
      return ctx.finish(p.to_json(k_arg, d_arg), 0);
    }

    if (*dim_cmd) {
      ctx = {"repaudit dim", {}, std::nullopt, std::nullopt};
      nlohmann::json out;
      out["N"] = big_n;
      out["m"] = m_arg;
      out["d"] = d_arg;
      out["dimension"] = invar::repaudit::invariant_dimension(big_n, m_arg, d_arg);
      return ctx.finish(out, 0);
    }

    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
