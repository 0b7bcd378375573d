#include "invar/nullcone.hpp"

#include <algorithm>

#include "invar/simplex.hpp"

namespace invar::nullcone {

namespace {

Rat vector_sum(const std::vector<Rat>& v) {
  Rat s(0);
  for (const Rat& x : v) s += x;
  return s;
}

}  // namespace

bool SeparatingTriple::verify(const std::vector<torus::Triple>& supp) const {
  const std::size_t n = x.size();
  if (y.size() != n || z.size() != n) return false;
  if (margin.sign() <= 0) return false;
  if (!vector_sum(x).is_zero() || !vector_sum(y).is_zero() || !vector_sum(z).is_zero()) return false;
  for (const torus::Triple& e : supp) {
    if (x[e.i - 1] + y[e.j - 1] + z[e.k - 1] < margin) return false;
  }
  return true;
}

bool FractionalMatching::verify(const std::vector<torus::Triple>& supp, std::uint32_t n) const {
  if (n == 0) return false;
  Rat total(0);
  std::vector<Rat> m1(n, Rat(0)), m2(n, Rat(0)), m3(n, Rat(0));
  for (const auto& [e, w] : weights) {
    if (w.sign() < 0) return false;
    if (std::find(supp.begin(), supp.end(), e) == supp.end()) return false;
    total += w;
    m1[e.i - 1] += w;
    m2[e.j - 1] += w;
    m3[e.k - 1] += w;
  }
  if (total != Rat(1)) return false;
  const Rat share(1, static_cast<long>(n));
  for (std::uint32_t v = 0; v < n; ++v) {
    if (m1[v] != share || m2[v] != share || m3[v] != share) return false;
  }
  return true;
}

namespace {

// Margin LP over split variables u = (x+, x-, y+, y-, z+, z-, t+, t-).
struct MarginLP {
  lp::Problem problem;
  std::size_t edge_row_base = 0;  // edge rows come first, in supp order
};

MarginLP build_margin_lp(const std::vector<torus::Triple>& supp, std::uint32_t n) {
  MarginLP out;
  const std::size_t vars = 6 * static_cast<std::size_t>(n) + 2;
  const auto xp = [](std::uint32_t i) { return static_cast<std::size_t>(i); };
  const auto xm = [n](std::uint32_t i) { return static_cast<std::size_t>(n) + i; };
  const auto yp = [n](std::uint32_t j) { return 2 * static_cast<std::size_t>(n) + j; };
  const auto ym = [n](std::uint32_t j) { return 3 * static_cast<std::size_t>(n) + j; };
  const auto zp = [n](std::uint32_t k) { return 4 * static_cast<std::size_t>(n) + k; };
  const auto zm = [n](std::uint32_t k) { return 5 * static_cast<std::size_t>(n) + k; };
  const std::size_t tp = 6 * static_cast<std::size_t>(n);
  const std::size_t tm = tp + 1;

  out.problem.vars = vars;
  out.edge_row_base = 0;
  for (const torus::Triple& e : supp) {
    std::vector<Rat> row(vars, Rat(0));
    row[xp(e.i - 1)] = Rat(-1);
    row[xm(e.i - 1)] = Rat(1);
    row[yp(e.j - 1)] = Rat(-1);
    row[ym(e.j - 1)] = Rat(1);
    row[zp(e.k - 1)] = Rat(-1);
    row[zm(e.k - 1)] = Rat(1);
    row[tp] = Rat(1);
    row[tm] = Rat(-1);
    out.problem.rows.push_back(std::move(row));
    out.problem.rhs.push_back(Rat(0));
  }
  {
    std::vector<Rat> row(vars, Rat(0));
    row[tp] = Rat(1);
    row[tm] = Rat(-1);
    out.problem.rows.push_back(std::move(row));
    out.problem.rhs.push_back(Rat(1));
  }
  // zero-sum equalities, split into <= pairs
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<Rat> row(vars, Rat(0));
      for (std::uint32_t v = 0; v < n; ++v) {
        std::size_t plus = axis == 0 ? xp(v) : axis == 1 ? yp(v) : zp(v);
        std::size_t minus = axis == 0 ? xm(v) : axis == 1 ? ym(v) : zm(v);
        row[plus] = Rat(sign == 0 ? 1 : -1);
        row[minus] = Rat(sign == 0 ? -1 : 1);
      }
      out.problem.rows.push_back(std::move(row));
      out.problem.rhs.push_back(Rat(0));
    }
  }
  out.problem.objective.assign(vars, Rat(0));
  out.problem.objective[tp] = Rat(1);
  out.problem.objective[tm] = Rat(-1);
  return out;
}

}  // namespace

std::optional<FractionalMatching> fractional_matching(const std::vector<torus::Triple>& supp,
                                                      std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("fractional matching needs n >= 1");
  // max sum(w) under per-value marginal caps of 1/n; the optimum is 1 exactly
  // when a fractional perfect matching exists.
  lp::Problem p;
  p.vars = supp.size();
  p.objective.assign(p.vars, Rat(1));
  const Rat share(1, static_cast<long>(n));
  for (int axis = 0; axis < 3; ++axis) {
    for (std::uint32_t v = 1; v <= n; ++v) {
      std::vector<Rat> row(p.vars, Rat(0));
      for (std::size_t e = 0; e < supp.size(); ++e) {
        std::uint32_t coord = axis == 0 ? supp[e].i : axis == 1 ? supp[e].j : supp[e].k;
        if (coord == v) row[e] = Rat(1);
      }
      p.rows.push_back(std::move(row));
      p.rhs.push_back(share);
    }
  }
  lp::Solution sol = lp::maximize(p);
  if (sol.objective != Rat(1)) return std::nullopt;
  FractionalMatching fm;
  for (std::size_t e = 0; e < supp.size(); ++e) {
    if (!sol.primal[e].is_zero()) fm.weights[supp[e]] = sol.primal[e];
  }
  return fm;
}

Verdict null_cone_membership(const torus::Tensor3& t) {
  const std::uint32_t n = t.n();
  if (n == 0) throw std::invalid_argument("null-cone test needs n >= 1");
  const std::vector<torus::Triple> supp = t.support();

  MarginLP lp = build_margin_lp(supp, n);
  lp::Solution sol = lp::maximize(lp.problem);
  if (sol.objective.sign() < 0 || sol.objective > Rat(1))
    throw std::logic_error("margin LP optimum escaped [0, 1]");

  Verdict verdict;
  verdict.in_null_cone = sol.objective.sign() > 0;
  if (verdict.in_null_cone) {
    SeparatingTriple triple;
    triple.margin = sol.objective;
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<Rat> v;
      for (std::uint32_t q = 0; q < n; ++q) {
        std::size_t plus = (2 * axis) * static_cast<std::size_t>(n) + q;
        std::size_t minus = (2 * axis + 1) * static_cast<std::size_t>(n) + q;
        v.push_back(sol.primal[plus] - sol.primal[minus]);
      }
      (axis == 0 ? triple.x : axis == 1 ? triple.y : triple.z) = std::move(v);
    }
    if (!triple.verify(supp)) throw std::logic_error("separating triple failed exact re-verification");
    verdict.triple = std::move(triple);
  } else {
    FractionalMatching fm;
    for (std::size_t e = 0; e < supp.size(); ++e) {
      const Rat& w = sol.dual[lp.edge_row_base + e];
      if (!w.is_zero()) fm.weights[supp[e]] = w;
    }
    if (!fm.verify(supp, n)) throw std::logic_error("dual weights failed exact re-verification");
    verdict.matching = std::move(fm);
  }

  // Duality cross-check via the independent feasibility solve.
  std::optional<FractionalMatching> fm2 = fractional_matching(supp, n);
  if (fm2.has_value() == verdict.in_null_cone)
    throw std::logic_error("primal margin and dual feasibility disagree");
  return verdict;
}

}  // namespace invar::nullcone
