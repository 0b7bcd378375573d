#include "invar/hyperpfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace invar::hyperpf {

void HyperPfParams::check() const {
  if (k < 1 || n < 1) throw std::invalid_argument("hyperpfaffian parameters need k, n >= 1");
  if (k * n > 8) throw std::invalid_argument("desk-scale guard: k*n <= 8");
}

void SparseTensor::set(std::vector<std::uint32_t> index, Rat value) {
  if (index.size() != order_) throw std::invalid_argument("term index has the wrong length");
  for (std::uint32_t v : index) {
    if (v < 1 || v > dim_) throw std::invalid_argument("term index entry out of range");
  }
  if (value.is_zero()) {
    terms_.erase(index);
  } else {
    terms_[std::move(index)] = std::move(value);
  }
}

nlohmann::json SparseTensor::to_json(std::uint32_t k, std::uint32_t n) const {
  nlohmann::json j;
  j["k"] = k;
  j["n"] = n;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [idx, coeff] : terms_) terms.push_back({idx, coeff.str()});
  j["terms"] = std::move(terms);
  return j;
}

SparseTensor SparseTensor::from_json(const nlohmann::json& j) {
  HyperPfParams params{j.at("k").get<std::uint32_t>(), j.at("n").get<std::uint32_t>()};
  params.check();
  SparseTensor t(params.order(), params.dim());
  for (const auto& term : j.at("terms")) {
    if (term.size() != 2) throw std::invalid_argument("term must be [[indices], value]");
    auto idx = term[0].get<std::vector<std::uint32_t>>();
    Rat v = term[1].is_string() ? Rat::parse(term[1].get<std::string>()) : Rat(term[1].get<long>());
    t.set(std::move(idx), std::move(v));
  }
  return t;
}

int wedge_pairing(std::uint32_t dim, std::span<const std::uint32_t> tuple) {
  if (tuple.size() != dim) throw std::invalid_argument("wedge pairing tuple must have length dim");
  std::uint32_t seen = 0;
  for (std::uint32_t v : tuple) {
    if (v < 1 || v > dim) throw std::invalid_argument("wedge pairing index out of range");
    const std::uint32_t bit = 1u << (v - 1);
    if (seen & bit) return 0;
    seen |= bit;
  }
  unsigned inversions = 0;
  for (std::size_t a = 0; a < tuple.size(); ++a)
    for (std::size_t b = a + 1; b < tuple.size(); ++b)
      if (tuple[a] > tuple[b]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

namespace {

struct EvalTerm {
  std::uint32_t mask = 0;
  const std::vector<std::uint32_t>* index = nullptr;
  const Rat* coeff = nullptr;
};

void eval_recurse(const std::vector<EvalTerm>& terms, std::uint32_t depth, std::uint32_t want,
                  std::uint32_t used, std::vector<std::uint32_t>& indices, const Rat& coeff,
                  std::uint32_t dim, Rat& acc) {
  if (depth == want) {
    acc += coeff * Rat(static_cast<long>(wedge_pairing(dim, indices)));
    return;
  }
  for (const EvalTerm& t : terms) {
    if (used & t.mask) continue;
    indices.insert(indices.end(), t.index->begin(), t.index->end());
    eval_recurse(terms, depth + 1, want, used | t.mask, indices, coeff * *t.coeff, dim, acc);
    indices.resize(indices.size() - t.index->size());
  }
}

}  // namespace

Rat hyperpfaffian_eval(const HyperPfParams& params, const SparseTensor& p) {
  params.check();
  if (p.order() != params.order() || p.dim() != params.dim())
    throw std::invalid_argument("tensor shape does not match the hyperpfaffian parameters");

  // terms with an internally repeated index can never meet the wedge
  std::vector<EvalTerm> terms;
  for (const auto& [idx, coeff] : p.terms()) {
    std::uint32_t mask = 0;
    bool clean = true;
    for (std::uint32_t v : idx) {
      const std::uint32_t bit = 1u << (v - 1);
      if (mask & bit) {
        clean = false;
        break;
      }
      mask |= bit;
    }
    if (clean) terms.push_back({mask, &idx, &coeff});
  }

  double enumeration = std::pow(static_cast<double>(std::max<std::size_t>(terms.size(), 1)),
                                static_cast<double>(params.n));
  if (enumeration > 2e8)
    throw std::invalid_argument("term-tuple enumeration exceeds the desk-scale guard");

  Rat acc(0);
  std::vector<std::uint32_t> indices;
  indices.reserve(params.dim());
  eval_recurse(terms, 0, params.n, 0, indices, Rat(1), params.dim(), acc);
  return acc;
}

SparseTensor projection_point(std::uint32_t k, std::uint32_t d, const Matrix& x) {
  if (x.size() != d) throw std::invalid_argument("matrix must be d x d");
  for (const auto& row : x)
    if (row.size() != d) throw std::invalid_argument("matrix must be d x d");
  HyperPfParams params{k, d};
  params.check();
  SparseTensor p(params.order(), params.dim());
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      std::vector<std::uint32_t> index;
      index.reserve(2 * k);
      for (std::uint32_t a = 1; a <= k; ++a) index.push_back(a + 2 * k * i);
      for (std::uint32_t a = k + 1; a <= 2 * k; ++a) index.push_back(a + 2 * k * j);
      p.set(std::move(index), x[i][j]);
    }
  }
  return p;
}

Rat permanent(const Matrix& x) {
  const std::size_t d = x.size();
  for (const auto& row : x)
    if (row.size() != d) throw std::invalid_argument("permanent needs a square matrix");
  if (d > 10) throw std::invalid_argument("permanent enumeration is guarded at d <= 10");
  if (d == 0) return Rat(1);
  // Ryser: per(X) = (-1)^d sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} x_ij
  Rat total(0);
  const std::uint32_t full = 1u << d;
  for (std::uint32_t s = 1; s < full; ++s) {
    Rat prod(1);
    for (std::size_t i = 0; i < d && !prod.is_zero(); ++i) {
      Rat rowsum(0);
      for (std::size_t j = 0; j < d; ++j)
        if (s & (1u << j)) rowsum += x[i][j];
      prod *= rowsum;
    }
    if ((d - static_cast<std::size_t>(__builtin_popcount(s))) % 2 == 0) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

Rat determinant(const Matrix& x) {
  const std::size_t d = x.size();
  for (const auto& row : x)
    if (row.size() != d) throw std::invalid_argument("determinant needs a square matrix");
  if (d == 0) return Rat(1);
  Matrix a = x;
  Rat det(1);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col].is_zero()) ++pivot;
    if (pivot == d) return Rat(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < d; ++row) {
      if (a[row][col].is_zero()) continue;
      Rat factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < d; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  return det;
}

ProjectionReport projection_identity_check(std::uint32_t k, std::uint32_t d, const Matrix& x) {
  if (k * d > 8) throw std::invalid_argument("desk-scale guard: k*d <= 8");
  ProjectionReport report;
  report.used_permanent = (k % 2 == 0);
  HyperPfParams params{k, d};
  report.eval = hyperpfaffian_eval(params, projection_point(k, d, x));
  Rat factorial(1);
  for (std::uint32_t q = 2; q <= d; ++q) factorial *= Rat(static_cast<long>(q));
  report.expected = factorial * (report.used_permanent ? permanent(x) : determinant(x));
  report.ok = report.eval == report.expected;
  return report;
}

SparseTensor apply_matrix(const SparseTensor& p, const Matrix& g) {
  const std::uint32_t dim = p.dim();
  if (g.size() != dim) throw std::invalid_argument("transform matrix must be dim x dim");
  for (const auto& row : g)
    if (row.size() != dim) throw std::invalid_argument("transform matrix must be dim x dim");

  std::map<std::vector<std::uint32_t>, Rat> accum;
  std::vector<std::uint32_t> target(p.order(), 1);
  for (const auto& [idx, coeff] : p.terms()) {
    // expand (g e_{i1}) x ... x (g e_{im}) slot by slot
    std::function<void(std::size_t, const Rat&)> expand = [&](std::size_t slot, const Rat& c) {
      if (c.is_zero()) return;
      if (slot == idx.size()) {
        Rat& cell = accum.try_emplace(target, Rat(0)).first->second;
        cell += c;
        return;
      }
      const std::uint32_t source = idx[slot];
      for (std::uint32_t t = 1; t <= dim; ++t) {
        const Rat& entry = g[t - 1][source - 1];
        if (entry.is_zero()) continue;
        target[slot] = t;
        expand(slot + 1, c * entry);
      }
    };
    expand(0, coeff);
  }

  SparseTensor out(p.order(), dim);
  for (auto& [idx, coeff] : accum) {
    if (!coeff.is_zero()) out.set(idx, std::move(coeff));
  }
  return out;
}

InvarianceReport sl_invariance_check(const HyperPfParams& params, const SparseTensor& p,
                                     const Matrix& g) {
  params.check();
  if (determinant(g) != Rat(1))
    throw std::invalid_argument("sl invariance check needs det(g) = 1 exactly");
  InvarianceReport report;
  report.before = hyperpfaffian_eval(params, p);
  report.after = hyperpfaffian_eval(params, apply_matrix(p, g));
  report.ok = report.before == report.after;
  return report;
}

}  // namespace invar::hyperpf
