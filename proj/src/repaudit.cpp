#include "invar/repaudit.hpp"

#include <algorithm>
#include <stdexcept>

namespace invar::repaudit {

namespace {

constexpr unsigned long kDimensionGuard = 20000;

void check_params(std::uint32_t N, std::uint32_t m, std::uint32_t d) {
  if (N < 1 || m < 1 || d < 1) throw std::invalid_argument("N, m, d must all be >= 1");
  if (sym_dimension(N, m, d) > kDimensionGuard)
    throw std::invalid_argument("dim Sym^d(tensor^m C^N) exceeds the guard of 20000");
}

// per-value counts of a W tuple
std::vector<std::uint32_t> tuple_weight(const std::vector<std::uint32_t>& tuple, std::uint32_t N) {
  std::vector<std::uint32_t> w(N, 0);
  for (std::uint32_t v : tuple) w[v - 1]++;
  return w;
}

struct EchelonQ {
  std::vector<std::vector<Rat>> rows;    // normalized: leading coefficient 1
  std::vector<std::size_t> leads;

  // Reduces `row` against the echelon and inserts the remainder when nonzero.
  void insert(std::vector<Rat> row) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rat& coeff = row[leads[r]];
      if (coeff.is_zero()) continue;
      Rat factor = coeff;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= factor * rows[r][j];
    }
    std::size_t lead = row.size();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_zero()) {
        lead = j;
        break;
      }
    }
    if (lead == row.size()) return;
    Rat inv = row[lead].inverse();
    for (auto& v : row) v *= inv;
    rows.push_back(std::move(row));
    leads.push_back(lead);
  }

  std::size_t rank() const { return rows.size(); }
};

}  // namespace

mpz_class sym_dimension(std::uint32_t N, std::uint32_t m, std::uint32_t d) {
  mpz_class wdim;
  mpz_ui_pow_ui(wdim.get_mpz_t(), N, m);
  mpz_class top = wdim + d - 1;
  mpz_class result;
  mpz_bin_ui(result.get_mpz_t(), top.get_mpz_t(), d);
  return result;
}

SymBasis build_sym_basis(std::uint32_t N, std::uint32_t m, std::uint32_t d) {
  check_params(N, m, d);
  SymBasis basis;
  basis.N = N;
  basis.m = m;
  basis.d = d;

  std::vector<std::uint32_t> tuple(m, 1);
  for (;;) {
    basis.w_tuples.push_back(tuple);
    std::size_t pos = m;
    while (pos > 0 && tuple[pos - 1] == N) --pos;
    if (pos == 0) break;
    tuple[pos - 1]++;
    for (std::size_t q = pos; q < m; ++q) tuple[q] = 1;
  }

  const std::uint32_t wcount = static_cast<std::uint32_t>(basis.w_tuples.size());
  std::vector<std::uint32_t> mono(d, 0);
  for (;;) {
    basis.monomial_index[mono] = static_cast<std::uint32_t>(basis.monomials.size());
    basis.monomials.push_back(mono);
    std::size_t pos = d;
    while (pos > 0 && mono[pos - 1] == wcount - 1) --pos;
    if (pos == 0) break;
    std::uint32_t next = mono[pos - 1] + 1;
    for (std::size_t q = pos - 1; q < d; ++q) mono[q] = next;
  }
  return basis;
}

std::vector<Generator> sl_generators(std::uint32_t N) {
  std::vector<Generator> gens;
  for (std::uint32_t a = 1; a <= N; ++a)
    for (std::uint32_t b = 1; b <= N; ++b)
      if (a != b) gens.push_back({false, a, b});
  for (std::uint32_t a = 1; a + 1 <= N; ++a) gens.push_back({true, a, a + 1});
  return gens;
}

namespace {

// Action on one W basis vector: list of (target W index, integer coefficient).
std::vector<std::pair<std::uint32_t, int>> apply_generator_w(const SymBasis& basis,
                                                             const Generator& gen,
                                                             std::uint32_t w_idx) {
  const auto& tuple = basis.w_tuples[w_idx];
  std::vector<std::pair<std::uint32_t, int>> out;
  if (gen.diagonal) {
    int coeff = 0;
    for (std::uint32_t v : tuple) {
      if (v == gen.a) ++coeff;
      if (v == gen.a + 1) --coeff;
    }
    if (coeff != 0) out.emplace_back(w_idx, coeff);
    return out;
  }
  // E_{ab}: replace one slot holding b by a
  std::vector<std::uint32_t> target = tuple;
  for (std::size_t slot = 0; slot < tuple.size(); ++slot) {
    if (tuple[slot] != gen.b) continue;
    target[slot] = gen.a;
    // W tuples are in lexicographic order; recover the index arithmetically
    std::uint32_t idx = 0;
    for (std::uint32_t v : target) idx = idx * basis.N + (v - 1);
    out.emplace_back(idx, 1);
    target[slot] = gen.b;
  }
  return out;
}

}  // namespace

std::map<std::uint32_t, Rat> apply_generator_monomial(const SymBasis& basis, const Generator& gen,
                                                      std::uint32_t monomial) {
  std::map<std::uint32_t, Rat> image;
  const auto& mono = basis.monomials[monomial];
  std::vector<std::uint32_t> scratch = mono;
  for (std::size_t t = 0; t < mono.size(); ++t) {
    for (const auto& [target_w, coeff] : apply_generator_w(basis, gen, mono[t])) {
      scratch = mono;
      scratch[t] = target_w;
      std::sort(scratch.begin(), scratch.end());
      auto& cell = image.try_emplace(basis.monomial_index.at(scratch), Rat(0)).first->second;
      cell += Rat(coeff);
    }
  }
  std::erase_if(image, [](const auto& kv) { return kv.second.is_zero(); });
  return image;
}

std::vector<Rat> apply_generator_full(const SymBasis& basis, const Generator& gen,
                                      std::span<const Rat> coords) {
  if (coords.size() != basis.monomials.size())
    throw std::invalid_argument("coordinate vector length does not match the basis");
  std::vector<Rat> out(coords.size(), Rat(0));
  for (std::uint32_t b = 0; b < coords.size(); ++b) {
    if (coords[b].is_zero()) continue;
    for (const auto& [c, coeff] : apply_generator_monomial(basis, gen, b)) out[c] += coeff * coords[b];
  }
  return out;
}

namespace {

struct BalancedSystem {
  SymBasis basis;
  std::vector<std::uint32_t> balanced;                 // monomial indices
  std::map<std::uint32_t, std::uint32_t> col_of;       // monomial index -> column
  EchelonQ echelon;
};

BalancedSystem build_system(std::uint32_t N, std::uint32_t m, std::uint32_t d) {
  BalancedSystem sys;
  sys.basis = build_sym_basis(N, m, d);
  const SymBasis& basis = sys.basis;

  std::vector<std::vector<std::uint32_t>> w_weights;
  w_weights.reserve(basis.w_tuples.size());
  for (const auto& t : basis.w_tuples) w_weights.push_back(tuple_weight(t, N));

  // The diagonal constraints are singleton rows: they force every monomial
  // with an unbalanced multidegree to zero. Pivot on them first; the
  // remaining unknowns are the balanced monomials.
  const std::uint64_t total = static_cast<std::uint64_t>(m) * d;
  const bool divisible = total % N == 0;
  const std::uint64_t share = divisible ? total / N : 0;
  for (std::uint32_t idx = 0; idx < basis.monomials.size(); ++idx) {
    if (!divisible) continue;
    std::vector<std::uint64_t> weight(N, 0);
    for (std::uint32_t w : basis.monomials[idx])
      for (std::uint32_t v = 0; v < N; ++v) weight[v] += w_weights[w][v];
    if (std::all_of(weight.begin(), weight.end(), [&](std::uint64_t x) { return x == share; })) {
      sys.col_of[idx] = static_cast<std::uint32_t>(sys.balanced.size());
      sys.balanced.push_back(idx);
    }
  }
  if (sys.balanced.empty()) return sys;

  // Elementary-generator rows, restricted to the balanced columns. Rows are
  // keyed by (generator, image monomial).
  for (const Generator& gen : sl_generators(N)) {
    if (gen.diagonal) continue;
    std::map<std::uint32_t, std::vector<Rat>> rows;
    for (std::uint32_t col = 0; col < sys.balanced.size(); ++col) {
      for (const auto& [target, coeff] : apply_generator_monomial(basis, gen, sys.balanced[col])) {
        auto& row = rows.try_emplace(target, std::vector<Rat>(sys.balanced.size(), Rat(0))).first->second;
        row[col] += coeff;
      }
    }
    for (auto& [target, row] : rows) sys.echelon.insert(std::move(row));
  }
  return sys;
}

}  // namespace

std::uint32_t invariant_dimension(std::uint32_t N, std::uint32_t m, std::uint32_t d) {
  BalancedSystem sys = build_system(N, m, d);
  return static_cast<std::uint32_t>(sys.balanced.size() - sys.echelon.rank());
}

std::vector<Rat> extract_invariant(std::uint32_t N, std::uint32_t m, std::uint32_t d) {
  BalancedSystem sys = build_system(N, m, d);
  const std::size_t kernel = sys.balanced.size() - sys.echelon.rank();
  if (kernel != 1)
    throw std::runtime_error("invariant space has dimension " + std::to_string(kernel) + ", not 1");

  // one free column: the balanced column that is not a pivot
  std::vector<bool> is_lead(sys.balanced.size(), false);
  for (std::size_t lead : sys.echelon.leads) is_lead[lead] = true;
  std::size_t free_col = sys.balanced.size();
  for (std::size_t c = 0; c < sys.balanced.size(); ++c) {
    if (!is_lead[c]) {
      free_col = c;
      break;
    }
  }

  std::vector<Rat> solution(sys.balanced.size(), Rat(0));
  solution[free_col] = Rat(1);
  // echelon rows have unit leading coefficients; solve them in reverse lead order
  std::vector<std::size_t> order(sys.echelon.rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sys.echelon.leads[a] > sys.echelon.leads[b];
  });
  for (std::size_t r : order) {
    const auto& row = sys.echelon.rows[r];
    const std::size_t lead = sys.echelon.leads[r];
    Rat acc(0);
    for (std::size_t j = lead + 1; j < row.size(); ++j) acc += row[j] * solution[j];
    solution[lead] = -acc;
  }

  std::vector<Rat> full(sys.basis.monomials.size(), Rat(0));
  for (std::size_t c = 0; c < sys.balanced.size(); ++c) full[sys.balanced[c]] = solution[c];

  // canonical scale: lexicographically-first nonzero coordinate becomes +1
  for (const Rat& v : full) {
    if (!v.is_zero()) {
      Rat scale = v.inverse();
      for (Rat& w : full) w *= scale;
      break;
    }
  }
  return full;
}

}  // namespace invar::repaudit
