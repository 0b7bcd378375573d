#include "invar/torus.hpp"

#include <algorithm>
#include <numeric>

#include "invar/homogeneous.hpp"

namespace invar::torus {

void Tensor3::check_range(const Triple& t) const {
  if (t.i < 1 || t.i > n_ || t.j < 1 || t.j > n_ || t.k < 1 || t.k > n_)
    throw std::invalid_argument("tensor index out of range");
}

void Tensor3::set(Triple t, Rat value) {
  check_range(t);
  if (value.is_zero()) {
    entries_.erase(t);
  } else {
    entries_[t] = std::move(value);
  }
}

Rat Tensor3::at(Triple t) const {
  check_range(t);
  auto it = entries_.find(t);
  return it == entries_.end() ? Rat(0) : it->second;
}

std::vector<Triple> Tensor3::support() const {
  std::vector<Triple> s;
  s.reserve(entries_.size());
  for (const auto& [t, v] : entries_) s.push_back(t);
  return s;
}

std::map<std::uint32_t, Rat> Tensor3::dense_point() const {
  std::map<std::uint32_t, Rat> point;
  for (std::uint32_t flat = 0; flat < n_ * n_ * n_; ++flat) point[flat] = Rat(0);
  for (const auto& [t, v] : entries_) point[flat_index(t, n_)] = v;
  return point;
}

nlohmann::json Tensor3::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [t, v] : entries_) entries.push_back({t.i, t.j, t.k, v.str()});
  j["entries"] = std::move(entries);
  return j;
}

Tensor3 Tensor3::from_json(const nlohmann::json& j) {
  Tensor3 t(j.at("n").get<std::uint32_t>());
  for (const auto& e : j.at("entries")) {
    if (e.size() != 4) throw std::invalid_argument("tensor entry must be [i,j,k,value]");
    Rat v = e[3].is_string() ? Rat::parse(e[3].get<std::string>()) : Rat(e[3].get<long>());
    t.set({e[0].get<std::uint16_t>(), e[1].get<std::uint16_t>(), e[2].get<std::uint16_t>()}, std::move(v));
  }
  return t;
}

void ExponentTensor::bump(Triple t, std::uint32_t by) {
  if (t.i < 1 || t.i > n_ || t.j < 1 || t.j > n_ || t.k < 1 || t.k > n_)
    throw std::invalid_argument("exponent index out of range");
  if (by != 0) exp_[t] += by;
}

std::uint32_t ExponentTensor::at(Triple t) const {
  auto it = exp_.find(t);
  return it == exp_.end() ? 0u : it->second;
}

std::uint64_t ExponentTensor::degree() const {
  return std::accumulate(exp_.begin(), exp_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::string ExponentTensor::str() const {
  std::string s;
  for (const auto& [t, e] : exp_) {
    if (!s.empty()) s += "*";
    s += "x(" + std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + ")";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

Marginals marginals(const ExponentTensor& e) {
  Marginals m;
  m.axis1.assign(e.n(), 0);
  m.axis2.assign(e.n(), 0);
  m.axis3.assign(e.n(), 0);
  for (const auto& [t, exp] : e.exponents()) {
    m.axis1[t.i - 1] += exp;
    m.axis2[t.j - 1] += exp;
    m.axis3[t.k - 1] += exp;
  }
  return m;
}

namespace {

bool constant_vector(const std::vector<std::uint64_t>& v) {
  return std::all_of(v.begin(), v.end(), [&](std::uint64_t x) { return x == v.front(); });
}

}  // namespace

bool is_invariant_monomial(const ExponentTensor& e) {
  if (e.n() == 0) return true;
  Marginals m = marginals(e);
  return constant_vector(m.axis1) && constant_vector(m.axis2) && constant_vector(m.axis3);
}

ExponentTensor MatchingMonomial::exponents(std::uint32_t n) const {
  ExponentTensor e(n);
  for (std::uint32_t i = 1; i <= n; ++i)
    e.bump({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(sigma[i - 1]),
            static_cast<std::uint16_t>(tau[i - 1])});
  return e;
}

std::vector<MatchingMonomial> enumerate_matching_monomials(std::uint32_t n) {
  if (n > 6)
    throw std::invalid_argument("matching-monomial enumeration grows as n!^2; refusing n > 6");
  std::vector<std::uint32_t> identity(n);
  std::iota(identity.begin(), identity.end(), 1u);

  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p = identity;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<MatchingMonomial> out;
  out.reserve(perms.size() * perms.size());
  for (const auto& sigma : perms)
    for (const auto& tau : perms) out.push_back({sigma, tau});
  return out;
}

void for_each_multiset(std::size_t slot_count, std::uint32_t degree,
                       const std::function<void(std::span<const std::uint32_t>)>& fn) {
  if (degree == 0) {
    fn({});
    return;
  }
  if (slot_count == 0) return;
  std::vector<std::uint32_t> pick(degree, 0);
  for (;;) {
    fn(pick);
    // advance the nondecreasing odometer
    std::size_t pos = degree;
    while (pos > 0 && pick[pos - 1] == slot_count - 1) --pos;
    if (pos == 0) return;
    std::uint32_t next = pick[pos - 1] + 1;
    for (std::size_t q = pos - 1; q < degree; ++q) pick[q] = next;
  }
}

MinDegreeReport verify_min_degree(std::uint32_t n) {
  if (n > 4) throw std::invalid_argument("exhaustive monomial search is guarded at n <= 4");
  MinDegreeReport report;
  report.n = n;
  report.ok = true;

  std::vector<Triple> slots;
  for (std::uint16_t i = 1; i <= n; ++i)
    for (std::uint16_t j = 1; j <= n; ++j)
      for (std::uint16_t k = 1; k <= n; ++k) slots.push_back({i, j, k});

  std::vector<std::uint64_t> m1(n), m2(n), m3(n);
  for (std::uint32_t d = 1; d <= n && report.ok; ++d) {
    std::uint64_t count = 0;
    bool matching_shaped = true;
    std::optional<std::string> witness;
    for_each_multiset(slots.size(), d, [&](std::span<const std::uint32_t> picks) {
      std::fill(m1.begin(), m1.end(), 0);
      std::fill(m2.begin(), m2.end(), 0);
      std::fill(m3.begin(), m3.end(), 0);
      for (std::uint32_t s : picks) {
        m1[slots[s].i - 1]++;
        m2[slots[s].j - 1]++;
        m3[slots[s].k - 1]++;
      }
      if (constant_vector(m1) && constant_vector(m2) && constant_vector(m3)) {
        ++count;
        if (d == n) {
          // a degree-n invariant must use n distinct slots, one per axis value
          bool distinct = true;
          for (std::size_t q = 1; q < picks.size(); ++q)
            if (picks[q] == picks[q - 1]) distinct = false;
          if (!distinct || m1.front() != 1) matching_shaped = false;
        }
        if (d < n && !witness) {
          ExponentTensor e(n);
          for (std::uint32_t s : picks) e.bump(slots[s]);
          witness = e.str();
        }
      }
    });
    report.invariant_counts.push_back(count);
    if (d < n && count != 0) {
      report.ok = false;
      report.counterexample = "degree " + std::to_string(d) + " invariant monomial " + witness.value_or("?");
    }
    if (d == n) {
      std::uint64_t expected = 1;
      for (std::uint32_t q = 2; q <= n; ++q) expected *= q;  // n!
      expected *= expected;
      if (count != expected || !matching_shaped) {
        report.ok = false;
        report.counterexample = "degree-n invariant monomials do not match the n!^2 matching monomials";
      }
    }
  }
  return report;
}

void MatchingInstance::check() const {
  for (const Triple& t : edges) {
    if (t.i < 1 || t.i > n || t.j < 1 || t.j > n || t.k < 1 || t.k > n)
      throw std::invalid_argument("instance edge out of range");
  }
}

nlohmann::json MatchingInstance::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  nlohmann::json edge_list = nlohmann::json::array();
  for (const Triple& t : edges) edge_list.push_back({t.i, t.j, t.k});
  j["edges"] = std::move(edge_list);
  return j;
}

MatchingInstance MatchingInstance::from_json(const nlohmann::json& j) {
  MatchingInstance u;
  u.n = j.at("n").get<std::uint32_t>();
  for (const auto& e : j.at("edges")) {
    if (e.size() != 3) throw std::invalid_argument("edge must be an [i,j,k] triple");
    u.edges.insert({e[0].get<std::uint16_t>(), e[1].get<std::uint16_t>(), e[2].get<std::uint16_t>()});
  }
  u.check();
  return u;
}

Tensor3 instance_to_tensor(const MatchingInstance& u) {
  u.check();
  Tensor3 t(u.n);
  for (const Triple& e : u.edges) t.set(e, Rat(1));
  return t;
}

circ::Circuit reference_encoding(std::uint32_t n) {
  if (n < 1 || n > 4) throw std::invalid_argument("reference encoding is guarded at 1 <= n <= 4");
  const auto monomials = enumerate_matching_monomials(n);
  circ::CircuitBuilder b(n * n * n, static_cast<std::uint32_t>(monomials.size()));

  std::map<std::uint32_t, circ::GateId> xgate;
  auto x = [&](Triple t) {
    std::uint32_t flat = flat_index(t, n);
    auto it = xgate.find(flat);
    if (it != xgate.end()) return it->second;
    return xgate[flat] = b.xvar(flat);
  };

  std::vector<circ::GateId> terms;
  terms.reserve(monomials.size());
  for (std::size_t m = 0; m < monomials.size(); ++m) {
    std::vector<circ::GateId> factors;
    factors.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i)
      factors.push_back(x({static_cast<std::uint16_t>(i),
                           static_cast<std::uint16_t>(monomials[m].sigma[i - 1]),
                           static_cast<std::uint16_t>(monomials[m].tau[i - 1])}));
    terms.push_back(b.mul(b.yvar(static_cast<std::uint32_t>(m)), b.product(factors)));
  }
  b.output(b.sum(terms));
  return b.build();
}

MatchAnswer decide_matching_via_encoding(const MatchingInstance& u, const circ::Circuit& c,
                                         const pit::PitConfig& cfg) {
  u.check();
  const std::uint32_t n = u.n;
  if (c.main_var_count() != n * n * n)
    throw std::invalid_argument("encoding circuit has the wrong main-variable count for this instance");

  circ::Circuit sliced = circ::homogeneous_components(c, static_cast<int>(n));
  std::vector<std::optional<circ::GateId>> degree_n_outputs;
  for (std::size_t o = 0; o < c.outputs().size(); ++o)
    degree_n_outputs.push_back(sliced.outputs()[circ::component_output_index(o, static_cast<int>(n), static_cast<int>(n))]);

  const bool all_absent = std::all_of(degree_n_outputs.begin(), degree_n_outputs.end(),
                                      [](const auto& o) { return !o.has_value(); });
  if (all_absent) return MatchAnswer::No;

  circ::Circuit narrowed(sliced.main_var_count(), sliced.aux_var_count(),
                         std::vector<circ::Gate>(sliced.gates()), std::move(degree_n_outputs));
  circ::Circuit at_instance = circ::substitute_main_vars(narrowed, instance_to_tensor(u).dense_point());

  pit::PitResult res = pit::pit(at_instance, cfg);
  return res.identically_zero ? MatchAnswer::No : MatchAnswer::Yes;
}

namespace {

bool backtrack(const std::vector<std::vector<Triple>>& by_row, std::uint32_t row,
               std::uint32_t used_j, std::uint32_t used_k) {
  if (row == by_row.size()) return true;
  for (const Triple& e : by_row[row]) {
    const std::uint32_t jbit = 1u << (e.j - 1), kbit = 1u << (e.k - 1);
    if ((used_j & jbit) || (used_k & kbit)) continue;
    if (backtrack(by_row, row + 1, used_j | jbit, used_k | kbit)) return true;
  }
  return false;
}

}  // namespace

bool brute_force_matching(const MatchingInstance& u) {
  if (u.n > 8) throw std::invalid_argument("brute-force matching is guarded at n <= 8");
  u.check();
  if (u.n == 0) return true;
  // a perfect matching has exactly one edge per first coordinate
  std::vector<std::vector<Triple>> by_row(u.n);
  for (const Triple& e : u.edges) by_row[e.i - 1].push_back(e);
  return backtrack(by_row, 0, 0, 0);
}

}  // namespace invar::torus
