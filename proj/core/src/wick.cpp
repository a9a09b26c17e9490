#include "fewbody/wick.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fewbody::wick {

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Stirling numbers of the second kind S(n,k).
std::vector<std::vector<long long>> stirling2(int nmax) {
  std::vector<std::vector<long long>> s(nmax + 1, std::vector<long long>(nmax + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1; k <= n; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
  return s;
}

// Signed Stirling numbers of the first kind s(n,k).
std::vector<std::vector<long long>> stirling1(int nmax) {
  std::vector<std::vector<long long>> s(nmax + 1, std::vector<long long>(nmax + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1; k <= n; ++k) s[n][k] = s[n - 1][k - 1] - (n - 1) * s[n - 1][k];
  return s;
}

}  // namespace

NPoly::NPoly(std::vector<Rational> ff) : ff_(std::move(ff)) { trim(); }

void NPoly::trim() {
  while (!ff_.empty() && ff_.back() == Rational(0)) ff_.pop_back();
}

NPoly NPoly::constant(Rational c) { return NPoly(std::vector<Rational>{c}); }

NPoly NPoly::falling(int m) {
  if (m < 0) throw std::invalid_argument("NPoly::falling: negative order");
  std::vector<Rational> ff(m + 1, Rational(0));
  ff[m] = 1;
  return NPoly(std::move(ff));
}

NPoly NPoly::shifted_falling(int shift, int m) {
  std::vector<Rational> mono{Rational(1)};
  for (int t = 0; t < m; ++t) {
    std::vector<Rational> next(mono.size() + 1, Rational(0));
    const Rational c(-(shift + t));
    for (std::size_t k = 0; k < mono.size(); ++k) {
      next[k + 1] += mono[k];
      next[k] += c * mono[k];
    }
    mono = std::move(next);
  }
  return from_monomial(mono);
}

NPoly NPoly::from_monomial(const std::vector<Rational>& mono) {
  const int n = static_cast<int>(mono.size());
  if (n == 0) return {};
  const auto s = stirling2(n - 1);
  std::vector<Rational> ff(n, Rational(0));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j <= k; ++j) ff[j] += mono[k] * Rational(s[k][j]);
  return NPoly(std::move(ff));
}

std::vector<Rational> NPoly::monomial() const {
  const int n = static_cast<int>(ff_.size());
  std::vector<Rational> mono(n, Rational(0));
  if (n == 0) return mono;
  const auto s = stirling1(n - 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k <= j; ++k) mono[k] += ff_[j] * Rational(s[j][k]);
  return mono;
}

Rational NPoly::coefficient(int m) const {
  return (m >= 0 && m < static_cast<int>(ff_.size())) ? ff_[m] : Rational(0);
}

int NPoly::degree() const { return static_cast<int>(ff_.size()) - 1; }

Rational NPoly::operator()(long long n) const {
  Rational total(0);
  Rational fall(1);
  for (std::size_t m = 0; m < ff_.size(); ++m) {
    total += ff_[m] * fall;
    fall *= Rational(n - static_cast<long long>(m));
  }
  return total;
}

NPoly NPoly::operator+(const NPoly& o) const {
  std::vector<Rational> ff(std::max(ff_.size(), o.ff_.size()), Rational(0));
  for (std::size_t i = 0; i < ff_.size(); ++i) ff[i] += ff_[i];
  for (std::size_t i = 0; i < o.ff_.size(); ++i) ff[i] += o.ff_[i];
  return NPoly(std::move(ff));
}

NPoly NPoly::operator*(const NPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> ff(ff_.size() + o.ff_.size() - 1, Rational(0));
  // N_(a) N_(b) = sum_k C(a,k) C(b,k) k! N_(a+b-k)
  for (int a = 0; a < static_cast<int>(ff_.size()); ++a) {
    if (ff_[a] == Rational(0)) continue;
    for (int b = 0; b < static_cast<int>(o.ff_.size()); ++b) {
      if (o.ff_[b] == Rational(0)) continue;
      for (int k = 0; k <= std::min(a, b); ++k)
        ff[a + b - k] += ff_[a] * o.ff_[b] * Rational(binomial(a, k) * binomial(b, k) * factorial(k));
    }
  }
  return NPoly(std::move(ff));
}

NPoly NPoly::operator*(Rational c) const {
  std::vector<Rational> ff = ff_;
  for (auto& x : ff) x *= c;
  return NPoly(std::move(ff));
}

bool NPoly::operator==(const NPoly& o) const { return ff_ == o.ff_; }

namespace {

class LabelClasses {
 public:
  std::string find(const std::string& x) {
    if (x == ground) return ground;
    auto it = parent_.find(x);
    if (it == parent_.end() || it->second == x) return x;
    const std::string r = find(it->second);
    parent_[x] = r;
    return r;
  }
  void unite(const std::string& x, const std::string& y) {
    const std::string a = find(x), b = find(y);
    if (a == b) return;
    if (a == ground)
      parent_[b] = ground;
    else if (b == ground)
      parent_[a] = ground;
    else if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

 private:
  std::map<std::string, std::string> parent_;
};

void enumerate_pairings(const OpString& ops, std::size_t pos, std::vector<bool>& used,
                        std::vector<std::pair<int, int>>& pairs,
                        const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  if (pos == ops.size()) {
    emit(pairs);
    return;
  }
  if (used[pos]) {
    enumerate_pairings(ops, pos + 1, used, pairs, emit);
    return;
  }
  enumerate_pairings(ops, pos + 1, used, pairs, emit);
  if (ops[pos].create) return;
  for (std::size_t j = pos + 1; j < ops.size(); ++j) {
    if (used[j] || !ops[j].create) continue;
    used[pos] = used[j] = true;
    pairs.emplace_back(static_cast<int>(pos), static_cast<int>(j));
    enumerate_pairings(ops, pos + 1, used, pairs, emit);
    pairs.pop_back();
    used[pos] = used[j] = false;
  }
}

std::string term_key(const WickTerm& t) {
  std::ostringstream os;
  for (const auto& d : t.deltas) os << 'd' << d.first << ',' << d.second << ';';
  os << '|';
  for (const auto& z : t.zeroed) os << z << ';';
  os << '|';
  for (const auto& c : t.poly.ff()) os << c << ';';
  return os.str();
}

void normalize(WickTerm& t) {
  for (auto& d : t.deltas)
    if (d.second < d.first) std::swap(d.first, d.second);
  std::sort(t.deltas.begin(), t.deltas.end());
  std::sort(t.zeroed.begin(), t.zeroed.end());
  t.zeroed.erase(std::unique(t.zeroed.begin(), t.zeroed.end()), t.zeroed.end());
}

}  // namespace

WickResult expectation(const OpString& ops, const ExpectationOptions& opts) {
  WickResult out;
  std::map<std::string, std::size_t> index;
  std::vector<bool> used(ops.size(), false);
  std::vector<std::pair<int, int>> pairs;

  enumerate_pairings(ops, 0, used, pairs, [&](const std::vector<std::pair<int, int>>& ps) {
    std::vector<bool> contracted(ops.size(), false);
    for (auto [i, j] : ps) contracted[i] = contracted[j] = true;

    int free_create = 0, free_ann = 0;
    for (std::size_t k = 0; k < ops.size(); ++k)
      if (!contracted[k]) (ops[k].create ? free_create : free_ann) += 1;
    if (free_create != free_ann) return;

    LabelClasses classes;
    WickTerm t;
    t.contractions = static_cast<int>(ps.size());
    for (auto [i, j] : ps) {
      classes.unite(ops[i].label, ops[j].label);
      if (ops[i].label != ops[j].label) t.deltas.emplace_back(ops[i].label, ops[j].label);
    }
    for (std::size_t k = 0; k < ops.size(); ++k) {
      if (contracted[k]) continue;
      classes.unite(ops[k].label, ground);
      if (ops[k].label != ground) t.zeroed.push_back(ops[k].label);
    }
    // A delta tying a symbolic label to the condensate pins it as well.
    for (const auto& d : t.deltas) {
      if (d.first == ground) t.zeroed.push_back(d.second);
      if (d.second == ground) t.zeroed.push_back(d.first);
    }
    std::erase_if(t.deltas, [](const auto& d) { return d.first == ground || d.second == ground; });
    for (const auto& [a, b] : opts.nonzero_pairs)
      if (classes.find(a) == ground && classes.find(b) == ground) return;

    t.poly = NPoly::shifted_falling(opts.deficit, free_create);
    normalize(t);
    const std::string key = term_key(t);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.terms.size());
      out.terms.push_back(std::move(t));
    } else {
      out.terms[it->second].multiplicity += 1;
    }
  });
  return out;
}

WickResult combine(const WickResult& r, const std::vector<std::map<std::string, std::string>>& group) {
  auto relabel = [](const WickTerm& t, const std::map<std::string, std::string>& g) {
    auto map1 = [&](const std::string& x) {
      auto it = g.find(x);
      return it == g.end() ? x : it->second;
    };
    WickTerm u = t;
    for (auto& d : u.deltas) d = {map1(d.first), map1(d.second)};
    for (auto& z : u.zeroed) z = map1(z);
    normalize(u);
    return u;
  };

  WickResult out;
  std::map<std::string, std::size_t> index;
  for (const auto& t : r.terms) {
    std::string best = term_key(t);
    WickTerm best_term = t;
    for (const auto& g : group) {
      WickTerm u = relabel(t, g);
      const std::string k = term_key(u);
      if (k < best) {
        best = k;
        best_term = u;
      }
    }
    auto it = index.find(best);
    if (it == index.end()) {
      index.emplace(best, out.terms.size());
      out.terms.push_back(best_term);
    } else {
      out.terms[it->second].multiplicity += t.multiplicity;
    }
  }
  return out;
}

std::map<int, Rational> mbody_decompose(const NPoly& p) {
  std::map<int, Rational> u;
  for (int m = 0; m <= p.degree(); ++m)
    if (p.coefficient(m) != Rational(0)) u[m] = p.coefficient(m) * Rational(factorial(m));
  return u;
}

NPoly mbody_reconstruct(const std::map<int, Rational>& u) {
  NPoly p;
  for (const auto& [m, c] : u) p = p + NPoly::falling(m) * (c / Rational(factorial(m)));
  return p;
}

KPattern parse_pattern(const std::string& text) {
  KPattern p;
  std::istringstream is(text);
  std::string tok;
  bool after_slash = false;
  while (is >> tok) {
    if (tok == "/") {
      after_slash = true;
      continue;
    }
    if (!after_slash) {
      if (tok.size() != 4) throw std::invalid_argument("parse_pattern: vertex needs four labels: " + tok);
      p.vertices.push_back({std::string(1, tok[0]), std::string(1, tok[1]), std::string(1, tok[2]),
                            std::string(1, tok[3])});
    } else {
      if (tok.size() != 2) throw std::invalid_argument("parse_pattern: denominator needs two labels: " + tok);
      p.denominators.push_back({std::string(1, tok[0]), std::string(1, tok[1])});
    }
  }
  return p;
}

std::string canonical_form(const KPattern& p) {
  std::set<std::string> labels;
  for (const auto& v : p.vertices)
    for (const auto& x : v)
      if (x != ground) labels.insert(x);
  for (const auto& d : p.denominators)
    for (const auto& x : d)
      if (x != ground) labels.insert(x);
  std::vector<std::string> names(labels.begin(), labels.end());
  if (names.size() > 8) throw std::invalid_argument("canonical_form: too many labels");

  std::vector<int> perm(names.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool have = false;
  do {
    std::map<std::string, char> rename;
    for (std::size_t i = 0; i < names.size(); ++i) rename[names[i]] = static_cast<char>('a' + perm[i]);
    auto r = [&](const std::string& x) { return x == ground ? '0' : rename.at(x); };

    std::vector<std::string> verts;
    for (const auto& v : p.vertices) {
      std::string p1{r(v[0]), r(v[1])}, p2{r(v[2]), r(v[3])};
      std::sort(p1.begin(), p1.end());
      std::sort(p2.begin(), p2.end());
      verts.push_back(std::min(p1 + p2, p2 + p1));
    }
    std::sort(verts.begin(), verts.end());
    std::vector<std::string> dens;
    for (const auto& d : p.denominators) {
      std::string s{r(d[0]), r(d[1])};
      std::sort(s.begin(), s.end());
      dens.push_back(s);
    }
    std::sort(dens.begin(), dens.end());

    std::string s;
    for (const auto& v : verts) s += v + ' ';
    s += '/';
    for (const auto& d : dens) s += ' ' + d;
    if (!have || s < best) {
      best = s;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

KPattern substitute(const KPattern& p, const WickTerm& t) {
  LabelClasses classes;
  for (const auto& [a, b] : t.deltas) classes.unite(a, b);
  for (const auto& z : t.zeroed) classes.unite(z, ground);
  KPattern out = p;
  for (auto& v : out.vertices)
    for (auto& x : v) x = classes.find(x);
  for (auto& d : out.denominators)
    for (auto& x : d) x = classes.find(x);
  return out;
}

std::map<std::string, std::string> coefficient_catalog() {
  const std::vector<std::pair<std::string, std::string>> defs = {
      {"alpha2_1", "0000 /"},
      {"beta2_2", "00ij ij00 / ij"},
      {"alpha3_2", "000i i000 / i0"},
      {"beta2_3", "00ij ijkl kl00 / ij kl"},
      {"beta3_3", "00ij ij0k k000 / ij k0"},
      {"alpha3_3", "00ij j00k ik00 / ij ik"},
      {"alpha41_3", "00ij j000 i000 / ij i0"},
      {"alpha42_3", "000i i00j j000 / i0 j0"},
      {"alpha43_3", "00ij 0000 ij00 / ij ij"},
      {"alpha5_3", "000i 0000 i000 / i0 i0"},
  };
  std::map<std::string, std::string> cat;
  for (const auto& [name, pat] : defs) cat[canonical_form(parse_pattern(pat))] = name;
  return cat;
}

std::vector<PrefactorRow> decompose(const EnergyTerm& term, const std::map<std::string, std::string>& catalog) {
  std::map<std::pair<std::string, int>, Rational> acc;
  const WickResult r = expectation(term.ops, term.options);
  for (const auto& t : r.terms) {
    const std::string canon = canonical_form(substitute(term.pattern, t));
    auto it = catalog.find(canon);
    const std::string name = it == catalog.end() ? "?" + canon : it->second;
    const NPoly total = term.outer * t.poly * (term.scalar * Rational(t.multiplicity));
    for (const auto& [m, c] : mbody_decompose(total)) acc[{name, m}] += c;
  }
  std::vector<PrefactorRow> rows;
  for (const auto& [key, c] : acc) {
    if (c == Rational(0)) continue;
    rows.push_back({term.name, term.coupling, key.first, key.second, c});
  }
  return rows;
}

std::vector<EnergyTerm> perturbation_terms() {
  const OpString pair4 = {ann("i"), ann("j"), cre("k"), cre("l")};
  const OpString chain8 = {ann("i"), ann("j"), cre("k"), cre("l"), ann("q"), ann("r"), cre("s"), cre("t")};
  const OpString contact = {cre(ground), cre(ground), ann(ground), ann(ground)};
  const ExpectationOptions full{0, {}};
  const ExpectationOptions one_pair{2, {{"i", "j"}}};
  const ExpectationOptions two_pairs{2, {{"i", "j"}, {"s", "t"}}};
  const NPoly none = NPoly::constant(1);
  const NPoly pairs = NPoly::falling(2);

  std::vector<EnergyTerm> terms;
  terms.push_back({"first-order", "xi", Rational(1, 2), none, contact, full, parse_pattern("0000 /")});
  terms.push_back({"second-order", "xi^2", Rational(-1, 4), pairs, pair4, one_pair, parse_pattern("00ij kl00 / ij")});
  terms.push_back({"counterterm-first", "chi", Rational(1, 2), none, contact, full, parse_pattern("0000 /")});
  terms.push_back({"third-order-chain", "xi^3", Rational(1, 8), pairs, chain8, two_pairs,
                   parse_pattern("00ij klqr st00 / ij st")});
  // -V_{00,00} times the second-order sum with a squared denominator.
  terms.push_back({"third-order-renormalization", "xi^3", Rational(-1, 8), pairs * pairs, pair4, one_pair,
                   parse_pattern("00ij 0000 kl00 / ij ij")});
  terms.push_back({"counterterm-second", "chi*xi", Rational(-1, 2), pairs, pair4, one_pair,
                   parse_pattern("00ij kl00 / ij")});
  return terms;
}

PrefactorTable third_order_prefactors() {
  PrefactorTable table;
  const auto catalog = coefficient_catalog();
  for (const auto& term : perturbation_terms()) {
    for (auto& row : decompose(term, catalog)) {
      table.net[{row.coupling + " " + row.coefficient, row.m}] += row.prefactor;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace fewbody::wick
