#include "ewfs/inequality.hpp"

#include <cmath>
#include <numbers>
#include <string_view>

#include <zlib.h>

#include "catalog_data.hpp"
#include "ewfs/serialize.hpp"

namespace ewfs {

namespace {

// CRC-32 of core/data/lf_catalog_m3.json. Update together with the file.
constexpr unsigned long kCatalogCrc = 0x31b8f627UL;

void require_bipartite_terms(const InequalityExpr& ineq, const ScenarioSpec& s) {
  if (ineq.scenario().parties != s.parties || ineq.scenario().inputs != s.inputs) {
    throw ValidationError("inequality '" + ineq.label() + "' is defined for " +
                          std::to_string(ineq.scenario().parties) + " parties with " +
                          std::to_string(ineq.scenario().inputs) + " inputs, behavior has " +
                          std::to_string(s.parties) + " parties with " + std::to_string(s.inputs));
  }
}

}  // namespace

InequalityExpr& InequalityExpr::add(TermKey key, const Rational& coeff) {
  if (key.size() != static_cast<std::size_t>(scenario_.parties)) {
    throw ValidationError("term key has wrong arity for '" + label_ + "'");
  }
  bool any = false;
  for (int x : key) {
    if (x == kAbsent) continue;
    if (x < 0 || x >= scenario_.inputs) {
      throw ValidationError("term input " + std::to_string(x) + " out of range in '" + label_ + "'");
    }
    any = true;
  }
  if (!any) throw ValidationError("constant terms are not supported in '" + label_ + "'");
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (!inserted) it->second += coeff;
  if (sgn(it->second) == 0) terms_.erase(it);
  return *this;
}

Rational InequalityExpr::coeff(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational InequalityExpr::marginal_coeff(int party, int x) const {
  TermKey key(static_cast<std::size_t>(scenario_.parties), kAbsent);
  key[static_cast<std::size_t>(party)] = x;
  return coeff(key);
}

InequalityExpr InequalityExpr::operator+(const InequalityExpr& other) const {
  InequalityExpr out(scenario_, label_ + "+" + other.label_);
  for (const auto& [k, v] : terms_) out.add(k, v);
  for (const auto& [k, v] : other.terms_) out.add(k, v);
  return out;
}

InequalityExpr InequalityExpr::operator-(const InequalityExpr& other) const {
  InequalityExpr out(scenario_, label_ + "-" + other.label_);
  for (const auto& [k, v] : terms_) out.add(k, v);
  for (const auto& [k, v] : other.terms_) out.add(k, Rational(-v));
  return out;
}

template <class T>
T evaluate(const InequalityExpr& ineq, const Behavior<T>& behavior) {
  require_bipartite_terms(ineq, behavior.scenario());
  const auto table = correlators(behavior);
  T value(0);
  for (const auto& [key, c] : ineq.terms()) value += NumTraits<T>::from_rational(c) * table[key];
  return value;
}

template <class T>
std::vector<T> probability_form(const InequalityExpr& ineq) {
  const ScenarioSpec& s = ineq.scenario();
  std::vector<T> w(s.behavior_size(), T(0));
  for (const auto& [key, c] : ineq.terms()) {
    std::vector<int> x(key.size());
    for (std::size_t p = 0; p < key.size(); ++p) x[p] = key[p] == kAbsent ? 0 : key[p];
    const std::size_t ctx = s.context_index(x);
    const T coeff = NumTraits<T>::from_rational(c);
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      int parity = 0;
      for (int p = 0; p < s.parties; ++p) {
        if (key[static_cast<std::size_t>(p)] != kAbsent) parity ^= s.outcome_of(o, p);
      }
      T& cell = w[ctx * s.outcome_count() + o];
      if (parity) {
        cell -= coeff;
      } else {
        cell += coeff;
      }
    }
  }
  return w;
}

InequalityExpr relabel_inputs(const InequalityExpr& ineq, const std::vector<std::vector<int>>& perm) {
  const ScenarioSpec& s = ineq.scenario();
  if (perm.size() != static_cast<std::size_t>(s.parties)) {
    throw ValidationError("relabeling needs one permutation per party");
  }
  InequalityExpr out(s, ineq.label());
  for (const auto& [key, c] : ineq.terms()) {
    TermKey mapped = key;
    for (std::size_t p = 0; p < key.size(); ++p) {
      if (key[p] != kAbsent) mapped[p] = perm[p].at(static_cast<std::size_t>(key[p]));
    }
    out.add(std::move(mapped), c);
  }
  out.set_known_bounds(ineq.known_bounds());
  return out;
}

InequalityExpr chained_partial(int m, int j) {
  if (m < 2) throw ValidationError("chained inequality needs m >= 2");
  if (j < 0 || j > m - 2) {
    throw ValidationError("chained_partial index j=" + std::to_string(j) + " outside 0.." +
                          std::to_string(m - 2));
  }
  InequalityExpr e(ScenarioSpec::bipartite(m), "C^(" + std::to_string(m - 1) + ")_" + std::to_string(j));
  e.add({m - 1, m - 1}, 1);
  e.add({j, m - 1}, -1);
  for (int l = j; l <= m - 2; ++l) {
    e.add({l, l}, 1);
    e.add({l + 1, l}, 1);
  }
  const int span = m - j;
  e.set_known_bounds(KnownBounds{Rational(2 * (span - 1)), Rational(4), Rational(2 * span),
                                 2.0 * span * std::cos(std::numbers::pi / (2.0 * span))});
  return e;
}

InequalityExpr chained(int m) {
  InequalityExpr e = chained_partial(m, 0);
  e.set_label("C^(" + std::to_string(m - 1) + ")");
  return e;
}

InequalityExpr chsh_tilde(int m, int j) {
  if (m < 3) throw ValidationError("chsh_tilde needs m >= 3");
  if (j < 0 || j > m - 3) {
    throw ValidationError("chsh_tilde index j=" + std::to_string(j) + " outside 0.." +
                          std::to_string(m - 3));
  }
  InequalityExpr e(ScenarioSpec::bipartite(m),
                   "Ctilde^(" + std::to_string(m - 1) + ")_" + std::to_string(j));
  e.add({j + 1, m - 1}, 1);
  e.add({j, m - 1}, -1);
  e.add({j, j}, 1);
  e.add({j + 1, j}, 1);
  e.set_known_bounds(KnownBounds{Rational(2), Rational(4), Rational(4), 2.0 * std::numbers::sqrt2});
  return e;
}

InequalityExpr chsh() {
  InequalityExpr e = chained(2);
  e.set_label("CHSH");
  return e;
}

namespace {

const std::vector<InequalityExpr>& loaded_catalog() {
  static const std::vector<InequalityExpr> catalog = [] {
    if (catalog_checksum() != expected_catalog_checksum()) {
      throw ValidationError("inequality catalog checksum mismatch: the data file was edited "
                            "without updating the recorded CRC-32");
    }
    const Json doc = Json::parse(std::string_view(kCatalogJson));
    std::vector<InequalityExpr> out;
    for (const auto& item : doc.at("inequalities")) out.push_back(inequality_from_json(item));
    return out;
  }();
  return catalog;
}

}  // namespace

unsigned long catalog_checksum() {
  const std::string_view text(kCatalogJson);
  return crc32(0L, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(text.size()));
}

unsigned long expected_catalog_checksum() { return kCatalogCrc; }

int catalog_version() {
  return Json::parse(std::string_view(kCatalogJson)).at("version").get<int>();
}

std::vector<InequalityExpr> lf_catalog_m3() { return loaded_catalog(); }

InequalityExpr catalog_entry(const std::string& label) {
  std::string wanted = label;
  if (wanted.size() == 2 && wanted[0] == 'I') wanted = "I_" + wanted.substr(1);
  for (const auto& e : loaded_catalog()) {
    if (e.label() == wanted) return e;
  }
  throw ValidationError("unknown catalog inequality '" + label + "'");
}

MerminLabels MerminLabels::shifted() { return MerminLabels{{{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}}; }

int MerminLabels::input(int party, int label) const {
  return input_of_label.at(static_cast<std::size_t>(party)).at(static_cast<std::size_t>(label - 1));
}

std::vector<int> mermin_friend_inputs() { return {2, 2, 2}; }

InequalityExpr mermin(const MerminLabels& labels) {
  ScenarioSpec s = ScenarioSpec::make(3, 3);
  s.friend_inputs = mermin_friend_inputs();
  InequalityExpr e(s, "M");
  auto term = [&](int a, int b, int c) -> TermKey {
    return {labels.input(0, a), labels.input(1, b), labels.input(2, c)};
  };
  e.add(term(3, 3, 2), 1);
  e.add(term(1, 1, 2), 1);
  e.add(term(1, 3, 1), 1);
  e.add(term(3, 1, 1), -1);
  e.set_known_bounds(KnownBounds{Rational(2), Rational(8), Rational(4), 4.0});
  return e;
}

InequalityExpr inequality_by_label(const std::string& label, int m, int j) {
  if (label == "chained") return chained(m);
  if (label == "chained_partial") return chained_partial(m, j);
  if (label == "chsh_tilde") return chsh_tilde(m, j);
  if (label == "chsh" || label == "CHSH") return chsh();
  if (label == "mermin" || label == "M") return mermin();
  return catalog_entry(label);
}

template double evaluate(const InequalityExpr&, const Behavior<double>&);
template Rational evaluate(const InequalityExpr&, const Behavior<Rational>&);
template std::vector<double> probability_form(const InequalityExpr&);
template std::vector<Rational> probability_form(const InequalityExpr&);

}  // namespace ewfs
