#pragma once

// The Burnside ring A(G) of a finite group in the orbit basis {[G/H]}.
// Elements are integer vectors indexed by conjugacy classes of subgroups; the
// character map sends an element to its fixed-point counts, one per class.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eqmorse/error.hpp"
#include "eqmorse/group.hpp"

namespace eqmorse {

struct BurnsideElement {
  std::vector<long long> coefficients;  // coefficient of [G/H], class order
  std::uint64_t group_tag = 0;

  static BurnsideElement zero(const MarksTable& t) { return {std::vector<long long>(t.size(), 0), t.tag}; }
  static BurnsideElement basis(const MarksTable& t, std::size_t cls) {
    auto e = zero(t);
    e.coefficients.at(cls) = 1;
    return e;
  }
  static BurnsideElement one(const MarksTable& t) { return basis(t, t.full_class()); }

  bool is_zero() const {
    for (long long c : coefficients)
      if (c != 0) return false;
    return true;
  }

  BurnsideElement& operator+=(const BurnsideElement& o) {
    if (o.coefficients.size() != coefficients.size()) throw Error(ErrorKind::IndexMismatch, "adding elements of different Burnside rings");
    for (std::size_t i = 0; i < coefficients.size(); ++i) coefficients[i] += o.coefficients[i];
    return *this;
  }
  BurnsideElement& operator-=(const BurnsideElement& o) {
    if (o.coefficients.size() != coefficients.size()) throw Error(ErrorKind::IndexMismatch, "subtracting elements of different Burnside rings");
    for (std::size_t i = 0; i < coefficients.size(); ++i) coefficients[i] -= o.coefficients[i];
    return *this;
  }
  friend BurnsideElement operator+(BurnsideElement a, const BurnsideElement& b) { return a += b; }
  friend BurnsideElement operator-(BurnsideElement a, const BurnsideElement& b) { return a -= b; }
  friend BurnsideElement operator*(long long s, BurnsideElement a) {
    for (auto& c : a.coefficients) c *= s;
    return a;
  }
  friend bool operator==(const BurnsideElement& a, const BurnsideElement& b) {
    return a.coefficients == b.coefficients;
  }
};

struct CharacterVector {
  std::vector<long long> values;  // values[H] = ch_H, class order
  friend bool operator==(const CharacterVector&, const CharacterVector&) = default;
};

inline void check_compatible(const BurnsideElement& e, const MarksTable& t) {
  if (e.coefficients.size() != t.size() || (e.group_tag != 0 && e.group_tag != t.tag))
    throw Error(ErrorKind::IndexMismatch, "Burnside element is not indexed by this table of marks");
}

inline CharacterVector ch_map(const BurnsideElement& e, const MarksTable& t) {
  check_compatible(e, t);
  CharacterVector c{std::vector<long long>(t.size(), 0)};
  for (std::size_t h = 0; h < t.size(); ++h)
    for (std::size_t k = 0; k < t.size(); ++k) c.values[h] += e.coefficients[k] * t.at(k, h);
  return c;
}

/// Solves marks^T x = c by back-substitution from the largest class down.
/// Throws NotInBurnsideLattice when a step is not integral.
inline BurnsideElement from_characters(const CharacterVector& c, const MarksTable& t) {
  if (c.values.size() != t.size()) throw Error(ErrorKind::IndexMismatch, "character vector length does not match class count");
  BurnsideElement x = BurnsideElement::zero(t);
  for (std::size_t hh = t.size(); hh-- > 0;) {
    long long rest = c.values[hh];
    for (std::size_t k = hh + 1; k < t.size(); ++k) rest -= x.coefficients[k] * t.at(k, hh);
    long long diag = t.at(hh, hh);
    if (rest % diag != 0) {
      throw Error(ErrorKind::NotInBurnsideLattice,
                  "character vector is not realized by A(G): class " + t.classes[hh].label + " needs " +
                      std::to_string(rest) + "/" + std::to_string(diag));
    }
    x.coefficients[hh] = rest / diag;
  }
  return x;
}

inline BurnsideElement ring_multiply(const BurnsideElement& a, const BurnsideElement& b, const MarksTable& t) {
  auto ca = ch_map(a, t);
  auto cb = ch_map(b, t);
  for (std::size_t i = 0; i < ca.values.size(); ++i) ca.values[i] *= cb.values[i];
  return from_characters(ca, t);
}

/// Induction [H/K] -> [G/K] from the Burnside ring of a subgroup H <= G.
/// `sub` is H embedded in `g`; `sub_table` is the table of marks of H itself.
inline BurnsideElement induce(const MarksTable& g_table, const EmbeddedGroup& sub, const MarksTable& sub_table,
                              const BurnsideElement& e) {
  check_compatible(e, sub_table);
  BurnsideElement out = BurnsideElement::zero(g_table);
  for (std::size_t k = 0; k < sub_table.size(); ++k) {
    if (e.coefficients[k] == 0) continue;
    ElementMask in_g = sub.parent_mask(sub_table.classes[k].representative.mask);
    int cls = g_table.class_of(in_g);
    if (cls < 0) throw Error(ErrorKind::SubgroupNotContained, "subgroup " + sub_table.classes[k].label + " has no class in G");
    out.coefficients[static_cast<std::size_t>(cls)] += e.coefficients[k];
  }
  return out;
}

/// {class_label: coefficient}, omitting zero coefficients.
inline std::map<std::string, long long> labelled(const BurnsideElement& e, const MarksTable& t) {
  std::map<std::string, long long> out;
  for (std::size_t i = 0; i < e.coefficients.size() && i < t.size(); ++i)
    if (e.coefficients[i] != 0) out[t.classes[i].label] = e.coefficients[i];
  return out;
}

inline BurnsideElement from_labelled(const std::map<std::string, long long>& m, const MarksTable& t) {
  auto e = BurnsideElement::zero(t);
  for (const auto& [label, c] : m) {
    int i = t.class_of_label(label);
    if (i < 0) throw Error(ErrorKind::IndexMismatch, "unknown class label " + label);
    e.coefficients[static_cast<std::size_t>(i)] = c;
  }
  return e;
}

inline std::string to_string(const BurnsideElement& e, const MarksTable& t) {
  std::string s;
  for (std::size_t i = e.coefficients.size(); i-- > 0;) {
    long long c = e.coefficients[i];
    if (c == 0) continue;
    std::string term = "[G/" + t.classes[i].label + "]";
    if (s.empty()) {
      s = (c == 1 ? "" : c == -1 ? "-" : std::to_string(c) + "*") + term;
    } else {
      long long a = c < 0 ? -c : c;
      s += (c < 0 ? " - " : " + ") + (a == 1 ? std::string() : std::to_string(a) + "*") + term;
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace eqmorse
