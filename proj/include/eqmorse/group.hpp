#pragma once

// Exact finite permutation groups: closure from generators, the subgroup
// lattice up to conjugacy, normalizers, Weyl quotients and the table of marks.
//
// Elements are permutations of {0, ..., degree-1}; products compose right to
// left, (a * b)(i) = a(b(i)). Everything is canonically ordered so that any
// report derived from these types is byte-reproducible.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqmorse/error.hpp"

namespace eqmorse {

using Permutation = std::vector<int>;

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

inline bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

inline Permutation extend_permutation(Permutation p, std::size_t degree) {
  for (std::size_t i = p.size(); i < degree; ++i) p.push_back(static_cast<int>(i));
  return p;
}

/// Parses cycle notation such as "(0 1 2)(3 4)" or "()" (identity). Points may
/// be separated by spaces or commas. The result has degree max(point)+1.
inline Permutation parse_cycles(const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int max_point = -1;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::NotAPermutation, "expected '(' at position " + std::to_string(i) + " in \"" + text + "\"");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw Error(ErrorKind::NotAPermutation, "unterminated cycle in \"" + text + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(ErrorKind::NotAPermutation, "unexpected character at position " + std::to_string(i) + " in \"" + text + "\"");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      cycle.push_back(v);
      max_point = std::max(max_point, v);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  Permutation p(static_cast<std::size_t>(max_point + 1));
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = static_cast<int>(k);
  std::vector<bool> used(p.size(), false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      auto from = static_cast<std::size_t>(c[k]);
      if (used[from]) throw Error(ErrorKind::NotAPermutation, "point " + std::to_string(from) + " repeated in \"" + text + "\"");
      used[from] = true;
      p[from] = c[(k + 1) % c.size()];
    }
  }
  return p;
}

inline std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    out += '(';
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
      x = static_cast<std::size_t>(p[x]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

struct FiniteGroup {
  std::vector<Permutation> elements;
  std::vector<std::vector<int>> mul_table;
  std::vector<int> inverse_table;
  int identity_index = 0;

  std::vector<Permutation> generators;
  // elements[i] == generators[word_generator[i]] * elements[word_parent[i]];
  // both are -1 for the identity.
  std::vector<int> word_parent;
  std::vector<int> word_generator;

  int order() const { return static_cast<int>(elements.size()); }
  int mul(int a, int b) const { return mul_table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_table[static_cast<std::size_t>(a)]; }

  /// Index of a permutation, or -1 if it is not an element.
  int index_of(const Permutation& p) const {
    auto it = lookup_.find(p);
    return it == lookup_.end() ? -1 : it->second;
  }

  std::map<Permutation, int> lookup_;
};

/// Closes a generating set. Elements are ordered breadth-first from the
/// identity by word length in the generators, lexicographically within a level.
inline FiniteGroup group_closure(std::vector<Permutation> generators, int cap = 64) {
  std::size_t degree = 1;
  for (const auto& g : generators) {
    if (!is_permutation(g)) throw Error(ErrorKind::NotAPermutation, "generator is not a permutation of {0..n-1}");
    degree = std::max(degree, g.size());
  }
  for (auto& g : generators) g = extend_permutation(g, degree);

  FiniteGroup G;
  G.generators = generators;
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);

  G.elements.push_back(id);
  G.word_parent.push_back(-1);
  G.word_generator.push_back(-1);
  G.lookup_.emplace(id, 0);

  std::vector<int> level{0};
  while (!level.empty()) {
    // candidate -> (parent, generator), first occurrence wins
    std::map<Permutation, std::pair<int, int>> fresh;
    for (int parent : level) {
      for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        Permutation c = compose(generators[gi], G.elements[static_cast<std::size_t>(parent)]);
        if (G.lookup_.count(c)) continue;
        fresh.emplace(std::move(c), std::make_pair(parent, static_cast<int>(gi)));
      }
    }
    level.clear();
    for (auto& [perm, word] : fresh) {
      if (static_cast<int>(G.elements.size()) >= cap)
        throw Error(ErrorKind::ClosureExceedsCap, "group closure exceeds cap of " + std::to_string(cap) + " elements");
      int idx = static_cast<int>(G.elements.size());
      G.elements.push_back(perm);
      G.word_parent.push_back(word.first);
      G.word_generator.push_back(word.second);
      G.lookup_.emplace(perm, idx);
      level.push_back(idx);
    }
  }

  const std::size_t n = G.elements.size();
  G.mul_table.assign(n, std::vector<int>(n, -1));
  G.inverse_table.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      int c = G.index_of(compose(G.elements[a], G.elements[b]));
      if (c < 0) throw Error(ErrorKind::ClosureExceedsCap, "closure is not multiplicatively closed");
      G.mul_table[a][b] = c;
      if (c == 0) G.inverse_table[a] = static_cast<int>(b);
    }
  }
  return G;
}

// ---------------------------------------------------------------------------
// Subgroups. Membership is a 64-bit mask over element indices, so lattice
// computations require |G| <= 64.

using ElementMask = std::uint64_t;

inline ElementMask bit(int i) { return ElementMask{1} << i; }

inline std::vector<int> mask_members(ElementMask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

struct Subgroup {
  std::vector<int> member_indices;  // sorted
  ElementMask mask = 0;

  int order() const { return static_cast<int>(member_indices.size()); }
  bool contains(int e) const { return (mask >> e) & 1U; }
  bool is_subset_of(const Subgroup& o) const { return (mask & ~o.mask) == 0; }

  static Subgroup from_mask(ElementMask m) { return Subgroup{mask_members(m), m}; }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask == b.mask; }
};

/// Canonical order: ascending order, then lexicographic member list.
inline bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.member_indices < b.member_indices;
}

inline void require_lattice_size(const FiniteGroup& g) {
  if (g.order() > 64) throw Error(ErrorKind::ClosureExceedsCap, "subgroup computations need |G| <= 64");
}

/// Subgroup generated by the elements in `m`.
inline ElementMask generated_mask(const FiniteGroup& g, ElementMask m) {
  std::vector<int> gens = mask_members(m);
  ElementMask out = bit(g.identity_index);
  std::vector<int> frontier{g.identity_index};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int s : gens) {
        int y = g.mul(s, x);
        if (!(out & bit(y))) {
          out |= bit(y);
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return out;
}

inline bool is_subgroup_mask(const FiniteGroup& g, ElementMask m) {
  if (!(m & bit(g.identity_index))) return false;
  for (int a : mask_members(m)) {
    if (!(m & bit(g.inv(a)))) return false;
    for (int b : mask_members(m))
      if (!(m & bit(g.mul(a, b)))) return false;
  }
  return true;
}

/// x H x^{-1}
inline ElementMask conjugate_mask(const FiniteGroup& g, ElementMask h, int x) {
  ElementMask out = 0;
  int xi = g.inv(x);
  for (int e : mask_members(h)) out |= bit(g.mul(g.mul(x, e), xi));
  return out;
}

struct SubgroupClass {
  Subgroup representative;
  std::vector<Subgroup> conjugates;  // canonical order, includes representative
  Subgroup normalizer;
  int weyl_order = 0;
  std::string label;  // "H<order>_<index among classes of that order>"

  int order() const { return representative.order(); }
  bool has_member(ElementMask m) const {
    return std::any_of(conjugates.begin(), conjugates.end(), [m](const Subgroup& s) { return s.mask == m; });
  }
};

inline Subgroup normalizer_of(const FiniteGroup& g, ElementMask h) {
  ElementMask n = 0;
  for (int x = 0; x < g.order(); ++x)
    if (conjugate_mask(g, h, x) == h) n |= bit(x);
  return Subgroup::from_mask(n);
}

/// All subgroups up to conjugacy. Cyclic subgroups are joined pairwise until
/// saturation, which reaches every subgroup of a finite group.
inline std::vector<SubgroupClass> subgroup_lattice(const FiniteGroup& g) {
  require_lattice_size(g);
  std::set<ElementMask> seen;
  std::vector<ElementMask> all;
  auto add = [&](ElementMask m) {
    if (seen.insert(m).second) all.push_back(m);
  };
  for (int x = 0; x < g.order(); ++x) add(generated_mask(g, bit(x)));

  for (std::size_t j = 0; j < all.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      ElementMask u = all[i] | all[j];
      if (u == all[i] || u == all[j]) continue;
      add(generated_mask(g, u));
    }
  }

  std::vector<Subgroup> subs;
  subs.reserve(all.size());
  for (ElementMask m : all) subs.push_back(Subgroup::from_mask(m));
  std::sort(subs.begin(), subs.end(), canonical_less);

  std::vector<SubgroupClass> classes;
  std::set<ElementMask> assigned;
  for (const auto& s : subs) {
    if (assigned.count(s.mask)) continue;
    std::set<ElementMask> conj;
    for (int x = 0; x < g.order(); ++x) conj.insert(conjugate_mask(g, s.mask, x));
    SubgroupClass c;
    for (ElementMask m : conj) {
      c.conjugates.push_back(Subgroup::from_mask(m));
      assigned.insert(m);
    }
    std::sort(c.conjugates.begin(), c.conjugates.end(), canonical_less);
    c.representative = c.conjugates.front();
    c.normalizer = normalizer_of(g, c.representative.mask);
    c.weyl_order = c.normalizer.order() / c.representative.order();
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(),
            [](const SubgroupClass& a, const SubgroupClass& b) { return canonical_less(a.representative, b.representative); });

  std::map<int, int> per_order;
  for (auto& c : classes) {
    int k = per_order[c.order()]++;
    c.label = "H" + std::to_string(c.order()) + "_" + std::to_string(k);
  }
  return classes;
}

struct MarksTable {
  std::vector<SubgroupClass> classes;
  // marks[K][H] = |(G/K)^H|, rows and columns in class order
  std::vector<std::vector<long long>> marks;
  int group_order = 0;
  std::uint64_t tag = 0;

  std::size_t size() const { return classes.size(); }
  long long at(std::size_t k, std::size_t h) const { return marks[k][h]; }

  /// Class index of a subgroup of G, or -1.
  int class_of(ElementMask m) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i].has_member(m)) return static_cast<int>(i);
    return -1;
  }
  int class_of_label(const std::string& label) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i].label == label) return static_cast<int>(i);
    return -1;
  }
  std::size_t trivial_class() const { return 0; }
  std::size_t full_class() const { return classes.size() - 1; }
};

/// Number of cosets xK with x^{-1} H x contained in K, by direct enumeration.
inline long long count_fixed_cosets(const FiniteGroup& g, const Subgroup& k, const Subgroup& h) {
  std::set<ElementMask> cosets;
  long long count = 0;
  for (int x = 0; x < g.order(); ++x) {
    ElementMask coset = 0;
    for (int e : k.member_indices) coset |= bit(g.mul(x, e));
    if (!cosets.insert(coset).second) continue;
    ElementMask conj = conjugate_mask(g, h.mask, g.inv(x));
    if ((conj & ~k.mask) == 0) ++count;
  }
  return count;
}

inline MarksTable marks_table(const FiniteGroup& g, std::vector<SubgroupClass> classes) {
  MarksTable t;
  t.group_order = g.order();
  t.classes = std::move(classes);
  const std::size_t n = t.classes.size();
  t.marks.assign(n, std::vector<long long>(n, 0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t h = 0; h < n; ++h)
      t.marks[k][h] = count_fixed_cosets(g, t.classes[k].representative, t.classes[h].representative);

  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](long long v) {
    hash ^= static_cast<std::uint64_t>(v);
    hash *= 1099511628211ULL;
  };
  mix(g.order());
  mix(static_cast<long long>(n));
  for (const auto& row : t.marks)
    for (long long v : row) mix(v);
  t.tag = hash;
  return t;
}

inline MarksTable marks_table(const FiniteGroup& g) { return marks_table(g, subgroup_lattice(g)); }

/// A subgroup of `g` as a group in its own right, plus the embedding of its
/// element indices into `g`.
struct EmbeddedGroup {
  FiniteGroup group;
  std::vector<int> to_parent;

  ElementMask parent_mask(ElementMask local) const {
    ElementMask out = 0;
    for (int e : mask_members(local)) out |= bit(to_parent[static_cast<std::size_t>(e)]);
    return out;
  }
};

inline EmbeddedGroup embed_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Permutation> gens;
  ElementMask span = bit(g.identity_index);
  for (int e : h.member_indices) {
    if (span & bit(e)) continue;
    gens.push_back(g.elements[static_cast<std::size_t>(e)]);
    ElementMask m = 0;
    for (const auto& p : gens) m |= bit(g.index_of(p));
    span = generated_mask(g, m);
  }
  if (span != h.mask) throw Error(ErrorKind::SubgroupNotContained, "member set is not a subgroup");
  EmbeddedGroup out;
  out.group = group_closure(gens, 64);
  for (const auto& p : out.group.elements) out.to_parent.push_back(g.index_of(extend_permutation(p, g.elements.front().size())));
  return out;
}

}  // namespace eqmorse
