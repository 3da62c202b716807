// Groups, subgroup lattices, tables of marks and the Burnside ring, checked
// against brute-force enumeration.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"

using namespace eqtest;

namespace {

// Naive closure: multiply everything by everything until nothing new appears.
std::set<Permutation> naive_closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::set<Permutation> s;
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);
  s.insert(id);
  for (const auto& g : gens) s.insert(extend_permutation(g, degree));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Permutation> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (s.insert(compose(a, b)).second) grew = true;
  }
  return s;
}

// All subgroups by testing every subset of G for closure.
std::vector<ElementMask> all_subgroups(const FiniteGroup& g) {
  std::vector<ElementMask> out;
  const int n = g.order();
  for (ElementMask m = 1; m < (ElementMask{1} << n); ++m) {
    if (!((m >> g.identity_index) & 1U)) continue;
    bool closed = true;
    for (int a : mask_members(m))
      for (int b : mask_members(m))
        if (!((m >> g.mul(a, b)) & 1U)) closed = false;
    if (closed) out.push_back(m);
  }
  return out;
}

// |(G/K)^H|: left cosets xK, as element sets, fixed by every h in H.
long long coset_marks(const FiniteGroup& g, ElementMask k, ElementMask h) {
  std::set<ElementMask> cosets;
  for (int x = 0; x < g.order(); ++x) {
    ElementMask c = 0;
    for (int y : mask_members(k)) c |= bit(g.mul(x, y));
    cosets.insert(c);
  }
  long long fixed = 0;
  for (ElementMask c : cosets) {
    bool ok = true;
    for (int hh : mask_members(h)) {
      ElementMask moved = 0;
      for (int y : mask_members(c)) moved |= bit(g.mul(hh, y));
      if (moved != c) ok = false;
    }
    fixed += ok;
  }
  return fixed;
}

// [G/H] x [G/K] split into orbits of G on pairs of cosets.
BurnsideElement product_by_orbits(const FiniteGroup& g, const MarksTable& t, std::size_t hc, std::size_t kc) {
  auto cosets_of = [&](ElementMask m) {
    std::vector<ElementMask> cs;
    for (int x = 0; x < g.order(); ++x) {
      ElementMask c = 0;
      for (int y : mask_members(m)) c |= bit(g.mul(x, y));
      if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
    }
    return cs;
  };
  auto act = [&](int x, ElementMask c) {
    ElementMask out = 0;
    for (int y : mask_members(c)) out |= bit(g.mul(x, y));
    return out;
  };
  auto a = cosets_of(t.classes[hc].representative.mask);
  auto b = cosets_of(t.classes[kc].representative.mask);
  std::set<std::pair<ElementMask, ElementMask>> seen;
  BurnsideElement out = BurnsideElement::zero(t);
  for (auto ca : a)
    for (auto cb : b) {
      if (seen.count({ca, cb})) continue;
      ElementMask stab = 0;
      for (int x = 0; x < g.order(); ++x) {
        seen.insert({act(x, ca), act(x, cb)});
        if (act(x, ca) == ca && act(x, cb) == cb) stab |= bit(x);
      }
      out.coefficients[static_cast<std::size_t>(t.class_of(stab))] += 1;
    }
  return out;
}

}  // namespace

TEST(Permutations, CycleStringsRoundTrip) {
  for (const char* s : {"()", "(0 1)", "(0 1 2)", "(0 2)(1 3)", "(1 3)"}) {
    Permutation p = parse_cycles(s);
    EXPECT_EQ(to_cycle_string(p), s);
  }
  EXPECT_THROW(parse_cycles("(0 0)"), Error);
  EXPECT_THROW(parse_cycles("(0 1"), Error);
}

TEST(Groups, ClosureMatchesNaiveProducts) {
  for (const auto& gc : small_groups()) {
    FiniteGroup g = group_of(gc);
    EXPECT_EQ(g.order(), gc.order) << gc.name;
    std::size_t degree = g.elements.front().size();
    auto naive = naive_closure(perms(gc.cycles), degree);
    std::set<Permutation> mine(g.elements.begin(), g.elements.end());
    EXPECT_EQ(mine, naive) << gc.name;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        EXPECT_EQ(g.elements[static_cast<std::size_t>(g.mul(a, b))], compose(g.elements[static_cast<std::size_t>(a)], g.elements[static_cast<std::size_t>(b)]));
  }
}

TEST(Groups, CapIsEnforced) {
  // S5 has order 120
  EXPECT_THROW(group_closure({parse_cycles("(0 1 2 3 4)"), parse_cycles("(0 1)")}, 64), Error);
}

TEST(Groups, SubgroupClassesMatchSubsetSearch) {
  for (const auto& gc : small_groups()) {
    FiniteGroup g = group_of(gc);
    auto classes = subgroup_lattice(g);
    EXPECT_EQ(static_cast<int>(classes.size()), gc.classes) << gc.name;
    auto subs = all_subgroups(g);
    std::size_t listed = 0;
    for (const auto& c : classes) listed += c.conjugates.size();
    EXPECT_EQ(listed, subs.size()) << gc.name;
    for (const auto& c : classes) {
      // normalizer by brute force
      ElementMask h = c.representative.mask;
      int norm = 0;
      for (int x = 0; x < g.order(); ++x) norm += conjugate_mask(g, h, x) == h;
      EXPECT_EQ(c.normalizer.order(), norm);
      EXPECT_EQ(c.weyl_order, norm / c.representative.order());
    }
    EXPECT_EQ(classes.front().representative.order(), 1);
    EXPECT_EQ(classes.back().representative.order(), g.order());
  }
}

TEST(Groups, CyclicOrderThreeHasTwoClasses) {
  auto classes = subgroup_lattice(group_closure({parse_cycles("(0 1 2)")}));
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0].weyl_order, 3);
  EXPECT_EQ(classes[1].weyl_order, 1);
  EXPECT_EQ(classes[0].label, "H1_0");
  EXPECT_EQ(classes[1].label, "H3_0");
}

TEST(Marks, MatchCosetEnumeration) {
  for (const auto& gc : small_groups()) {
    FiniteGroup g = group_of(gc);
    MarksTable t = marks_table(g);
    for (std::size_t k = 0; k < t.size(); ++k)
      for (std::size_t h = 0; h < t.size(); ++h)
        EXPECT_EQ(t.at(k, h), coset_marks(g, t.classes[k].representative.mask, t.classes[h].representative.mask))
            << gc.name << " K=" << t.classes[k].label << " H=" << t.classes[h].label;
  }
}

TEST(Marks, TriangularWithWeylDiagonal) {
  for (const auto& gc : small_groups()) {
    MarksTable t = marks_table(group_of(gc));
    for (std::size_t k = 0; k < t.size(); ++k) {
      EXPECT_EQ(t.at(k, k), t.classes[k].weyl_order);
      for (std::size_t h = k + 1; h < t.size(); ++h) EXPECT_EQ(t.at(k, h), 0) << gc.name;
    }
  }
}

TEST(Burnside, CharacterRoundTripOnRandomElements) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-20, 20);
  for (const auto& gc : small_groups()) {
    MarksTable t = marks_table(group_of(gc));
    for (int trial = 0; trial < 200; ++trial) {
      BurnsideElement x = BurnsideElement::zero(t);
      for (auto& c : x.coefficients) c = coef(rng);
      EXPECT_EQ(from_characters(ch_map(x, t), t), x);
    }
  }
}

TEST(Burnside, RejectsCharactersOutsideTheLattice) {
  MarksTable t = marks_table(group_closure({parse_cycles("(0 1)")}));
  // [G/1] has characters (2, 0); (1, 0) would need half of it
  EXPECT_THROW(from_characters(CharacterVector{{1, 0}}, t), Error);
}

TEST(Burnside, ProductMatchesOrbitDecomposition) {
  for (const auto& gc : small_groups()) {
    FiniteGroup g = group_of(gc);
    MarksTable t = marks_table(g);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) {
        auto prod = ring_multiply(BurnsideElement::basis(t, a), BurnsideElement::basis(t, b), t);
        EXPECT_EQ(prod, product_by_orbits(g, t, a, b)) << gc.name << " " << t.classes[a].label << "*" << t.classes[b].label;
      }
  }
}

TEST(Burnside, RingAxioms) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (const auto& gc : small_groups()) {
    MarksTable t = marks_table(group_of(gc));
    auto rnd = [&] {
      BurnsideElement x = BurnsideElement::zero(t);
      for (auto& c : x.coefficients) c = coef(rng);
      return x;
    };
    for (int trial = 0; trial < 30; ++trial) {
      auto x = rnd(), y = rnd(), z = rnd();
      EXPECT_EQ(ring_multiply(ring_multiply(x, y, t), z, t), ring_multiply(x, ring_multiply(y, z, t), t));
      EXPECT_EQ(ring_multiply(x, y, t), ring_multiply(y, x, t));
      EXPECT_EQ(ring_multiply(BurnsideElement::one(t), x, t), x);
      EXPECT_EQ(ring_multiply(x, y + z, t), ring_multiply(x, y, t) + ring_multiply(x, z, t));
    }
  }
}

TEST(Burnside, LabelsAndText) {
  MarksTable t = marks_table(group_closure({parse_cycles("(0 1)")}));
  auto x = from_labelled({{"H2_0", 1}, {"H1_0", -1}}, t);
  EXPECT_EQ(to_string(x, t), "[G/H2_0] - [G/H1_0]");
  EXPECT_EQ(labelled(x, t), (std::map<std::string, long long>{{"H1_0", -1}, {"H2_0", 1}}));
  EXPECT_THROW(from_labelled({{"H7_0", 1}}, t), Error);
}

TEST(Burnside, InductionFromAStabilizer) {
  // Inducing [H/H] from H = <(1 2)> in S3 gives [G/H].
  FiniteGroup g = group_of(small_groups()[4]);
  MarksTable t = marks_table(g);
  const SubgroupClass& h = t.classes[1];
  EmbeddedGroup sub = embed_subgroup(g, h.representative);
  MarksTable st = marks_table(sub.group);
  auto up = induce(t, sub, st, BurnsideElement::one(st));
  EXPECT_EQ(up, BurnsideElement::basis(t, 1));
  auto free = induce(t, sub, st, BurnsideElement::basis(st, 0));
  EXPECT_EQ(free, BurnsideElement::basis(t, 0));
}
