#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pgmlab/error.hpp"
#include "pgmlab/group_spec.hpp"
#include "pgmlab/groups.hpp"

using namespace pgmlab;
using fixtures::s4;

namespace {

std::vector<GroupPtr> small_groups() {
  return {make_cyclic(1),    make_cyclic(6),     make_dihedral(3), make_dihedral(4),
          make_dihedral(5),  make_symmetric(3),  make_symmetric(4), make_affine(3),
          make_affine(5),    make_affine(7),     make_heisenberg(3)};
}

std::set<Element> as_set(const Subgroup& h) {
  return {h.elements().begin(), h.elements().end()};
}

}  // namespace

TEST_CASE("family orders") {
  CHECK(parse_group_spec("cyclic:n=7")->order() == 7);
  CHECK(parse_group_spec("dihedral:n=5")->order() == 10);
  CHECK(parse_group_spec("symmetric:n=4")->order() == 24);
  CHECK(parse_group_spec("affine:p=5")->order() == 20);
  CHECK(parse_group_spec("heisenberg:p=3")->order() == 27);
}

TEST_CASE("every constructed group passes the table checks") {
  for (const GroupPtr& g : small_groups()) {
    const GroupCheck c = check_group(*g);
    CHECK_MESSAGE(c.ok(), g->family().to_string());
  }
}

TEST_CASE("dihedral and affine multiplication rules") {
  const GroupPtr d = make_dihedral(5);
  const Element r = 1, s = 5;
  CHECK(d->mult(s, s) == 0);
  CHECK(d->mult(d->mult(s, r), s) == d->inv(r));  // s r s = r^-1
  // r^a s at index n + a
  CHECK(d->mult(2, s) == 7);

  const GroupPtr a = make_affine(5);
  // u -> 2u + 1 at index (2-1)*5 + 1 = 6; squared is u -> 4u + 3 at 18
  CHECK(a->mult(6, 6) == 18);

  const GroupPtr h = make_heisenberg(3);
  // (1,0,0)(0,1,0) = (1,1,1) but (0,1,0)(1,0,0) = (1,1,0)
  CHECK(h->mult(9, 3) == 9 + 3 + 1);
  CHECK(h->mult(3, 9) == 9 + 3);
}

TEST_CASE("symmetric composition is right to left") {
  const GroupPtr g = make_symmetric(3);
  const Element a = s4({2, 1, 3});  // (1 2)
  const Element b = s4({1, 3, 2});  // (2 3)
  // (ab)(1) = a(b(1)) = a(1) = 2, (ab)(2) = a(3) = 3, (ab)(3) = a(2) = 1
  CHECK(g->mult(a, b) == s4({2, 3, 1}));
  CHECK(g->mult(b, a) == s4({3, 1, 2}));
}

TEST_CASE("bad group specs") {
  CHECK_THROWS_AS(parse_group_spec("klein:n=4"), InputError);
  CHECK_THROWS_AS(parse_group_spec("dihedral:n=x"), InputError);
  CHECK_THROWS_AS(parse_group_spec("affine:p=6"), InputError);
  CHECK_THROWS_AS(parse_group_spec("heisenberg:p=4"), InputError);
  CHECK_THROWS_AS(parse_group_spec("symmetric:n=11"), InputError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:n=5000"), GuardError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:n=100", 50), GuardError);
  CHECK_NOTHROW(parse_group_spec("cyclic:n=5000", 5000));
}

TEST_CASE("user tables are validated") {
  // Z_3 written out
  std::vector<std::vector<Element>> z3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  const GroupPtr g = group_from_table(3, z3);
  CHECK(g->order() == 3);
  CHECK(g->mult(2, 2) == 1);

  auto bad = z3;
  bad[1] = {1, 1, 0};  // not Latin
  CHECK_THROWS_AS(group_from_table(3, bad), InputError);
  CHECK_THROWS_AS(group_from_table(3, {{0, 1}, {1, 0}}), InputError);

  // Latin square with identity and inverses that is not associative
  std::vector<std::vector<Element>> quasi = {{0, 1, 2, 3, 4},
                                             {1, 0, 3, 4, 2},
                                             {2, 4, 0, 1, 3},
                                             {3, 2, 4, 0, 1},
                                             {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(group_from_table(5, quasi), InputError);
}

TEST_CASE("json group spec") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "pgmlab_test_groups_z4.json").string();
  {
    std::ofstream f(path);
    f << R"({"order": 4, "mult": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]})";
  }
  const GroupPtr g = parse_group_spec("json:" + path);
  CHECK(g->order() == 4);
  CHECK(g->family().kind == Family::Custom);
  CHECK_THROWS_AS(parse_group_spec("json:does-not-exist.json"), InputError);
  CHECK_THROWS_AS(group_from_json(nlohmann::json{{"order", 2}}), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("subgroup generation") {
  const GroupPtr s = make_symmetric(4);
  const Subgroup inv = subgroup_generate(s, {s4({2, 1, 4, 3})});
  CHECK(inv.order() == 2);

  const GroupPtr d = make_dihedral(5);
  CHECK(subgroup_generate(d, {5}).order() == 2);
  CHECK(subgroup_generate(d, {1, 5}).order() == 10);
  CHECK(subgroup_generate(d, {}).order() == 1);
  CHECK_THROWS_AS(subgroup_generate(d, {10}), InputError);
}

TEST_CASE("named subgroups") {
  CHECK(fixtures::sub("dihedral:n=5", "reflection").order() == 2);
  CHECK(fixtures::sub("affine:p=7", "zp_star").order() == 6);
  CHECK(fixtures::sub("symmetric:n=4", "matching").order() == 2);
  CHECK(fixtures::sub("symmetric:n=4", "hyperoctahedral").order() == 8);
  CHECK(fixtures::sub("symmetric:n=4", "young:2").order() == 4);
  CHECK(fixtures::sub("symmetric:n=4", "young:1").order() == 6);
  CHECK(fixtures::sub("symmetric:n=4", "gens=[6]").order() == 2);
  CHECK(fixtures::sub("heisenberg:p=3", "trivial").order() == 1);
  CHECK(fixtures::sub("heisenberg:p=3", "whole").order() == 27);

  // (1 2) sits at index 6 in the lexicographic enumeration of S4
  CHECK(s4({2, 1, 3, 4}) == 6);

  CHECK_THROWS_AS(fixtures::sub("dihedral:n=4", "reflection"), InputError);
  CHECK_THROWS_AS(fixtures::sub("cyclic:n=4", "zp_star"), InputError);
  CHECK_THROWS_AS(fixtures::sub("symmetric:n=5", "matching"), InputError);
  CHECK_THROWS_AS(fixtures::sub("symmetric:n=4", "young:4"), InputError);
  CHECK_THROWS_AS(fixtures::sub("symmetric:n=4", "gens=[1,"), InputError);
  CHECK_THROWS_AS(fixtures::sub("symmetric:n=4", "gens=[24]"), InputError);
  CHECK_THROWS_AS(fixtures::sub("symmetric:n=4", "sylow"), InputError);
}

TEST_CASE("conjugate subgroups in S4") {
  const GroupPtr s = make_symmetric(4);
  const Subgroup h = subgroup_generate(s, {s4({2, 1, 4, 3})});
  const Subgroup c = conjugate_subgroup(h, s4({1, 3, 2, 4}));
  CHECK(as_set(c) == std::set<Element>{0, s4({3, 4, 1, 2})});

  CHECK(conjugate_subgroup(h, 0) == h);
  const Subgroup norm = normalizer(h);
  for (Element g : norm.elements()) CHECK(conjugate_subgroup(h, g) == h);
}

TEST_CASE("conjugate families") {
  CHECK(conjugate_family(fixtures::d5_reflection()).size() == 5);
  CHECK(conjugate_family(fixtures::sub("symmetric:n=4", "matching")).size() == 3);
  CHECK(conjugate_family(fixtures::sub("dihedral:n=5", "gens=[1]")).size() == 1);

  const ConjugateFamily f = conjugate_family(fixtures::d5_reflection());
  CHECK(std::is_sorted(f.conjugates.begin(), f.conjugates.end()));
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(conjugate_subgroup(f.subgroup, f.rep[i]) == f.conjugates[i]);
  }
  for (Element g = 0; g < 10; ++g) {
    CHECK(f.conjugates[f.coset_map[g]] == conjugate_subgroup(f.subgroup, g));
  }
}

TEST_CASE("normalizer and core") {
  CHECK(normalizer(fixtures::d5_reflection()).order() == 2);
  CHECK(normalizer(fixtures::sub("symmetric:n=4", "matching")).order() == 8);
  CHECK(normalizer(fixtures::sub("dihedral:n=5", "gens=[1]")).order() == 10);

  CHECK(normal_core(fixtures::d5_reflection()).order() == 1);
  CHECK(normal_core(fixtures::sub("symmetric:n=4", "young:2")).order() == 1);
  CHECK(normal_core(fixtures::sub("dihedral:n=5", "gens=[1]")).order() == 5);

  CHECK(is_normal(fixtures::sub("dihedral:n=5", "gens=[1]")));
  CHECK_FALSE(is_normal(fixtures::d5_reflection()));
}

TEST_CASE("cosets") {
  const Subgroup h = fixtures::d5_reflection();
  const Partition left = left_cosets(h);
  CHECK(left.size() == 5);
  for (const auto& b : left) CHECK(b.size() == 2);

  const Partition dbl = double_cosets(h);
  std::vector<std::size_t> sizes;
  for (const auto& b : dbl) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 4, 4});

  const GroupPtr d = h.parent();
  CHECK(left_cosets(whole_group(d)).size() == 1);
  CHECK(double_cosets(whole_group(d)).size() == 1);
  CHECK(left_cosets(trivial_subgroup(d)).size() == 10);

  const Subgroup rot = fixtures::sub("dihedral:n=5", "gens=[1]");
  auto sorted = [](Partition p) {
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
    return p;
  };
  CHECK(sorted(double_cosets(rot)) == sorted(left_cosets(rot)));
}

TEST_CASE("group powers") {
  const GroupPtr d3 = make_dihedral(3);
  CHECK(group_power(d3, 1) == d3);
  const GroupPtr d3sq = group_power(d3, 2);
  CHECK(d3sq->order() == 36);
  CHECK(check_group(*d3sq).ok());
  CHECK(d3sq->family().to_string() == "dihedral:n=3^2");
  CHECK(group_power(make_dihedral(5), 3)->order() == 1000);
  CHECK_THROWS_AS(group_power(make_dihedral(5), 4), GuardError);

  // register-major: (x1, x2) at x1 * 6 + x2
  CHECK(d3sq->mult(1 * 6 + 3, 3 * 6 + 1) == d3->mult(1, 3) * 6 + d3->mult(3, 1));

  const Subgroup hk = subgroup_power(fixtures::sub("dihedral:n=3", "reflection"), d3sq, 2);
  CHECK(hk.order() == 4);
  CHECK(is_closed(*d3sq, hk.elements()));
}

TEST_CASE("heisenberg subgroup lattice") {
  const std::vector<Subgroup> subs = all_subgroups(make_heisenberg(3));
  std::map<std::size_t, int> by_order;
  for (const auto& h : subs) ++by_order[h.order()];
  // 1 trivial, 13 of order 3, 4 of order 9, the whole group
  CHECK(by_order[1] == 1);
  CHECK(by_order[3] == 13);
  CHECK(by_order[9] == 4);
  CHECK(by_order[27] == 1);
  CHECK(all_subgroups(make_symmetric(4)).size() == 30);
}

TEST_CASE("conjugation invariants") {
  for (const GroupPtr& g : small_groups()) {
    for (const Subgroup& h : all_subgroups(g)) {
      const ConjugateFamily fam = conjugate_family(h);
      CHECK(fam.size() * normalizer(h).order() == g->order());
      const Subgroup core = normal_core(h);
      for (Element x = 0; x < g->order(); ++x) {
        const Subgroup c = conjugate_subgroup(h, x);
        CHECK(c.order() == h.order());
        CHECK(conjugate_subgroup(c, g->inv(x)) == h);
        CHECK(conjugate_subgroup(core, x) == core);
      }
      // every double coset is a union of left cosets
      const Partition left = left_cosets(h);
      std::vector<int> owner(g->order(), -1);
      const Partition dbl = double_cosets(h);
      for (std::size_t b = 0; b < dbl.size(); ++b) {
        for (Element x : dbl[b]) owner[x] = static_cast<int>(b);
      }
      std::size_t total = 0;
      for (const auto& b : dbl) total += b.size();
      CHECK(total == g->order());
      for (const auto& c : left) {
        for (Element x : c) CHECK(owner[x] == owner[c.front()]);
      }
    }
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(*make_dihedral(5)).size() == 4);
  CHECK(conjugacy_classes(*make_symmetric(4)).size() == 5);
  CHECK(conjugacy_classes(*make_affine(5)).size() == 5);
  CHECK(conjugacy_classes(*make_heisenberg(3)).size() == 11);
  CHECK(conjugacy_classes(*make_cyclic(6)).size() == 6);
}
