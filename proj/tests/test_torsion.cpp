#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "torsiondeg/catalog.hpp"
#include "torsiondeg/torsion.hpp"

#include "oracles.hpp"
#include "testutil.hpp"

using namespace torsiondeg;

namespace {

std::vector<std::uint32_t> to_pcodes(const std::vector<std::uint64_t>& keys) {
  std::vector<std::uint32_t> out;
  out.reserve(keys.size());
  for (auto k : keys)
    out.push_back(oracle::pcode(static_cast<std::uint32_t>(k >> 32),
                                static_cast<std::uint32_t>(k & 0xffffffffull)));
  return out;
}

}  // namespace

TEST_CASE("point orders") {
  PrimePower c16(2, 4);
  CHECK(point_order(TorsionPoint(c16, 4, 8)) == 4);
  CHECK(point_order(TorsionPoint(c16, 0, 0)) == 1);
  CHECK(point_order(TorsionPoint(c16, 1, 0)) == 16);
  PrimePower c9(3, 2);
  CHECK(point_order(TorsionPoint(c9, 3, 6)) == 3);
  CHECK(point_order(TorsionPoint(c9, 12, 7)) == 9);  // coordinates reduce
}

TEST_CASE("witness validation") {
  PrimePower c4(2, 2);
  CHECK_THROWS_AS(make_torsion_subgroup(c4, 0, TorsionPoint(c4, 2, 0)),
                  ArgumentError);
  CHECK_THROWS_AS(make_torsion_subgroup(c4, 3, TorsionPoint(c4, 1, 0)),
                  ArgumentError);
  CHECK_THROWS_AS(
      make_torsion_subgroup(c4, 0, TorsionPoint(PrimePower(2, 3), 1, 0)),
      StructuralError);
}

TEST_CASE("subgroup construction") {
  PrimePower c4(2, 2);
  TorsionSubgroup t = make_torsion_subgroup(c4, 1, TorsionPoint(c4, 1, 0));
  REQUIRE(t.elements.size() == 8);
  CHECK(std::is_sorted(t.elements.begin(), t.elements.end()));
  CHECK(std::adjacent_find(t.elements.begin(), t.elements.end()) ==
        t.elements.end());

  // Closed under addition.
  std::set<std::uint64_t> s(t.elements.begin(), t.elements.end());
  for (auto a : t.elements)
    for (auto b : t.elements) {
      std::uint64_t x = ((a >> 32) + (b >> 32)) % 4;
      std::uint64_t y = ((a & 0xffffffffull) + (b & 0xffffffffull)) % 4;
      CHECK(s.count(x << 32 | y) == 1);
    }

  // Another witness generating the same subgroup gives the same key.
  TorsionSubgroup t2 = make_torsion_subgroup(c4, 1, TorsionPoint(c4, 3, 0));
  CHECK(t.canonical_key() == t2.canonical_key());

  // Full torsion as a single subgroup of shape (N, N).
  TorsionSubgroup full = make_torsion_subgroup(c4, 2, TorsionPoint(c4, 1, 1));
  CHECK(full.elements.size() == 16);
}

TEST_CASE("enumeration counts follow the closed formula") {
  for (auto [p, nmax] : {std::pair<std::uint32_t, std::uint32_t>{2, 5},
                         {3, 3}, {5, 2}, {7, 1}}) {
    for (std::uint32_t N = 1; N <= nmax; ++N) {
      PrimePower ctx(p, N);
      for (std::uint32_t s = 0; s <= N; ++s) {
        std::uint64_t want =
            s == N ? 1
                   : std::uint64_t{p + 1} * prime_power_to(ctx, N - s - 1);
        CHECK(enumerate_torsion_subgroups(ctx, s).size() == want);
      }
    }
  }

  auto three = enumerate_torsion_subgroups(PrimePower(2, 1), 0);
  REQUIRE(three.size() == 3);
  CHECK(three[0].elements == std::vector<std::uint64_t>{0, 1});
  CHECK(three[1].elements == std::vector<std::uint64_t>{0, std::uint64_t{1} << 32});
  CHECK(three[2].elements ==
        std::vector<std::uint64_t>{0, (std::uint64_t{1} << 32) | 1});

  CHECK(enumerate_torsion_subgroups(PrimePower(2, 5), 1).size() == 24);
}

TEST_CASE("enumeration matches the join oracle") {
  for (auto [p, N, s] : {std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>
                             {2, 2, 1}, {2, 3, 1}, {3, 2, 0}, {3, 2, 2}}) {
    auto lib = enumerate_torsion_subgroups(PrimePower(p, N), s);
    std::vector<std::vector<std::uint32_t>> got;
    for (const auto& t : lib) got.push_back(to_pcodes(t.elements));
    CHECK(got == oracle::subgroups_of_shape(p, N, s));
  }
}

TEST_CASE("stabilizer equals the literal pointwise fixer") {
  MatrixGroup gl2f2 = gl2_group(PrimePower(2, 1));
  for (const auto& t : enumerate_torsion_subgroups(PrimePower(2, 1), 0)) {
    MatrixGroup st = pointwise_stabilizer(gl2f2, t);
    CHECK(st.elements() ==
          oracle::pointwise_stabilizer(2, gl2f2.elements(),
                                       to_pcodes(t.elements)));
  }
  // The stabilizer of a single line in GL2(F2) has order 2, index 3.
  auto t0 = enumerate_torsion_subgroups(PrimePower(2, 1), 0)[0];
  CHECK(pointwise_stabilizer(gl2f2, t0).order() == 2);
  CHECK(degree_index(gl2f2, t0) == 3);

  MatrixGroup x = builtin_image("X235l").group();
  for (std::uint32_t s : {0u, 1u, 2u}) {
    auto subs = enumerate_torsion_subgroups(PrimePower(2, 4), s);
    for (std::size_t i = 0; i < subs.size() && i < 3; ++i) {
      MatrixGroup st = pointwise_stabilizer(x, subs[i]);
      CHECK(st.elements() ==
            oracle::pointwise_stabilizer(16, x.elements(),
                                         to_pcodes(subs[i].elements)));
    }
  }
}

TEST_CASE("level-5 indices for the shipped 2-adic image") {
  MatrixGroup g5 = lift_group(builtin_image("X235l").group(), 5);
  REQUIRE(g5.order() == 4096);
  PrimePower c32(2, 5);

  TorsionSubgroup t10 = make_torsion_subgroup(c32, 1, TorsionPoint(c32, 1, 0));
  MatrixGroup h10 = pointwise_stabilizer(g5, t10);
  CHECK(h10.order() == 8);
  CHECK(degree_index(g5, t10) == 512);

  // That stabilizer is generated by [[1,16],[0,1]] and [[1,0],[0,25]].
  MatrixGroup expected = group_closure({ResidueMatrix(c32, 1, 16, 0, 1),
                                        ResidueMatrix(c32, 1, 0, 0, 25)});
  CHECK(h10.elements() == expected.elements());

  TorsionSubgroup t01 = make_torsion_subgroup(c32, 1, TorsionPoint(c32, 0, 1));
  CHECK(pointwise_stabilizer(g5, t01).order() == 256);
  CHECK(degree_index(g5, t01) == 16);
}

TEST_CASE("orbit counting agrees with the stabilizer filter") {
  MatrixGroup x = builtin_image("X235l").group();
  for (std::uint32_t s = 0; s <= 4; ++s)
    for (const auto& t : enumerate_torsion_subgroups(PrimePower(2, 4), s))
      CHECK(orbit_index(x, t) ==
            x.order() / pointwise_stabilizer(x, t).order());

  MatrixGroup gl2f5 = gl2_group(PrimePower(5, 1));
  for (std::uint32_t s : {0u, 1u})
    for (const auto& t : enumerate_torsion_subgroups(PrimePower(5, 1), s))
      CHECK(orbit_index(gl2f5, t) ==
            gl2f5.order() / pointwise_stabilizer(gl2f5, t).order());

  MatrixGroup b9 = lift_group(builtin_image("3B").group(), 2);
  for (std::uint32_t s : {0u, 1u, 2u})
    for (const auto& t : enumerate_torsion_subgroups(PrimePower(3, 2), s))
      CHECK(orbit_index(b9, t) ==
            b9.order() / pointwise_stabilizer(b9, t).order());
}

TEST_CASE("degree_index falls back to orbit counting past the cap") {
  PrimePower c5(5, 1);
  auto t = enumerate_torsion_subgroups(c5, 0)[0];
  MatrixGroup capped(gl2_generators(c5), 1);
  CHECK(degree_index(capped, t, 100) == 24);
  CHECK(!capped.enumerated());  // the group was never enumerated
}
