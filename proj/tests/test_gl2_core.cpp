#include <algorithm>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "torsiondeg/matrix_group.hpp"

#include "oracles.hpp"
#include "testutil.hpp"

using namespace torsiondeg;

TEST_CASE("prime power contexts validate their arguments") {
  CHECK_THROWS_AS(PrimePower(4, 1), ArgumentError);
  CHECK_THROWS_AS(PrimePower(1, 1), ArgumentError);
  CHECK_THROWS_AS(PrimePower(2, 0), ArgumentError);
  CHECK_THROWS_AS(PrimePower(2, 32), ArgumentError);
  CHECK_THROWS_AS(PrimePower(3, 20), ArgumentError);

  PrimePower ctx(2, 5);
  CHECK(ctx.modulus == 32);
  CHECK(ctx.str() == "2^5");
  CHECK(prime_power_to(ctx, 3) == 8);
  CHECK(prime_power_to(ctx, 0) == 1);
  CHECK(ctx == PrimePower(2, 5));
  CHECK(!(ctx == PrimePower(2, 4)));
}

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(3, 16) == 11);
  CHECK(mod_inverse(5, 7) == 3);
  CHECK(mod_inverse(1, 9) == 1);
  CHECK_THROWS_AS(mod_inverse(2, 16), ArgumentError);
}

TEST_CASE("matrix arithmetic over Z/16") {
  PrimePower ctx(2, 4);
  ResidueMatrix a(ctx, 1, 0, 1, 1);
  ResidueMatrix b(ctx, 9, 0, 0, 1);
  ResidueMatrix ab = a * b;
  CHECK(ab == ResidueMatrix(ctx, 9, 0, 9, 1));
  CHECK(ab.det() == 9);
  CHECK(ab.apply(1, 0) == std::pair<std::uint32_t, std::uint32_t>{9, 9});
  CHECK(ab.apply(0, 1) == std::pair<std::uint32_t, std::uint32_t>{0, 1});

  // [[9,0],[8,9]] squares to the identity mod 16.
  ResidueMatrix s(ctx, 9, 0, 8, 9);
  CHECK((s * s).is_identity());
  CHECK(s.inverse() == s);

  CHECK(ResidueMatrix(ctx, 5, 0, 0, 1).transposed() ==
        ResidueMatrix(ctx, 5, 0, 0, 1));
  CHECK(ResidueMatrix(ctx, 1, 3, 0, 1).transposed() ==
        ResidueMatrix(ctx, 1, 0, 3, 1));
}

TEST_CASE("matrix construction rejects bad input") {
  PrimePower ctx(2, 4);
  CHECK_THROWS_AS(ResidueMatrix(ctx, 2, 0, 0, 1), ArgumentError);
  CHECK_THROWS_AS(ResidueMatrix(ctx, 0, 0, 0, 0), ArgumentError);
  ResidueMatrix m(ctx, 1, 1, 0, 1);
  ResidueMatrix other(PrimePower(2, 3), 1, 1, 0, 1);
  CHECK_THROWS_AS(m * other, StructuralError);
  CHECK_THROWS_AS(m.reduced(0), ArgumentError);
  CHECK_THROWS_AS(m.reduced(5), ArgumentError);
}

TEST_CASE("reduction and lifting of single matrices") {
  PrimePower ctx(2, 4);
  ResidueMatrix m(ctx, 9, 0, 9, 1);
  CHECK(m.reduced(2) == ResidueMatrix(PrimePower(2, 2), 1, 0, 1, 1));
  CHECK(m.reduced(4) == m);
  ResidueMatrix up = m.lifted(5);
  CHECK(up.context() == PrimePower(2, 5));
  CHECK(up.a() == 9);
  CHECK(up.reduced(4) == m);
}

TEST_CASE("determinant is multiplicative and inverses invert") {
  auto rng = testutil::seeded_rng();
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 4},
                      {3, 2}, {5, 1}, {7, 1}}) {
    PrimePower ctx(p, n);
    for (int i = 0; i < 250; ++i) {
      ResidueMatrix a = testutil::random_unit_matrix(ctx, rng);
      ResidueMatrix b = testutil::random_unit_matrix(ctx, rng);
      CHECK((a * b).det() ==
            std::uint64_t{a.det()} * b.det() % ctx.modulus);
      CHECK((a * a.inverse()).is_identity());
    }
  }
}

TEST_CASE("closures match the quartic oracle scan") {
  for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 1},
                      {3, 1}, {2, 3}, {3, 2}, {5, 1}}) {
    PrimePower ctx(p, n);
    MatrixGroup g = gl2_group(ctx);
    CHECK(g.elements() == oracle::gl2_keys(ctx.modulus));
  }

  PrimePower c4(2, 2);
  MatrixGroup e12 = group_closure({ResidueMatrix(c4, 1, 1, 0, 1)});
  CHECK(e12.order() == 4);
}

TEST_CASE("closure does not depend on generator order") {
  PrimePower ctx(2, 3);
  std::vector<ResidueMatrix> gens = gl2_generators(ctx);
  std::vector<ResidueMatrix> rev(gens.rbegin(), gens.rend());
  CHECK(group_closure(gens).elements() == group_closure(rev).elements());
}

TEST_CASE("the element cap is enforced and reported") {
  PrimePower ctx(3, 2);
  try {
    group_closure(gl2_generators(ctx), 100);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("100") != std::string::npos);
  }
}

TEST_CASE("kernel generators follow the level ladder") {
  PrimePower c25(2, 5);
  auto k = kernel_generators(c25, 4);
  REQUIRE(k.size() == 4);
  CHECK(k[0] == ResidueMatrix(c25, 1, 16, 0, 1));
  CHECK(k[1] == ResidueMatrix(c25, 1, 0, 16, 1));
  CHECK(k[2] == ResidueMatrix(c25, 17, 0, 0, 1));
  CHECK(k[3] == ResidueMatrix(c25, 1, 0, 0, 17));
  CHECK(kernel_generators(c25, 2).size() == 12);

  PrimePower c32(3, 2);
  auto k3 = kernel_generators(c32, 1);
  REQUIRE(k3.size() == 4);
  CHECK(k3[0] == ResidueMatrix(c32, 1, 3, 0, 1));
  CHECK(k3[2] == ResidueMatrix(c32, 4, 0, 0, 1));

  CHECK_THROWS_AS(kernel_generators(c25, 0), ArgumentError);
  CHECK_THROWS_AS(kernel_generators(c25, 5), ArgumentError);

  // The one-step kernel mod 4 has p^4 elements.
  PrimePower c22(2, 2);
  MatrixGroup kg = group_closure(kernel_generators(c22, 1));
  CHECK(kg.order() == 16);
  std::vector<std::uint64_t> keys;
  for (const auto& m : kernel_generators(c22, 1))
    keys.push_back(oracle::pack(m.a(), m.b(), m.c(), m.d()));
  CHECK(kg.elements() == oracle::closure(4, keys));
}

TEST_CASE("gl2 orders") {
  CHECK(gl2_order(2, 1) == 6);
  CHECK(gl2_order(2, 4) == 24576);
  CHECK(gl2_order(2, 5) == 393216);
  CHECK(gl2_order(37, 1) == 1822176);
  for (std::uint32_t m : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u}) {
    std::uint64_t want = oracle::gl2_keys(m).size();
    CHECK(gl2_order_composite(m) == want);
  }
  CHECK(gl2_order_composite(1) == 1);
  CHECK(gl2_order_composite(6) == 288);
  CHECK_THROWS_AS(gl2_order(6, 1), ArgumentError);
  CHECK_THROWS_AS(gl2_order(2, 17), ArgumentError);  // past 64 bits

  // Cross-check against M^3 phi(M) prod (1 - 1/p^2) in exact arithmetic.
  for (std::uint64_t m = 1; m <= 120; ++m) {
    std::uint64_t phi = 0;
    for (std::uint64_t k = 1; k <= m; ++k)
      if (std::gcd(k, m) == 1) ++phi;
    std::uint64_t r = m * m * m * phi;
    std::uint64_t rest = m;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t q = 2; q * q <= rest; ++q)
      if (rest % q == 0) {
        primes.push_back(q);
        while (rest % q == 0) rest /= q;
      }
    if (rest > 1) primes.push_back(rest);
    for (std::uint64_t q : primes) r /= q * q;
    for (std::uint64_t q : primes) r *= q * q - 1;
    CHECK(gl2_order_composite(m) == r);
  }
}

TEST_CASE("lift and reduce respect orders and round-trip") {
  PrimePower c21(2, 1);
  MatrixGroup full = gl2_group(c21);
  MatrixGroup lifted = lift_group(full, 3);
  CHECK(lifted.order() == gl2_order(2, 3));
  CHECK(lifted.declared_level() == 1);
  CHECK(reduce_group(lifted, 1).elements() == full.elements());

  MatrixGroup b = group_closure({ResidueMatrix(c21, 1, 1, 0, 1)});
  MatrixGroup bl = lift_group(b, 3);
  CHECK(bl.order() == b.order() * 256);  // p^(4*(3-1))
  CHECK(reduce_group(bl, 1).elements() == b.elements());

  CHECK_THROWS_AS(lift_group(bl, 1), ArgumentError);
  CHECK(reduce_group(b, 1).elements() == b.elements());
}

TEST_CASE("definition level detection") {
  PrimePower c22(2, 2);
  MatrixGroup e12 = group_closure({ResidueMatrix(c22, 1, 1, 0, 1)});
  CHECK(!is_defined_at_level(e12, 1));
  CHECK(is_defined_at_level(lift_group(gl2_group(PrimePower(2, 1)), 2), 1));
  CHECK_THROWS_AS(is_defined_at_level(e12, 2), ArgumentError);
}

TEST_CASE("conjugation preserves the group order") {
  auto rng = testutil::seeded_rng(7);
  PrimePower ctx(3, 1);
  MatrixGroup borel = group_closure({ResidueMatrix(ctx, 2, 0, 0, 1),
                                     ResidueMatrix(ctx, 1, 0, 0, 2),
                                     ResidueMatrix(ctx, 1, 1, 0, 1)});
  REQUIRE(borel.order() == 12);
  for (int i = 0; i < 5; ++i) {
    ResidueMatrix t = testutil::random_unit_matrix(ctx, rng);
    CHECK(conjugated(borel, t).order() == 12);
  }
  ResidueMatrix t = testutil::random_unit_matrix(ctx, rng);
  CHECK(conjugated(gl2_group(ctx), t).elements() == gl2_group(ctx).elements());
}

TEST_CASE("least primitive roots") {
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(3) == 2);
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(11) == 2);
  CHECK(primitive_root(13) == 2);
  CHECK(primitive_root(17) == 3);
  CHECK(primitive_root(23) == 5);
  CHECK(primitive_root(37) == 2);
}
