// End-to-end tour on the builtin image X235l: lift the level-4 group to
// level 5, compute the degree index of two torsion subgroups of shape (1,5)
// by hand, then print the full g table.

#include <cstdio>
#include <utility>

#include "torsiondeg/degree.hpp"

using namespace torsiondeg;

static unsigned long long u(std::uint64_t v) {
  return static_cast<unsigned long long>(v);
}

int main() {
  ImageRecord rec = builtin_image("X235l");
  MatrixGroup g4 = rec.group();
  std::printf("image %s: determined at level %u, order %llu, index %llu in GL2(Z/16)\n",
              rec.label.c_str(), rec.level, u(g4.order()),
              u(gl2_order(2, 4) / g4.order()));

  MatrixGroup g5 = lift_group(g4, 5);
  std::printf("lifted to level 5: order %llu\n\n", u(g5.order()));

  PrimePower c32(2, 5);
  const std::pair<std::uint32_t, std::uint32_t> witnesses[] = {{1, 0}, {0, 1}};
  for (auto [x, y] : witnesses) {
    TorsionSubgroup t = make_torsion_subgroup(c32, 1, TorsionPoint(c32, x, y));
    std::printf("T = E[2] + <(%u,%u)>: stabilizer order %llu, degree index %llu\n",
                x, y, u(pointwise_stabilizer(g5, t).order()),
                u(degree_index(g5, t)));
  }
  GmResult r = g_m_constants(g5, 1, 5);
  std::printf("over every shape (1,5) subgroup: g = %llu, m = %llu\n\n",
              u(r.g), u(r.m));

  std::printf("g table of %s, shapes (s, M) with 0 <= s <= M <= 5:\n",
              rec.label.c_str());
  GmTable t = image_table(g4, LevelConfig::for_prime(2), 5, rec.label);
  std::printf("  s\\M");
  for (unsigned M = 1; M <= 5; ++M) std::printf("%7u", M);
  std::printf("\n");
  for (std::uint32_t s = 0; s <= 5; ++s) {
    std::printf("%5u", s);
    for (std::uint32_t M = 1; M <= 5; ++M) {
      if (M < s || (s == 0 && M < 1))
        std::printf("%7s", "");
      else
        std::printf("%7llu", u(t.at(s, M).g));
    }
    std::printf("\n");
  }
  return 0;
}
