#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_set>
#include <utility>
#include <vector>

#include "torsiondeg/matrix_group.hpp"

namespace torsiondeg {

// A point of (Z/p^N)^2, standing in for a p^N-torsion point in a basis where
// matrices act from the left on the column (x, y)^T.
struct TorsionPoint {
  PrimePower ctx;
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  TorsionPoint(const PrimePower& c, std::uint64_t px, std::uint64_t py)
      : ctx(c), x(static_cast<std::uint32_t>(px % c.modulus)),
        y(static_cast<std::uint32_t>(py % c.modulus)) {}

  std::uint64_t key() const { return (std::uint64_t{x} << 32) | y; }

  friend bool operator==(const TorsionPoint& a, const TorsionPoint& b) {
    return a.ctx == b.ctx && a.x == b.x && a.y == b.y;
  }
};

// Additive order of (x, y) in (Z/p^N)^2: p^N / gcd(p^N, x, y).
inline std::uint64_t point_order(const TorsionPoint& pt) {
  std::uint64_t g = std::gcd(std::uint64_t{pt.ctx.modulus},
                             std::gcd(std::uint64_t{pt.x}, std::uint64_t{pt.y}));
  return pt.ctx.modulus / g;
}

// A subgroup of shape Z/p^s + Z/p^N inside (Z/p^N)^2, stored as the full
// p^s-torsion plus the multiples of a witness point of exact order p^N.
// `elements` holds every point key, sorted; that sorted vector is the
// canonical key, so equal element sets compare equal and enumeration output
// can be ordered deterministically.
struct TorsionSubgroup {
  PrimePower ctx;
  std::uint32_t s = 0;
  TorsionPoint witness;
  std::vector<std::uint64_t> elements;

  const std::vector<std::uint64_t>& canonical_key() const { return elements; }
};

// Build Z/p^s + <P> for a witness P of exact order p^N. Every element is hit
// exactly once: k P for k < p^(N-s) meets each coset of the p^s-torsion once.
inline TorsionSubgroup make_torsion_subgroup(const PrimePower& ctx,
                                             std::uint32_t s,
                                             const TorsionPoint& witness) {
  if (witness.ctx != ctx)
    throw StructuralError("witness context mismatch");
  if (s > ctx.exponent)
    throw ArgumentError("shape parameter s exceeds level");
  if (point_order(witness) != ctx.modulus)
    throw ArgumentError("witness point does not have exact order " + ctx.str());
  const std::uint64_t m = ctx.modulus;
  const std::uint32_t q = ctx.modulus / prime_power_to(ctx, s);  // p^(N-s)
  const std::uint32_t ps = prime_power_to(ctx, s);
  std::vector<std::uint64_t> els;
  els.reserve(std::uint64_t{m} * ps);  // |T| = p^(N+s)
  std::uint64_t kx = 0, ky = 0;
  for (std::uint32_t k = 0; k < m / ps; ++k) {
    for (std::uint32_t i = 0; i < ps; ++i)
      for (std::uint32_t j = 0; j < ps; ++j) {
        std::uint64_t ex = (kx + std::uint64_t{i} * q) % m;
        std::uint64_t ey = (ky + std::uint64_t{j} * q) % m;
        els.push_back(ex << 32 | ey);
      }
    kx = (kx + witness.x) % m;
    ky = (ky + witness.y) % m;
  }
  std::sort(els.begin(), els.end());
  return TorsionSubgroup{ctx, s, witness, std::move(els)};
}

// All subgroups of (Z/p^N)^2 of shape Z/p^s + Z/p^N. Witness points are
// scanned in lexicographic order and duplicates dropped by canonical key,
// keeping the first witness found; output is sorted by canonical key.
inline std::vector<TorsionSubgroup> enumerate_torsion_subgroups(
    const PrimePower& ctx, std::uint32_t s) {
  if (s > ctx.exponent)
    throw ArgumentError("shape parameter s exceeds level");
  std::map<std::vector<std::uint64_t>, TorsionSubgroup> dedup;
  const std::uint32_t m = ctx.modulus;
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t y = 0; y < m; ++y) {
      if (x % ctx.p == 0 && y % ctx.p == 0) continue;  // not exact order p^N
      TorsionSubgroup t = make_torsion_subgroup(ctx, s, TorsionPoint(ctx, x, y));
      auto key = t.elements;
      dedup.emplace(std::move(key), std::move(t));
    }
  std::vector<TorsionSubgroup> out;
  out.reserve(dedup.size());
  for (auto& [key, t] : dedup) out.push_back(std::move(t));
  return out;
}

namespace detail {

inline bool fixes_witness_and_scalar_part(std::uint64_t mat_key,
                                          std::uint32_t x, std::uint32_t y,
                                          std::uint64_t m, std::uint32_t ps) {
  auto e = unpack_matrix(mat_key);
  if ((std::uint64_t{e[0]} * x + std::uint64_t{e[1]} * y) % m != x) return false;
  if ((std::uint64_t{e[2]} * x + std::uint64_t{e[3]} * y) % m != y) return false;
  if (ps > 1) {
    if (e[0] % ps != 1 || e[1] % ps != 0) return false;
    if (e[2] % ps != 0 || e[3] % ps != 1) return false;
  }
  return true;
}

}  // namespace detail

// The subgroup of g fixing T pointwise. T is fixed pointwise exactly when the
// witness is fixed and the matrix is trivial on the p^s-torsion, i.e. is the
// identity mod p^s; for s = 0 only the witness condition remains.
inline MatrixGroup pointwise_stabilizer(const MatrixGroup& g,
                                        const TorsionSubgroup& t,
                                        std::uint64_t cap = kDefaultElementCap) {
  if (g.context() != t.ctx)
    throw StructuralError("group and torsion subgroup context mismatch");
  const std::uint64_t m = g.context().modulus;
  const std::uint32_t ps = prime_power_to(g.context(), t.s);
  std::vector<std::uint64_t> keep;
  for (std::uint64_t key : g.elements(cap))
    if (detail::fixes_witness_and_scalar_part(key, t.witness.x, t.witness.y, m, ps))
      keep.push_back(key);
  return MatrixGroup::from_elements(g.context(), std::move(keep),
                                    g.declared_level());
}

// Index [g : stabilizer] by orbit counting on the pair (image of the witness,
// reduction mod p^s), which the stabilizer is exactly the stabilizer of.
// Never enumerates g, so it works past the element cap.
inline std::uint64_t orbit_index(const MatrixGroup& g, const TorsionSubgroup& t) {
  if (g.context() != t.ctx)
    throw StructuralError("group and torsion subgroup context mismatch");
  const std::uint64_t m = g.context().modulus;
  const std::uint32_t ps = prime_power_to(g.context(), t.s);
  if (ps > detail::kMaxEnumerableModulus)
    throw ArgumentError("orbit state space requires p^s <= 2^16");

  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& v) const {
      std::uint64_t h = v.first * 0x9e3779b97f4a7c15ull;
      h ^= v.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  using State = std::pair<std::uint64_t, std::uint64_t>;

  std::vector<std::array<std::uint32_t, 4>> gm, gs;
  for (const auto& gen : g.generators()) {
    gm.push_back({gen.a(), gen.b(), gen.c(), gen.d()});
    gs.push_back({gen.a() % ps, gen.b() % ps, gen.c() % ps, gen.d() % ps});
  }
  State start{TorsionPoint(t.ctx, t.witness.x, t.witness.y).key(),
              ps > 1 ? detail::pack_matrix(1, 0, 0, 1) : 0};
  std::unordered_set<State, PairHash> seen;
  std::vector<State> queue_;
  seen.insert(start);
  queue_.push_back(start);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    auto [pkey, rkey] = queue_[head];
    std::uint64_t x = pkey >> 32, y = pkey & 0xffffffffull;
    auto r = detail::unpack_matrix(rkey);
    for (std::size_t i = 0; i < gm.size(); ++i) {
      const auto& a = gm[i];
      std::uint64_t nx = (a[0] * x + a[1] * y) % m;
      std::uint64_t ny = (a[2] * x + a[3] * y) % m;
      std::uint64_t nr = 0;
      if (ps > 1) {
        const auto& b = gs[i];
        nr = detail::pack_matrix(
            static_cast<std::uint32_t>((std::uint64_t{b[0]} * r[0] + std::uint64_t{b[1]} * r[2]) % ps),
            static_cast<std::uint32_t>((std::uint64_t{b[0]} * r[1] + std::uint64_t{b[1]} * r[3]) % ps),
            static_cast<std::uint32_t>((std::uint64_t{b[2]} * r[0] + std::uint64_t{b[3]} * r[2]) % ps),
            static_cast<std::uint32_t>((std::uint64_t{b[2]} * r[1] + std::uint64_t{b[3]} * r[3]) % ps));
      }
      State next{nx << 32 | ny, nr};
      if (seen.insert(next).second) queue_.push_back(next);
    }
  }
  return queue_.size();
}

// Degree index [g : H_T]. Uses the stabilizer filter over the enumerated
// group; if enumeration blows the cap, falls back to orbit counting.
inline std::uint64_t degree_index(const MatrixGroup& g, const TorsionSubgroup& t,
                                  std::uint64_t cap = kDefaultElementCap) {
  try {
    return g.order(cap) / pointwise_stabilizer(g, t, cap).order();
  } catch (const ResourceError&) {
    return orbit_index(g, t);
  }
}

}  // namespace torsiondeg
