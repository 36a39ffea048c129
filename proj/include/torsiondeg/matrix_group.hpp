#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "torsiondeg/residue_matrix.hpp"

namespace torsiondeg {

// Default bound on the number of elements any single enumeration may hold.
inline constexpr std::uint64_t kDefaultElementCap = std::uint64_t{1} << 22;

namespace detail {

// Elements are packed into one 64-bit key, four 16-bit lanes (a, b, c, d).
// This caps enumerable moduli at 2^16; contexts up to 2^31 still work for
// plain matrix arithmetic, they just cannot be enumerated.
inline constexpr std::uint32_t kMaxEnumerableModulus = 1u << 16;

inline std::uint64_t pack_matrix(std::uint32_t a, std::uint32_t b,
                                 std::uint32_t c, std::uint32_t d) {
  return (std::uint64_t{a} << 48) | (std::uint64_t{b} << 32) |
         (std::uint64_t{c} << 16) | std::uint64_t{d};
}

inline std::array<std::uint32_t, 4> unpack_matrix(std::uint64_t key) {
  return {static_cast<std::uint32_t>(key >> 48),
          static_cast<std::uint32_t>((key >> 32) & 0xffff),
          static_cast<std::uint32_t>((key >> 16) & 0xffff),
          static_cast<std::uint32_t>(key & 0xffff)};
}

inline void require_enumerable(const PrimePower& ctx) {
  if (ctx.modulus > kMaxEnumerableModulus)
    throw ArgumentError("enumeration requires modulus <= 2^16, got " +
                        ctx.str());
}

// Breadth-first closure of the generator set under left multiplication,
// starting from the identity. Insertion order is deterministic for a fixed
// generator order; the result is returned sorted.
inline std::vector<std::uint64_t> closure_keys(
    const PrimePower& ctx, const std::vector<ResidueMatrix>& gens,
    std::uint64_t cap) {
  require_enumerable(ctx);
  const std::uint64_t m = ctx.modulus;
  std::vector<std::array<std::uint32_t, 4>> gm;
  gm.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.context() != ctx)
      throw StructuralError("generator context " + g.context().str() +
                            " does not match group context " + ctx.str());
    gm.push_back({g.a(), g.b(), g.c(), g.d()});
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1024);
  std::vector<std::uint64_t> order;
  order.push_back(pack_matrix(1, 0, 0, 1));
  seen.insert(order[0]);
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto e = unpack_matrix(order[head]);
    for (const auto& g : gm) {
      std::uint64_t a = (std::uint64_t{g[0]} * e[0] + std::uint64_t{g[1]} * e[2]) % m;
      std::uint64_t b = (std::uint64_t{g[0]} * e[1] + std::uint64_t{g[1]} * e[3]) % m;
      std::uint64_t c = (std::uint64_t{g[2]} * e[0] + std::uint64_t{g[3]} * e[2]) % m;
      std::uint64_t d = (std::uint64_t{g[2]} * e[1] + std::uint64_t{g[3]} * e[3]) % m;
      std::uint64_t key = pack_matrix(
          static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d));
      if (seen.insert(key).second) {
        if (seen.size() > cap)
          throw ResourceError("group enumeration exceeded the element cap of " +
                              std::to_string(cap));
        order.push_back(key);
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace detail

// A subgroup of GL2(Z/p^N) given by generators. declared_level d records the
// level at which the group is fully determined: the group is the full
// preimage of its own reduction mod p^d. Element sets are computed lazily and
// cached; groups are immutable once built.
class MatrixGroup {
 public:
  MatrixGroup(std::vector<ResidueMatrix> generators, std::uint32_t declared_level)
      : gens_(std::move(generators)) {
    if (gens_.empty())
      throw ArgumentError("a matrix group needs at least one generator");
    ctx_ = gens_.front().context();
    for (const auto& g : gens_)
      if (g.context() != ctx_)
        throw StructuralError("mixed generator contexts in one group");
    if (declared_level < 1 || declared_level > ctx_.exponent)
      throw ArgumentError("declared level " + std::to_string(declared_level) +
                          " outside 1.." + std::to_string(ctx_.exponent));
    declared_ = declared_level;
  }

  // Wrap an already enumerated element set (used for stabilizers). The keys
  // must be sorted, closed under multiplication and contain the identity.
  static MatrixGroup from_elements(const PrimePower& ctx,
                                   std::vector<std::uint64_t> sorted_keys,
                                   std::uint32_t declared_level) {
    if (sorted_keys.empty())
      throw ArgumentError("element set may not be empty");
    std::vector<ResidueMatrix> gens;
    gens.reserve(sorted_keys.size());
    for (auto key : sorted_keys) {
      auto e = detail::unpack_matrix(key);
      gens.emplace_back(ctx, e[0], e[1], e[2], e[3]);
    }
    MatrixGroup g(std::move(gens), declared_level);
    g.elements_ = std::move(sorted_keys);
    return g;
  }

  const PrimePower& context() const { return ctx_; }
  std::uint32_t declared_level() const { return declared_; }
  const std::vector<ResidueMatrix>& generators() const { return gens_; }

  bool enumerated() const { return elements_.has_value(); }

  // Sorted packed element keys. First call runs the closure under `cap`.
  const std::vector<std::uint64_t>& elements(
      std::uint64_t cap = kDefaultElementCap) const {
    if (!elements_)
      elements_ = detail::closure_keys(ctx_, gens_, cap);
    return *elements_;
  }

  std::uint64_t order(std::uint64_t cap = kDefaultElementCap) const {
    return elements(cap).size();
  }

  bool contains(const ResidueMatrix& m,
                std::uint64_t cap = kDefaultElementCap) const {
    if (m.context() != ctx_)
      throw StructuralError("membership test across contexts");
    const auto& els = elements(cap);
    std::uint64_t key = detail::pack_matrix(m.a(), m.b(), m.c(), m.d());
    return std::binary_search(els.begin(), els.end(), key);
  }

  ResidueMatrix element_at(std::size_t i) const {
    auto e = detail::unpack_matrix(elements().at(i));
    return ResidueMatrix(ctx_, e[0], e[1], e[2], e[3]);
  }

 private:
  PrimePower ctx_;
  std::vector<ResidueMatrix> gens_;
  std::uint32_t declared_ = 1;
  mutable std::optional<std::vector<std::uint64_t>> elements_;
};

// Eagerly enumerated closure of a generator list, declared at its own level.
inline MatrixGroup group_closure(std::vector<ResidueMatrix> generators,
                                 std::uint64_t cap = kDefaultElementCap) {
  if (generators.empty())
    throw ArgumentError("a matrix group needs at least one generator");
  std::uint32_t level = generators.front().context().exponent;
  MatrixGroup g(std::move(generators), level);
  (void)g.elements(cap);
  return g;
}

// Order of GL2(Z/p^N): (p-1)(p^2-1)p^(4N-3).
inline std::uint64_t gl2_order(std::uint32_t p, std::uint32_t n) {
  if (!is_prime(p)) throw ArgumentError("not a prime: " + std::to_string(p));
  if (n < 1) throw ArgumentError("level must be at least 1");
  std::uint64_t r = detail::checked_mul(std::uint64_t{p} - 1,
                                        std::uint64_t{p} * p - 1);
  return detail::checked_mul(r, detail::checked_pow(p, 4 * n - 3));
}

// Order of GL2(Z/M) for any M >= 1, via the prime-power factors of M.
inline std::uint64_t gl2_order_composite(std::uint64_t m) {
  if (m < 1) throw ArgumentError("modulus must be at least 1");
  std::uint64_t r = 1;
  std::uint64_t rest = m;
  for (std::uint64_t q = 2; q * q <= rest; ++q) {
    if (rest % q) continue;
    std::uint32_t e = 0;
    while (rest % q == 0) { rest /= q; ++e; }
    r = detail::checked_mul(r, gl2_order(static_cast<std::uint32_t>(q), e));
  }
  if (rest > 1) r = detail::checked_mul(r, gl2_order(static_cast<std::uint32_t>(rest), 1));
  return r;
}

// Generators of the kernel of reduction GL2(Z/p^N) -> GL2(Z/p^d), expressed
// at level N: the four matrices Id + p^j E for each intermediate level
// d <= j < N, with E running over the elementary matrices e12, e21, e11, e22.
inline std::vector<ResidueMatrix> kernel_generators(const PrimePower& ctx,
                                                    std::uint32_t d) {
  if (d < 1 || d >= ctx.exponent)
    throw ArgumentError("kernel base level " + std::to_string(d) +
                        " outside 1.." + std::to_string(ctx.exponent - 1));
  std::vector<ResidueMatrix> out;
  out.reserve(4 * (ctx.exponent - d));
  for (std::uint32_t j = d; j < ctx.exponent; ++j) {
    std::uint32_t q = prime_power_to(ctx, j);
    out.emplace_back(ctx, 1, q, 0, 1);
    out.emplace_back(ctx, 1, 0, q, 1);
    out.emplace_back(ctx, 1 + q, 0, 0, 1);
    out.emplace_back(ctx, 1, 0, 0, 1 + q);
  }
  return out;
}

// The full preimage of g under reduction from level `to_level`. Generated by
// entry-wise lifts of the generators together with the reduction kernel, so
// |lift| = |g| * p^(4 * (to_level - from_level)).
inline MatrixGroup lift_group(const MatrixGroup& g, std::uint32_t to_level) {
  std::uint32_t from = g.context().exponent;
  if (to_level < from)
    throw ArgumentError("lift target level below current level");
  if (to_level == from) return g;
  PrimePower up(g.context().p, to_level);
  std::vector<ResidueMatrix> gens;
  for (const auto& m : g.generators()) gens.push_back(m.lifted(to_level));
  for (auto& k : kernel_generators(up, from)) gens.push_back(k);
  return MatrixGroup(std::move(gens), g.declared_level());
}

// The image of g under reduction to level k <= N; generated by the reduced
// generators, which as a set equals the reduction of the element set.
inline MatrixGroup reduce_group(const MatrixGroup& g, std::uint32_t k) {
  if (k == g.context().exponent) return g;
  std::vector<ResidueMatrix> gens;
  gens.reserve(g.generators().size());
  for (const auto& m : g.generators()) gens.push_back(m.reduced(k));
  return MatrixGroup(std::move(gens), std::min(g.declared_level(), k));
}

// Whether a group given at level n+1 contains the four one-step kernel
// generators Id + p^n E. For odd p this is equivalent to the p-adic preimage
// containing the full level-n kernel; for p = 2 it is advisory only.
inline bool is_defined_at_level(const MatrixGroup& g, std::uint32_t n,
                                std::uint64_t cap = kDefaultElementCap) {
  if (g.context().exponent != n + 1)
    throw ArgumentError("group must be given at level n+1 = " +
                        std::to_string(n + 1));
  for (const auto& k : kernel_generators(g.context(), n))
    if (!g.contains(k, cap)) return false;
  return true;
}

inline MatrixGroup conjugated(const MatrixGroup& g, const ResidueMatrix& t) {
  if (t.context() != g.context())
    throw StructuralError("conjugating element context mismatch");
  ResidueMatrix ti = t.inverse();
  std::vector<ResidueMatrix> gens;
  gens.reserve(g.generators().size());
  for (const auto& m : g.generators()) gens.push_back(t * m * ti);
  return MatrixGroup(std::move(gens), g.declared_level());
}

// Least primitive root mod p.
inline std::uint32_t primitive_root(std::uint32_t p) {
  if (p == 2) return 1;
  for (std::uint32_t g = 2; g < p; ++g) {
    std::uint64_t x = 1;
    std::uint32_t ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  throw ArgumentError("no primitive root found");
}

// Standard generating set for all of GL2(Z/p^N): lifts of the two elementary
// matrices and of diag(g, 1) for a primitive root g, plus the level-1 kernel
// generators. The kernel part is appended unconditionally so correctness does
// not depend on the elementary matrices generating the kernel by themselves.
inline std::vector<ResidueMatrix> gl2_generators(const PrimePower& ctx) {
  std::vector<ResidueMatrix> gens;
  gens.emplace_back(ctx, 1, 1, 0, 1);
  gens.emplace_back(ctx, 1, 0, 1, 1);
  std::uint32_t g = primitive_root(ctx.p);
  if (g != 1) gens.emplace_back(ctx, g, 0, 0, 1);
  if (ctx.exponent > 1)
    for (auto& k : kernel_generators(ctx, 1)) gens.push_back(k);
  return gens;
}

inline MatrixGroup gl2_group(const PrimePower& ctx,
                             std::uint64_t cap = kDefaultElementCap) {
  MatrixGroup g(gl2_generators(ctx), 1);
  (void)g.elements(cap);
  return g;
}

}  // namespace torsiondeg
