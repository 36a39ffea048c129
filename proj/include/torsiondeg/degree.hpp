#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "torsiondeg/catalog.hpp"
#include "torsiondeg/torsion.hpp"

namespace torsiondeg {

// Per-prime setting: n is the level bound, the level by which every image
// under consideration is fully determined (5 is the established bound for
// p = 2 over Q; the default elsewhere is 1).
struct LevelConfig {
  std::uint32_t p = 2;
  std::uint32_t n = 5;
  std::string base_field = "Q";

  static LevelConfig for_prime(std::uint32_t p, std::uint32_t n_override = 0,
                               std::string base_field = "Q") {
    std::uint32_t n = n_override ? n_override : (p == 2 ? 5 : 1);
    return LevelConfig{p, n, std::move(base_field)};
  }
};

// How a shape (s, N) was evaluated against a group determined at level d:
// directly at level N when N <= d; at level d with a p-power scale when
// s <= d <= N, every relevant subgroup at level N meeting the level-d torsion
// in a shape (s, d) subgroup with the same stabilizer index up to the scale;
// and purely from the kernel when d <= s, where the index no longer depends
// on the subgroup at all.
enum class EvalMode { direct, scaled_from_level_d, kernel_only };

struct DegreeRow {
  TorsionSubgroup t;  // at the evaluation level
  std::uint64_t index = 0;
};

struct DegreeBreakdown {
  EvalMode mode = EvalMode::direct;
  std::uint32_t eval_level = 1;
  std::uint64_t scale = 1;  // rows already include this factor
  std::vector<DegreeRow> rows;  // sorted by canonical key
};

namespace detail {

inline MatrixGroup at_level(const MatrixGroup& g, std::uint32_t k) {
  std::uint32_t cur = g.context().exponent;
  if (k == cur) return g;
  return k < cur ? reduce_group(g, k) : lift_group(g, k);
}

}  // namespace detail

// Degrees [G_N : H_T] for every class of torsion subgroup T of shape
// (s, N), evaluated at the cheapest faithful level.
inline DegreeBreakdown degree_via_cases(const MatrixGroup& g, std::uint32_t s,
                                        std::uint32_t n_level,
                                        std::uint64_t cap = kDefaultElementCap) {
  if (s > n_level)
    throw ArgumentError("shape needs s <= N");
  if (n_level < 1) throw ArgumentError("level must be at least 1");
  const std::uint32_t p = g.context().p;
  const std::uint32_t d = g.declared_level();
  DegreeBreakdown out;

  if (n_level <= d) {
    out.mode = EvalMode::direct;
    out.eval_level = n_level;
    MatrixGroup base = detail::at_level(g, n_level);
    for (auto& t : enumerate_torsion_subgroups(PrimePower(p, n_level), s)) {
      std::uint64_t idx = degree_index(base, t, cap);
      out.rows.push_back({std::move(t), idx});
    }
    return out;
  }

  if (s <= d) {
    out.mode = EvalMode::scaled_from_level_d;
    out.eval_level = d;
    out.scale = detail::checked_pow(p, 2 * (n_level - d));
    MatrixGroup base = detail::at_level(g, d);
    for (auto& t : enumerate_torsion_subgroups(PrimePower(p, d), s)) {
      std::uint64_t idx =
          detail::checked_mul(degree_index(base, t, cap), out.scale);
      out.rows.push_back({std::move(t), idx});
    }
    return out;
  }

  // d < s <= N: T contains the full level-d torsion, so the stabilizer is the
  // part of the kernel fixing a point of order p^N, independent of T.
  out.mode = EvalMode::kernel_only;
  out.eval_level = d;
  out.scale = detail::checked_pow(p, 2 * n_level + 2 * s - 4 * d);
  MatrixGroup base = detail::at_level(g, d);
  std::uint64_t idx = detail::checked_mul(base.order(cap), out.scale);
  auto full = enumerate_torsion_subgroups(PrimePower(p, d), d);
  out.rows.push_back({std::move(full.front()), idx});
  return out;
}

// Degree over the base field of the full torsion field for surjective mod-p^N
// image: (p^2-1) p^(2N-2) for s = 0 and (p-1)(p^2-1) p^(2N+2s-3) otherwise.
inline std::uint64_t closed_form_full_image(std::uint32_t p, std::uint32_t s,
                                            std::uint32_t n_level) {
  if (s > n_level) throw ArgumentError("shape needs s <= N");
  if (n_level < 1) throw ArgumentError("level must be at least 1");
  std::uint64_t p2m1 = std::uint64_t{p} * p - 1;
  if (s == 0)
    return detail::checked_mul(p2m1, detail::checked_pow(p, 2 * n_level - 2));
  std::uint64_t head = detail::checked_mul(std::uint64_t{p} - 1, p2m1);
  return detail::checked_mul(head,
                             detail::checked_pow(p, 2 * n_level + 2 * s - 3));
}

struct GmResult {
  std::uint64_t g = 0;  // gcd of the indices over all shapes (s, M)
  std::uint64_t m = 0;  // minimum of the indices
  DegreeBreakdown breakdown;
};

inline GmResult g_m_constants(const MatrixGroup& group, std::uint32_t s,
                              std::uint32_t m_level,
                              std::uint64_t cap = kDefaultElementCap) {
  GmResult r;
  r.breakdown = degree_via_cases(group, s, m_level, cap);
  for (const auto& row : r.breakdown.rows) {
    r.g = std::gcd(r.g, row.index);
    r.m = r.m == 0 ? row.index : std::min(r.m, row.index);
  }
  return r;
}

struct GmCell {
  std::uint64_t g = 0;
  std::uint64_t m = 0;
};

// Triangular table of (g, m) over shapes 0 <= s <= M <= max_level.
struct GmTable {
  LevelConfig config;
  std::string source;  // image label or catalog description
  std::uint32_t max_level = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, GmCell> cells;  // (s, M)

  const GmCell& at(std::uint32_t s, std::uint32_t m_level) const {
    auto it = cells.find({s, m_level});
    if (it == cells.end())
      throw DataError("table has no entry for shape (" + std::to_string(s) +
                      ", " + std::to_string(m_level) + ")");
    return it->second;
  }
};

inline GmTable image_table(const MatrixGroup& group, const LevelConfig& config,
                           std::uint32_t max_level, const std::string& source,
                           std::uint64_t cap = kDefaultElementCap) {
  GmTable t;
  t.config = config;
  t.source = source;
  t.max_level = max_level;
  for (std::uint32_t s = 0; s <= max_level; ++s)
    for (std::uint32_t M = std::max(s, 1u); M <= max_level; ++M) {
      GmResult r = g_m_constants(group, s, M, cap);
      t.cells[{s, M}] = GmCell{r.g, r.m};
    }
  return t;
}

struct AggregateImage {
  std::string label;
  std::uint64_t g = 0;
  std::uint64_t m = 0;
};

struct AggregateResult {
  std::uint64_t g = 0;          // gcd over the per-image g
  std::uint64_t m = 0;          // min over the per-image m
  std::string m_attained_by;    // first catalog label attaining the min
  std::vector<AggregateImage> per_image;  // catalog order
};

// Constants over a whole catalog for one shape: the gcd of the per-image g
// and the minimum of the per-image m.
inline AggregateResult aggregate_catalog(const std::vector<ImageRecord>& catalog,
                                         const LevelConfig& config,
                                         std::uint32_t s, std::uint32_t m_level,
                                         std::uint64_t cap = kDefaultElementCap) {
  if (catalog.empty())
    throw ArgumentError("cannot aggregate an empty catalog");
  AggregateResult out;
  for (const auto& rec : catalog) {
    if (rec.p != config.p)
      throw ArgumentError("catalog image '" + rec.label + "' is for p=" +
                          std::to_string(rec.p) + ", expected p=" +
                          std::to_string(config.p));
    if (rec.level > config.n)
      throw ArgumentError("catalog image '" + rec.label +
                          "' is determined only at level " +
                          std::to_string(rec.level) +
                          ", beyond the level bound " +
                          std::to_string(config.n));
    GmResult r = g_m_constants(rec.group(), s, m_level, cap);
    out.per_image.push_back({rec.label, r.g, r.m});
    out.g = std::gcd(out.g, r.g);
    if (out.m == 0 || r.m < out.m) {
      out.m = r.m;
      out.m_attained_by = rec.label;
    }
  }
  return out;
}

inline GmTable catalog_table(const std::vector<ImageRecord>& catalog,
                             const LevelConfig& config, std::uint32_t max_level,
                             const std::string& source,
                             std::uint64_t cap = kDefaultElementCap) {
  GmTable t;
  t.config = config;
  t.source = source;
  t.max_level = max_level;
  for (std::uint32_t s = 0; s <= max_level; ++s)
    for (std::uint32_t M = std::max(s, 1u); M <= max_level; ++M) {
      AggregateResult r = aggregate_catalog(catalog, config, s, M, cap);
      t.cells[{s, M}] = GmCell{r.g, r.m};
    }
  return t;
}

// Lower bound on the degree of any field where a shape (s, N) subgroup is
// defined, from a table that covers levels up to the bound n. Below n the
// table entry applies as is; past it the index grows by p^2 per level, and
// once s reaches n only the kernel contributes: (n, n) scaled by
// p^(2N + 2s - 4n).
inline std::uint64_t divisibility_bound(const GmTable& table, bool use_min,
                                        std::uint32_t s, std::uint32_t n_level) {
  if (s > n_level) throw ArgumentError("shape needs s <= N");
  if (n_level < 1) throw ArgumentError("level must be at least 1");
  const std::uint32_t p = table.config.p;
  const std::uint32_t n = table.config.n;
  if (s < n) {
    std::uint32_t M = std::min(n_level, n);
    const GmCell& cell = table.at(s, M);
    std::uint64_t base = use_min ? cell.m : cell.g;
    if (n_level <= n) return base;
    return detail::checked_mul(base, detail::checked_pow(p, 2 * (n_level - n)));
  }
  const GmCell& cell = table.at(n, n);
  std::uint64_t base = use_min ? cell.m : cell.g;
  return detail::checked_mul(
      base, detail::checked_pow(p, 2 * n_level + 2 * s - 4 * n));
}

// Shapes grouped by the minimal degree at which they can first be defined,
// i.e. the m-based bound. Every shape whose bound is at most max_degree is
// listed exactly once, under that bound; buckets are sorted by (s, N).
inline std::map<std::uint64_t,
                std::vector<std::pair<std::uint32_t, std::uint32_t>>>
first_appearance_table(const GmTable& m_table, std::uint64_t max_degree) {
  const std::uint32_t n = m_table.config.n;
  if (m_table.max_level < n)
    throw DataError("first appearance needs table entries up to level " +
                    std::to_string(n));
  std::map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      out;
  for (std::uint32_t s = 0;; ++s) {
    std::uint32_t first_n = std::max(s, 1u);
    bool any = false;
    for (std::uint32_t N = first_n;; ++N) {
      std::uint64_t bound;
      try {
        bound = divisibility_bound(m_table, true, s, N);
      } catch (const ArgumentError&) {
        break;  // p-power factor overflowed; bounds only grow from here
      }
      if (bound <= max_degree) {
        out[bound].push_back({s, N});
        any = true;
      } else if (N > n) {
        break;  // strictly increasing once the scale factor kicks in
      }
      if (N > n + 40) break;
    }
    if (!any && s >= n) break;
    if (s > n + 40) break;
  }
  for (auto& [deg, shapes] : out) std::sort(shapes.begin(), shapes.end());
  return out;
}

// Largest N with a shape (0, N) subgroup definable over some degree-d field,
// for p = 2 over the rationals: floor((v2(d) + 7) / 2).
inline std::uint32_t max_two_power_order(std::uint64_t d) {
  if (d == 0) throw ArgumentError("degree must be positive");
  std::uint32_t v2 = static_cast<std::uint32_t>(std::countr_zero(d));
  return (v2 + 7) / 2;
}

}  // namespace torsiondeg
