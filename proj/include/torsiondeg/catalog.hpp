#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torsiondeg/matrix_group.hpp"

namespace torsiondeg {

enum class Provenance {
  builtin_data,   // shipped explicit generator table
  builtin_rule,   // constructed from a standard subgroup family
  external_file,  // parsed from a catalog file
};

enum class ActionConvention { left, right };

// One Galois image: a labelled subgroup of GL2(Z/p^level) whose p-adic group
// is the full preimage of the generated subgroup. Generators are always
// stored in the left-action convention; right-convention sources are
// transposed on ingestion.
struct ImageRecord {
  std::string label;
  std::uint32_t p = 2;
  std::uint32_t level = 1;
  std::vector<ResidueMatrix> generators;
  Provenance provenance = Provenance::external_file;
  ActionConvention source_convention = ActionConvention::left;

  PrimePower context() const { return PrimePower(p, level); }

  MatrixGroup group() const { return MatrixGroup(generators, level); }
};

namespace detail {

enum class Family { gl2, borel, split, split_normalizer, nonsplit, nonsplit_normalizer };

struct ResolvedLabel {
  Family family;
  std::optional<std::uint32_t> implied_p;
  bool x235l = false;
};

inline std::optional<ResolvedLabel> resolve_builtin_label(const std::string& label) {
  if (label == "X235l") return ResolvedLabel{Family::gl2, 2, true};
  if (label == "GL2") return ResolvedLabel{Family::gl2, std::nullopt};
  if (label == "Borel") return ResolvedLabel{Family::borel, std::nullopt};
  if (label == "Cs") return ResolvedLabel{Family::split, std::nullopt};
  if (label == "Ns") return ResolvedLabel{Family::split_normalizer, std::nullopt};
  if (label == "Cn") return ResolvedLabel{Family::nonsplit, std::nullopt};
  if (label == "Nn") return ResolvedLabel{Family::nonsplit_normalizer, std::nullopt};
  // Compact form: a prime prefix and a family tag, e.g. 3B, 5Ns, 11Nn, 2Cs.
  std::size_t i = 0;
  while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
  if (i == 0 || i == label.size()) return std::nullopt;
  std::uint32_t p = 0;
  for (std::size_t j = 0; j < i; ++j) {
    p = p * 10 + static_cast<std::uint32_t>(label[j] - '0');
    if (p > 100000) return std::nullopt;
  }
  std::string fam = label.substr(i);
  Family f;
  if (fam == "B") f = Family::borel;
  else if (fam == "Cs") f = Family::split;
  else if (fam == "Ns") f = Family::split_normalizer;
  else if (fam == "Cn") f = Family::nonsplit;
  else if (fam == "Nn") f = Family::nonsplit_normalizer;
  else return std::nullopt;
  return ResolvedLabel{f, p};
}

// Least positive quadratic non-residue mod an odd prime.
inline std::uint32_t least_nonresidue(std::uint32_t p) {
  for (std::uint32_t e = 2; e < p; ++e) {
    bool square = false;
    for (std::uint32_t x = 1; x < p && !square; ++x)
      if (x * x % p == e) square = true;
    if (!square) return e;
  }
  throw ArgumentError("no non-residue mod " + std::to_string(p));
}

// A single generator of the non-split Cartan subgroup, found by scanning the
// matrices [[a, eps*b], [b, a]] for one of multiplicative order p^2 - 1.
inline ResidueMatrix nonsplit_generator(const PrimePower& ctx) {
  std::uint32_t p = ctx.p;
  if (p == 2)  // companion matrix of x^2 + x + 1, the order-3 Cartan mod 2
    return ResidueMatrix(ctx, 0, 1, 1, 1);
  std::uint32_t eps = least_nonresidue(p);
  std::uint32_t target = p * p - 1;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 1; b < p; ++b) {
      std::uint64_t det = (std::uint64_t{a} * a % p + std::uint64_t{p} * p -
                           std::uint64_t{eps} * b % p * b % p) % p;
      if (det == 0) continue;
      ResidueMatrix m(ctx, a, std::uint64_t{eps} * b % p, b, a);
      ResidueMatrix x = m;
      std::uint32_t ord = 1;
      while (!x.is_identity()) {
        x = x * m;
        ++ord;
      }
      if (ord == target) return m;
    }
  throw ArgumentError("no Cartan generator found mod " + std::to_string(p));
}

}  // namespace detail

// Builtin image constructors. Plain family labels (GL2, Borel, Cs, Ns, Cn,
// Nn) need an explicit prime; X235l and prime-prefixed labels such as 2B or
// 11Nn imply theirs. X235l carries shipped level-4 generator data for the
// 2-adic image of the curves with smallest known 32-torsion field; the rest
// are built from the family rule at level 1.
inline ImageRecord builtin_image(const std::string& label, std::uint32_t p = 0) {
  auto resolved = detail::resolve_builtin_label(label);
  if (!resolved)
    throw ArgumentError("unknown builtin image label: " + label);
  if (resolved->implied_p) {
    if (p != 0 && p != *resolved->implied_p)
      throw ArgumentError("label " + label + " implies p=" +
                          std::to_string(*resolved->implied_p) +
                          ", got p=" + std::to_string(p));
    p = *resolved->implied_p;
  }
  if (p == 0)
    throw ArgumentError("label " + label + " needs an explicit prime");
  if (!is_prime(p))
    throw ArgumentError("not a prime: " + std::to_string(p));

  if (resolved->x235l) {
    PrimePower ctx(2, 4);
    std::vector<ResidueMatrix> gens;
    const std::uint32_t rows[8][4] = {
        {1, 0, 1, 1},  {1, 0, 12, 1}, {9, 0, 0, 1}, {1, 0, 14, 1},
        {5, 0, 0, 1},  {15, 0, 0, 1}, {9, 0, 8, 9}, {1, 0, 8, 1}};
    for (const auto& r : rows) gens.emplace_back(ctx, r[0], r[1], r[2], r[3]);
    return ImageRecord{label, 2, 4, std::move(gens), Provenance::builtin_data,
                       ActionConvention::left};
  }

  PrimePower ctx(p, 1);
  std::uint32_t g = primitive_root(p);
  std::vector<ResidueMatrix> gens;
  using detail::Family;
  switch (resolved->family) {
    case Family::gl2:
      gens = gl2_generators(ctx);
      break;
    case Family::borel:
      if (g != 1) {
        gens.emplace_back(ctx, g, 0, 0, 1);
        gens.emplace_back(ctx, 1, 0, 0, g);
      }
      gens.emplace_back(ctx, 1, 1, 0, 1);
      break;
    case Family::split:
      if (g != 1) {
        gens.emplace_back(ctx, g, 0, 0, 1);
        gens.emplace_back(ctx, 1, 0, 0, g);
      } else {
        gens.push_back(ResidueMatrix::identity(ctx));
      }
      break;
    case Family::split_normalizer:
      if (g != 1) {
        gens.emplace_back(ctx, g, 0, 0, 1);
        gens.emplace_back(ctx, 1, 0, 0, g);
      }
      gens.emplace_back(ctx, 0, 1, 1, 0);
      break;
    case Family::nonsplit:
      gens.push_back(detail::nonsplit_generator(ctx));
      break;
    case Family::nonsplit_normalizer:
      if (p == 2)
        throw ArgumentError(
            "the non-split Cartan normalizer mod 2 is all of GL2; "
            "use GL2 or 2Cn instead");
      gens.push_back(detail::nonsplit_generator(ctx));
      gens.emplace_back(ctx, 1, 0, 0, p - 1);
      break;
  }
  return ImageRecord{label, p, 1, std::move(gens), Provenance::builtin_rule,
                     ActionConvention::left};
}

// The canonical builtin set for a prime: the subgroup families defined mod p,
// plus the shipped 2-adic data when p = 2.
inline std::vector<ImageRecord> builtin_catalog(std::uint32_t p) {
  std::vector<ImageRecord> out;
  if (p == 2) {
    out.push_back(builtin_image("2Cs"));
    out.push_back(builtin_image("2B"));
    out.push_back(builtin_image("2Cn"));
    out.push_back(builtin_image("GL2", 2));
    out.push_back(builtin_image("X235l"));
  } else {
    for (const char* label : {"GL2", "Borel", "Cs", "Ns", "Cn", "Nn"})
      out.push_back(builtin_image(label, p));
  }
  return out;
}

// Catalog file format, line oriented:
//   # comment
//   image <LABEL> p=<p> level=<d> convention=<left|right>
//   gen <a> <b> <c> <d>
// A record runs from its image line to the next image line or end of file and
// needs at least one gen line. Entries are non-negative decimals below
// p^level, row-major for [[a,b],[c,d]].
inline std::vector<ImageRecord> parse_catalog(std::istream& in) {
  std::vector<ImageRecord> out;
  std::vector<std::string> seen_labels;
  std::string line;
  long line_no = 0;
  bool open_record = false;
  long open_line = 0;

  auto finish_record = [&]() {
    if (open_record && out.back().generators.empty())
      throw ParseError("image record '" + out.back().label +
                           "' has no gen lines", open_line);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (tok[0] == '#') continue;
    if (tok == "image") {
      finish_record();
      std::string label, pf, lf, cf;
      if (!(ls >> label >> pf >> lf >> cf))
        throw ParseError("malformed image line", line_no);
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens on image line", line_no);
      auto num_field = [&](const std::string& field, const char* prefix) {
        std::string pre(prefix);
        if (field.rfind(pre, 0) != 0)
          throw ParseError("expected " + pre + "<value>, got '" + field + "'",
                           line_no);
        std::string digits = field.substr(pre.size());
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad integer in '" + field + "'", line_no);
        unsigned long long v = std::stoull(digits);
        if (v == 0 || v > (1ull << 31))
          throw ParseError("value out of range in '" + field + "'", line_no);
        return static_cast<std::uint32_t>(v);
      };
      std::uint32_t p = num_field(pf, "p=");
      std::uint32_t level = num_field(lf, "level=");
      ActionConvention conv;
      if (cf == "convention=left") conv = ActionConvention::left;
      else if (cf == "convention=right") conv = ActionConvention::right;
      else throw ParseError("expected convention=left or convention=right",
                            line_no);
      for (const auto& l : seen_labels)
        if (l == label)
          throw DataError("duplicate image label: " + label);
      seen_labels.push_back(label);
      if (!is_prime(p)) throw ParseError("p=" + std::to_string(p) +
                                         " is not prime", line_no);
      try {
        PrimePower ctx(p, level);  // rejects oversized p^level
        (void)ctx;
      } catch (const ArgumentError& err) {
        throw ParseError(err.what(), line_no);
      }
      out.push_back(ImageRecord{label, p, level, {}, Provenance::external_file,
                                conv});
      open_record = true;
      open_line = line_no;
      continue;
    }
    if (tok == "gen") {
      if (!open_record)
        throw ParseError("gen line before any image line", line_no);
      ImageRecord& rec = out.back();
      PrimePower ctx = rec.context();
      std::uint64_t e[4];
      for (auto& v : e) {
        std::string field;
        if (!(ls >> field))
          throw ParseError("gen line needs four entries", line_no);
        if (field.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad integer '" + field + "' on gen line", line_no);
        unsigned long long raw = std::stoull(field);
        if (raw >= ctx.modulus)
          throw ParseError("entry " + field + " not reduced mod " +
                               std::to_string(ctx.modulus), line_no);
        v = raw;
      }
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens on gen line", line_no);
      try {
        ResidueMatrix m(ctx, e[0], e[1], e[2], e[3]);
        if (rec.source_convention == ActionConvention::right)
          m = m.transposed();
        rec.generators.push_back(m);
      } catch (const ArgumentError& err) {
        throw DataError("image '" + rec.label + "': " + err.what());
      }
      continue;
    }
    throw ParseError("unknown directive '" + tok + "'", line_no);
  }
  finish_record();
  return out;
}

inline std::vector<ImageRecord> parse_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open catalog file: " + path);
  return parse_catalog(in);
}

// Emit records in the catalog file format. Generators are written as stored,
// so the output is always left-convention.
inline std::string serialize_catalog(const std::vector<ImageRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    out << "image " << rec.label << " p=" << rec.p << " level=" << rec.level
        << " convention=left\n";
    for (const auto& g : rec.generators)
      out << "gen " << g.a() << " " << g.b() << " " << g.c() << " " << g.d()
          << "\n";
  }
  return out.str();
}

enum class LevelCheck { passed, advisory_passed, failed, advisory_failed, skipped_cap };

struct ValidationReport {
  std::string label;
  std::uint64_t order = 0;
  std::uint64_t index_in_gl2 = 0;
  LevelCheck level_check = LevelCheck::skipped_cap;
  // For p = 2 only: whether the index divides one of the known 2-adic index
  // divisors 64 and 96. Informational.
  std::optional<bool> index_divides_known_2adic;
  ActionConvention source_convention = ActionConvention::left;
  bool hard_pass = true;
};

// Consistency report for one record: closure order, index inside the full
// GL2(Z/p^level), and a check that the lift one level up still contains the
// one-step reduction kernel (a construction invariant; conclusive for odd p,
// advisory for p = 2). Groups too large for the cap skip the lift check.
inline ValidationReport validate_record(const ImageRecord& rec,
                                        std::uint64_t cap = kDefaultElementCap) {
  ValidationReport rep;
  rep.label = rec.label;
  rep.source_convention = rec.source_convention;
  MatrixGroup g = rec.group();
  rep.order = g.order(cap);
  rep.index_in_gl2 = gl2_order(rec.p, rec.level) / rep.order;
  if (rec.p == 2)
    rep.index_divides_known_2adic =
        (64 % rep.index_in_gl2 == 0) || (96 % rep.index_in_gl2 == 0);
  try {
    bool ok = is_defined_at_level(lift_group(g, rec.level + 1), rec.level, cap);
    if (rec.p == 2)
      rep.level_check = ok ? LevelCheck::advisory_passed : LevelCheck::advisory_failed;
    else
      rep.level_check = ok ? LevelCheck::passed : LevelCheck::failed;
    if (rec.p != 2 && !ok) rep.hard_pass = false;
  } catch (const ResourceError&) {
    rep.level_check = LevelCheck::skipped_cap;
  } catch (const ArgumentError&) {
    // level + 1 pushes the modulus past 2^31; treat like a cap skip
    rep.level_check = LevelCheck::skipped_cap;
  }
  return rep;
}

}  // namespace torsiondeg
