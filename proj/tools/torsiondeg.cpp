// Command line front end: degrees of definition of p-primary torsion
// subgroups computed from the image of the mod-p^N Galois representation.
//
// Output is deterministic: the same inputs and flags produce byte-identical
// bytes in every format. No floating point is involved anywhere.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torsiondeg/degree.hpp"

namespace td = torsiondeg;
using Json = nlohmann::ordered_json;

namespace {

enum class Format { markdown, csv, json };

struct CommonOpts {
  std::string format = "markdown";
  std::string out;
  std::uint64_t cap = td::kDefaultElementCap;
  std::uint32_t p = 0;
  std::uint32_t level_bound = 0;

  Format fmt() const {
    if (format == "markdown") return Format::markdown;
    if (format == "csv") return Format::csv;
    if (format == "json") return Format::json;
    throw td::ArgumentError("unknown format: " + format);
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_p = true) {
  cmd->add_option("--format", o.format, "markdown, csv or json")
      ->check(CLI::IsMember({"markdown", "csv", "json"}));
  cmd->add_option("--out", o.out, "write output to a file instead of stdout");
  cmd->add_option("--cap", o.cap, "element cap for group enumeration");
  if (with_p) cmd->add_option("-p,--prime", o.p, "residue characteristic");
  cmd->add_option("--level-bound", o.level_bound,
                  "level by which every image is determined (default: 5 for "
                  "p=2, otherwise 1)");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw td::DataError("cannot write output file: " + o.out);
  f << text;
}

// Catalog paths resolve as given first, then against TORSIONDEG_CATALOG_DIR.
std::string resolve_catalog_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("TORSIONDEG_CATALOG_DIR")) {
    fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;  // let the open fail with the original name
}

std::vector<td::ImageRecord> load_catalog(const std::string& path) {
  return td::parse_catalog_file(resolve_catalog_path(path));
}

// An image selector is a builtin label or "file#label".
td::ImageRecord resolve_image(const std::string& selector, std::uint32_t p) {
  auto hash = selector.find('#');
  if (hash == std::string::npos) return td::builtin_image(selector, p);
  std::string path = selector.substr(0, hash);
  std::string label = selector.substr(hash + 1);
  for (auto& rec : load_catalog(path)) {
    if (rec.label != label) continue;
    if (p != 0 && p != rec.p)
      throw td::ArgumentError("image " + label + " is for p=" +
                              std::to_string(rec.p) + ", got -p " +
                              std::to_string(p));
    return rec;
  }
  throw td::DataError("no image labelled '" + label + "' in " + path);
}

std::string pow_str(std::uint32_t p, std::uint32_t e) {
  return std::to_string(td::detail::checked_pow(p, e));
}

std::string shape_str(std::uint32_t p, std::uint32_t s, std::uint32_t N) {
  if (s == 0) return "Z/" + pow_str(p, N);
  return "Z/" + pow_str(p, s) + "+Z/" + pow_str(p, N);
}

const char* mode_str(td::EvalMode m) {
  switch (m) {
    case td::EvalMode::direct: return "direct";
    case td::EvalMode::scaled_from_level_d: return "scaled-from-determined-level";
    case td::EvalMode::kernel_only: return "kernel-only";
  }
  return "?";
}

// ---- degree ----------------------------------------------------------------

struct DegreeOpts {
  CommonOpts common;
  std::string image;
  std::uint32_t s = 0;
  std::uint32_t N = 1;
};

void run_degree(const DegreeOpts& o) {
  td::ImageRecord rec = resolve_image(o.image, o.common.p);
  td::MatrixGroup g = rec.group();
  td::GmResult r = td::g_m_constants(g, o.s, o.N, o.common.cap);
  const auto& br = r.breakdown;

  std::ostringstream out;
  switch (o.common.fmt()) {
    case Format::markdown: {
      out << "# degree indices for " << rec.label << ", shape (s, N) = ("
          << o.s << ", " << o.N << ")\n";
      out << "image: " << rec.label << " (p=" << rec.p
          << ", determined at level " << rec.level << ")\n";
      out << "evaluation: " << mode_str(br.mode) << " at level "
          << br.eval_level << ", scale " << br.scale << "\n\n";
      out << "| T | witness | index |\n| --- | --- | --- |\n";
      for (std::size_t i = 0; i < br.rows.size(); ++i)
        out << "| T" << i + 1 << " | (" << br.rows[i].t.witness.x << ","
            << br.rows[i].t.witness.y << ") | " << br.rows[i].index << " |\n";
      out << "\ng = " << r.g << "\nm = " << r.m << "\n";
      break;
    }
    case Format::csv: {
      out << "row,s,level,witness_x,witness_y,index\n";
      for (std::size_t i = 0; i < br.rows.size(); ++i)
        out << "T" << i + 1 << "," << br.rows[i].t.s << "," << br.eval_level
            << "," << br.rows[i].t.witness.x << "," << br.rows[i].t.witness.y
            << "," << br.rows[i].index << "\n";
      out << "g,,,,," << r.g << "\nm,,,,," << r.m << "\n";
      break;
    }
    case Format::json: {
      Json j;
      j["command"] = "degree";
      j["image"] = rec.label;
      j["p"] = rec.p;
      j["determined_level"] = rec.level;
      j["s"] = o.s;
      j["N"] = o.N;
      j["evaluation"] = {{"mode", mode_str(br.mode)},
                         {"level", br.eval_level},
                         {"scale", br.scale}};
      j["rows"] = Json::array();
      for (const auto& row : br.rows)
        j["rows"].push_back({{"s", row.t.s},
                             {"witness", {row.t.witness.x, row.t.witness.y}},
                             {"index", row.index}});
      j["g"] = r.g;
      j["m"] = r.m;
      out << j.dump(2) << "\n";
      break;
    }
  }
  emit(o.common, out.str());
}

// ---- table -----------------------------------------------------------------

struct TableOpts {
  CommonOpts common;
  std::string image;
  std::string catalog;
  bool builtin_set = false;
  bool with_m = false;
  std::uint32_t max = 0;
};

// Resolved --image/--catalog/--builtin selection: one or more records plus
// the level configuration they run under.
struct SourceSelection {
  std::vector<td::ImageRecord> records;
  std::string source;
  bool single_image = false;
  td::LevelConfig config;
};

SourceSelection resolve_source(const TableOpts& o) {
  int selectors = (!o.image.empty()) + (!o.catalog.empty()) + o.builtin_set;
  if (selectors != 1)
    throw td::ArgumentError(
        "pick exactly one of --image, --catalog, --builtin");
  SourceSelection sel;
  if (!o.image.empty()) {
    td::ImageRecord rec = resolve_image(o.image, o.common.p);
    sel.config = td::LevelConfig::for_prime(rec.p, o.common.level_bound);
    if (rec.level > sel.config.n)
      throw td::ArgumentError("image " + rec.label + " is determined at level " +
                              std::to_string(rec.level) +
                              ", beyond the level bound " +
                              std::to_string(sel.config.n));
    sel.source = rec.label;
    sel.single_image = true;
    sel.records.push_back(std::move(rec));
    return sel;
  }
  if (o.builtin_set) {
    if (o.common.p == 0) throw td::ArgumentError("--builtin needs -p");
    sel.records = td::builtin_catalog(o.common.p);
    sel.source = "builtin p=" + std::to_string(o.common.p) + " catalog";
  } else {
    sel.records = load_catalog(o.catalog);
    sel.source = o.catalog;
  }
  if (sel.records.empty()) throw td::ArgumentError("catalog is empty");
  std::uint32_t p = o.common.p ? o.common.p : sel.records.front().p;
  sel.config = td::LevelConfig::for_prime(p, o.common.level_bound);
  return sel;
}

td::GmTable compute_table(const TableOpts& o, std::string& source) {
  SourceSelection sel = resolve_source(o);
  source = sel.source;
  std::uint32_t max = o.max ? o.max : sel.config.n;
  if (sel.single_image)
    return td::image_table(sel.records.front().group(), sel.config, max,
                           source, o.common.cap);
  return td::catalog_table(sel.records, sel.config, max, source, o.common.cap);
}

void run_table(const TableOpts& o) {
  std::string source;
  td::GmTable t = compute_table(o, source);
  std::uint32_t p = t.config.p;

  std::ostringstream out;
  switch (o.common.fmt()) {
    case Format::markdown: {
      out << "# " << (o.with_m ? "g/m" : "g") << " table for " << source
          << " (p=" << p << ")\n\n";
      out << "| s\\M |";
      for (std::uint32_t M = 1; M <= t.max_level; ++M) out << " " << M << " |";
      out << "\n|" << std::string(5, '-') << "|";
      for (std::uint32_t M = 1; M <= t.max_level; ++M) out << " --- |";
      out << "\n";
      for (std::uint32_t s = 0; s <= t.max_level; ++s) {
        out << "| " << s << " |";
        for (std::uint32_t M = 1; M <= t.max_level; ++M) {
          if (M < s) { out << "  |"; continue; }
          auto it = t.cells.find({s, M});
          if (it == t.cells.end()) { out << "  |"; continue; }
          out << " " << it->second.g;
          if (o.with_m) out << "/" << it->second.m;
          out << " |";
        }
        out << "\n";
      }
      break;
    }
    case Format::csv: {
      out << "s,M,g,m\n";
      for (const auto& [key, cell] : t.cells)
        out << key.first << "," << key.second << "," << cell.g << ","
            << cell.m << "\n";
      break;
    }
    case Format::json: {
      Json j;
      j["command"] = "table";
      j["p"] = p;
      j["level_bound"] = t.config.n;
      j["source"] = source;
      j["max"] = t.max_level;
      j["cells"] = Json::array();
      for (const auto& [key, cell] : t.cells)
        j["cells"].push_back({{"s", key.first},
                              {"M", key.second},
                              {"g", cell.g},
                              {"m", cell.m}});
      out << j.dump(2) << "\n";
      break;
    }
  }
  emit(o.common, out.str());
}

// ---- aggregate -------------------------------------------------------------

struct AggregateOpts {
  CommonOpts common;
  std::string catalog;
  bool builtin_set = false;
  std::uint32_t s = 0;
  std::uint32_t M = 1;
};

void run_aggregate(const AggregateOpts& o) {
  std::vector<td::ImageRecord> cat;
  std::string source;
  if (o.builtin_set != o.catalog.empty())
    throw td::ArgumentError("pick exactly one of --catalog, --builtin");
  if (o.builtin_set) {
    if (o.common.p == 0) throw td::ArgumentError("--builtin needs -p");
    cat = td::builtin_catalog(o.common.p);
    source = "builtin p=" + std::to_string(o.common.p) + " catalog";
  } else {
    cat = load_catalog(o.catalog);
    source = o.catalog;
  }
  if (cat.empty()) throw td::ArgumentError("catalog is empty");
  std::uint32_t p = o.common.p ? o.common.p : cat.front().p;
  td::LevelConfig config = td::LevelConfig::for_prime(p, o.common.level_bound);
  td::AggregateResult r =
      td::aggregate_catalog(cat, config, o.s, o.M, o.common.cap);

  std::ostringstream out;
  switch (o.common.fmt()) {
    case Format::markdown: {
      out << "# aggregate constants for shape (s, M) = (" << o.s << ", "
          << o.M << "), p=" << p << "\n";
      out << "catalog: " << source << " (" << cat.size() << " images)\n\n";
      out << "| image | g | m |\n| --- | --- | --- |\n";
      for (const auto& img : r.per_image)
        out << "| " << img.label << " | " << img.g << " | " << img.m << " |\n";
      out << "\ng = " << r.g << "\nm = " << r.m << " (attained by "
          << r.m_attained_by << ")\n";
      break;
    }
    case Format::csv: {
      out << "image,g,m\n";
      for (const auto& img : r.per_image)
        out << img.label << "," << img.g << "," << img.m << "\n";
      out << "aggregate," << r.g << "," << r.m << "\n";
      break;
    }
    case Format::json: {
      Json j;
      j["command"] = "aggregate";
      j["p"] = p;
      j["s"] = o.s;
      j["M"] = o.M;
      j["source"] = source;
      j["per_image"] = Json::array();
      for (const auto& img : r.per_image)
        j["per_image"].push_back(
            {{"image", img.label}, {"g", img.g}, {"m", img.m}});
      j["g"] = r.g;
      j["m"] = r.m;
      j["m_attained_by"] = r.m_attained_by;
      out << j.dump(2) << "\n";
      break;
    }
  }
  emit(o.common, out.str());
}

// ---- first-appearance ------------------------------------------------------

struct FirstOpts {
  TableOpts table;
  std::uint64_t max_degree = 16;
};

void run_first_appearance(const FirstOpts& o) {
  std::string source;
  td::GmTable t = compute_table(o.table, source);
  auto buckets = td::first_appearance_table(t, o.max_degree);
  std::uint32_t p = t.config.p;

  std::ostringstream out;
  switch (o.table.common.fmt()) {
    case Format::markdown: {
      out << "# first appearance of torsion shapes, p=" << p
          << " (degrees up to " << o.max_degree << ")\n";
      out << "source: " << source << "\n\n";
      out << "| degree | shapes |\n| --- | --- |\n";
      for (const auto& [deg, shapes] : buckets) {
        out << "| " << deg << " | ";
        for (std::size_t i = 0; i < shapes.size(); ++i) {
          if (i) out << ", ";
          out << shape_str(p, shapes[i].first, shapes[i].second);
        }
        out << " |\n";
      }
      break;
    }
    case Format::csv: {
      out << "degree,s,N,shape\n";
      for (const auto& [deg, shapes] : buckets)
        for (const auto& sh : shapes)
          out << deg << "," << sh.first << "," << sh.second << ","
              << shape_str(p, sh.first, sh.second) << "\n";
      break;
    }
    case Format::json: {
      Json j;
      j["command"] = "first-appearance";
      j["p"] = p;
      j["source"] = source;
      j["max_degree"] = o.max_degree;
      j["buckets"] = Json::array();
      for (const auto& [deg, shapes] : buckets) {
        Json b;
        b["degree"] = deg;
        b["shapes"] = Json::array();
        for (const auto& sh : shapes)
          b["shapes"].push_back({{"s", sh.first},
                                 {"N", sh.second},
                                 {"name", shape_str(p, sh.first, sh.second)}});
        j["buckets"].push_back(b);
      }
      out << j.dump(2) << "\n";
      break;
    }
  }
  emit(o.table.common, out.str());
}

// ---- bound -----------------------------------------------------------------

struct BoundOpts {
  TableOpts table;
  std::uint32_t s = 0;
  std::uint32_t N = 1;
  bool use_m = false;
};

void run_bound(const BoundOpts& o) {
  // Only one table cell feeds the bound, so skip the full triangle.
  SourceSelection sel = resolve_source(o.table);
  std::string source = sel.source;
  std::uint32_t n = sel.config.n;
  std::uint32_t cs = o.s < n ? o.s : n;
  std::uint32_t cM = o.s < n ? std::min(std::max(o.N, 1u), n) : n;
  td::GmTable t;
  t.config = sel.config;
  t.source = source;
  t.max_level = cM;
  if (sel.single_image) {
    td::GmResult r = td::g_m_constants(sel.records.front().group(), cs, cM,
                                       o.table.common.cap);
    t.cells[{cs, cM}] = td::GmCell{r.g, r.m};
  } else {
    td::AggregateResult r =
        td::aggregate_catalog(sel.records, sel.config, cs, cM, o.table.common.cap);
    t.cells[{cs, cM}] = td::GmCell{r.g, r.m};
  }
  std::uint64_t b = td::divisibility_bound(t, o.use_m, o.s, o.N);

  std::ostringstream out;
  switch (o.table.common.fmt()) {
    case Format::markdown: {
      out << "# degree " << (o.use_m ? "minimum" : "divisibility")
          << " bound\n";
      out << "shape: (s, N) = (" << o.s << ", " << o.N << "), p="
          << t.config.p << "\n";
      out << "table: " << source << " (" << (o.use_m ? "m" : "g")
          << "-based, level bound " << t.config.n << ")\n\n";
      out << "bound = " << b << "\n";
      break;
    }
    case Format::csv:
      out << "s,N,use_m,bound\n"
          << o.s << "," << o.N << "," << (o.use_m ? 1 : 0) << "," << b << "\n";
      break;
    case Format::json: {
      Json j;
      j["command"] = "bound";
      j["p"] = t.config.p;
      j["source"] = source;
      j["s"] = o.s;
      j["N"] = o.N;
      j["use_m"] = o.use_m;
      j["bound"] = b;
      out << j.dump(2) << "\n";
      break;
    }
  }
  emit(o.table.common, out.str());
}

// ---- validate --------------------------------------------------------------

struct ValidateOpts {
  CommonOpts common;
  std::string catalog;
};

const char* level_check_str(td::LevelCheck c) {
  switch (c) {
    case td::LevelCheck::passed: return "passed";
    case td::LevelCheck::advisory_passed: return "advisory-passed";
    case td::LevelCheck::failed: return "failed";
    case td::LevelCheck::advisory_failed: return "advisory-failed";
    case td::LevelCheck::skipped_cap: return "skipped-cap";
  }
  return "?";
}

int run_validate(const ValidateOpts& o) {
  auto cat = load_catalog(o.catalog);
  std::vector<td::ValidationReport> reports;
  bool all_pass = true;
  for (const auto& rec : cat) {
    reports.push_back(td::validate_record(rec, o.common.cap));
    all_pass = all_pass && reports.back().hard_pass;
  }

  std::ostringstream out;
  switch (o.common.fmt()) {
    case Format::markdown: {
      out << "# catalog validation: " << o.catalog << "\n\n";
      out << "| image | order | index in GL2 | level check | convention | "
             "2-adic index |\n| --- | --- | --- | --- | --- | --- |\n";
      for (const auto& r : reports) {
        out << "| " << r.label << " | " << r.order << " | " << r.index_in_gl2
            << " | " << level_check_str(r.level_check) << " | "
            << (r.source_convention == td::ActionConvention::left ? "left"
                                                                  : "right")
            << " | ";
        if (r.index_divides_known_2adic)
          out << (*r.index_divides_known_2adic ? "divides-64-or-96"
                                               : "outside-64-and-96");
        else
          out << "n/a";
        out << " |\n";
      }
      out << "\nresult: " << (all_pass ? "pass" : "fail") << " ("
          << reports.size() << " records)\n";
      break;
    }
    case Format::csv: {
      out << "image,order,index_in_gl2,level_check,convention,two_adic_index\n";
      for (const auto& r : reports) {
        out << r.label << "," << r.order << "," << r.index_in_gl2 << ","
            << level_check_str(r.level_check) << ","
            << (r.source_convention == td::ActionConvention::left ? "left"
                                                                  : "right")
            << ",";
        if (r.index_divides_known_2adic)
          out << (*r.index_divides_known_2adic ? "divides" : "outside");
        else
          out << "na";
        out << "\n";
      }
      break;
    }
    case Format::json: {
      Json j;
      j["command"] = "validate";
      j["catalog"] = o.catalog;
      j["records"] = Json::array();
      for (const auto& r : reports) {
        Json e;
        e["image"] = r.label;
        e["order"] = r.order;
        e["index_in_gl2"] = r.index_in_gl2;
        e["level_check"] = level_check_str(r.level_check);
        e["convention"] =
            r.source_convention == td::ActionConvention::left ? "left"
                                                              : "right";
        if (r.index_divides_known_2adic)
          e["index_divides_64_or_96"] = *r.index_divides_known_2adic;
        e["pass"] = r.hard_pass;
        j["records"].push_back(e);
      }
      j["result"] = all_pass ? "pass" : "fail";
      out << j.dump(2) << "\n";
      break;
    }
  }
  emit(o.common, out.str());
  return all_pass ? 0 : 2;
}

// ---- builtin-dump ----------------------------------------------------------

struct DumpOpts {
  CommonOpts common;
  std::string label;
};

void run_builtin_dump(const DumpOpts& o) {
  std::vector<td::ImageRecord> records;
  if (!o.label.empty()) {
    records.push_back(td::builtin_image(o.label, o.common.p));
  } else {
    if (o.common.p == 0)
      throw td::ArgumentError("builtin-dump needs -p or --label");
    records = td::builtin_catalog(o.common.p);
  }
  // Always the catalog file format; --format does not apply here.
  emit(o.common, td::serialize_catalog(records));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "degrees of definition of p-primary torsion subgroups, computed from "
      "the image of the mod-p^N Galois representation"};
  app.require_subcommand(1);

  DegreeOpts deg;
  auto* c_deg = app.add_subcommand(
      "degree", "indices [G : H_T] for every subgroup of one shape");
  add_common(c_deg, deg.common);
  c_deg->add_option("--image", deg.image, "builtin label or file#label")
      ->required();
  c_deg->add_option("-s", deg.s, "smaller shape exponent")->required();
  c_deg->add_option("-N", deg.N, "larger shape exponent")->required();

  TableOpts tab;
  auto* c_tab = app.add_subcommand(
      "table", "triangular g/m table over all shapes up to a level");
  add_common(c_tab, tab.common);
  c_tab->add_option("--image", tab.image, "builtin label or file#label");
  c_tab->add_option("--catalog", tab.catalog, "catalog file to aggregate");
  c_tab->add_flag("--builtin", tab.builtin_set,
                  "aggregate the builtin catalog for -p");
  c_tab->add_flag("--with-m", tab.with_m, "show m next to g in markdown");
  c_tab->add_option("--max", tab.max, "largest level (default: level bound)");

  AggregateOpts agg;
  auto* c_agg = app.add_subcommand(
      "aggregate", "gcd/min constants over a catalog for one shape");
  add_common(c_agg, agg.common);
  c_agg->add_option("--catalog", agg.catalog, "catalog file");
  c_agg->add_flag("--builtin", agg.builtin_set,
                  "aggregate the builtin catalog for -p");
  c_agg->add_option("-s", agg.s, "smaller shape exponent")->required();
  c_agg->add_option("-M", agg.M, "larger shape exponent")->required();

  FirstOpts first;
  auto* c_first = app.add_subcommand(
      "first-appearance", "shapes grouped by their minimal degree");
  add_common(c_first, first.table.common);
  c_first->add_option("--image", first.table.image,
                      "builtin label or file#label");
  c_first->add_option("--catalog", first.table.catalog, "catalog file");
  c_first->add_flag("--builtin", first.table.builtin_set,
                    "use the builtin catalog for -p");
  c_first->add_option("--max-degree", first.max_degree,
                      "largest degree to report (default 16)");

  BoundOpts bound;
  auto* c_bound = app.add_subcommand(
      "bound", "degree divisibility or minimum bound for one shape");
  add_common(c_bound, bound.table.common);
  c_bound->add_option("--image", bound.table.image,
                      "builtin label or file#label");
  c_bound->add_option("--catalog", bound.table.catalog, "catalog file");
  c_bound->add_flag("--builtin", bound.table.builtin_set,
                    "use the builtin catalog for -p");
  c_bound->add_option("-s", bound.s, "smaller shape exponent")->required();
  c_bound->add_option("-N", bound.N, "larger shape exponent")->required();
  c_bound->add_flag("--use-m", bound.use_m,
                    "use the recorded minima instead of the gcds");

  ValidateOpts val;
  auto* c_val = app.add_subcommand("validate", "consistency-check a catalog");
  add_common(c_val, val.common);
  c_val->add_option("--catalog", val.catalog, "catalog file")->required();

  DumpOpts dump;
  auto* c_dump = app.add_subcommand(
      "builtin-dump", "emit builtin images in the catalog file format");
  add_common(c_dump, dump.common);
  c_dump->add_option("--label", dump.label, "dump a single builtin image");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_deg->parsed()) run_degree(deg);
    else if (c_tab->parsed()) run_table(tab);
    else if (c_agg->parsed()) run_aggregate(agg);
    else if (c_first->parsed()) run_first_appearance(first);
    else if (c_bound->parsed()) run_bound(bound);
    else if (c_val->parsed()) return run_validate(val);
    else if (c_dump->parsed()) run_builtin_dump(dump);
  } catch (const td::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const td::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
