#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "oblock/block.hpp"
#include "oblock/kl.hpp"
#include "oblock/oracle.hpp"
#include "oblock/tilting.hpp"

namespace oblock {

using Json = nlohmann::ordered_json;

// --- document builders -----------------------------------------------------
// Every CLI answer is first assembled as a JSON document; the md and tex
// renderers below are views of the same document, so all three formats carry
// identical numbers.

inline Json json_block_ref(const BlockDescriptor& b) {
  Json j;
  j["type"] = b.g().cartan().label;
  Json walls = Json::array();
  for (int w : b.walls) walls.push_back(w + 1);
  j["walls"] = std::move(walls);
  j["size"] = b.reps.size();
  return j;
}

inline Json json_group(const BlockDescriptor& b) {
  const GroupTable& g = b.g();
  Json j;
  j["kind"] = "group";
  j["type"] = g.cartan().label;
  j["canonical_type"] = g.cartan().canonical_label;
  j["rank"] = g.rank();
  j["order"] = g.size();
  j["positive_roots"] = g.length(g.w0());
  j["w0"] = g.word_str(g.w0());
  j["enumeration_hash"] = g.enumeration_hash();
  Json walls = Json::array();
  for (int w : b.walls) walls.push_back(w + 1);
  j["walls"] = std::move(walls);
  j["wall_longest"] = g.word_str(b.wall_longest);
  j["block_size"] = b.reps.size();
  Json reps = Json::array();
  for (ElemId x : b.reps) reps.push_back(g.word_str(x));
  j["representatives"] = std::move(reps);
  return j;
}

inline Json json_kl(const GroupTable& g, const KlCache& kl, ElemId x, ElemId y) {
  Json j;
  j["kind"] = "kl";
  j["type"] = g.cartan().label;
  j["x"] = g.word_str(x);
  j["y"] = g.word_str(y);
  PolynomialQ p = kl.polynomial(x, y);
  j["coeffs"] = p.coeffs();
  j["polynomial"] = p.str();
  j["mu"] = kl.mu(x, y);
  return j;
}

inline Json json_kl_table(const KlTableData& t) {
  Json j;
  j["kind"] = "kl-table";
  j["format"] = "oblock-kl-cache";
  j["format_version"] = 1;
  j["group"] = t.type_label;
  j["canonical_type"] = t.canonical_label;
  j["enumeration_hash"] = t.enumeration_hash;
  j["tool_version"] = t.tool_version;
  j["order"] = t.order;
  j["entry_count"] = t.entries.size();
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json je;
    je["x"] = e.x;
    je["y"] = e.y;
    je["coeffs"] = e.p.coeffs();
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline Json json_layers(const GroupTable& g, const LayeredCharacter& ch) {
  Json layers = Json::array();
  for (const auto& [d, layer] : ch.layers()) {
    Json jl;
    jl["degree"] = d;
    Json simples = Json::array();
    for (const auto& [w, m] : layer) {
      Json js;
      js["element"] = g.word_str(w);
      js["mult"] = m;
      simples.push_back(std::move(js));
    }
    jl["simples"] = std::move(simples);
    layers.push_back(std::move(jl));
  }
  return layers;
}

inline Json json_flag(const GroupTable& g, const GradedFlag& flag) {
  Json entries = Json::array();
  for (const auto& [key, m] : flag.entries()) {
    Json je;
    je["element"] = g.word_str(key.first);
    je["shift"] = key.second;
    je["mult"] = m;
    entries.push_back(std::move(je));
  }
  return entries;
}

inline Json json_verma(const BlockDescriptor& b, ElemId x, const LayeredCharacter& ch) {
  Json j;
  j["kind"] = "verma";
  j["block"] = json_block_ref(b);
  j["x"] = b.g().word_str(x);
  j["layers"] = json_layers(b.g(), ch);
  j["layer_count"] = ch.layer_count();
  j["loewy_length"] = ch.layer_count();
  return j;
}

inline Json json_projective(const BlockDescriptor& b, ElemId x, const GradedFlag& flag,
                            long long end_dim) {
  Json j;
  j["kind"] = "projective";
  j["block"] = json_block_ref(b);
  j["x"] = b.g().word_str(x);
  j["flag"] = json_flag(b.g(), flag);
  j["end_dim"] = end_dim;
  return j;
}

inline Json json_tilting(const BlockDescriptor& b, ElemId x, const GradedFlag& flag,
                         const LayeredCharacter& ch, long long loewy, long long socle,
                         long long end_dim, Route route) {
  Json j;
  j["kind"] = "tilting";
  j["block"] = json_block_ref(b);
  j["x"] = b.g().word_str(x);
  j["flag"] = json_flag(b.g(), flag);
  j["character"] = json_layers(b.g(), ch);
  j["loewy_length"] = loewy;
  j["socle_multiplicity"] = socle;
  j["end_dim"] = end_dim;
  j["route"] = route == Route::verified ? "verified" : "fast";
  return j;
}

inline Json json_balance(const BlockDescriptor& b, ElemId x, const BalanceTrace& trace,
                         bool matches_tilting) {
  Json j;
  j["kind"] = "balance";
  j["block"] = json_block_ref(b);
  j["x"] = b.g().word_str(x);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json js;
    js["element"] = b.g().word_str(s.element);
    js["shift"] = s.shift;
    js["copies"] = s.copies;
    js["witness_degree"] = s.witness_degree;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["flag"] = json_flag(b.g(), trace.flag);
  j["layers"] = json_layers(b.g(), trace.layers);
  j["matches_tilting"] = matches_tilting;
  return j;
}

inline Json json_rigidity_row(const BlockDescriptor& b, const RigidityReport& r) {
  Json j;
  j["x"] = b.g().word_str(r.x);
  j["partner"] = b.g().word_str(r.partner);
  j["depth"] = r.depth;
  j["loewy_length"] = r.loewy_length;
  j["socle_multiplicity"] = r.socle_mult;
  j["end_dim"] = r.end_dim;
  j["cond_socle"] = r.cond_socle;
  j["cond_multiplicity_free"] = r.cond_multfree;
  j["cond_dominant"] = r.cond_dominant;
  j["rigid"] = r.rigid;
  return j;
}

inline Json json_rigidity(const BlockDescriptor& b, const RigidityReport& r) {
  Json j;
  j["kind"] = "rigidity";
  j["block"] = json_block_ref(b);
  j["row"] = json_rigidity_row(b, r);
  return j;
}

inline Json json_rigidity_table(const BlockDescriptor& b, const std::vector<RigidityReport>& rows) {
  Json j;
  j["kind"] = "rigidity-table";
  j["block"] = json_block_ref(b);
  Json jr = Json::array();
  long long rigid = 0;
  Json nonrigid = Json::array();
  for (const auto& r : rows) {
    jr.push_back(json_rigidity_row(b, r));
    if (r.rigid) ++rigid;
    else nonrigid.push_back(b.g().word_str(r.x));
  }
  j["rows"] = std::move(jr);
  j["rigid_count"] = rigid;
  j["non_rigid"] = std::move(nonrigid);
  return j;
}

inline Json json_verify(const VerificationReport& rep) {
  Json j;
  j["kind"] = "verify";
  Json block;
  block["type"] = rep.type_label;
  Json walls = Json::array();
  for (int w : rep.walls) walls.push_back(w + 1);
  block["walls"] = std::move(walls);
  block["size"] = rep.block_size;
  j["block"] = std::move(block);
  j["duration_ms"] = rep.duration_ms;
  j["failures"] = rep.failure_count();
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json jc;
    jc["id"] = c.id;
    jc["pass"] = c.pass;
    jc["gating"] = c.gating;
    if (c.witness) {
      Json w;
      if (!c.witness->x.empty()) w["x"] = c.witness->x;
      if (!c.witness->y.empty()) w["y"] = c.witness->y;
      if (c.witness->degree) w["degree"] = *c.witness->degree;
      w["expected"] = c.witness->expected;
      w["actual"] = c.witness->actual;
      w["replay"] = c.witness->replay;
      jc["witness"] = std::move(w);
    }
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

// --- markdown --------------------------------------------------------------

namespace detail {

inline std::string md_table(const std::vector<std::string>& head,
                            const std::vector<std::vector<std::string>>& rows) {
  std::string s = "|";
  for (const auto& h : head) s += " " + h + " |";
  s += "\n|";
  for (std::size_t i = 0; i < head.size(); ++i) s += " --- |";
  s += "\n";
  for (const auto& r : rows) {
    s += "|";
    for (const auto& c : r) s += " " + c + " |";
    s += "\n";
  }
  return s;
}

// Words already use commas, so entries are joined with semicolons.
inline std::string simples_cell(const Json& simples, const char* sep = "; ") {
  std::string s;
  for (const auto& e : simples) {
    if (!s.empty()) s += sep;
    s += e["element"].get<std::string>();
    long long m = e["mult"].get<long long>();
    if (m != 1) s += " x" + std::to_string(m);
  }
  return s;
}

inline std::string walls_cell(const Json& walls) {
  std::string s;
  for (const auto& w : walls) {
    if (!s.empty()) s += ",";
    s += std::to_string(w.get<int>());
  }
  return s.empty() ? "none" : s;
}

inline std::string block_line(const Json& block) {
  return "type " + block["type"].get<std::string>() + ", walls " + walls_cell(block["walls"]) +
         ", block size " + std::to_string(block["size"].get<long long>());
}

inline std::vector<std::vector<std::string>> layer_rows(const Json& layers) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : layers)
    rows.push_back({std::to_string(l["degree"].get<int>()), simples_cell(l["simples"])});
  return rows;
}

inline std::vector<std::vector<std::string>> flag_rows(const Json& flag) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : flag)
    rows.push_back({e["element"].get<std::string>(), std::to_string(e["shift"].get<int>()),
                    std::to_string(e["mult"].get<long long>())});
  return rows;
}

inline std::vector<std::vector<std::string>> rigidity_rows(const Json& rows_json) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rows_json)
    rows.push_back({r["x"].get<std::string>(), r["partner"].get<std::string>(),
                    std::to_string(r["loewy_length"].get<long long>()),
                    std::to_string(r["socle_multiplicity"].get<long long>()),
                    std::to_string(r["end_dim"].get<long long>()),
                    r["rigid"].get<bool>() ? "yes" : "no"});
  return rows;
}

}  // namespace detail

inline std::string render_md(const Json& doc) {
  using detail::md_table;
  const std::string kind = doc.value("kind", doc.value("format", ""));
  std::string s;
  if (kind == "group") {
    s += "# Group " + doc["type"].get<std::string>() + "\n\n";
    s += "- canonical type: " + doc["canonical_type"].get<std::string>() + "\n";
    s += "- rank: " + std::to_string(doc["rank"].get<int>()) + "\n";
    s += "- order: " + std::to_string(doc["order"].get<long long>()) + "\n";
    s += "- positive roots: " + std::to_string(doc["positive_roots"].get<int>()) + "\n";
    s += "- longest element: " + doc["w0"].get<std::string>() + "\n";
    s += "- enumeration hash: " + doc["enumeration_hash"].get<std::string>() + "\n";
    s += "- walls: " + detail::walls_cell(doc["walls"]) + "\n";
    s += "- wall parabolic longest element: " + doc["wall_longest"].get<std::string>() + "\n";
    s += "- block size: " + std::to_string(doc["block_size"].get<long long>()) + "\n\n";
    s += "## Representatives\n\n";
    for (const auto& r : doc["representatives"]) s += "- " + r.get<std::string>() + "\n";
    return s;
  }
  if (kind == "kl") {
    s += "P(" + doc["x"].get<std::string>() + "; " + doc["y"].get<std::string>() + ") = " +
         doc["polynomial"].get<std::string>() + " in type " + doc["type"].get<std::string>() +
         " (mu = " + std::to_string(doc["mu"].get<long long>()) + ")\n";
    return s;
  }
  if (kind == "kl-table" || kind == "oblock-kl-cache") {
    s += "# KL table for " + doc["group"].get<std::string>() + "\n\n";
    s += "- order: " + std::to_string(doc["order"].get<long long>()) + "\n";
    s += "- nontrivial entries: " + std::to_string(doc["entries"].size()) + "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : doc["entries"]) {
      std::string cs;
      for (const auto& c : e["coeffs"]) {
        if (!cs.empty()) cs += ",";
        cs += std::to_string(c.get<long long>());
      }
      rows.push_back({std::to_string(e["x"].get<long long>()),
                      std::to_string(e["y"].get<long long>()), cs});
    }
    s += md_table({"x", "y", "coeffs"}, rows);
    return s;
  }
  if (kind == "verma") {
    s += "# Standard object " + doc["x"].get<std::string>() + "\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    s += md_table({"degree", "simples"}, detail::layer_rows(doc["layers"]));
    s += "\nLoewy length: " + std::to_string(doc["loewy_length"].get<long long>()) + "\n";
    return s;
  }
  if (kind == "projective") {
    s += "# Projective cover " + doc["x"].get<std::string>() + "\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    s += md_table({"element", "shift", "mult"}, detail::flag_rows(doc["flag"]));
    s += "\ndim End: " + std::to_string(doc["end_dim"].get<long long>()) + "\n";
    return s;
  }
  if (kind == "tilting") {
    s += "# Tilting object " + doc["x"].get<std::string>() + "\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    s += "## Standard flag\n\n";
    s += md_table({"element", "shift", "mult"}, detail::flag_rows(doc["flag"]));
    s += "\n## Layer character\n\n";
    s += md_table({"degree", "simples"}, detail::layer_rows(doc["character"]));
    s += "\n- Loewy length: " + std::to_string(doc["loewy_length"].get<long long>()) + "\n";
    s += "- socle multiplicity: " + std::to_string(doc["socle_multiplicity"].get<long long>()) + "\n";
    s += "- dim End: " + std::to_string(doc["end_dim"].get<long long>()) + "\n";
    s += "- route: " + doc["route"].get<std::string>() + "\n";
    return s;
  }
  if (kind == "balance") {
    s += "# Layer balancing for " + doc["x"].get<std::string>() + "\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    s += "## Steps\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& st : doc["steps"])
      rows.push_back({st["element"].get<std::string>(),
                      std::to_string(st["shift"].get<int>()),
                      std::to_string(st["copies"].get<long long>()),
                      std::to_string(st["witness_degree"].get<int>())});
    s += md_table({"element", "shift", "copies", "witness degree"}, rows);
    s += "\n## Balanced layers\n\n";
    s += md_table({"degree", "simples"}, detail::layer_rows(doc["layers"]));
    s += std::string("\nmatches tilting flag: ") +
         (doc["matches_tilting"].get<bool>() ? "yes" : "no") + "\n";
    return s;
  }
  if (kind == "rigidity") {
    const auto& r = doc["row"];
    s += "# Rigidity of the tilting object " + r["x"].get<std::string>() + "\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    s += "- partner: " + r["partner"].get<std::string>() + "\n";
    s += "- Loewy length: " + std::to_string(r["loewy_length"].get<long long>()) + "\n";
    s += "- socle multiplicity: " + std::to_string(r["socle_multiplicity"].get<long long>()) + "\n";
    s += "- dim End: " + std::to_string(r["end_dim"].get<long long>()) + "\n";
    s += std::string("- multiplicity free: ") + (r["cond_multiplicity_free"].get<bool>() ? "yes" : "no") + "\n";
    s += std::string("- dominant multiplicity one: ") + (r["cond_dominant"].get<bool>() ? "yes" : "no") + "\n";
    s += std::string("- rigid: ") + (r["rigid"].get<bool>() ? "yes" : "no") + "\n";
    return s;
  }
  if (kind == "rigidity-table") {
    s += "# Rigidity table\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    s += md_table({"x", "partner", "loewy", "socle", "dim End", "rigid"},
                  detail::rigidity_rows(doc["rows"]));
    s += "\nrigid: " + std::to_string(doc["rigid_count"].get<long long>()) + " of " +
         std::to_string(doc["rows"].size()) + "\n";
    return s;
  }
  if (kind == "verify") {
    s += "# Verification report\n\n";
    s += detail::block_line(doc["block"]) + "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : doc["checks"]) {
      std::string note;
      if (c.contains("witness")) {
        const auto& w = c["witness"];
        note = w["expected"].get<std::string>() + " vs " + w["actual"].get<std::string>();
        if (w.contains("x")) note += " at x=" + w["x"].get<std::string>();
      }
      if (!c["gating"].get<bool>()) note += note.empty() ? "observational" : " (observational)";
      rows.push_back({c["id"].get<std::string>(), c["pass"].get<bool>() ? "pass" : "FAIL", note});
    }
    s += md_table({"invariant", "result", "note"}, rows);
    s += "\nfailures: " + std::to_string(doc["failures"].get<long long>()) + "\n";
    return s;
  }
  throw error("render_md: unknown document kind '" + kind + "'");
}

// --- tex ---------------------------------------------------------------

namespace detail {

inline std::string tex_escape(const std::string& in) {
  std::string out;
  for (char c : in) {
    if (c == '{' || c == '}' || c == '_' || c == '#' || c == '%' || c == '&') out += '\\';
    out += c;
  }
  return out;
}

inline std::string tex_table(const std::vector<std::string>& head,
                             const std::vector<std::vector<std::string>>& rows) {
  std::string s = "\\begin{tabular}{";
  for (std::size_t i = 0; i < head.size(); ++i) s += "l";
  s += "}\n";
  for (std::size_t i = 0; i < head.size(); ++i)
    s += (i ? " & " : "") + std::string("\\textbf{") + tex_escape(head[i]) + "}";
  s += " \\\\\n\\hline\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " & " : "") + tex_escape(r[i]);
    s += " \\\\\n";
  }
  s += "\\end{tabular}\n";
  return s;
}

}  // namespace detail

inline std::string render_tex(const Json& doc) {
  using detail::tex_escape;
  using detail::tex_table;
  const std::string kind = doc.value("kind", doc.value("format", ""));
  std::string s;
  auto kv = [&](const std::string& k, const std::string& v) {
    s += tex_escape(k) + ": " + tex_escape(v) + " \\\\\n";
  };
  if (kind == "group") {
    s += "\\section*{Group " + tex_escape(doc["type"].get<std::string>()) + "}\n";
    kv("canonical type", doc["canonical_type"].get<std::string>());
    kv("rank", std::to_string(doc["rank"].get<int>()));
    kv("order", std::to_string(doc["order"].get<long long>()));
    kv("positive roots", std::to_string(doc["positive_roots"].get<int>()));
    kv("longest element", doc["w0"].get<std::string>());
    kv("walls", detail::walls_cell(doc["walls"]));
    kv("wall parabolic longest element", doc["wall_longest"].get<std::string>());
    kv("block size", std::to_string(doc["block_size"].get<long long>()));
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : doc["representatives"]) rows.push_back({r.get<std::string>()});
    s += tex_table({"representative"}, rows);
    return s;
  }
  if (kind == "kl") {
    s += "$P_{" + tex_escape(doc["x"].get<std::string>()) + "," +
         tex_escape(doc["y"].get<std::string>()) + "} = " + doc["polynomial"].get<std::string>() +
         "$ in type " + tex_escape(doc["type"].get<std::string>()) + ", $\\mu = " +
         std::to_string(doc["mu"].get<long long>()) + "$\n";
    return s;
  }
  if (kind == "kl-table" || kind == "oblock-kl-cache") {
    s += "\\section*{KL table for " + tex_escape(doc["group"].get<std::string>()) + "}\n";
    kv("order", std::to_string(doc["order"].get<long long>()));
    kv("nontrivial entries", std::to_string(doc["entries"].size()));
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : doc["entries"]) {
      std::string cs;
      for (const auto& c : e["coeffs"]) {
        if (!cs.empty()) cs += ",";
        cs += std::to_string(c.get<long long>());
      }
      rows.push_back({std::to_string(e["x"].get<long long>()),
                      std::to_string(e["y"].get<long long>()), cs});
    }
    s += tex_table({"x", "y", "coeffs"}, rows);
    return s;
  }
  if (kind == "verma") {
    s += "\\section*{Standard object " + tex_escape(doc["x"].get<std::string>()) + "}\n";
    kv("block", detail::block_line(doc["block"]));
    s += tex_table({"degree", "simples"}, detail::layer_rows(doc["layers"]));
    kv("Loewy length", std::to_string(doc["loewy_length"].get<long long>()));
    return s;
  }
  if (kind == "projective") {
    s += "\\section*{Projective cover " + tex_escape(doc["x"].get<std::string>()) + "}\n";
    kv("block", detail::block_line(doc["block"]));
    s += tex_table({"element", "shift", "mult"}, detail::flag_rows(doc["flag"]));
    kv("dim End", std::to_string(doc["end_dim"].get<long long>()));
    return s;
  }
  if (kind == "tilting") {
    s += "\\section*{Tilting object " + tex_escape(doc["x"].get<std::string>()) + "}\n";
    kv("block", detail::block_line(doc["block"]));
    s += tex_table({"element", "shift", "mult"}, detail::flag_rows(doc["flag"]));
    s += tex_table({"degree", "simples"}, detail::layer_rows(doc["character"]));
    kv("Loewy length", std::to_string(doc["loewy_length"].get<long long>()));
    kv("socle multiplicity", std::to_string(doc["socle_multiplicity"].get<long long>()));
    kv("dim End", std::to_string(doc["end_dim"].get<long long>()));
    kv("route", doc["route"].get<std::string>());
    return s;
  }
  if (kind == "balance") {
    s += "\\section*{Layer balancing for " + tex_escape(doc["x"].get<std::string>()) + "}\n";
    kv("block", detail::block_line(doc["block"]));
    std::vector<std::vector<std::string>> rows;
    for (const auto& st : doc["steps"])
      rows.push_back({st["element"].get<std::string>(),
                      std::to_string(st["shift"].get<int>()),
                      std::to_string(st["copies"].get<long long>()),
                      std::to_string(st["witness_degree"].get<int>())});
    s += tex_table({"element", "shift", "copies", "witness degree"}, rows);
    s += tex_table({"degree", "simples"}, detail::layer_rows(doc["layers"]));
    kv("matches tilting flag", doc["matches_tilting"].get<bool>() ? "yes" : "no");
    return s;
  }
  if (kind == "rigidity") {
    const auto& r = doc["row"];
    s += "\\section*{Rigidity of the tilting object " + tex_escape(r["x"].get<std::string>()) +
         "}\n";
    kv("block", detail::block_line(doc["block"]));
    kv("partner", r["partner"].get<std::string>());
    kv("Loewy length", std::to_string(r["loewy_length"].get<long long>()));
    kv("socle multiplicity", std::to_string(r["socle_multiplicity"].get<long long>()));
    kv("dim End", std::to_string(r["end_dim"].get<long long>()));
    kv("multiplicity free", r["cond_multiplicity_free"].get<bool>() ? "yes" : "no");
    kv("dominant multiplicity one", r["cond_dominant"].get<bool>() ? "yes" : "no");
    kv("rigid", r["rigid"].get<bool>() ? "yes" : "no");
    return s;
  }
  if (kind == "rigidity-table") {
    s += "\\section*{Rigidity table}\n";
    kv("block", detail::block_line(doc["block"]));
    s += tex_table({"x", "partner", "loewy", "socle", "dim End", "rigid"},
                   detail::rigidity_rows(doc["rows"]));
    kv("rigid", std::to_string(doc["rigid_count"].get<long long>()) + " of " +
                    std::to_string(doc["rows"].size()));
    return s;
  }
  if (kind == "verify") {
    s += "\\section*{Verification report}\n";
    kv("block", detail::block_line(doc["block"]));
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : doc["checks"]) {
      std::string note;
      if (c.contains("witness")) {
        const auto& w = c["witness"];
        note = w["expected"].get<std::string>() + " vs " + w["actual"].get<std::string>();
        if (w.contains("x")) note += " at x=" + w["x"].get<std::string>();
      }
      if (!c["gating"].get<bool>()) note += note.empty() ? "observational" : " (observational)";
      rows.push_back({c["id"].get<std::string>(), c["pass"].get<bool>() ? "pass" : "FAIL", note});
    }
    s += tex_table({"invariant", "result", "note"}, rows);
    kv("failures", std::to_string(doc["failures"].get<long long>()));
    return s;
  }
  throw error("render_tex: unknown document kind '" + kind + "'");
}

}  // namespace oblock
