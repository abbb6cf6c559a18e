#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "oblock/render.hpp"

namespace oblock {

namespace detail {

inline std::vector<int> parse_walls(const std::string& text) {
  std::vector<int> walls;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ',' || text[pos] == ' ')) ++pos;
    if (pos == text.size()) break;
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw usage_error("malformed wall list '" + text + "': expected 1-based indices like 1,3");
    int v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + (text[pos++] - '0');
    if (v < 1) throw usage_error("wall indices are 1-based");
    walls.push_back(v - 1);
  }
  return walls;
}

inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("OBLOCK_CACHE_DIR"); env && *env)
    return std::filesystem::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "oblock";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "oblock";
  return std::nullopt;
}

// Adopt a persisted table when one matches this enumeration; stale files are
// skipped with a note, corrupt ones abort.
inline void maybe_preload(KlCache& cache, const std::optional<std::filesystem::path>& dir,
                          std::ostream& err) {
  if (!dir) return;
  const auto path = *dir / cache_file_name(cache.group());
  if (!std::filesystem::exists(path)) return;
  KlTableData t = load_kl_cache_file(path);
  if (!kl_cache_matches(t, cache.group())) {
    err << "note: ignoring stale KL cache " << path.string() << "\n";
    return;
  }
  validate_kl_cache(t, cache.group(), path);
  cache.preload(t);
}

inline void emit(std::ostream& out, const Json& doc, const std::string& format) {
  if (format == "json")
    out << doc.dump(2) << "\n";
  else if (format == "md")
    out << render_md(doc);
  else if (format == "tex")
    out << render_tex(doc);
  else
    throw usage_error("unknown format '" + format + "'");
}

inline int auto_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, hw ? hw : 1u));
}

}  // namespace detail

// The whole command surface, callable in-process. Returns the exit status:
// 0 success, 1 computation/cache/verification failure, 2 usage problems.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graded block combinatorics for category O: standard flags, tilting characters, "
               "Loewy lengths, rigidity"};
  app.name("oblock");
  app.require_subcommand(1);

  struct Opt {
    std::string type, walls, x, y, format = "json", cache_dir, tie = "shortlex";
    bool all = false, fast = false;
    int threads = 0;
  } o;

  auto add_common = [&](CLI::App* sub, bool with_walls = true) {
    sub->add_option("--type", o.type, "Cartan type label, e.g. A3, B2, G2, B2xA1")->required();
    if (with_walls)
      sub->add_option("--walls", o.walls,
                      "1-based simple reflections fixing the weight, e.g. 1,3 (default: none)");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "md", "tex"}));
    sub->add_option("--cache-dir", o.cache_dir,
                    "KL cache directory (default: $OBLOCK_CACHE_DIR, then ~/.cache/oblock)");
    return sub;
  };

  CLI::App* c_group = add_common(app.add_subcommand("group", "enumerate the group and the block"));
  CLI::App* c_kl = add_common(app.add_subcommand("kl", "Kazhdan-Lusztig polynomials"));
  c_kl->add_option("--x", o.x, "first element, as a word like 1,2,1 (e for the identity)");
  c_kl->add_option("--y", o.y, "second element");
  c_kl->add_flag("--all", o.all, "compute, persist and print the whole table");
  c_kl->add_option("--threads", o.threads, "worker threads for --all (0 = auto)");
  CLI::App* c_verma =
      add_common(app.add_subcommand("verma", "graded layers of a standard object"));
  c_verma->add_option("--x", o.x, "block representative, as a word")->required();
  CLI::App* c_proj =
      add_common(app.add_subcommand("projective", "graded standard flag of a projective cover"));
  c_proj->add_option("--x", o.x, "block representative, as a word")->required();
  CLI::App* c_tilt =
      add_common(app.add_subcommand("tilting", "graded standard flag and layer character of an "
                                               "indecomposable tilting object"));
  c_tilt->add_option("--x", o.x, "block representative, as a word")->required();
  c_tilt->add_flag("--fast", o.fast, "skip the translation cross-check in singular blocks");
  CLI::App* c_hazi = add_common(
      app.add_subcommand("hazi", "greedy layer balancing of a standard object into the tilting "
                                 "character, with the step trace"));
  c_hazi->add_option("--x", o.x, "block representative, as a word")->required();
  c_hazi->add_option("--tie-break", o.tie, "order inside a length class")
      ->check(CLI::IsMember({"shortlex", "reversed"}));
  CLI::App* c_rig = add_common(app.add_subcommand("rigidity", "rigidity verdicts"));
  c_rig->add_option("--x", o.x, "block representative, as a word");
  c_rig->add_flag("--all", o.all, "report every representative");
  c_rig->add_flag("--fast", o.fast, "skip the translation cross-check in singular blocks");
  CLI::App* c_verify =
      add_common(app.add_subcommand("verify", "recompute every invariant for one block"));
  c_verify->add_option("--threads", o.threads, "worker threads (0 = auto)");

  std::vector<const char*> argv;
  argv.push_back("oblock");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const GroupPtr g = build_group(cartan_from_label(o.type));
    auto kl = std::make_shared<KlCache>(g);
    const auto cache_dir = detail::resolve_cache_dir(o.cache_dir);
    const Route route = o.fast ? Route::fast : Route::verified;

    if (app.got_subcommand(c_kl)) {
      if (o.all) {
        std::string warning;
        KlTableData t = kl_table(*kl, cache_dir, &warning, detail::auto_threads(o.threads));
        if (!warning.empty()) err << "note: " << warning << "\n";
        detail::emit(out, json_kl_table(t), o.format);
        return 0;
      }
      if (o.x.empty() || o.y.empty())
        throw usage_error("kl needs either --all or both --x and --y");
      detail::maybe_preload(*kl, cache_dir, err);
      detail::emit(out, json_kl(*g, *kl, g->parse_word(o.x), g->parse_word(o.y)), o.format);
      return 0;
    }

    BlockDescriptor b = make_block(g, detail::parse_walls(o.walls), kl);

    if (app.got_subcommand(c_group)) {
      detail::emit(out, json_group(b), o.format);
      return 0;
    }

    detail::maybe_preload(*kl, cache_dir, err);

    if (app.got_subcommand(c_verma)) {
      ElemId x = g->parse_word(o.x);
      b.require_rep(x);
      detail::emit(out, json_verma(b, x, verma_layers(b, x)), o.format);
      return 0;
    }
    if (app.got_subcommand(c_proj)) {
      ElemId x = g->parse_word(o.x);
      detail::emit(out, json_projective(b, x, projective_flag(b, x), dim_end_projective(b, x)),
                   o.format);
      return 0;
    }
    if (app.got_subcommand(c_tilt)) {
      ElemId x = g->parse_word(o.x);
      GradedFlag flag = tilting_flag(b, x, route);
      LayeredCharacter ch = tilting_character(b, x, route);
      detail::emit(out,
                   json_tilting(b, x, flag, ch, loewy_length_tilting(b, x, route),
                                socle_multiplicity(b, x, route), dim_end_tilting(b, x, route),
                                route),
                   o.format);
      return 0;
    }
    if (app.got_subcommand(c_hazi)) {
      ElemId x = g->parse_word(o.x);
      TieBreak tie = o.tie == "reversed" ? TieBreak::reversed : TieBreak::shortlex;
      BalanceTrace trace = balance_layers(b, x, tie);
      bool matches = trace.flag == tilting_flag(b, x, Route::fast) &&
                     trace.layers == tilting_character(b, x, Route::fast);
      detail::emit(out, json_balance(b, x, trace, matches), o.format);
      return matches ? 0 : 1;
    }
    if (app.got_subcommand(c_rig)) {
      if (o.all && !o.x.empty()) throw usage_error("rigidity takes --x or --all, not both");
      if (!o.all && o.x.empty()) throw usage_error("rigidity needs either --x or --all");
      if (o.all) {
        std::vector<RigidityReport> rows;
        for (ElemId x : b.reps) rows.push_back(rigidity_report(b, x, route));
        detail::emit(out, json_rigidity_table(b, rows), o.format);
      } else {
        detail::emit(out, json_rigidity(b, rigidity_report(b, g->parse_word(o.x), route)),
                     o.format);
      }
      return 0;
    }
    if (app.got_subcommand(c_verify)) {
      VerificationReport rep = verify_block(b, detail::auto_threads(o.threads));
      detail::emit(out, json_verify(rep), o.format);
      return rep.all_pass() ? 0 : 1;
    }
    throw usage_error("no subcommand selected");
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oblock
