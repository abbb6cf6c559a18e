#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "oblock/tilting.hpp"

namespace oblock {

// Literal subword test: x <= y iff some length-l(x) subsequence of the fixed
// ShortLex reduced word of y multiplies to x. Exponential by design; it is an
// oracle for small groups and shares nothing with the lifting recursion that
// GroupTable::bruhat_leq uses.
inline bool brute_force_bruhat(const GroupTable& g, ElemId x, ElemId y) {
  const auto& w = g.word(y);
  const std::size_t n = w.size();
  if (n > 25) throw domain_error("brute_force_bruhat: word too long for subword enumeration");
  const int lx = g.length(x);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (std::popcount(mask) != lx) continue;
    ElemId v = g.identity();
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) v = g.mult_gen_right(v, w[static_cast<std::size_t>(i)]);
    if (v == x) return true;
  }
  return false;
}

// In rank <= 2 every KL polynomial is 0 or 1, decided by comparability alone.
inline std::map<std::pair<ElemId, ElemId>, PolynomialQ> dihedral_kl_oracle(const GroupTable& g) {
  if (g.rank() > 2) throw domain_error("dihedral_kl_oracle: rank must be at most 2");
  std::map<std::pair<ElemId, ElemId>, PolynomialQ> table;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      table[{static_cast<ElemId>(x), static_cast<ElemId>(y)}] =
          brute_force_bruhat(g, static_cast<ElemId>(x), static_cast<ElemId>(y))
              ? PolynomialQ::one()
              : PolynomialQ();
  return table;
}

// Hand-written regular sl2 block over element ids 0 (identity) and 1 (the
// reflection). Nothing here touches the engine.
struct Sl2Data {
  LayeredCharacter verma_e, verma_s;
  GradedFlag proj_e, proj_s;
  GradedFlag tilt_e, tilt_s;
  LayeredCharacter char_e, char_s;
  long long loewy_e = 3, loewy_s = 1;
  long long socle_e = 1, socle_s = 1;
  long long end_tilt_e = 2, end_tilt_s = 1;
  long long end_proj_e = 1, end_proj_s = 2;
  bool rigid_e = true, rigid_s = true;
};

inline Sl2Data sl2_block_oracle() {
  Sl2Data d;
  const ElemId e = 0, s = 1;
  d.verma_e.add(0, e, 1);
  d.verma_e.add(1, s, 1);
  d.verma_s.add(0, s, 1);
  d.proj_e.add(e, 0, 1);
  d.proj_s.add(s, 0, 1);
  d.proj_s.add(e, 1, 1);
  d.tilt_e.add(e, 0, 1);
  d.tilt_e.add(s, -1, 1);
  d.tilt_s.add(s, 0, 1);
  d.char_e.add(-1, s, 1);
  d.char_e.add(0, e, 1);
  d.char_e.add(1, s, 1);
  d.char_s.add(0, s, 1);
  return d;
}

struct CheckWitness {
  std::string x, y;
  std::optional<int> degree;
  std::string expected, actual;
  std::string replay;
};

struct CheckResult {
  std::string id;
  bool pass = true;
  bool gating = true;
  std::optional<CheckWitness> witness;
};

struct VerificationReport {
  std::string type_label;
  std::string canonical_label;
  std::vector<int> walls;  // 0-based
  std::size_t block_size = 0;
  double duration_ms = 0;
  std::vector<CheckResult> checks;

  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
      if (c.gating && !c.pass) ++n;
    return n;
  }
  bool all_pass() const { return failure_count() == 0; }
};

namespace detail {

struct VerifyArtifacts {
  ElemId x = 0;
  std::string err;  // first producer failure; checks needing artifacts then fail
  LayeredCharacter dlayers;
  GradedFlag pflag;
  LayeredCharacter pchar;
  GradedFlag tflag;
  LayeredCharacter tchar;
  GradedFlag translated, regfull;
  BalanceTrace fwd, rev;
  long long end_proj = 0, end_tilt = 0;
  std::optional<RigidityReport> rig;
  std::string rig_err;
};

inline LayeredCharacter spread_flag(const BlockDescriptor& b, const GradedFlag& flag) {
  LayeredCharacter ch;
  for (const auto& [key, m] : flag.entries()) {
    auto [w, j] = key;
    for (ElemId z : b.reps) {
      LaurentV d = graded_verma_multiplicity(b, w, z);
      for (int k = d.min_exp(); k <= d.max_exp(); ++k) ch.add(k + j, z, m * d.coeff(k));
    }
  }
  return ch;
}

inline long long ungraded_simple_mult(const LayeredCharacter& ch, ElemId z) {
  long long n = 0;
  for (const auto& [d, layer] : ch.layers()) {
    auto it = layer.find(z);
    if (it != layer.end()) n += it->second;
  }
  return n;
}

}  // namespace detail

// Recomputes every structural identity for one block and reports per
// invariant. Entries keep their declaration order; a failing entry carries
// the first witness found on the lowest-indexed element.
inline VerificationReport verify_block(const BlockDescriptor& b, int threads = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupTable& g = b.g();
  VerificationReport rep;
  rep.type_label = g.cartan().label;
  rep.canonical_label = g.cartan().canonical_label;
  rep.walls = b.walls;
  rep.block_size = b.reps.size();

  std::string walls_arg;
  for (int wll : b.walls) {
    if (!walls_arg.empty()) walls_arg += ",";
    walls_arg += std::to_string(wll + 1);
  }
  auto replay = [&](const std::string& sub, ElemId x) {
    std::string cmd = "oblock " + sub + " --type " + g.cartan().label;
    if (!walls_arg.empty()) cmd += " --walls " + walls_arg;
    cmd += " --x '" + g.word_str(x) + "'";
    return cmd;
  };

  // Per-element artifacts, optionally in parallel; the merge below is a
  // deterministic fold over rep positions.
  std::vector<detail::VerifyArtifacts> per(b.reps.size());
  auto compute_one = [&](std::size_t i) {
    detail::VerifyArtifacts& a = per[i];
    a.x = b.reps[i];
    try {
      a.dlayers = verma_layers(b, a.x);
      a.pflag = projective_flag(b, a.x);
      a.pchar = detail::spread_flag(b, a.pflag);
      a.tflag = detail::tilting_flag_ringel(b, a.x);
      a.tchar = tilting_character(b, a.x, Route::fast);
      if (!b.regular()) {
        auto pr = detail::tilting_flag_translated(b, a.x);
        a.translated = std::move(pr.first);
        a.regfull = std::move(pr.second);
      }
      a.fwd = balance_layers(b, a.x, TieBreak::shortlex);
      a.rev = balance_layers(b, a.x, TieBreak::reversed);
      a.end_proj = dim_end_projective(b, a.x);
      a.end_tilt = dim_end_tilting(b, a.x, Route::fast);
    } catch (const std::exception& e) {
      if (a.err.empty()) a.err = e.what();
    }
    try {
      a.rig = rigidity_report(b, a.x, Route::fast);
    } catch (const std::exception& e) {
      a.rig_err = e.what();
    }
  };
  if (threads <= 1 || per.size() < 2) {
    for (std::size_t i = 0; i < per.size(); ++i) compute_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int n = std::min<int>(threads, static_cast<int>(per.size()));
    for (int t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= per.size()) return;
          compute_one(i);
        }
      });
    for (auto& t : pool) t.join();
  }

  CheckResult cur;
  auto fail = [&](ElemId x, std::optional<ElemId> y, std::optional<int> degree,
                  std::string expected, std::string actual, const std::string& sub) {
    if (!cur.pass) return;  // keep the first witness only
    cur.pass = false;
    CheckWitness w;
    w.x = g.word_str(x);
    if (y) w.y = g.word_str(*y);
    w.degree = degree;
    w.expected = std::move(expected);
    w.actual = std::move(actual);
    w.replay = replay(sub, x);
    cur.witness = std::move(w);
  };
  auto fail_msg = [&](ElemId x, const std::string& msg, const std::string& sub) {
    fail(x, std::nullopt, std::nullopt, "no exception", msg, sub);
  };
  auto begin = [&](const char* id, bool gating = true) {
    cur = CheckResult{};
    cur.id = id;
    cur.gating = gating;
  };
  auto done = [&] { rep.checks.push_back(std::move(cur)); };

  const ElemId w0 = g.w0();

  // --- KL engine identities over the whole group ---
  begin("kl.antidominant");
  for (std::size_t x = 0; x < g.size() && cur.pass; ++x)
    if (!(b.kl->polynomial(static_cast<ElemId>(x), w0) == PolynomialQ::one()))
      fail(static_cast<ElemId>(x), w0, std::nullopt, "1",
           b.kl->polynomial(static_cast<ElemId>(x), w0).str(), "kl");
  done();

  begin("kl.inverse-symmetry");
  for (std::size_t y = 0; y < g.size() && cur.pass; ++y)
    for (std::size_t x = 0; x < y && cur.pass; ++x) {
      ElemId xe = static_cast<ElemId>(x), ye = static_cast<ElemId>(y);
      if (!g.bruhat_leq(xe, ye)) continue;
      PolynomialQ p = b.kl->polynomial(xe, ye);
      PolynomialQ q = b.kl->polynomial(g.inverse(xe), g.inverse(ye));
      if (!(p == q)) fail(xe, ye, std::nullopt, p.str(), q.str(), "kl");
    }
  done();

  // --- standard objects ---
  begin("delta.support");
  for (ElemId x : b.reps) {
    if (!cur.pass) break;
    for (ElemId y : b.reps) {
      LaurentV d = graded_verma_multiplicity(b, x, y);
      bool leq = g.bruhat_leq(x, y);
      if (d.is_zero() == leq) {
        fail(x, y, std::nullopt, leq ? "nonzero multiplicity" : "zero multiplicity", d.str(),
             "verma");
        break;
      }
    }
  }
  done();

  begin("delta.head");
  for (ElemId x : b.reps)
    if (cur.pass && !(graded_verma_multiplicity(b, x, x) == LaurentV::term(0, 1)))
      fail(x, x, 0, "1", graded_verma_multiplicity(b, x, x).str(), "verma");
  done();

  begin("delta.socle");
  for (ElemId x : b.reps) {
    if (!cur.pass) break;
    LaurentV d = graded_verma_multiplicity(b, x, w0);
    if (d.at_one() != 1)
      fail(x, w0, std::nullopt, "1", std::to_string(d.at_one()), "verma");
  }
  done();

  begin("delta.parity");
  for (ElemId x : b.reps) {
    if (!cur.pass) break;
    for (ElemId y : b.reps) {
      if (x == y || !g.bruhat_leq(x, y)) continue;
      LaurentV d = graded_verma_multiplicity(b, x, y);
      int gap = g.length(y) - g.length(x);
      bool ok = d.min_exp() >= 1 && d.max_exp() == gap;
      for (int k = d.min_exp(); ok && k <= d.max_exp(); ++k)
        if (d.coeff(k) != 0 && ((k - gap) % 2 != 0 || d.coeff(k) < 0)) ok = false;
      if (!ok) {
        fail(x, y, std::nullopt, "positive coefficients on 1..gap with gap parity", d.str(),
             "verma");
        break;
      }
    }
  }
  done();

  begin("delta.layers");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "verma");
      break;
    }
    int depth = g.colength(a.x);
    if (static_cast<int>(a.dlayers.layer_count()) != depth + 1)
      fail(a.x, std::nullopt, std::nullopt, std::to_string(depth + 1) + " layers",
           std::to_string(a.dlayers.layer_count()) + " layers", "verma");
  }
  done();

  begin("proj.flags");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "projective");
      break;
    }
    if (a.pflag.mult(a.x, 0) != 1)
      fail(a.x, a.x, 0, "1", std::to_string(a.pflag.mult(a.x, 0)), "projective");
    for (const auto& [key, m] : a.pflag.entries()) {
      if (!cur.pass) break;
      auto [z, j] = key;
      if (m < 0 || j < 0 || (j == 0 && z != a.x) || !g.bruhat_leq(z, a.x))
        fail(a.x, z, j, "entry below the head at a positive shift",
             std::to_string(m) + " at shift " + std::to_string(j), "projective");
    }
  }
  done();

  // --- tilting objects ---
  begin("tilt.head");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    if (a.tflag.mult(a.x, 0) != 1)
      fail(a.x, a.x, 0, "1", std::to_string(a.tflag.mult(a.x, 0)), "tilting");
  }
  done();

  begin("tilt.orientation");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    for (const auto& [key, m] : a.tflag.entries()) {
      if (!cur.pass) break;
      auto [y, l] = key;
      if (y == a.x && l == 0) continue;
      bool above = g.bruhat_leq(a.x, y) && y != a.x;
      if (m < 0 || l > -1 || !above)
        fail(a.x, y, l, "entries strictly above x at negative shifts",
             std::to_string(m) + " at shift " + std::to_string(l), "tilting");
    }
  }
  done();

  begin("tilt.routes");
  if (!b.regular())
    for (const auto& a : per) {
      if (!cur.pass) break;
      if (!a.err.empty()) {
        fail_msg(a.x, a.err, "tilting");
        break;
      }
      if (!(a.translated == a.tflag))
        fail(a.x, std::nullopt, std::nullopt, "translation route equals Ringel route",
             "flags differ", "tilting");
    }
  done();

  begin("tilt.full-coset");
  if (!b.regular()) {
    const int lS = g.length(b.wall_longest);
    for (const auto& a : per) {
      if (!cur.pass) break;
      if (!a.err.empty()) {
        fail_msg(a.x, a.err, "tilting");
        break;
      }
      for (std::size_t zi = 0; zi < g.size() && cur.pass; ++zi) {
        ElemId z = static_cast<ElemId>(zi);
        ElemId y = g.longest_coset_rep(z, b.walls);
        int lu = g.length(y) - g.length(z);  // u = y^{-1} z lies in the wall parabolic
        for (int shift = -g.length(w0); shift <= 0; ++shift) {
          long long got = a.regfull.mult(z, shift);
          long long want = a.translated.mult(y, shift + lS - lu);
          if (got != want) {
            fail(a.x, z, shift, std::to_string(want), std::to_string(got), "tilting");
            break;
          }
        }
      }
    }
  }
  done();

  begin("tilt.self-dual");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    if (!a.tchar.symmetric())
      fail(a.x, std::nullopt, std::nullopt, "graded-symmetric character", "asymmetric", "tilting");
  }
  done();

  begin("tilt.extreme-layers");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    int depth = g.colength(a.x);
    bool ok = a.tchar.coeff(-depth, w0) == 1 && a.tchar.coeff(depth, w0) == 1 &&
              a.tchar.layers().begin()->second.size() == 1 &&
              a.tchar.layers().rbegin()->second.size() == 1;
    if (!ok)
      fail(a.x, w0, depth, "single copy of the antidominant simple at degrees +-l(w0 x)",
           "other extreme layers", "tilting");
  }
  done();

  begin("tilt.loewy");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    long long want = 2LL * g.colength(a.x) + 1;
    if (static_cast<long long>(a.tchar.layer_count()) != want)
      fail(a.x, std::nullopt, std::nullopt, std::to_string(want),
           std::to_string(a.tchar.layer_count()), "tilting");
  }
  done();

  begin("ringel.involution");
  for (ElemId x : b.reps) {
    if (!cur.pass) break;
    ElemId k = ringel_partner(b, x);
    if (!b.is_rep(k) || ringel_partner(b, k) != x)
      fail(x, k, std::nullopt, "involution on the representative set", "not an involution",
           "rigidity");
  }
  done();

  begin("ringel.end-dim");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    ElemId partner = ringel_partner(b, a.x);
    const auto& ap = per[static_cast<std::size_t>(b.pos[static_cast<std::size_t>(partner)])];
    if (!ap.err.empty()) continue;
    if (a.end_tilt != ap.end_proj)
      fail(a.x, partner, std::nullopt, std::to_string(ap.end_proj), std::to_string(a.end_tilt),
           "tilting");
  }
  done();

  begin("thm1.agreement");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.rig_err.empty()) {
      fail_msg(a.x, a.rig_err, "rigidity");
      break;
    }
    const auto& r = *a.rig;
    if (r.cond_socle != r.cond_multfree || r.cond_socle != r.cond_dominant)
      fail(a.x, std::nullopt, std::nullopt, "three agreeing conditions",
           std::string("socle=") + (r.cond_socle ? "1" : "0") +
               " multfree=" + (r.cond_multfree ? "1" : "0") +
               " dominant=" + (r.cond_dominant ? "1" : "0"),
           "rigidity");
  }
  done();

  begin("balance.match");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "balance");
      break;
    }
    if (!(a.fwd.flag == a.tflag) || !(a.fwd.layers == a.tchar))
      fail(a.x, std::nullopt, std::nullopt, "balanced flag equals the tilting flag",
           "balancing produced a different flag", "balance");
  }
  done();

  begin("balance.tie-break");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "balance");
      break;
    }
    if (!(a.fwd.flag == a.rev.flag) || !(a.fwd.layers == a.rev.layers))
      fail(a.x, std::nullopt, std::nullopt, "tie-break order does not change the result",
           "orders disagree", "balance");
  }
  done();

  begin("trace.domination");
  for (const auto& a : per) {
    if (!cur.pass) break;
    if (!a.err.empty()) {
      fail_msg(a.x, a.err, "tilting");
      break;
    }
    ElemId partner = ringel_partner(b, a.x);
    const auto& ap = per[static_cast<std::size_t>(b.pos[static_cast<std::size_t>(partner)])];
    if (!ap.err.empty()) continue;
    bool equality = partner == w0;
    for (ElemId z : b.reps) {
      if (!cur.pass) break;
      long long t = detail::ungraded_simple_mult(a.tchar, z);
      long long p = detail::ungraded_simple_mult(ap.pchar, z);
      if (t > p || (equality && t != p))
        fail(a.x, z, std::nullopt,
             equality ? "equal multiplicities" : "tilting multiplicity bounded by projective",
             std::to_string(t) + " vs " + std::to_string(p), "tilting");
    }
  }
  done();

  // Observational: socle-aligned graded domination. Not part of the gate.
  begin("trace.graded-domination", false);
  for (const auto& a : per) {
    if (!cur.pass || !a.err.empty()) break;
    ElemId partner = ringel_partner(b, a.x);
    const auto& ap = per[static_cast<std::size_t>(b.pos[static_cast<std::size_t>(partner)])];
    if (!ap.err.empty()) continue;
    int depth = g.colength(a.x);
    for (const auto& [d, layer] : a.tchar.layers()) {
      if (!cur.pass) break;
      for (const auto& [z, m] : layer)
        if (m > ap.pchar.coeff(d + depth, z)) {
          fail(a.x, z, d, "graded multiplicity bounded by the shifted projective",
               std::to_string(m) + " vs " + std::to_string(ap.pchar.coeff(d + depth, z)),
               "tilting");
          break;
        }
    }
  }
  done();

  rep.duration_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return rep;
}

}  // namespace oblock
