#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oblock/block.hpp"

namespace oblock {

// Whether singular tilting data is cross-computed through the regular block
// (verified) or taken from the Ringel route alone (fast). Regular blocks have
// a single route, so the flag is a no-op there.
enum class Route { verified, fast };

// The Ringel partner w0 x w0_walls; an involution on the representative set.
inline ElemId ringel_partner(const BlockDescriptor& b, ElemId x) {
  b.require_rep(x);
  ElemId y = b.g().mult(b.g().mult(b.g().w0(), x), b.wall_longest);
  if (!b.is_rep(y)) throw invariant_violation("Ringel partner left the representative set");
  return y;
}

namespace detail {

// Ringel route: (T(x) : Delta(y)<-j>) = coefficient of v^j in d(k(y), k(x)).
inline GradedFlag tilting_flag_ringel(const BlockDescriptor& b, ElemId x) {
  GradedFlag flag;
  ElemId kx = ringel_partner(b, x);
  for (ElemId y : b.reps) {
    ElemId ky = ringel_partner(b, y);
    LaurentV d = graded_verma_multiplicity(b, ky, kx);
    for (int k = d.min_exp(); k <= d.max_exp(); ++k) flag.add(y, -k, d.coeff(k));
  }
  return flag;
}

// Translation route for singular blocks: the regular tilting flag of
// x * w0_walls determines the singular one,
//   (T(x) : Delta(y)<l>) = (T_reg(x w0_walls) : Delta_reg(y)<l - l(w0_walls)>).
// Returns the singular flag and the full regular flag it was read from.
inline std::pair<GradedFlag, GradedFlag> tilting_flag_translated(const BlockDescriptor& b,
                                                                 ElemId x) {
  BlockDescriptor reg = make_block(b.group, std::span<const int>{}, b.kl);
  ElemId xr = b.g().mult(x, b.wall_longest);  // the shortest representative of x W_walls
  GradedFlag regular = tilting_flag_ringel(reg, xr);
  const int shift = b.g().length(b.wall_longest);
  GradedFlag flag;
  for (const auto& [key, m] : regular.entries())
    if (b.is_rep(key.first)) flag.add(key.first, key.second + shift, m);
  return {std::move(flag), std::move(regular)};
}

inline void check_tilting_shape(const BlockDescriptor& b, ElemId x, const GradedFlag& flag) {
  if (flag.mult(x, 0) != 1)
    throw invariant_violation("tilting flag must contain its own standard object once at shift 0");
  for (const auto& [key, m] : flag.entries()) {
    if (key.first == x && key.second == 0) continue;
    if (m < 0 || key.second > -1 || !b.g().bruhat_leq(x, key.first) || key.first == x)
      throw invariant_violation(
          "tilting flag entries must sit at negative shifts on elements strictly above x");
  }
}

}  // namespace detail

// Graded standard flag of the indecomposable tilting object indexed by x.
// verified mode recomputes singular flags through the regular block and
// insists on agreement.
inline GradedFlag tilting_flag(const BlockDescriptor& b, ElemId x, Route route = Route::verified) {
  b.require_rep(x);
  GradedFlag flag = detail::tilting_flag_ringel(b, x);
  if (!b.regular() && route == Route::verified) {
    auto [translated, regular] = detail::tilting_flag_translated(b, x);
    if (!(translated == flag))
      throw invariant_violation("Ringel and translation routes disagree on a tilting flag");
  }
  detail::check_tilting_shape(b, x, flag);
  return flag;
}

// Layer character of the tilting object: flag entry (y, l) spreads the layer
// diagram of the standard object of y shifted by l.
inline LayeredCharacter tilting_character(const BlockDescriptor& b, ElemId x,
                                          Route route = Route::verified) {
  GradedFlag flag = tilting_flag(b, x, route);
  LayeredCharacter ch;
  for (const auto& [key, m] : flag.entries()) {
    auto [y, l] = key;
    for (ElemId z : b.reps) {
      LaurentV d = graded_verma_multiplicity(b, y, z);
      for (int k = d.min_exp(); k <= d.max_exp(); ++k) ch.add(k + l, z, m * d.coeff(k));
    }
  }
  const int depth = b.g().colength(x);
  if (ch.min_degree() != -depth || ch.max_degree() != depth || !ch.contiguous())
    throw invariant_violation("tilting character must occupy degrees -l(w0 x)..l(w0 x)");
  if (!ch.symmetric()) throw invariant_violation("tilting character must be graded-symmetric");
  return ch;
}

inline long long loewy_length_tilting(const BlockDescriptor& b, ElemId x,
                                      Route route = Route::verified) {
  LayeredCharacter ch = tilting_character(b, x, route);
  long long n = static_cast<long long>(ch.layer_count());
  if (n != 2LL * b.g().colength(x) + 1)
    throw invariant_violation("tilting Loewy length must be 2 l(w0 x) + 1");
  return n;
}

// Ungraded multiplicity of the most antidominant standard object: the number
// of copies of the simple of w0 in the socle.
inline long long socle_multiplicity(const BlockDescriptor& b, ElemId x,
                                    Route route = Route::verified) {
  return tilting_flag(b, x, route).ungraded(b.g().w0());
}

inline long long dim_end_tilting(const BlockDescriptor& b, ElemId x,
                                 Route route = Route::verified) {
  GradedFlag flag = tilting_flag(b, x, route);
  long long n = 0;
  for (ElemId y : b.reps) {
    long long m = flag.ungraded(y);
    n += m * m;
  }
  return n;
}

// The three equivalent rigidity tests plus the numbers behind them.
struct RigidityReport {
  ElemId x = 0;
  ElemId partner = 0;
  int depth = 0;  // l(w0 x)
  long long loewy_length = 0;
  long long socle_mult = 0;
  long long end_dim = 0;
  bool cond_socle = false;     // socle_mult == 1
  bool cond_multfree = false;  // every ungraded flag multiplicity <= 1
  bool cond_dominant = false;  // d(w0_walls, k(x)) evaluates to 1 at v = 1
  bool rigid = false;
};

inline RigidityReport rigidity_report(const BlockDescriptor& b, ElemId x,
                                      Route route = Route::verified) {
  b.require_rep(x);
  RigidityReport r;
  r.x = x;
  r.partner = ringel_partner(b, x);
  r.depth = b.g().colength(x);
  GradedFlag flag = tilting_flag(b, x, route);
  r.loewy_length = loewy_length_tilting(b, x, route);
  r.socle_mult = flag.ungraded(b.g().w0());
  r.end_dim = dim_end_tilting(b, x, route);
  r.cond_socle = r.socle_mult == 1;
  r.cond_multfree = flag.multiplicity_free();
  // The wall parabolic's longest element is the representative of the
  // dominant coset e W_walls.
  r.cond_dominant = graded_verma_multiplicity(b, b.wall_longest, r.partner).at_one() == 1;
  if (r.cond_socle != r.cond_multfree || r.cond_socle != r.cond_dominant)
    throw invariant_violation("the three rigidity conditions disagree on one element");
  r.rigid = r.cond_socle;
  return r;
}

// Tie-break used when several unbalanced elements share the minimal length.
enum class TieBreak { shortlex, reversed };

struct BalanceStep {
  ElemId element = 0;
  int shift = 0;       // the added standard object is Delta(element)<shift>
  long long copies = 0;
  int witness_degree = 0;  // the positive degree whose deficiency forced the step
};

struct BalanceTrace {
  std::vector<BalanceStep> steps;
  GradedFlag flag;          // accumulated standard flag, including the seed
  LayeredCharacter layers;  // balanced character at the end
};

// Greedy balancing of the standard character of x into the tilting character:
// repeatedly take the shortest element whose simple is under-represented at
// some negative degree (mirror of a positive one) and patch with shifted
// standard objects. The resulting flag must coincide with tilting_flag.
inline BalanceTrace balance_layers(const BlockDescriptor& b, ElemId x,
                                   TieBreak tie = TieBreak::shortlex) {
  b.require_rep(x);
  BalanceTrace trace;
  trace.flag.add(x, 0, 1);
  trace.layers = verma_layers(b, x);

  // Candidate order: increasing length; ShortLex or reversed ShortLex inside
  // a length class. reps is already (length, ShortLex)-sorted.
  std::vector<ElemId> order = b.reps;
  if (tie == TieBreak::reversed) {
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j < order.size() && b.g().length(order[j]) == b.g().length(order[i])) ++j;
      std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                   order.begin() + static_cast<std::ptrdiff_t>(j));
      i = j;
    }
  }

  const int depth = b.g().colength(x);
  const std::size_t cap = (b.reps.size() + 2) * static_cast<std::size_t>(depth + 2);
  // Additions only touch counts of elements >= the added head, so once the
  // scan passes an element it stays balanced; the cursor never moves back.
  std::size_t cursor = 0;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > cap) throw invariant_violation("layer balancing did not terminate");
    ElemId pick = -1;
    int at = 0;
    long long deficit = 0;
    for (; cursor < order.size(); ++cursor) {
      ElemId y = order[cursor];
      for (int m = 1; m <= depth && pick < 0; ++m) {
        long long have = trace.layers.coeff(-m, y);
        long long want = trace.layers.coeff(m, y);
        if (want > have) {
          pick = y;
          at = m;
          deficit = want - have;
        }
      }
      if (pick >= 0) break;
    }
    if (pick < 0) break;
    trace.steps.push_back({pick, -at, deficit, at});
    trace.flag.add(pick, -at, deficit);
    for (ElemId z : b.reps) {
      LaurentV d = graded_verma_multiplicity(b, pick, z);
      for (int k = d.min_exp(); k <= d.max_exp(); ++k)
        trace.layers.add(k - at, z, deficit * d.coeff(k));
    }
  }

  if (!trace.layers.symmetric())
    throw invariant_violation("layer balancing finished on an asymmetric character");
  return trace;
}

}  // namespace oblock
