#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oblock/kl.hpp"
#include "oblock/polynomial.hpp"
#include "oblock/weyl.hpp"

namespace oblock {

// Multiset of graded standard subquotients: (element, shift) -> multiplicity.
class GradedFlag {
 public:
  using Map = std::map<std::pair<ElemId, int>, long long>;

  void add(ElemId w, int shift, long long mult) {
    if (mult == 0) return;
    auto it = e_.try_emplace({w, shift}, 0).first;
    it->second += mult;
    if (it->second == 0) e_.erase(it);
  }
  long long mult(ElemId w, int shift) const {
    auto it = e_.find({w, shift});
    return it == e_.end() ? 0 : it->second;
  }
  long long ungraded(ElemId w) const {
    long long n = 0;
    for (const auto& [k, m] : e_)
      if (k.first == w) n += m;
    return n;
  }
  long long total() const {
    long long n = 0;
    for (const auto& [k, m] : e_) n += m;
    return n;
  }
  bool multiplicity_free() const {
    std::map<ElemId, long long> per;
    for (const auto& [k, m] : e_) per[k.first] += m;
    for (const auto& [w, m] : per)
      if (m > 1) return false;
    return true;
  }
  const Map& entries() const { return e_; }
  bool empty() const { return e_.empty(); }

  friend bool operator==(const GradedFlag&, const GradedFlag&) = default;

 private:
  Map e_;
};

// Degree -> (element -> multiplicity of the corresponding simple).
class LayeredCharacter {
 public:
  using Layer = std::map<ElemId, long long>;

  void add(int degree, ElemId w, long long mult) {
    if (mult == 0) return;
    auto& layer = layers_[degree];
    auto it = layer.try_emplace(w, 0).first;
    it->second += mult;
    if (it->second == 0) layer.erase(it);
    if (layer.empty()) layers_.erase(degree);
  }
  long long coeff(int degree, ElemId w) const {
    auto it = layers_.find(degree);
    if (it == layers_.end()) return 0;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? 0 : jt->second;
  }
  const std::map<int, Layer>& layers() const { return layers_; }
  bool empty() const { return layers_.empty(); }
  int min_degree() const { return layers_.begin()->first; }
  int max_degree() const { return layers_.rbegin()->first; }
  std::size_t layer_count() const { return layers_.size(); }
  long long total() const {
    long long n = 0;
    for (const auto& [d, layer] : layers_)
      for (const auto& [w, m] : layer) n += m;
    return n;
  }
  // True when every degree between min and max is occupied.
  bool contiguous() const {
    return empty() || static_cast<int>(layer_count()) == max_degree() - min_degree() + 1;
  }
  bool symmetric() const {
    for (const auto& [d, layer] : layers_)
      for (const auto& [w, m] : layer)
        if (coeff(-d, w) != m) return false;
    return true;
  }

  friend bool operator==(const LayeredCharacter&, const LayeredCharacter&) = default;

 private:
  std::map<int, Layer> layers_;
};

// An integral block, pinned combinatorially: the Weyl group plus the set of
// simple reflections fixing the weight (the walls). Standard objects are
// indexed by the longest representatives of the left cosets x W_walls.
struct BlockDescriptor {
  GroupPtr group;
  std::shared_ptr<KlCache> kl;
  std::vector<int> walls;      // 0-based, sorted, unique
  ElemId wall_longest = 0;     // longest element of the wall parabolic
  std::vector<ElemId> reps;    // the index set X, increasing element index
  std::vector<std::int32_t> pos;  // element -> position in reps, or -1

  const GroupTable& g() const { return *group; }
  bool regular() const { return walls.empty(); }
  bool is_rep(ElemId w) const {
    return w >= 0 && static_cast<std::size_t>(w) < pos.size() && pos[static_cast<std::size_t>(w)] >= 0;
  }
  std::string wall_str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < walls.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(walls[i] + 1);
    }
    return s + "}";
  }
  void require_rep(ElemId w) const {
    if (is_rep(w)) return;
    ElemId r = g().longest_coset_rep(w, walls);
    throw domain_error("element '" + g().word_str(w) + "' does not index a standard object in the " +
                       g().cartan().label + " block with walls " + wall_str() +
                       "; the representative of its coset is '" + g().word_str(r) + "'");
  }
};

inline BlockDescriptor make_block(GroupPtr group, std::span<const int> walls,
                                  std::shared_ptr<KlCache> kl = nullptr) {
  BlockDescriptor b;
  b.group = std::move(group);
  b.kl = kl ? std::move(kl) : std::make_shared<KlCache>(b.group);
  if (b.kl->group_ptr().get() != b.group.get())
    throw error("make_block: KL cache belongs to a different group");
  b.walls.assign(walls.begin(), walls.end());
  std::sort(b.walls.begin(), b.walls.end());
  b.walls.erase(std::unique(b.walls.begin(), b.walls.end()), b.walls.end());
  for (int i : b.walls)
    if (i < 0 || i >= b.g().rank())
      throw usage_error("wall index " + std::to_string(i + 1) + " out of range 1.." +
                        std::to_string(b.g().rank()));
  b.wall_longest = b.g().parabolic_longest(b.walls);
  b.reps = b.g().coset_reps_longest(b.walls);
  b.pos.assign(b.g().size(), -1);
  for (std::size_t i = 0; i < b.reps.size(); ++i)
    b.pos[static_cast<std::size_t>(b.reps[i])] = static_cast<std::int32_t>(i);
  return b;
}

inline BlockDescriptor make_block(const CartanDatum& cartan, std::span<const int> walls) {
  return make_block(build_group(cartan), walls);
}

// Graded multiplicity d(x,y) = v^{l(y)-l(x)} P_{x,y}(v^{-2}), the layer-wise
// count of the simple indexed by y inside the standard object indexed by x.
inline LaurentV graded_verma_multiplicity(const BlockDescriptor& b, ElemId x, ElemId y) {
  b.require_rep(x);
  b.require_rep(y);
  if (!b.g().bruhat_leq(x, y)) return {};
  return LaurentV::from_kl(b.kl->polynomial(x, y), b.g().length(y) - b.g().length(x));
}

// Full radical-style layer diagram of the standard object indexed by x:
// degrees 0..l(w0 x), head at 0, the simple of w0 alone at the bottom.
inline LayeredCharacter verma_layers(const BlockDescriptor& b, ElemId x) {
  b.require_rep(x);
  LayeredCharacter ch;
  for (ElemId y : b.reps) {
    LaurentV d = graded_verma_multiplicity(b, x, y);
    for (int k = d.min_exp(); k <= d.max_exp(); ++k) ch.add(k, y, d.coeff(k));
  }
  const int depth = b.g().colength(x);
  if (ch.min_degree() != 0 || ch.max_degree() != depth || !ch.contiguous() ||
      static_cast<int>(ch.layer_count()) != depth + 1)
    throw invariant_violation("standard object layers are not contiguous on 0..l(w0 x)");
  const auto& head = ch.layers().begin()->second;
  if (head.size() != 1 || ch.coeff(0, x) != 1)
    throw invariant_violation("standard object head layer must be the simple of x alone");
  const auto& bottom = ch.layers().rbegin()->second;
  if (bottom.size() != 1 || ch.coeff(depth, b.g().w0()) != 1)
    throw invariant_violation("standard object bottom layer must be the simple of w0 alone");
  return ch;
}

// Graded standard flag of the projective cover indexed by y:
// (element z, shift j) with multiplicity = coefficient of v^j in d(z,y).
inline GradedFlag projective_flag(const BlockDescriptor& b, ElemId y) {
  b.require_rep(y);
  GradedFlag flag;
  for (ElemId z : b.reps) {
    LaurentV d = graded_verma_multiplicity(b, z, y);
    for (int k = d.min_exp(); k <= d.max_exp(); ++k) flag.add(z, k, d.coeff(k));
  }
  if (flag.mult(y, 0) != 1)
    throw invariant_violation("projective flag must contain its own standard object once at shift 0");
  for (const auto& [key, m] : flag.entries()) {
    if (m < 0 || key.second < 0 || (key.second == 0 && key.first != y))
      throw invariant_violation("projective flag entries must sit at positive shifts below the head");
  }
  return flag;
}

// dim End = sum of squared ungraded flag multiplicities.
inline long long dim_end_projective(const BlockDescriptor& b, ElemId y) {
  b.require_rep(y);
  long long n = 0;
  for (ElemId z : b.reps) {
    long long m = graded_verma_multiplicity(b, z, y).at_one();
    n += m * m;
  }
  return n;
}

}  // namespace oblock
