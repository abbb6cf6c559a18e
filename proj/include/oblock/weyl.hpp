#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "oblock/cartan.hpp"
#include "oblock/errors.hpp"

namespace oblock {

using ElemId = int32_t;

namespace detail {

// Tri-state Bruhat memo, thread safe. Small groups get a flat atomic array
// (racing writers store the same value), large ones a locked map.
class BruhatMemo {
 public:
  explicit BruhatMemo(std::size_t n) : n_(n), flat_(n <= 4096) {
    if (flat_) flat_memo_ = std::make_unique<std::atomic<int8_t>[]>(n_ * n_);
  }

  std::optional<bool> get(ElemId x, ElemId y) const {
    if (flat_) {
      int8_t v = flat_memo_[idx(x, y)].load(std::memory_order_relaxed);
      if (v == 0) return std::nullopt;
      return v == 1;
    }
    std::shared_lock lk(mu_);
    auto it = map_.find(idx(x, y));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void put(ElemId x, ElemId y, bool v) const {
    if (flat_) {
      flat_memo_[idx(x, y)].store(v ? 1 : 2, std::memory_order_relaxed);
      return;
    }
    std::unique_lock lk(mu_);
    map_.emplace(idx(x, y), v);
  }

 private:
  std::uint64_t idx(ElemId x, ElemId y) const {
    return static_cast<std::uint64_t>(x) * n_ + static_cast<std::uint64_t>(y);
  }
  std::size_t n_;
  bool flat_;
  std::unique_ptr<std::atomic<int8_t>[]> flat_memo_;
  mutable std::unordered_map<std::uint64_t, bool> map_;
  mutable std::shared_mutex mu_;
};

}  // namespace detail

// Fully enumerated finite Coxeter group. Elements are indexed 0..size()-1 in
// (length, ShortLex reduced word) order; index 0 is the identity and the last
// index is the longest element. The stored word of each element is its
// ShortLex-minimal reduced word.
//
// Elements act on the root lattice in the integral reflection representation
// s_i(a_j) = a_j - c(i,j) a_i with c(i,j)c(j,i) = 0,1,2,3 for bond order
// 2,3,4,6; matrices double as the canonical form during enumeration.
class GroupTable {
 public:
  static constexpr std::size_t kDefaultElementCap = 200000;

  explicit GroupTable(CartanDatum cartan, std::size_t element_cap = kDefaultElementCap)
      : cartan_(std::move(cartan)), rank_(cartan_.rank) {
    auto comps = detail::classify(cartan_.cox, rank_);  // rejects infinite or malformed input
    if (cartan_.canonical_label.empty())
      cartan_.canonical_label = detail::join_canonical(comps);
    if (cartan_.label.empty()) cartan_.label = cartan_.canonical_label;
    build(element_cap);
    bruhat_ = std::make_unique<detail::BruhatMemo>(size());
  }

  GroupTable(const GroupTable&) = delete;
  GroupTable& operator=(const GroupTable&) = delete;

  const CartanDatum& cartan() const { return cartan_; }
  int rank() const { return rank_; }
  std::size_t size() const { return length_.size(); }

  ElemId identity() const { return 0; }
  ElemId w0() const { return static_cast<ElemId>(size() - 1); }
  int length(ElemId w) const { return length_[check(w)]; }
  const std::vector<std::int8_t>& word(ElemId w) const { return word_[check(w)]; }

  // w * s_i, constant time.
  ElemId mult_gen_right(ElemId w, int i) const {
    return multr_[check(w) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(gen(i))];
  }
  // s_i * w via inverses.
  ElemId mult_gen_left(int i, ElemId w) const {
    return inverse(mult_gen_right(inverse(w), i));
  }
  ElemId mult(ElemId a, ElemId b) const {
    check(a);
    for (std::int8_t i : word_[check(b)]) a = mult_gen_right(a, i);
    return a;
  }
  ElemId inverse(ElemId w) const { return inv_[check(w)]; }

  std::uint32_t right_descents(ElemId w) const { return rdesc_[check(w)]; }
  std::uint32_t left_descents(ElemId w) const { return rdesc_[inv_[check(w)]]; }
  bool has_right_descent(ElemId w, int i) const {
    return (right_descents(w) >> gen(i)) & 1u;
  }
  bool has_left_descent(ElemId w, int i) const {
    return (left_descents(w) >> gen(i)) & 1u;
  }

  // Length of w0*w, the grading depth below the antidominant end.
  int colength(ElemId w) const { return length_[w0()] - length(w); }

  // Entries of the reflection representation matrix, column j = image of a_j.
  std::span<const long long> matrix_column(ElemId w, int j) const {
    return {mat_.data() + (check(w) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(gen(j))) * rank_,
            static_cast<std::size_t>(rank_)};
  }

  // Bruhat order via the lifting property, memoized.
  bool bruhat_leq(ElemId x, ElemId y) const {
    check(x);
    check(y);
    if (x == y) return true;
    if (length_[x] >= length_[y]) return false;
    if (length_[x] == 0) return true;
    if (auto v = bruhat_->get(x, y)) return *v;
    int s = std::countr_zero(rdesc_[y]);
    ElemId ys = mult_gen_right(y, s);
    bool r = (rdesc_[x] >> s) & 1u ? bruhat_leq(mult_gen_right(x, s), ys) : bruhat_leq(x, ys);
    bruhat_->put(x, y, r);
    return r;
  }

  // Folds a 0-based letter sequence, reduced or not.
  ElemId normalize_word(std::span<const int> letters) const {
    ElemId w = identity();
    for (int i : letters) w = mult_gen_right(w, i);
    return w;
  }

  // User-facing word syntax: 1-based letters separated by , * . or spaces;
  // "e" or the empty string is the identity.
  ElemId parse_word(std::string_view text) const {
    std::vector<int> letters;
    std::size_t pos = 0;
    auto is_sep = [](char c) { return c == ',' || c == '*' || c == '.' || c == ' ' || c == '\t'; };
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    if (pos == text.size()) return identity();
    if (text.substr(pos) == "e") return identity();
    while (pos < text.size()) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw usage_error("malformed word '" + std::string(text) +
                          "': expected 1-based generator indices like 1,2,1 (or e)");
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > 1000000) throw usage_error("generator index out of range in word");
        ++pos;
      }
      if (v < 1 || v > rank_)
        throw usage_error("generator index " + std::to_string(v) + " out of range 1.." +
                          std::to_string(rank_) + " in word '" + std::string(text) + "'");
      letters.push_back(v - 1);
      bool sep = false;
      while (pos < text.size() && is_sep(text[pos])) {
        sep = true;
        ++pos;
      }
      if (pos < text.size() && !sep)
        throw usage_error("malformed word '" + std::string(text) + "'");
    }
    return normalize_word(letters);
  }

  // ShortLex reduced word in user syntax.
  std::string word_str(ElemId w) const {
    const auto& ww = word(w);
    if (ww.empty()) return "e";
    std::string s;
    for (std::int8_t i : ww) {
      if (!s.empty()) s += ",";
      s += std::to_string(i + 1);
    }
    return s;
  }

  // Longest element of the standard parabolic subgroup W_S, S 0-based.
  ElemId parabolic_longest(std::span<const int> subset) const {
    std::uint32_t mask = subset_mask(subset);
    ElemId w = identity();
    for (;;) {
      std::uint32_t asc = mask & ~rdesc_[w];
      if (!asc) return w;
      w = mult_gen_right(w, std::countr_zero(asc));
    }
  }

  std::size_t parabolic_order(std::span<const int> subset) const {
    std::uint32_t mask = subset_mask(subset);
    std::size_t n = 0;
    for (std::size_t w = 0; w < size(); ++w) {
      bool in = true;
      for (std::int8_t i : word_[w])
        if (!((mask >> i) & 1u)) {
          in = false;
          break;
        }
      if (in) ++n;
    }
    return n;
  }

  // Longest representative of the left coset w W_S.
  ElemId longest_coset_rep(ElemId w, std::span<const int> subset) const {
    std::uint32_t mask = subset_mask(subset);
    check(w);
    for (;;) {
      std::uint32_t asc = mask & ~rdesc_[w];
      if (!asc) return w;
      w = mult_gen_right(w, std::countr_zero(asc));
    }
  }

  // Shortest representative of the left coset w W_S.
  ElemId shortest_coset_rep(ElemId w, std::span<const int> subset) const {
    std::uint32_t mask = subset_mask(subset);
    check(w);
    for (;;) {
      std::uint32_t desc = mask & rdesc_[w];
      if (!desc) return w;
      w = mult_gen_right(w, std::countr_zero(desc));
    }
  }

  // Longest representatives of all left cosets wW_S, increasing element index
  // (that is, by (length, ShortLex)).
  std::vector<ElemId> coset_reps_longest(std::span<const int> subset) const {
    std::vector<bool> hit(size(), false);
    std::vector<ElemId> reps;
    for (std::size_t w = 0; w < size(); ++w) {
      ElemId r = longest_coset_rep(static_cast<ElemId>(w), subset);
      if (!hit[static_cast<std::size_t>(r)]) {
        hit[static_cast<std::size_t>(r)] = true;
        reps.push_back(r);
      }
    }
    std::sort(reps.begin(), reps.end());
    return reps;
  }

  // Stable fingerprint of the enumeration: type, matrix, and every element's
  // ShortLex word. Guards persisted KL tables against indexing drift.
  std::string enumeration_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xff;
        h *= 1099511628211ULL;
      }
    };
    for (char c : cartan_.canonical_label) mix(static_cast<unsigned char>(c));
    mix(static_cast<std::uint64_t>(rank_));
    for (int v : cartan_.cox) mix(static_cast<std::uint64_t>(v));
    mix(size());
    for (std::size_t w = 0; w < size(); ++w) {
      mix(static_cast<std::uint64_t>(length_[w]));
      for (std::int8_t i : word_[w]) mix(static_cast<std::uint64_t>(i) + 1);
    }
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
      s[static_cast<std::size_t>(i)] = hex[h & 0xf];
      h >>= 4;
    }
    return s;
  }

 private:
  std::size_t check(ElemId w) const {
    if (w < 0 || static_cast<std::size_t>(w) >= size())
      throw domain_error("element index out of range");
    return static_cast<std::size_t>(w);
  }
  int gen(int i) const {
    if (i < 0 || i >= rank_) throw usage_error("generator index out of range");
    return i;
  }
  std::uint32_t subset_mask(std::span<const int> subset) const {
    std::uint32_t mask = 0;
    for (int i : subset) mask |= 1u << gen(i);
    return mask;
  }

  void build(std::size_t cap) {
    if (rank_ > 30) throw build_error("rank too large for this engine");
    cmat_.assign(static_cast<std::size_t>(rank_) * rank_, 0);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) {
        long long c;
        if (i == j) c = 2;
        else
          switch (cartan_.m(i, j)) {
            case 2: c = 0; break;
            case 3: c = -1; break;
            case 4: c = i < j ? -1 : -2; break;
            default: c = i < j ? -1 : -3; break;  // bond order 6
          }
        cmat_[static_cast<std::size_t>(i) * rank_ + j] = c;
      }

    const std::size_t mdim = static_cast<std::size_t>(rank_) * rank_;
    std::unordered_map<std::string, ElemId> seen;
    auto key = [&](const long long* m) {
      return std::string(reinterpret_cast<const char*>(m), sizeof(long long) * mdim);
    };

    // identity
    mat_.assign(mdim, 0);
    for (int j = 0; j < rank_; ++j) mat_[static_cast<std::size_t>(j) * rank_ + j] = 1;
    length_.push_back(0);
    word_.emplace_back();
    rdesc_.push_back(0);
    seen.emplace(key(mat_.data()), 0);

    if (std::size_t order = weyl_order(cartan_); order > cap)
      throw build_error("group of order " + std::to_string(order) +
                        " exceeds the element cap of " + std::to_string(cap));

    std::vector<long long> nm(mdim);
    for (std::size_t w = 0; w < length_.size(); ++w) {
      for (int i = 0; i < rank_; ++i) {
        const long long* wm = mat_.data() + w * mdim;
        // columns of w*s_i: col'_j = col_j - c(i,j) col_i
        for (int j = 0; j < rank_; ++j) {
          long long c = cmat_[static_cast<std::size_t>(i) * rank_ + j];
          long long* out = nm.data() + static_cast<std::size_t>(j) * rank_;
          const long long* colj = wm + static_cast<std::size_t>(j) * rank_;
          const long long* coli = wm + static_cast<std::size_t>(i) * rank_;
          for (int r = 0; r < rank_; ++r) out[r] = colj[r] - c * coli[r];
        }
        auto [it, fresh] = seen.try_emplace(key(nm.data()), static_cast<ElemId>(length_.size()));
        if (fresh) {
          if (length_.size() >= cap) throw build_error("element cap exceeded during enumeration");
          mat_.insert(mat_.end(), nm.begin(), nm.end());
          length_.push_back(length_[w] + 1);
          auto ww = word_[w];
          ww.push_back(static_cast<std::int8_t>(i));
          word_.push_back(std::move(ww));
          rdesc_.push_back(descents_of(mat_.data() + (length_.size() - 1) * mdim));
        }
        multr_.resize(length_.size() * static_cast<std::size_t>(rank_), -1);
        multr_[w * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i)] = it->second;
      }
    }
    multr_.resize(length_.size() * static_cast<std::size_t>(rank_), -1);

    if (length_.back() != positive_root_count(cartan_) || size() != weyl_order(cartan_))
      throw invariant_violation("enumeration does not match the classified type");

    inv_.assign(size(), -1);
    for (std::size_t w = 0; w < size(); ++w) {
      ElemId v = identity();
      const auto& ww = word_[w];
      for (auto it = ww.rbegin(); it != ww.rend(); ++it) v = mult_gen_right(v, *it);
      inv_[w] = v;
    }
  }

  std::uint32_t descents_of(const long long* m) const {
    std::uint32_t mask = 0;
    for (int j = 0; j < rank_; ++j) {
      const long long* col = m + static_cast<std::size_t>(j) * rank_;
      for (int r = 0; r < rank_; ++r) {
        if (col[r] > 0) break;
        if (col[r] < 0) {
          mask |= 1u << j;
          break;
        }
      }
    }
    return mask;
  }

  CartanDatum cartan_;
  int rank_;
  std::vector<long long> cmat_;
  std::vector<int> length_;
  std::vector<std::vector<std::int8_t>> word_;
  std::vector<long long> mat_;
  std::vector<ElemId> multr_;
  std::vector<ElemId> inv_;
  std::vector<std::uint32_t> rdesc_;
  std::unique_ptr<detail::BruhatMemo> bruhat_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

inline GroupPtr build_group(const CartanDatum& d,
                            std::size_t element_cap = GroupTable::kDefaultElementCap) {
  return std::make_shared<GroupTable>(d, element_cap);
}

inline GroupPtr build_group(std::string_view label,
                            std::size_t element_cap = GroupTable::kDefaultElementCap) {
  return build_group(cartan_from_label(label), element_cap);
}

}  // namespace oblock
