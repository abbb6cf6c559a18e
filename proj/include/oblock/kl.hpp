#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "oblock/polynomial.hpp"
#include "oblock/version.hpp"
#include "oblock/weyl.hpp"

namespace oblock {

// One Kazhdan-Lusztig polynomial table row, only kept when P != 1.
struct KlTableEntry {
  ElemId x = 0;
  ElemId y = 0;
  PolynomialQ p;
};

// Snapshot of a full KL table plus the metadata that keys cache files.
struct KlTableData {
  std::string type_label;
  std::string canonical_label;
  std::string enumeration_hash;
  std::string tool_version;
  std::uint64_t order = 0;
  std::vector<KlTableEntry> entries;  // x <= y and p != 1, sorted by (y, x)
};

// Computes and memoizes KL polynomials for one enumerated group. Queries are
// const and thread safe; concurrent fills produce byte-identical tables since
// every memo entry is a function of (x, y) alone.
class KlCache {
 public:
  explicit KlCache(GroupPtr g) : g_(std::move(g)) {
    if (!g_) throw error("KlCache: null group");
  }

  const GroupTable& group() const { return *g_; }
  const GroupPtr& group_ptr() const { return g_; }

  PolynomialQ polynomial(ElemId x, ElemId y) const {
    const GroupTable& g = *g_;
    if (!g.bruhat_leq(x, y)) return {};
    // Extremalize: P(x,y) = P(sx,y) whenever sy < y, sx > x (and on the
    // right). Afterwards every descent of y is a descent of x.
    for (;;) {
      std::uint32_t up = g.left_descents(y) & ~g.left_descents(x);
      if (up) {
        x = g.mult_gen_left(std::countr_zero(up), x);
        continue;
      }
      up = g.right_descents(y) & ~g.right_descents(x);
      if (up) {
        x = g.mult_gen_right(x, std::countr_zero(up));
        continue;
      }
      break;
    }
    int gap = g.length(y) - g.length(x);
    if (gap <= 2) return PolynomialQ::one();
    std::uint64_t k = pair_key(x, y);
    {
      std::shared_lock lk(mu_);
      auto it = memo_.find(k);
      if (it != memo_.end()) return it->second;
    }
    if (complete_.load(std::memory_order_acquire)) return PolynomialQ::one();
    PolynomialQ p = compute_extremal(x, y);
    {
      std::unique_lock lk(mu_);
      memo_.emplace(k, p);
    }
    return p;
  }

  long long mu(ElemId x, ElemId y) const {
    const GroupTable& g = *g_;
    if (!g.bruhat_leq(x, y)) return 0;
    int gap = g.length(y) - g.length(x);
    if (gap <= 0 || gap % 2 == 0) return 0;
    if (gap == 1) return 1;
    return polynomial(x, y).coeff((gap - 1) / 2);
  }

  // Computes every comparable pair. Thread count only affects wall time.
  void fill(int threads = 1) const {
    if (complete_.load(std::memory_order_acquire)) return;
    const std::size_t n = g_->size();
    auto work = [&](std::atomic<std::size_t>& next) {
      for (;;) {
        std::size_t y = next.fetch_add(1);
        if (y >= n) return;
        for (std::size_t x = 0; x < y; ++x)
          if (g_->bruhat_leq(static_cast<ElemId>(x), static_cast<ElemId>(y)))
            polynomial(static_cast<ElemId>(x), static_cast<ElemId>(y));
      }
    };
    std::atomic<std::size_t> next{0};
    if (threads <= 1) {
      work(next);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back([&] { work(next); });
      for (auto& t : pool) t.join();
    }
    complete_.store(true, std::memory_order_release);
  }

  bool complete() const { return complete_.load(std::memory_order_acquire); }

  // Adopts a validated table; afterwards lookups never recurse.
  void preload(const KlTableData& data) {
    std::unique_lock lk(mu_);
    for (const auto& e : data.entries) memo_.emplace(pair_key(e.x, e.y), e.p);
    complete_.store(true, std::memory_order_release);
  }

  KlTableData table(int threads = 1) const {
    fill(threads);
    const GroupTable& g = *g_;
    KlTableData out;
    out.type_label = g.cartan().label;
    out.canonical_label = g.cartan().canonical_label;
    out.enumeration_hash = g.enumeration_hash();
    out.tool_version = kVersion;
    out.order = g.size();
    for (std::size_t y = 0; y < g.size(); ++y)
      for (std::size_t x = 0; x < y; ++x) {
        if (!g.bruhat_leq(static_cast<ElemId>(x), static_cast<ElemId>(y))) continue;
        PolynomialQ p = polynomial(static_cast<ElemId>(x), static_cast<ElemId>(y));
        if (!(p == PolynomialQ::one()))
          out.entries.push_back({static_cast<ElemId>(x), static_cast<ElemId>(y), std::move(p)});
      }
    return out;
  }

 private:
  static std::uint64_t pair_key(ElemId x, ElemId y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  }

  // x extremal for y, x < y, gap > 2. Left-descent recursion with c = 1:
  // P(x,y) = P(sx,v) + q P(x,v) - sum_z mu(z,v) q^{(l(y)-l(z))/2} P(x,z)
  // over z with sz < z, taken over x <= z <= v.
  PolynomialQ compute_extremal(ElemId x, ElemId y) const {
    const GroupTable& g = *g_;
    int s = std::countr_zero(g.left_descents(y));
    ElemId v = g.mult_gen_left(s, y);
    ElemId xs = g.mult_gen_left(s, x);

    PolynomialQ p = polynomial(xs, v) + polynomial(x, v).shifted(1);
    const int ly = g.length(y);
    const int lx = g.length(x);
    const int lv = ly - 1;
    for (std::size_t zi = 0; zi < g.size(); ++zi) {
      ElemId z = static_cast<ElemId>(zi);
      int lz = g.length(z);
      if (lz < lx || lz >= lv) continue;
      if ((lv - lz) % 2 == 0) continue;
      if (!g.has_left_descent(z, s)) continue;
      if (!g.bruhat_leq(x, z) || !g.bruhat_leq(z, v)) continue;
      long long m = mu(z, v);
      if (m == 0) continue;
      p -= (polynomial(x, z) * PolynomialQ::monomial((ly - lz) / 2, m));
    }

    int gap = ly - lx;
    if (p.coeff(0) != 1 || 2 * p.degree() > gap - 1)
      throw invariant_violation("KL recursion produced an out-of-bounds polynomial");
    for (long long c : p.coeffs())
      if (c < 0) throw invariant_violation("KL recursion produced a negative coefficient");
    return p;
  }

  GroupPtr g_;
  mutable std::unordered_map<std::uint64_t, PolynomialQ> memo_;
  mutable std::shared_mutex mu_;
  mutable std::atomic<bool> complete_{false};
};

// 0 when incomparable, 1 when untabulated, else the stored entry.
inline PolynomialQ table_lookup(const GroupTable& g, const KlTableData& t, ElemId x, ElemId y) {
  if (!g.bruhat_leq(x, y)) return {};
  for (const auto& e : t.entries)
    if (e.x == x && e.y == y) return e.p;
  return PolynomialQ::one();
}

inline std::string cache_file_name(const GroupTable& g) {
  return "kl-" + g.cartan().canonical_label + "-" + g.enumeration_hash() + ".json";
}

inline void save_kl_cache(const KlTableData& t, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = "oblock-kl-cache";
  j["format_version"] = 1;
  j["group"] = t.type_label;
  j["canonical_type"] = t.canonical_label;
  j["enumeration_hash"] = t.enumeration_hash;
  j["tool_version"] = t.tool_version;
  j["order"] = t.order;
  auto& entries = j["entries"] = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json je;
    je["x"] = e.x;
    je["y"] = e.y;
    je["coeffs"] = e.p.coeffs();
    entries.push_back(std::move(je));
  }
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw cache_error("cannot write KL cache file " + path.string());
  out << j.dump(1) << "\n";
}

// Structural validation only; semantic checks against a group happen in
// validate_kl_cache below. Throws cache_error with the offending path.
inline KlTableData load_kl_cache_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw cache_error("cannot read KL cache file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw cache_error("corrupt KL cache file " + path.string() + ": " + e.what());
  }
  auto fail = [&](const std::string& why) -> cache_error {
    return cache_error("corrupt KL cache file " + path.string() + ": " + why);
  };
  if (!j.is_object() || j.value("format", "") != std::string("oblock-kl-cache"))
    throw fail("missing oblock-kl-cache format marker");
  if (j.value("format_version", 0) != 1) throw fail("unsupported format_version");
  for (const char* k : {"group", "canonical_type", "enumeration_hash", "tool_version"})
    if (!j.contains(k) || !j[k].is_string()) throw fail(std::string("missing field ") + k);
  if (!j.contains("order") || !j["order"].is_number_unsigned()) throw fail("missing field order");
  if (!j.contains("entries") || !j["entries"].is_array()) throw fail("missing entries array");

  KlTableData t;
  t.type_label = j["group"];
  t.canonical_label = j["canonical_type"];
  t.enumeration_hash = j["enumeration_hash"];
  t.tool_version = j["tool_version"];
  t.order = j["order"];
  for (const auto& je : j["entries"]) {
    if (!je.is_object() || !je.contains("x") || !je.contains("y") || !je.contains("coeffs") ||
        !je["x"].is_number_integer() || !je["y"].is_number_integer() || !je["coeffs"].is_array())
      throw fail("malformed entry");
    KlTableEntry e;
    e.x = je["x"];
    e.y = je["y"];
    std::vector<long long> cs;
    for (const auto& c : je["coeffs"]) {
      if (!c.is_number_integer()) throw fail("non-integer coefficient");
      cs.push_back(c.get<long long>());
    }
    e.p = PolynomialQ(std::move(cs));
    t.entries.push_back(std::move(e));
  }
  return t;
}

// True when the table was computed for exactly this enumeration and tool.
inline bool kl_cache_matches(const KlTableData& t, const GroupTable& g) {
  return t.canonical_label == g.cartan().canonical_label &&
         t.enumeration_hash == g.enumeration_hash() && t.tool_version == kVersion &&
         t.order == g.size();
}

// Degree bound, constant term, positivity, index ranges, comparability.
inline void validate_kl_cache(const KlTableData& t, const GroupTable& g,
                              const std::filesystem::path& path) {
  auto fail = [&](const std::string& why) -> cache_error {
    return cache_error("corrupt KL cache file " + path.string() + ": " + why);
  };
  for (const auto& e : t.entries) {
    if (e.x < 0 || e.y < 0 || static_cast<std::size_t>(e.x) >= g.size() ||
        static_cast<std::size_t>(e.y) >= g.size())
      throw fail("element index out of range");
    if (!g.bruhat_leq(e.x, e.y)) throw fail("entry for an incomparable pair");
    if (e.p.is_zero() || e.p.coeff(0) != 1) throw fail("constant term of a KL polynomial must be 1");
    int gap = g.length(e.y) - g.length(e.x);
    if (2 * e.p.degree() > gap - 1) throw fail("KL degree bound violated");
    for (long long c : e.p.coeffs())
      if (c < 0) throw fail("negative KL coefficient");
  }
}

// Load-or-compute entry point used by the CLI: a matching file short-circuits
// the fill, a stale one is ignored (reported via warning), a corrupt one
// throws. When dir is set the freshly computed table is persisted.
inline KlTableData kl_table(const KlCache& cache,
                            const std::optional<std::filesystem::path>& dir,
                            std::string* warning = nullptr, int threads = 1) {
  const GroupTable& g = cache.group();
  if (dir) {
    auto path = *dir / cache_file_name(g);
    if (std::filesystem::exists(path)) {
      KlTableData t = load_kl_cache_file(path);
      if (kl_cache_matches(t, g)) {
        validate_kl_cache(t, g, path);
        return t;
      }
      if (warning)
        *warning = "ignoring stale KL cache " + path.string() +
                   " (metadata does not match this enumeration)";
    }
  }
  KlTableData t = cache.table(threads);
  if (dir) save_kl_cache(t, *dir / cache_file_name(g));
  return t;
}

}  // namespace oblock
