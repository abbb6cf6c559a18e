#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oblock/errors.hpp"

namespace oblock {

// A finite crystallographic Coxeter system, described by its Coxeter matrix.
// label keeps the component order the caller asked for (wall indices refer to
// it); canonical_label sorts components and resolves aliases, and is what the
// KL cache files are keyed by.
struct CartanDatum {
  std::string label;
  std::string canonical_label;
  int rank = 0;
  std::vector<int> cox;  // rank*rank, m(i,i)=1, off-diagonal in {2,3,4,6}

  int m(int i, int j) const { return cox[static_cast<std::size_t>(i) * rank + j]; }
};

namespace detail {

struct Component {
  char letter;
  int rank;
};

inline std::string component_label(const Component& c) {
  return std::string(1, c.letter) + std::to_string(c.rank);
}

inline std::string join_canonical(std::vector<Component> comps) {
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return a.letter != b.letter ? a.letter < b.letter : a.rank < b.rank;
  });
  std::string out;
  for (const auto& c : comps) {
    if (!out.empty()) out += "x";
    out += component_label(c);
  }
  return out;
}

// Decides finite type of one connected diagram or throws build_error.
// nodes are indices into the full matrix.
inline Component classify_component(const std::vector<int>& nodes,
                                    const std::vector<int>& cox, int rank) {
  auto m = [&](int i, int j) { return cox[static_cast<std::size_t>(i) * rank + j]; };
  const int n = static_cast<int>(nodes.size());
  if (n == 1) return {'A', 1};

  int edges = 0;
  std::vector<int> deg(nodes.size(), 0);
  std::vector<std::pair<int, int>> big;  // local indices of bonds with m >= 4
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int mm = m(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)]);
      if (mm < 3) continue;
      ++edges;
      ++deg[static_cast<std::size_t>(a)];
      ++deg[static_cast<std::size_t>(b)];
      if (mm >= 4) big.emplace_back(a, b);
    }
  if (edges >= n)
    throw build_error("infinite Coxeter group: diagram component contains a cycle");
  // edges == n-1 now: the component is a tree.
  if (big.size() > 1)
    throw build_error("infinite Coxeter group: two bonds of order >= 4 in one component");

  std::vector<int> branch;
  for (int a = 0; a < n; ++a)
    if (deg[static_cast<std::size_t>(a)] >= 3) branch.push_back(a);

  if (branch.size() > 1)
    throw build_error("infinite Coxeter group: two branch nodes in one component");

  auto neighbours = [&](int a) {
    std::vector<int> out;
    for (int b = 0; b < n; ++b)
      if (b != a && m(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)]) >= 3)
        out.push_back(b);
    return out;
  };

  if (!branch.empty()) {
    if (!big.empty())
      throw build_error("infinite Coxeter group: branch node together with a bond of order >= 4");
    int c = branch[0];
    if (deg[static_cast<std::size_t>(c)] > 3)
      throw build_error("infinite Coxeter group: node of degree >= 4 in diagram");
    std::vector<int> arms;
    for (int nb : neighbours(c)) {
      int len = 1, prev = c, cur = nb;
      for (;;) {
        auto nxt = neighbours(cur);
        nxt.erase(std::remove(nxt.begin(), nxt.end(), prev), nxt.end());
        if (nxt.empty()) break;
        prev = cur;
        cur = nxt[0];
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return {'D', n};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
      return {'E', n};  // n = 6, 7, 8
    throw build_error("infinite Coxeter group: branch arms (" + std::to_string(arms[0]) + "," +
                      std::to_string(arms[1]) + "," + std::to_string(arms[2]) +
                      ") are not of finite type");
  }

  // Path. Locate it from a leaf to normalize bond positions.
  int leaf = 0;
  while (deg[static_cast<std::size_t>(leaf)] != 1) ++leaf;
  std::vector<int> path{leaf};
  {
    int prev = -1, cur = leaf;
    for (;;) {
      auto nxt = neighbours(cur);
      nxt.erase(std::remove(nxt.begin(), nxt.end(), prev), nxt.end());
      if (nxt.empty()) break;
      prev = cur;
      cur = nxt[0];
      path.push_back(cur);
    }
  }

  if (big.empty()) return {'A', n};
  int mm = m(nodes[static_cast<std::size_t>(big[0].first)],
             nodes[static_cast<std::size_t>(big[0].second)]);
  // Position of the big bond along the path, 0-based from the nearer end.
  int pos = 0;
  while (!((path[static_cast<std::size_t>(pos)] == big[0].first &&
            path[static_cast<std::size_t>(pos) + 1] == big[0].second) ||
           (path[static_cast<std::size_t>(pos)] == big[0].second &&
            path[static_cast<std::size_t>(pos) + 1] == big[0].first)))
    ++pos;
  int from_end = std::min(pos, n - 2 - pos);

  if (mm == 6) {
    if (n == 2) return {'G', 2};
    throw build_error("infinite Coxeter group: bond of order 6 in a component of rank > 2");
  }
  // mm == 4
  if (from_end == 0) return {'B', n};
  if (n == 4) return {'F', 4};
  throw build_error("infinite Coxeter group: interior bond of order 4 in a component of rank != 4");
}

inline std::vector<Component> classify(const std::vector<int>& cox, int rank) {
  if (rank < 1) throw usage_error("rank must be at least 1");
  if (static_cast<int>(cox.size()) != rank * rank)
    throw usage_error("Coxeter matrix size does not match rank");
  auto m = [&](int i, int j) { return cox[static_cast<std::size_t>(i) * rank + j]; };
  for (int i = 0; i < rank; ++i) {
    if (m(i, i) != 1) throw usage_error("Coxeter matrix must have 1 on the diagonal");
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      int mm = m(i, j);
      if (mm != m(j, i)) throw usage_error("Coxeter matrix must be symmetric");
      if (mm != 2 && mm != 3 && mm != 4 && mm != 6)
        throw usage_error("bond order m(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") = " + std::to_string(mm) +
                          " is not crystallographic (allowed: 2, 3, 4, 6)");
    }
  }
  // Connected components over bonds m >= 3.
  std::vector<int> comp(static_cast<std::size_t>(rank), -1);
  std::vector<Component> out;
  for (int i = 0; i < rank; ++i) {
    if (comp[static_cast<std::size_t>(i)] != -1) continue;
    std::vector<int> nodes{i};
    comp[static_cast<std::size_t>(i)] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (int j = 0; j < rank; ++j)
        if (comp[static_cast<std::size_t>(j)] == -1 && m(nodes[k], j) >= 3) {
          comp[static_cast<std::size_t>(j)] = static_cast<int>(out.size());
          nodes.push_back(j);
        }
    out.push_back(classify_component(nodes, cox, rank));
  }
  return out;
}

inline void set_bond(std::vector<int>& cox, int rank, int i, int j, int mm) {
  cox[static_cast<std::size_t>(i) * rank + j] = mm;
  cox[static_cast<std::size_t>(j) * rank + i] = mm;
}

// Coxeter matrix of one irreducible component, nodes offset..offset+rank-1
// in Bourbaki numbering.
inline void fill_component(std::vector<int>& cox, int total, int offset, Component c) {
  auto bond = [&](int a, int b, int mm) { set_bond(cox, total, offset + a, offset + b, mm); };
  switch (c.letter) {
    case 'A':
      for (int i = 0; i + 1 < c.rank; ++i) bond(i, i + 1, 3);
      break;
    case 'B':
      for (int i = 0; i + 1 < c.rank; ++i) bond(i, i + 1, 3);
      bond(c.rank - 2, c.rank - 1, 4);
      break;
    case 'D':
      for (int i = 0; i + 1 < c.rank - 1; ++i) bond(i, i + 1, 3);
      bond(c.rank - 3, c.rank - 1, 3);
      break;
    case 'E':
      bond(0, 2, 3);
      bond(1, 3, 3);
      bond(2, 3, 3);
      for (int i = 3; i + 1 < c.rank; ++i) bond(i, i + 1, 3);
      break;
    case 'F':
      bond(0, 1, 3);
      bond(1, 2, 4);
      bond(2, 3, 3);
      break;
    case 'G':
      bond(0, 1, 6);
      break;
    default:
      throw usage_error("unknown type letter");
  }
}

inline Component parse_component_label(std::string_view s) {
  if (s.size() < 2) throw usage_error("malformed type label component '" + std::string(s) + "'");
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int r = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw usage_error("malformed type label component '" + std::string(s) + "'");
    r = r * 10 + (s[i] - '0');
    if (r > 512) throw usage_error("rank too large in type label");
  }
  switch (letter) {
    case 'A':
      if (r < 1) throw usage_error("A requires rank >= 1");
      break;
    case 'C':
      if (r < 2) throw usage_error("C requires rank >= 2");
      letter = 'B';  // same Coxeter system
      break;
    case 'B':
      if (r < 2) throw usage_error("B requires rank >= 2");
      break;
    case 'D':
      if (r < 4) throw usage_error("D requires rank >= 4 (use A3 for rank 3)");
      break;
    case 'E':
      if (r < 6 || r > 8) throw usage_error("E requires rank 6, 7 or 8");
      break;
    case 'F':
      if (r != 4) throw usage_error("F requires rank 4");
      break;
    case 'G':
      if (r != 2) throw usage_error("G requires rank 2");
      break;
    default:
      throw usage_error("unknown type letter '" + std::string(1, s[0]) + "'");
  }
  return {letter, r};
}

inline unsigned long long component_order(Component c) {
  auto fact = [](int n) {
    unsigned long long f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
    return f;
  };
  switch (c.letter) {
    case 'A':
      return fact(c.rank + 1);
    case 'B':
      return (1ULL << c.rank) * fact(c.rank);
    case 'D':
      return (1ULL << (c.rank - 1)) * fact(c.rank);
    case 'E':
      return c.rank == 6 ? 51840ULL : c.rank == 7 ? 2903040ULL : 696729600ULL;
    case 'F':
      return 1152ULL;
    case 'G':
      return 12ULL;
  }
  throw error("component_order: bad letter");
}

inline int component_positive_roots(Component c) {
  switch (c.letter) {
    case 'A':
      return c.rank * (c.rank + 1) / 2;
    case 'B':
      return c.rank * c.rank;
    case 'D':
      return c.rank * (c.rank - 1);
    case 'E':
      return c.rank == 6 ? 36 : c.rank == 7 ? 63 : 120;
    case 'F':
      return 24;
    case 'G':
      return 6;
  }
  throw error("component_positive_roots: bad letter");
}

}  // namespace detail

// "A3", "B2xA1", "a2 x g2" and similar. Component order in the label fixes
// the simple-reflection numbering (left to right, 1-based for the user).
inline CartanDatum cartan_from_label(std::string_view label) {
  std::vector<detail::Component> comps;
  std::string cleaned;
  for (char ch : label)
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
  if (cleaned.empty()) throw usage_error("empty type label");
  std::size_t start = 0;
  for (std::size_t i = 0; i <= cleaned.size(); ++i) {
    if (i == cleaned.size() || cleaned[i] == 'x' || cleaned[i] == 'X') {
      comps.push_back(detail::parse_component_label(
          std::string_view(cleaned).substr(start, i - start)));
      start = i + 1;
    }
  }
  CartanDatum d;
  for (const auto& c : comps) {
    if (!d.label.empty()) d.label += "x";
    d.label += detail::component_label(c);
    d.rank += c.rank;
  }
  d.cox.assign(static_cast<std::size_t>(d.rank) * d.rank, 2);
  for (int i = 0; i < d.rank; ++i) d.cox[static_cast<std::size_t>(i) * d.rank + i] = 1;
  int offset = 0;
  for (const auto& c : comps) {
    detail::fill_component(d.cox, d.rank, offset, c);
    offset += c.rank;
  }
  d.canonical_label = detail::join_canonical(detail::classify(d.cox, d.rank));
  return d;
}

// Classifies an explicit Coxeter matrix; throws build_error when the group
// is infinite and usage_error for non-crystallographic bond orders.
inline CartanDatum cartan_from_matrix(std::vector<int> cox, int rank) {
  CartanDatum d;
  d.rank = rank;
  d.cox = std::move(cox);
  d.canonical_label = detail::join_canonical(detail::classify(d.cox, d.rank));
  d.label = d.canonical_label;
  return d;
}

inline unsigned long long weyl_order(const CartanDatum& d) {
  unsigned long long n = 1;
  for (const auto& c : detail::classify(d.cox, d.rank)) n *= detail::component_order(c);
  return n;
}

inline int positive_root_count(const CartanDatum& d) {
  int n = 0;
  for (const auto& c : detail::classify(d.cox, d.rank)) n += detail::component_positive_roots(c);
  return n;
}

}  // namespace oblock
