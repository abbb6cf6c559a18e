#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "oblock/errors.hpp"

namespace oblock {

// Polynomial in q with integer coefficients, dense ascending storage.
// The zero polynomial has an empty coefficient vector and degree -1.
class PolynomialQ {
 public:
  PolynomialQ() = default;
  explicit PolynomialQ(std::vector<long long> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static PolynomialQ one() { return PolynomialQ({1}); }
  static PolynomialQ monomial(int deg, long long a = 1) {
    if (deg < 0) throw error("monomial: negative degree");
    std::vector<long long> c(static_cast<std::size_t>(deg) + 1, 0);
    c.back() = a;
    return PolynomialQ(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  long long coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0;
  }
  const std::vector<long long>& coeffs() const { return c_; }

  long long at_one() const {
    long long s = 0;
    for (long long a : c_) s += a;
    return s;
  }

  PolynomialQ& operator+=(const PolynomialQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PolynomialQ& operator-=(const PolynomialQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) {
    a += b;
    return a;
  }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) {
    a -= b;
    return a;
  }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return PolynomialQ(std::move(c));
  }

  // this * q^k
  PolynomialQ shifted(int k) const {
    if (is_zero()) return {};
    if (k < 0) throw error("shifted: negative shift on PolynomialQ");
    std::vector<long long> c(c_.size() + static_cast<std::size_t>(k), 0);
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return PolynomialQ(std::move(c));
  }

  friend bool operator==(const PolynomialQ& a, const PolynomialQ& b) = default;

  std::string str(const char* var = "q") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = 0; k <= degree(); ++k) {
      long long a = c_[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      if (!s.empty()) s += a > 0 ? " + " : " - ";
      else if (a < 0) s += "-";
      long long m = a > 0 ? a : -a;
      if (m != 1 || k == 0) s += std::to_string(m);
      if (k > 0) {
        if (m != 1) s += "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<long long> c_;
};

// Laurent polynomial in v, dense storage from min_exp() upward.
class LaurentV {
 public:
  LaurentV() = default;

  static LaurentV term(int exp, long long a) {
    LaurentV p;
    p.add_term(exp, a);
    return p;
  }

  // v^gap * p(v^{-2}): the graded-multiplicity substitution.
  static LaurentV from_kl(const PolynomialQ& p, int gap) {
    LaurentV out;
    for (int k = 0; k <= p.degree(); ++k)
      if (long long a = p.coeff(k)) out.add_term(gap - 2 * k, a);
    return out;
  }

  bool is_zero() const { return c_.empty(); }
  int min_exp() const { return lo_; }
  int max_exp() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  long long coeff(int k) const {
    int i = k - lo_;
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
  }

  void add_term(int exp, long long a) {
    if (a == 0) return;
    if (c_.empty()) {
      lo_ = exp;
      c_.push_back(a);
    } else if (exp < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - exp), 0);
      lo_ = exp;
      c_[0] += a;
    } else {
      int i = exp - lo_;
      if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i) + 1, 0);
      c_[static_cast<std::size_t>(i)] += a;
    }
    trim();
  }

  LaurentV& operator+=(const LaurentV& o) {
    for (int k = o.min_exp(); k <= o.max_exp(); ++k) add_term(k, o.coeff(k));
    return *this;
  }
  friend LaurentV operator+(LaurentV a, const LaurentV& b) {
    a += b;
    return a;
  }

  long long at_one() const {
    long long s = 0;
    for (long long a : c_) s += a;
    return s;
  }

  friend bool operator==(const LaurentV& a, const LaurentV& b) = default;

  std::string str(const char* var = "v") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = min_exp(); k <= max_exp(); ++k) {
      long long a = coeff(k);
      if (a == 0) continue;
      if (!s.empty()) s += a > 0 ? " + " : " - ";
      else if (a < 0) s += "-";
      long long m = a > 0 ? a : -a;
      if (m != 1 || k == 0) s += std::to_string(m);
      if (k != 0) {
        if (m != 1) s += "*";
        s += var;
        if (k != 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t drop = 0;
    while (drop < c_.size() && c_[drop] == 0) ++drop;
    if (drop) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(drop));
      lo_ += static_cast<int>(drop);
    }
    if (c_.empty()) lo_ = 0;
  }
  int lo_ = 0;
  std::vector<long long> c_;
};

}  // namespace oblock
