#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <sstream>
#include <string>
#include <utility>

#include "khcover/errors.hpp"

namespace khcover {

/// Integer Laurent polynomial in q, stored sparsely (exponent -> coefficient).
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int exp, std::int64_t coeff = 1) {
    Laurent p;
    p.add_term(exp, coeff);
    return p;
  }
  static Laurent constant(std::int64_t c) { return monomial(0, c); }

  void add_term(int exp, std::int64_t coeff) {
    if (coeff == 0) return;
    auto& c = terms_[exp];
    c += coeff;
    if (c == 0) terms_.erase(exp);
  }

  std::int64_t coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
  }

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  Laurent& operator+=(const Laurent& o) {
    for (auto [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto [ea, ca] : a.terms_)
      for (auto [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

  Laurent pow(unsigned n) const {
    Laurent r = constant(1), base = *this;
    while (n) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  /// Exact division; throws if the divisor does not divide.
  Laurent divide_exact(const Laurent& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("Laurent division by zero");
    const int dtop = divisor.max_degree();
    const std::int64_t lead = divisor.coeff(dtop);
    const int lowest = min_degree() - divisor.min_degree();
    Laurent rem = *this, quot;
    while (!rem.is_zero()) {
      const int top = rem.max_degree();
      const std::int64_t c = rem.coeff(top);
      if (top - dtop < lowest || c % lead != 0) throw std::domain_error("Laurent division is not exact");
      Laurent t = monomial(top - dtop, c / lead);
      quot += t;
      rem -= t * divisor;
    }
    return quot;
  }

  /// Value at q = i as a Gaussian integer (re, im).
  std::pair<std::int64_t, std::int64_t> eval_at_i() const {
    std::int64_t re = 0, im = 0;
    for (auto [e, c] : terms_) {
      switch (((e % 4) + 4) % 4) {
        case 0: re += c; break;
        case 1: im += c; break;
        case 2: re -= c; break;
        case 3: im -= c; break;
      }
    }
    return {re, im};
  }

  /// e.g. "q^-3 + q^-1 - 2 + q^2"; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [e, c] : terms_) {
      std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  std::map<int, std::int64_t> terms_;
};

}  // namespace khcover
