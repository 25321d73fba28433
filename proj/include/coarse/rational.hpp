#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace coarse {

// All lengths, distances and thresholds are exact rationals. GMP keeps
// values canonical (lowest terms, positive denominator).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p" or "p/q".
Rat rat_parse(const std::string& text);

std::string rat_str(const Rat& q);

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// Largest integer <= q and smallest integer >= q.
Rat rat_floor(const Rat& q);
Rat rat_ceil(const Rat& q);

inline long rat_to_long(const Rat& q) {
  if (!rat_is_integer(q)) throw std::invalid_argument("expected integer rational");
  if (!q.get_num().fits_slong_p()) throw std::overflow_error("rational out of range");
  return q.get_num().get_si();
}

// A distance value: a nonnegative rational or +infinity (for pairs in
// different components). Infinity is a distinct state, never a sentinel
// number.
class Dist {
 public:
  Dist() : inf_(true) {}
  static Dist infinity() { return Dist(); }
  static Dist of(Rat v) {
    Dist d;
    d.inf_ = false;
    d.value_ = std::move(v);
    return d;
  }
  static Dist zero() { return of(Rat(0)); }

  bool is_inf() const { return inf_; }
  const Rat& value() const {
    if (inf_) throw std::logic_error("value() on infinite distance");
    return value_;
  }

  friend bool operator==(const Dist& a, const Dist& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.value_ == b.value_;
  }
  friend bool operator<(const Dist& a, const Dist& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Dist& a, const Dist& b) { return a < b || a == b; }
  friend bool operator>(const Dist& a, const Dist& b) { return b < a; }
  friend bool operator>=(const Dist& a, const Dist& b) { return b <= a; }

  friend bool operator<(const Dist& a, const Rat& b) { return !a.inf_ && a.value_ < b; }
  friend bool operator>=(const Dist& a, const Rat& b) { return !(a < b); }
  friend bool operator<=(const Dist& a, const Rat& b) { return !a.inf_ && a.value_ <= b; }
  friend bool operator>(const Dist& a, const Rat& b) { return !(a <= b); }
  friend bool operator==(const Dist& a, const Rat& b) { return !a.inf_ && a.value_ == b; }

  friend Dist operator+(const Dist& a, const Dist& b) {
    if (a.inf_ || b.inf_) return infinity();
    return of(a.value_ + b.value_);
  }
  friend Dist operator+(const Dist& a, const Rat& b) {
    if (a.inf_) return infinity();
    return of(a.value_ + b);
  }

  std::string str() const { return inf_ ? "inf" : rat_str(value_); }

 private:
  bool inf_;
  Rat value_;
};

inline Dist dist_min(const Dist& a, const Dist& b) { return a < b ? a : b; }
inline Dist dist_max(const Dist& a, const Dist& b) { return a < b ? b : a; }

}  // namespace coarse
