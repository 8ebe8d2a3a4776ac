#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace weyl {

/// Exponent vector (a_1, ..., a_m) in N^m. Used both for polynomial monomials
/// and for derivative multi-indices.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t m) : e_(m, 0) {}
  MultiIndex(std::initializer_list<unsigned> e) : e_(e) {}
  explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t m, std::size_t j) {
    MultiIndex r(m);
    r.e_.at(j) = 1;
    return r;
  }

  std::size_t size() const noexcept { return e_.size(); }
  unsigned operator[](std::size_t j) const { return e_[j]; }
  unsigned& operator[](std::size_t j) { return e_[j]; }
  const std::vector<unsigned>& exponents() const noexcept { return e_; }

  unsigned total() const noexcept {
    unsigned t = 0;
    for (unsigned a : e_) t += a;
    return t;
  }
  bool isZero() const noexcept { return total() == 0; }

  /// Componentwise a <= b.
  bool divides(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other.divides(*this).
  MultiIndex operator-(const MultiIndex& other) const;

  /// "a,b,c"
  std::string str() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<unsigned> e_;
};

MultiIndex componentwiseMax(const MultiIndex& a, const MultiIndex& b);

/// Graded lexicographic order: total degree first, then lex on exponents.
bool grlexLess(const MultiIndex& a, const MultiIndex& b);

struct GrlexGreater {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlexLess(b, a); }
};

/// All multi-indices with |a| <= s, in increasing grlex order.
std::vector<MultiIndex> indicesUpTo(std::size_t m, unsigned s);

/// Parses "a,b,c" into a multi-index of length m.
MultiIndex parseMultiIndex(const std::string& text, std::size_t m);

}  // namespace weyl
