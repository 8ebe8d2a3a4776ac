#include "weyl/multi_index.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace weyl {

bool MultiIndex::divides(const MultiIndex& other) const {
  if (other.size() != size()) return false;
  for (std::size_t j = 0; j < e_.size(); ++j) {
    if (e_[j] > other.e_[j]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index length mismatch");
  MultiIndex r(*this);
  for (std::size_t j = 0; j < e_.size(); ++j) r.e_[j] += other.e_[j];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.divides(*this)) throw std::invalid_argument("multi-index difference would be negative");
  MultiIndex r(*this);
  for (std::size_t j = 0; j < e_.size(); ++j) r.e_[j] -= other.e_[j];
  return r;
}

std::string MultiIndex::str() const {
  std::string out;
  for (std::size_t j = 0; j < e_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(e_[j]);
  }
  return out;
}

MultiIndex componentwiseMax(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multi-index length mismatch");
  MultiIndex r(a);
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = std::max(a[j], b[j]);
  return r;
}

bool grlexLess(const MultiIndex& a, const MultiIndex& b) {
  unsigned ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  return a.exponents() < b.exponents();
}

namespace {

void enumerate(std::size_t m, unsigned remaining, std::size_t pos, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (pos + 1 == m) {
    for (unsigned a = 0; a <= remaining; ++a) {
      cur[pos] = a;
      out.push_back(cur);
    }
    cur[pos] = 0;
    return;
  }
  for (unsigned a = 0; a <= remaining; ++a) {
    cur[pos] = a;
    enumerate(m, remaining - a, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> indicesUpTo(std::size_t m, unsigned s) {
  std::vector<MultiIndex> out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  MultiIndex cur(m);
  enumerate(m, s, 0, cur, out);
  std::sort(out.begin(), out.end(), grlexLess);
  return out;
}

MultiIndex parseMultiIndex(const std::string& text, std::size_t m) {
  std::vector<unsigned> e;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string part = text.substr(pos, comma - pos);
    auto first = part.find_first_not_of(" \t");
    auto last = part.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty multi-index entry in '" + text + "'");
    part = part.substr(first, last - first + 1);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw std::invalid_argument("bad multi-index entry '" + part + "'");
    e.push_back(v);
    pos = comma + 1;
  }
  if (e.size() != m) throw std::invalid_argument("multi-index '" + text + "' does not have " + std::to_string(m) + " entries");
  return MultiIndex(std::move(e));
}

}  // namespace weyl
