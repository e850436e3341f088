#include "schreier/finset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace schreier {

FinSet::FinSet(std::vector<int> elems) : elems_(std::move(elems)) {
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] < 1) throw std::invalid_argument("set elements must be positive");
    if (i > 0 && elems_[i] <= elems_[i - 1])
      throw std::invalid_argument("set elements must be strictly increasing");
  }
}

int FinSet::min() const {
  if (elems_.empty()) throw std::domain_error("min of empty set");
  return elems_.front();
}

int FinSet::max() const {
  if (elems_.empty()) throw std::domain_error("max of empty set");
  return elems_.back();
}

FinSet FinSet::prefix(size_t m) const {
  if (m > elems_.size()) throw std::domain_error("prefix longer than set");
  FinSet r;
  r.elems_.assign(elems_.begin(), elems_.begin() + m);
  return r;
}

FinSet FinSet::suffix_from(size_t m) const {
  if (m > elems_.size()) throw std::domain_error("suffix start past end");
  FinSet r;
  r.elems_.assign(elems_.begin() + m, elems_.end());
  return r;
}

FinSet FinSet::append(int n) const {
  if (n < 1 || (!elems_.empty() && n <= elems_.back()))
    throw std::invalid_argument("appended element must exceed max");
  FinSet r = *this;
  r.elems_.push_back(n);
  return r;
}

FinSet FinSet::concat(const FinSet& f) const {
  if (!before(f)) throw std::invalid_argument("concat requires E < F");
  FinSet r = *this;
  r.elems_.insert(r.elems_.end(), f.elems_.begin(), f.elems_.end());
  return r;
}

bool FinSet::contains(int n) const {
  return std::binary_search(elems_.begin(), elems_.end(), n);
}

bool FinSet::before(const FinSet& f) const {
  if (elems_.empty() || f.elems_.empty()) return true;
  return elems_.back() < f.elems_.front();
}

bool FinSet::strict_initial_segment_of(const FinSet& f) const {
  return size() < f.size() && initial_segment_of(f);
}

bool FinSet::initial_segment_of(const FinSet& f) const {
  if (size() > f.size()) return false;
  return std::equal(elems_.begin(), elems_.end(), f.elems_.begin());
}

std::string FinSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ',';
    os << elems_[i];
  }
  os << '}';
  return os.str();
}

bool is_subset(const FinSet& e, const FinSet& f) {
  return std::includes(f.elements().begin(), f.elements().end(), e.elements().begin(),
                       e.elements().end());
}

bool is_spread(const FinSet& e, const FinSet& l) {
  if (e.size() != l.size()) return false;
  for (size_t i = 0; i < e.size(); ++i)
    if (l[i] < e[i]) return false;
  return true;
}

Relabeling Relabeling::arithmetic(int start, int step) {
  if (start < 1 || step < 1) throw std::invalid_argument("relabeling must be strictly increasing");
  Relabeling m;
  m.start_ = start;
  m.step_ = step;
  return m;
}

Relabeling Relabeling::with_prefix(std::vector<int> prefix, int start, int step) {
  Relabeling m = arithmetic(start, step);
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] < 1 || (i > 0 && prefix[i] <= prefix[i - 1]))
      throw std::invalid_argument("relabeling prefix must be strictly increasing");
  }
  if (!prefix.empty() && start <= prefix.back())
    throw std::invalid_argument("relabeling tail must continue above the prefix");
  m.prefix_ = std::move(prefix);
  return m;
}

int Relabeling::apply(int n) const {
  if (n < 1) throw std::domain_error("relabeling applied below 1");
  if (static_cast<size_t>(n) <= prefix_.size()) return prefix_[n - 1];
  return start_ + (n - static_cast<int>(prefix_.size()) - 1) * step_;
}

FinSet Relabeling::apply(const FinSet& e) const {
  std::vector<int> out;
  out.reserve(e.size());
  for (int x : e.elements()) out.push_back(apply(x));
  return FinSet(std::move(out));
}

int Relabeling::preimage_at_least(int m) const {
  for (size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i] >= m) return static_cast<int>(i) + 1;
  int k = static_cast<int>(prefix_.size());
  if (start_ >= m) return k + 1;
  int quot = (m - start_ + step_ - 1) / step_;
  return k + 1 + quot;
}

std::string Relabeling::to_string() const {
  std::ostringstream os;
  if (prefix_.empty()) {
    if (start_ == 2 && step_ == 2) return "even";
    if (start_ == 1 && step_ == 2) return "odd";
    os << "ap(" << start_ << ',' << step_ << ')';
    return os.str();
  }
  os << "tab(";
  for (size_t i = 0; i < prefix_.size(); ++i) {
    if (i) os << ',';
    os << prefix_[i];
  }
  os << ';' << start_ << ',' << step_ << ')';
  return os.str();
}

}  // namespace schreier
