#pragma once

#include <map>
#include <string>
#include <vector>

namespace ldc {

using Multiset = std::vector<int>;  // sorted base indices

// All multisets of size <= d over n base elements, in (size, lex) order.
class MultisetBasis {
public:
  MultisetBasis() = default;
  MultisetBasis(int base_size, int degree);

  int base_size() const { return n_; }
  int degree() const { return d_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const Multiset& at(int i) const { return elems_.at(i); }
  const std::vector<Multiset>& elements() const { return elems_; }
  // -1 when the multiset is absent (too large)
  int index_of(const Multiset& m) const;
  // first index of the size-k block and its length
  int block_start(int k) const { return starts_.at(k); }
  int block_size(int k) const { return starts_.at(k + 1) - starts_.at(k); }

  std::string label(int i, const std::vector<std::string>& base_labels) const;

private:
  int n_ = 0;
  int d_ = 0;
  std::vector<Multiset> elems_;
  std::vector<int> starts_;
  std::map<Multiset, int> index_;
};

long long binomial(int n, int k);
// number of distinct orderings of a multiset
double orderings(const Multiset& m);
Multiset multiset_union(const Multiset& a, const Multiset& b);
// every ordered split m = a + b, each distinct pair once
std::vector<std::pair<Multiset, Multiset>> ordered_splits(const Multiset& m);

} // namespace ldc
