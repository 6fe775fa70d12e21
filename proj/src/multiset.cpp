#include "ldc/multiset.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldc {

namespace {

void extend(std::vector<Multiset>& out, Multiset& cur, int n, int k, int from) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i < n; ++i) {
    cur.push_back(i);
    extend(out, cur, n, k, i);
    cur.pop_back();
  }
}

} // namespace

MultisetBasis::MultisetBasis(int base_size, int degree) : n_(base_size), d_(degree) {
  if (base_size < 0 || degree < 0) throw std::invalid_argument("multiset basis: negative size");
  for (int k = 0; k <= degree; ++k) {
    starts_.push_back(static_cast<int>(elems_.size()));
    Multiset cur;
    extend(elems_, cur, n_, k, 0);
  }
  starts_.push_back(static_cast<int>(elems_.size()));
  for (size_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = static_cast<int>(i);
}

int MultisetBasis::index_of(const Multiset& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

std::string MultisetBasis::label(int i, const std::vector<std::string>& base_labels) const {
  std::string s = "[";
  const auto& m = elems_.at(i);
  for (size_t k = 0; k < m.size(); ++k) {
    if (k) s += ",";
    s += base_labels.at(m[k]);
  }
  return s + "]";
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double orderings(const Multiset& m) {
  double r = 1;
  int run = 0;
  for (size_t i = 0; i < m.size(); ++i) {
    run = (i > 0 && m[i] == m[i - 1]) ? run + 1 : 1;
    r *= static_cast<double>(i + 1) / run;
  }
  return r;
}

Multiset multiset_union(const Multiset& a, const Multiset& b) {
  Multiset r;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::vector<std::pair<Multiset, Multiset>> ordered_splits(const Multiset& m) {
  // group into (value, multiplicity) and choose how many of each go left
  std::vector<std::pair<int, int>> groups;
  for (int x : m) {
    if (!groups.empty() && groups.back().first == x) ++groups.back().second;
    else groups.push_back({x, 1});
  }
  std::vector<std::pair<Multiset, Multiset>> out;
  std::vector<int> take(groups.size(), 0);
  while (true) {
    Multiset a, b;
    for (size_t g = 0; g < groups.size(); ++g) {
      a.insert(a.end(), take[g], groups[g].first);
      b.insert(b.end(), groups[g].second - take[g], groups[g].first);
    }
    out.push_back({a, b});
    size_t g = 0;
    while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
    if (g == groups.size()) break;
    ++take[g];
  }
  return out;
}

} // namespace ldc
