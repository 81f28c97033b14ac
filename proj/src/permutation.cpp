#include "flagsos/permutation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace flagsos {

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Permutation c(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

Permutation transposition(int n, int i, int j) {
  Permutation p = identity_permutation(n);
  std::swap(p[i], p[j]);
  return p;
}

bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<int> cycle_type(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::vector<int> lengths;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  Permutation p = identity_permutation(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

Permutation random_permutation_of(int n, const std::vector<int>& support, std::mt19937_64& rng) {
  Permutation p = identity_permutation(n);
  std::vector<int> image = support;
  std::shuffle(image.begin(), image.end(), rng);
  for (std::size_t k = 0; k < support.size(); ++k) p[support[k]] = image[k];
  return p;
}

std::vector<int> adjacent_transposition_word(const Permutation& p) {
  // Right-multiplying by s_i swaps image positions i, i+1; bubble sort to the
  // identity and reverse the applied sequence.
  Permutation q = p;
  std::vector<int> applied;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      if (q[i] > q[i + 1]) {
        std::swap(q[i], q[i + 1]);
        applied.push_back(static_cast<int>(i));
        changed = true;
      }
    }
  }
  std::reverse(applied.begin(), applied.end());
  return applied;
}

}  // namespace flagsos
