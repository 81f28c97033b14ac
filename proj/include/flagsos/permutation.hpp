#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace flagsos {

// A permutation of {0, ..., n-1}, stored as its image vector.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
// (a * b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
Permutation transposition(int n, int i, int j);
bool is_permutation(const Permutation& p);

// Cycle lengths sorted non-increasing (a partition of n).
std::vector<int> cycle_type(const Permutation& p);

// All n! permutations in lexicographic order of their image vectors.
std::vector<Permutation> all_permutations(int n);

Permutation random_permutation(int n, std::mt19937_64& rng);

// Random permutation that maps `support` onto itself and fixes everything else.
Permutation random_permutation_of(int n, const std::vector<int>& support, std::mt19937_64& rng);

// Word in adjacent transpositions s_i = (i, i+1): p = s_{w[0]} s_{w[1]} ... s_{w[k-1]}.
std::vector<int> adjacent_transposition_word(const Permutation& p);

}  // namespace flagsos
