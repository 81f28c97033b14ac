#include "flagsos/symrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "flagsos/errors.hpp"

namespace flagsos {

int size_of(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

namespace {

void check_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 1 || (i && p[i] > p[i - 1])) throw std::invalid_argument("not a partition: " + to_string(p));
}

void gen_partitions(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(remaining - k, k, cur, out);
    cur.pop_back();
  }
}

Integer factorial(int n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// Adds horizontal strips of sizes content[v], content[v+1], ... to `shape`
// without leaving mu.
Integer count_ssyt(const Partition& mu, const Partition& content, std::size_t v, std::vector<int>& shape) {
  if (v == content.size()) return shape == std::vector<int>(mu.begin(), mu.end()) ? 1 : 0;
  const std::vector<int> old = shape;
  Integer total = 0;
  auto place = [&](auto&& self, std::size_t row, int left) -> void {
    if (row == shape.size()) {
      if (left == 0) total += count_ssyt(mu, content, v + 1, shape);
      return;
    }
    const int cap = std::min(mu[row], row == 0 ? mu[0] : old[row - 1]);
    for (int add = 0; add <= std::min(left, cap - old[row]); ++add) {
      shape[row] = old[row] + add;
      self(self, row + 1, left - add);
    }
    shape[row] = old[row];
  };
  place(place, 0, content[v]);
  return total;
}

long mn_rec(std::vector<char>& beads, const Partition& rho, std::size_t idx) {
  if (idx == rho.size()) return 1;
  const int r = rho[idx];
  long total = 0;
  for (int b = static_cast<int>(beads.size()) - 1; b >= r; --b) {
    if (!beads[b] || beads[b - r]) continue;
    int between = 0;
    for (int c = b - r + 1; c < b; ++c) between += beads[c];
    beads[b] = 0;
    beads[b - r] = 1;
    const long sub = mn_rec(beads, rho, idx + 1);
    beads[b - r] = 0;
    beads[b] = 1;
    total += (between % 2 ? -sub : sub);
  }
  return total;
}

Permutation cycle_representative(const Partition& ct) {
  const int n = size_of(ct);
  Permutation p(n);
  int start = 0;
  for (int len : ct) {
    for (int k = 0; k < len; ++k) p[start + k] = start + (k + 1) % len;
    start += len;
  }
  return p;
}

std::string perm_key(const Permutation& p) { return std::string(p.begin(), p.end()); }

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n, cur, out);
  return out;
}

bool lex_geq(const Partition& a, const Partition& b) { return !std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

Partition hook_partition(int n, int t) {
  if (t < 0 || t >= n) throw std::invalid_argument("hook partition needs 0 <= t < n");
  Partition p{n - t};
  p.insert(p.end(), t, 1);
  return p;
}

std::vector<Partition> partitions_lex_geq(int n, int hook_t) {
  const Partition hook = hook_partition(n, hook_t);
  std::vector<Partition> out;
  for (auto& p : partitions_of(n))
    if (lex_geq(p, hook)) out.push_back(std::move(p));
  return out;
}

bool dominance_geq(const Partition& mu, const Partition& lambda) {
  if (size_of(mu) != size_of(lambda)) throw std::invalid_argument("partitions of different n");
  return lex_geq(mu, lambda) && mu.size() <= lambda.size();
}

bool dominates(const Partition& mu, const Partition& lambda) {
  if (size_of(mu) != size_of(lambda)) throw std::invalid_argument("partitions of different n");
  int a = 0, b = 0;
  for (std::size_t i = 0; i < std::max(mu.size(), lambda.size()); ++i) {
    a += i < mu.size() ? mu[i] : 0;
    b += i < lambda.size() ? lambda[i] : 0;
    if (a < b) return false;
  }
  return true;
}

Integer kostka(const Partition& mu, const Partition& lambda) {
  check_partition(mu);
  check_partition(lambda);
  if (size_of(mu) != size_of(lambda)) throw std::invalid_argument("partitions of different n");
  std::vector<int> shape(mu.size(), 0);
  return count_ssyt(mu, lambda, 0, shape);
}

long dimension(const Partition& lambda) {
  check_partition(lambda);
  const int n = size_of(lambda);
  Integer hooks = 1;
  for (std::size_t r = 0; r < lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) {
      int below = 0;
      for (std::size_t r2 = r + 1; r2 < lambda.size() && lambda[r2] > c; ++r2) ++below;
      hooks *= lambda[r] - c + below;
    }
  Integer d = factorial(n) / hooks;
  return d.get_si();
}

long character(const Partition& lambda, const Partition& cycle_type) {
  check_partition(lambda);
  if (size_of(lambda) != size_of(cycle_type)) throw std::invalid_argument("character: sizes differ");
  if (size_of(lambda) > 10) throw BudgetExceeded("characters are limited to n <= 10");
  const int k = static_cast<int>(lambda.size());
  std::vector<char> beads(size_of(lambda) + k + 1, 0);
  for (int i = 0; i < k; ++i) beads[lambda[i] + (k - 1 - i)] = 1;
  return mn_rec(beads, cycle_type, 0);
}

Integer class_size(const Partition& ct) {
  const int n = size_of(ct);
  std::map<int, int> mult;
  for (int len : ct) ++mult[len];
  Integer denom = 1;
  for (auto [len, m] : mult) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(len), static_cast<unsigned long>(m));
    denom *= p * factorial(m);
  }
  return factorial(n) / denom;
}

std::vector<Monomial> monomial_basis(int n, int d) {
  const int pairs = pair_count(n);
  std::vector<Monomial> out;
  for (int deg = 0; deg <= std::min(d, pairs); ++deg) {
    std::vector<int> idx(deg);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Monomial m = 0;
      for (int i : idx) m |= Monomial{1} << i;
      out.push_back(m);
      int pos = deg - 1;
      while (pos >= 0 && idx[pos] == pairs - deg + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int q = pos + 1; q < deg; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return out;
}

long multiplicity(const Partition& lambda, int n, int d) {
  if (n > 8 || d > 2) throw BudgetExceeded("multiplicities are computed for n <= 8, d <= 2");
  if (size_of(lambda) != n) throw std::invalid_argument("multiplicity: partition of the wrong size");
  const auto monomials = monomial_basis(n, d);
  Integer total = 0;
  for (const auto& ct : partitions_of(n)) {
    EdgePermAction a(cycle_representative(ct));
    long fixed = 0;
    for (Monomial m : monomials) fixed += a.apply(m) == m;
    total += class_size(ct) * character(lambda, ct) * fixed;
  }
  const Integer nf = factorial(n);
  if (total % nf != 0) throw std::logic_error("multiplicity: character sum not divisible by n!");
  return Integer(total / nf).get_si();
}

Partition Tableau::shape() const {
  Partition p;
  for (const auto& r : rows) p.push_back(static_cast<int>(r.size()));
  return p;
}

int Tableau::size() const {
  int s = 0;
  for (const auto& r : rows) s += static_cast<int>(r.size());
  return s;
}

bool Tableau::is_standard() const {
  const int n = size();
  std::vector<char> seen(n, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty() || (r && rows[r].size() > rows[r - 1].size())) return false;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const int v = rows[r][c];
      if (v < 0 || v >= n || seen[v]) return false;
      seen[v] = 1;
      if (c && rows[r][c - 1] >= v) return false;
      if (r && rows[r - 1][c] >= v) return false;
    }
  }
  return true;
}

std::vector<int> Tableau::column_word() const {
  std::vector<int> w;
  for (std::size_t c = 0; !rows.empty() && c < rows[0].size(); ++c)
    for (const auto& row : rows) {
      if (c >= row.size()) break;
      w.push_back(row[c]);
    }
  return w;
}

Tableau superstandard_tableau(const Partition& lambda) {
  check_partition(lambda);
  Tableau t;
  int v = 0;
  for (int len : lambda) {
    t.rows.emplace_back();
    for (int c = 0; c < len; ++c) t.rows.back().push_back(v++);
  }
  return t;
}

std::vector<Tableau> standard_tableaux(const Partition& lambda) {
  check_partition(lambda);
  const int n = size_of(lambda);
  if (n > 10) throw BudgetExceeded("standard tableaux are enumerated for n <= 10");
  std::vector<Tableau> out;
  Tableau cur;
  cur.rows.assign(lambda.size(), {});
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t r = 0; r < lambda.size(); ++r) {
      const std::size_t len = cur.rows[r].size();
      if (static_cast<int>(len) == lambda[r]) continue;
      if (r && cur.rows[r - 1].size() <= len) continue;
      cur.rows[r].push_back(v);
      self(self, v + 1);
      cur.rows[r].pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Tableau& a, const Tableau& b) { return a.column_word() > b.column_word(); });
  return out;
}

YoungRepresentation::YoungRepresentation(Partition lambda)
    : lambda_(std::move(lambda)), n_(size_of(lambda_)), tableaux_(standard_tableaux(lambda_)) {
  const int dim = static_cast<int>(tableaux_.size());
  // A standard tableau is determined by the row of each entry.
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> row_of(dim, std::vector<int>(n_)), col_of(dim, std::vector<int>(n_));
  for (int a = 0; a < dim; ++a) {
    for (std::size_t r = 0; r < tableaux_[a].rows.size(); ++r)
      for (std::size_t c = 0; c < tableaux_[a].rows[r].size(); ++c) {
        row_of[a][tableaux_[a].rows[r][c]] = static_cast<int>(r);
        col_of[a][tableaux_[a].rows[r][c]] = static_cast<int>(c);
      }
    index[row_of[a]] = a;
  }
  for (int i = 0; i + 1 < n_; ++i) {
    RatMatrix sn(dim, dim);
    Eigen::MatrixXd orth = Eigen::MatrixXd::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
      const int ri = row_of[a][i], rj = row_of[a][i + 1];
      const int ci = col_of[a][i], cj = col_of[a][i + 1];
      const int r = (cj - rj) - (ci - ri);  // axial distance
      sn(a, a) = Rational(1, r);
      sn(a, a).canonicalize();
      orth(a, a) = 1.0 / r;
      if (ri == rj || ci == cj) continue;
      std::vector<int> swapped = row_of[a];
      std::swap(swapped[i], swapped[i + 1]);
      const int b = index.at(swapped);
      Rational off = 1 - Rational(1, r * r);
      off.canonicalize();
      sn(b, a) = ri < rj ? Rational(1) : off;
      orth(b, a) = std::sqrt(off.get_d());
    }
    seminormal_gens_.push_back(std::move(sn));
    orthogonal_gens_.push_back(std::move(orth));
  }
}

RatMatrix YoungRepresentation::seminormal(const Permutation& g) const {
  if (static_cast<int>(g.size()) != n_ || !is_permutation(g)) throw std::invalid_argument("seminormal: bad permutation");
  RatMatrix m = RatMatrix::identity(dimension());
  for (int w : adjacent_transposition_word(g)) m = m * seminormal_gens_[w];
  return m;
}

Eigen::MatrixXd YoungRepresentation::orthogonal(const Permutation& g) const {
  if (static_cast<int>(g.size()) != n_ || !is_permutation(g)) throw std::invalid_argument("orthogonal: bad permutation");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dimension(), dimension());
  for (int w : adjacent_transposition_word(g)) m = m * orthogonal_gens_[w];
  return m;
}

FirstColumns first_columns(const YoungRepresentation& rep) {
  const int n = rep.n(), dim = rep.dimension();
  if (n > 7) throw BudgetExceeded("group sums are limited to n <= 7");
  FirstColumns out;
  std::unordered_map<std::string, std::size_t> seen;
  out.elements.push_back(identity_permutation(n));
  out.columns.emplace_back(dim);
  out.columns[0][0] = 1;
  seen.emplace(perm_key(out.elements[0]), 0);
  std::vector<Permutation> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(transposition(n, i, i + 1));
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (int i = 0; i + 1 < n; ++i) {
      Permutation h = compose(gens[i], out.elements[head]);
      const std::string key = perm_key(h);
      if (seen.count(key)) continue;
      const RatMatrix& s = rep.seminormal_generator(i);
      std::vector<Rational> col(dim);
      const auto& src = out.columns[head];
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          if (src[c] != 0 && s(r, c) != 0) col[r] += s(r, c) * src[c];
      seen.emplace(key, out.elements.size());
      out.elements.push_back(std::move(h));
      out.columns.push_back(std::move(col));
    }
  }
  return out;
}

ClassSums class_sums(const MultilinearPoly& p) {
  const int n = p.n();
  if (n > 7) throw BudgetExceeded("class sums are limited to n <= 7");
  ClassSums out;
  out.n = n;
  out.classes = partitions_of(n);
  std::map<Partition, std::size_t> class_index;
  for (std::size_t k = 0; k < out.classes.size(); ++k) class_index[out.classes[k]] = k;

  // Integer coefficients after clearing denominators.
  Integer denom = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> nums;
  bool small = true;
  for (const auto& [m, c] : p.terms()) {
    nums.push_back(c.get_num() * (denom / c.get_den()));
    small = small && mpz_sizeinbase(nums.back().get_mpz_t(), 2) <= 40;
  }
  const auto perms = all_permutations(n);
  std::vector<MultilinearPoly::Term> collected;
  out.sums.assign(out.classes.size(), MultilinearPoly(n));
  if (small) {
    std::vector<std::unordered_map<Monomial, long>> acc(out.classes.size());
    for (const auto& g : perms) {
      auto& target = acc[class_index.at(cycle_type(g))];
      EdgePermAction a(g);
      for (std::size_t k = 0; k < nums.size(); ++k) target[a.apply(p.terms()[k].first)] += nums[k].get_si();
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      std::vector<MultilinearPoly::Term> terms;
      for (auto [m, c] : acc[k])
        if (c != 0) {
          Rational q(Integer(c), denom);
          q.canonicalize();
          terms.emplace_back(m, std::move(q));
        }
      out.sums[k] = MultilinearPoly::from_terms(n, std::move(terms));
    }
  } else {
    std::vector<std::unordered_map<Monomial, Rational>> acc(out.classes.size());
    for (const auto& g : perms) {
      auto& target = acc[class_index.at(cycle_type(g))];
      EdgePermAction a(g);
      for (const auto& [m, c] : p.terms()) target[a.apply(m)] += c;
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      std::vector<MultilinearPoly::Term> terms;
      for (auto& [m, c] : acc[k])
        if (c != 0) terms.emplace_back(m, c);
      out.sums[k] = MultilinearPoly::from_terms(n, std::move(terms));
    }
  }
  return out;
}

MultilinearPoly isotypic_projection(const ClassSums& sums, const Partition& mu) {
  if (size_of(mu) != sums.n) throw std::invalid_argument("isotypic_projection: partition of the wrong size");
  MultilinearPoly out(sums.n);
  for (std::size_t k = 0; k < sums.classes.size(); ++k) {
    const long chi = character(mu, sums.classes[k]);
    if (chi != 0) out += sums.sums[k] * Rational(chi);
  }
  Rational scale(dimension(mu));
  scale /= Rational(factorial(sums.n));
  return out * scale;
}

MultilinearPoly isotypic_projection(const MultilinearPoly& p, const Partition& mu) {
  return isotypic_projection(class_sums(p), mu);
}

const SabBlock* SabBasis::first_block(const Partition& lambda) const {
  for (const auto& b : blocks)
    if (b.partition == lambda && b.tableau_index == 0) return &b;
  return nullptr;
}

namespace {

// sum_g coeffs[g] * (g . p), for every coefficient slot at once.
std::vector<MultilinearPoly> weighted_group_sum(const MultilinearPoly& p, const std::vector<EdgePermAction>& actions,
                                                const FirstColumns& fc, const std::vector<int>& slots) {
  std::vector<std::unordered_map<Monomial, Rational>> acc(slots.size());
  for (std::size_t g = 0; g < actions.size(); ++g) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const Rational& w = fc.columns[g][slots[s]];
      if (w == 0) continue;
      for (const auto& [m, c] : p.terms()) acc[s][actions[g].apply(m)] += w * c;
    }
  }
  std::vector<MultilinearPoly> out;
  for (auto& a : acc) {
    std::vector<MultilinearPoly::Term> terms;
    for (auto& [m, c] : a)
      if (c != 0) terms.emplace_back(m, std::move(c));
    out.push_back(MultilinearPoly::from_terms(p.n(), std::move(terms)));
  }
  return out;
}

}  // namespace

SabBasis symmetry_adapted_basis(int n, int d, const std::vector<Partition>& restrict_to, TableauScope scope) {
  if (n > 7 || d > 2) throw BudgetExceeded("symmetry-adapted bases are built for n <= 7, d <= 2");
  SabBasis basis{n, d, {}};
  const auto monomials = monomial_basis(n, d);
  for (const auto& lambda : restrict_to) {
    if (size_of(lambda) != n) throw std::invalid_argument("partition " + to_string(lambda) + " is not of n");
    const long mult = multiplicity(lambda, n, d);
    if (mult == 0) continue;
    YoungRepresentation rep(lambda);
    const FirstColumns fc = first_columns(rep);
    std::vector<EdgePermAction> actions;
    actions.reserve(fc.elements.size());
    for (const auto& g : fc.elements) actions.emplace_back(g);

    SabBlock first{lambda, 0, rep.tableaux()[0], {}, {}};
    for (Monomial m : monomials) {
      if (static_cast<long>(first.polys.size()) == mult) break;
      MultilinearPoly v = weighted_group_sum(MultilinearPoly::monomial(n, m), actions, fc, {0})[0];
      for (std::size_t j = 0; j < first.polys.size(); ++j) {
        const Rational c = inner_product(v, first.polys[j]) / first.norm2[j];
        if (c != 0) v -= first.polys[j] * c;
      }
      if (v.is_zero()) continue;
      v = primitive_part(v);
      first.norm2.push_back(inner_product(v, v));
      first.polys.push_back(std::move(v));
    }
    if (static_cast<long>(first.polys.size()) != mult)
      throw std::logic_error("projection produced fewer vectors than the multiplicity");
    basis.blocks.push_back(first);
    if (scope == TableauScope::kFirst) continue;

    std::vector<int> slots;
    for (int k = 1; k < rep.dimension(); ++k) slots.push_back(k);
    std::vector<std::vector<MultilinearPoly>> images(slots.size());
    for (const auto& b : first.polys) {
      auto shifted = weighted_group_sum(b, actions, fc, slots);
      for (std::size_t s = 0; s < slots.size(); ++s) images[s].push_back(std::move(shifted[s]));
    }
    for (std::size_t s = 0; s < slots.size(); ++s) {
      // One common positive factor per block keeps the shifted basis
      // consistent with the first block.
      Integer num_gcd = 0, den_lcm = 1;
      for (const auto& p : images[s])
        for (const auto& [m, c] : p.terms()) {
          mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
          mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        }
      if (num_gcd == 0) throw std::logic_error("shift operator annihilated a basis block");
      Rational scale(den_lcm, num_gcd);
      scale.canonicalize();
      SabBlock blk{lambda, slots[s], rep.tableaux()[slots[s]], {}, {}};
      for (auto& p : images[s]) {
        p *= scale;
        blk.norm2.push_back(inner_product(p, p));
        blk.polys.push_back(std::move(p));
      }
      basis.blocks.push_back(std::move(blk));
    }
  }
  return basis;
}

YMatrix y_matrix(const SabBlock& block, int n) {
  if (block.polys.empty()) throw std::invalid_argument("y_matrix: empty block");
  const int m = static_cast<int>(block.polys.size());
  YMatrix y{block.partition, std::vector<std::vector<MultilinearPoly>>(m, std::vector<MultilinearPoly>(m, MultilinearPoly(n)))};
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) {
      y.entries[k][l] = symmetrize_full(block.polys[k] * block.polys[l]);
      y.entries[l][k] = y.entries[k][l];
    }
  return y;
}

RatMatrix coefficient_matrix(const std::vector<MultilinearPoly>& polys, const std::vector<Monomial>& monomials) {
  std::unordered_map<Monomial, int> row;
  for (std::size_t i = 0; i < monomials.size(); ++i) row[monomials[i]] = static_cast<int>(i);
  RatMatrix m(static_cast<int>(monomials.size()), static_cast<int>(polys.size()));
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (const auto& [mono, c] : polys[j].terms()) {
      auto it = row.find(mono);
      if (it == row.end()) throw std::invalid_argument("coefficient_matrix: monomial outside the basis");
      m(it->second, static_cast<int>(j)) = c;
    }
  return m;
}

RatMatrix action_matrix(const Permutation& sigma, const std::vector<Monomial>& monomials) {
  std::unordered_map<Monomial, int> row;
  for (std::size_t i = 0; i < monomials.size(); ++i) row[monomials[i]] = static_cast<int>(i);
  EdgePermAction a(sigma);
  const int dim = static_cast<int>(monomials.size());
  RatMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    auto it = row.find(a.apply(monomials[j]));
    if (it == row.end()) throw std::invalid_argument("action_matrix: span not closed under the action");
    m(it->second, j) = 1;
  }
  return m;
}

}  // namespace flagsos
