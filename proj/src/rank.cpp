#include "gctop/rank.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <vector>

#include "gctop/errors.hpp"

namespace gctop {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 reduce(std::int64_t v, u64 p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

using SparseRow = std::vector<std::pair<int, u64>>;  // sorted by column

// row <- row - factor * pivot  (mod p)
SparseRow axpy(const SparseRow& row, const SparseRow& pivot, u64 factor, u64 p) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, (p - mul_mod(factor, pivot[j].second, p)) % p);
      ++j;
    } else {
      u64 v = (row[i].second + p - mul_mod(factor, pivot[j].second, p)) % p;
      if (v) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

int dense_rank_mod_p(std::vector<std::vector<u64>> a, u64 p) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r][c]) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    const u64 inv = pow_mod(a[rank][c], p - 2, p);
    for (int r = rank + 1; r < rows; ++r) {
      if (!a[r][c]) continue;
      const u64 f = mul_mod(a[r][c], inv, p);
      for (int k = c; k < cols; ++k) {
        a[r][k] = (a[r][k] + p - mul_mod(f, a[rank][k], p)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void RankConfig::validate() const {
  for (std::uint32_t p : {primary_prime, confirmation_prime}) {
    if (p <= (1u << 20)) throw ConfigError("rank primes must exceed 2^20");
    if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  }
  if (primary_prime == confirmation_prime) {
    throw ConfigError("primary and confirmation primes must differ");
  }
  if (dense_threshold < 0) throw ConfigError("dense threshold must be >= 0");
}

int rank_mod_p(const SparseIntMatrix& m, std::uint32_t prime, int dense_threshold) {
  const u64 p = prime;
  std::vector<SparseRow> rows(m.rows());
  for (const auto& e : m.entries()) {
    const u64 v = reduce(e.value, p);
    if (v) rows[e.row].emplace_back(e.col, v);
  }
  std::vector<std::set<int>> col_rows(m.cols());
  std::set<int> active;
  for (int r = 0; r < m.rows(); ++r) {
    if (rows[r].empty()) continue;
    active.insert(r);
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
  }

  int rank = 0;
  while (!active.empty()) {
    if (static_cast<int>(active.size()) <= dense_threshold) {
      std::vector<int> cols_used;
      for (int c = 0; c < m.cols(); ++c) {
        if (!col_rows[c].empty()) cols_used.push_back(c);
      }
      std::vector<int> col_index(m.cols(), -1);
      for (std::size_t i = 0; i < cols_used.size(); ++i) col_index[cols_used[i]] = static_cast<int>(i);
      std::vector<std::vector<u64>> dense;
      for (int r : active) {
        std::vector<u64> row(cols_used.size(), 0);
        for (const auto& [c, v] : rows[r]) row[col_index[c]] = v;
        dense.push_back(std::move(row));
      }
      return rank + dense_rank_mod_p(std::move(dense), p);
    }

    // Pivot: sparsest column, then sparsest row within it (lowest index on ties).
    int pc = -1;
    std::size_t best = 0;
    for (int c = 0; c < m.cols(); ++c) {
      const std::size_t k = col_rows[c].size();
      if (k && (pc < 0 || k < best)) {
        pc = c;
        best = k;
      }
    }
    if (pc < 0) break;
    int pr = -1;
    for (int r : col_rows[pc]) {
      if (pr < 0 || rows[r].size() < rows[pr].size()) pr = r;
    }

    const SparseRow pivot = rows[pr];
    u64 pivot_val = 0;
    for (const auto& [c, v] : pivot) {
      if (c == pc) pivot_val = v;
    }
    const u64 inv = pow_mod(pivot_val, p - 2, p);
    for (const auto& [c, v] : pivot) col_rows[c].erase(pr);
    active.erase(pr);
    rows[pr].clear();
    ++rank;

    const std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (int r : targets) {
      u64 a = 0;
      for (const auto& [c, v] : rows[r]) {
        if (c == pc) {
          a = v;
          break;
        }
      }
      for (const auto& [c, v] : rows[r]) col_rows[c].erase(r);
      rows[r] = axpy(rows[r], pivot, mul_mod(a, inv, p), p);
      if (rows[r].empty()) {
        active.erase(r);
      } else {
        for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
      }
    }
  }
  return rank;
}

int rank_exact(const SparseIntMatrix& m) {
  using boost::multiprecision::cpp_int;
  // Drop empty rows and columns before going dense.
  std::vector<int> row_id(m.rows(), -1), col_id(m.cols(), -1);
  int nr = 0, nc = 0;
  for (const auto& e : m.entries()) {
    if (row_id[e.row] < 0) row_id[e.row] = nr++;
    if (col_id[e.col] < 0) col_id[e.col] = nc++;
  }
  std::vector<std::vector<cpp_int>> a(nr, std::vector<cpp_int>(nc));
  for (const auto& e : m.entries()) a[row_id[e.row]][col_id[e.col]] = e.value;

  int rank = 0;
  cpp_int prev = 1;
  for (int c = 0; c < nc && rank < nr; ++c) {
    int piv = -1;
    for (int r = rank; r < nr; ++r) {
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = rank + 1; r < nr; ++r) {
      for (int k = c + 1; k < nc; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

std::string to_string(RankCertainty c) {
  return c == RankCertainty::Exact ? "exact" : "modular-agreed";
}

CertifiedRank certified_rank(const SparseIntMatrix& m, const RankConfig& cfg) {
  cfg.validate();
  const int r1 = rank_mod_p(m, cfg.primary_prime, cfg.dense_threshold);
  const int r2 = rank_mod_p(m, cfg.confirmation_prime, cfg.dense_threshold);
  if (r1 == r2) return {r1, RankCertainty::ModularAgreed};
  if (!cfg.exact_fallback) {
    throw IntegrityError("modular ranks disagree (" + std::to_string(r1) +
                         " vs " + std::to_string(r2) +
                         ") and exact fallback is disabled");
  }
  const int exact = rank_exact(m);
  if (std::max(r1, r2) > exact) {
    throw IntegrityError("modular rank exceeds exact rank");
  }
  return {exact, RankCertainty::Exact};
}

}  // namespace gctop
