#pragma once

#include <cstdint>
#include <string>

#include "gctop/sparse_matrix.hpp"

namespace gctop {

inline constexpr std::uint32_t kDefaultPrimaryPrime = 2147483647u;       // 2^31 - 1
inline constexpr std::uint32_t kDefaultConfirmationPrime = 2147483629u;  // largest prime below it
inline constexpr int kDefaultDenseThreshold = 64;

struct RankConfig {
  std::uint32_t primary_prime = kDefaultPrimaryPrime;
  std::uint32_t confirmation_prime = kDefaultConfirmationPrime;
  bool exact_fallback = true;
  // Once the active part of an elimination has at most this many rows it is
  // finished densely.
  int dense_threshold = kDefaultDenseThreshold;

  // Primes must be distinct, prime, and > 2^20. Throws ConfigError.
  void validate() const;
};

bool is_prime(std::uint64_t n);

/// Rank over GF(p). Sparse elimination with a Markowitz-style pivot rule,
/// switching to dense once the active submatrix has <= dense_threshold rows.
int rank_mod_p(const SparseIntMatrix& m, std::uint32_t p,
               int dense_threshold = kDefaultDenseThreshold);

/// Rank over Q by fraction-free (Bareiss) elimination on big integers.
int rank_exact(const SparseIntMatrix& m);

enum class RankCertainty { ModularAgreed, Exact };

std::string to_string(RankCertainty c);

struct CertifiedRank {
  int rank = 0;
  RankCertainty certainty = RankCertainty::ModularAgreed;
};

/// Rank modulo both configured primes. Agreement returns ModularAgreed;
/// disagreement falls back to rank_exact() when enabled, otherwise throws
/// IntegrityError.
CertifiedRank certified_rank(const SparseIntMatrix& m, const RankConfig& cfg);

}  // namespace gctop
