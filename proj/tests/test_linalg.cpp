#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gctop/errors.hpp"
#include "gctop/rank.hpp"
#include "gctop/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace gctop;

namespace {

SparseIntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, double density,
                              int max_abs) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> val(-max_abs, max_abs);
  std::vector<Triplet> t;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (coin(rng) < density) t.push_back({r, c, val(rng)});
    }
  }
  return SparseIntMatrix::from_triplets(rows, cols, std::move(t));
}

// Product of random factors: rank at most k.
SparseIntMatrix low_rank(std::mt19937_64& rng, int rows, int cols, int k) {
  SparseIntMatrix a = random_matrix(rng, rows, k, 0.5, 3);
  SparseIntMatrix b = random_matrix(rng, k, cols, 0.5, 3);
  return multiply(a, b);
}

}  // namespace

TEST(SparseMatrix, FromTripletsNormalizes) {
  auto m = SparseIntMatrix::from_triplets(2, 2, {{1, 1, 3}, {0, 0, 1}, {1, 1, -3}, {0, 0, 4}});
  ASSERT_EQ(m.nonzeros(), 1u);
  EXPECT_EQ(m.entries()[0], (Triplet{0, 0, 5}));
  EXPECT_THROW(SparseIntMatrix::from_triplets(2, 2, {{2, 0, 1}}), InvalidArgument);
  EXPECT_THROW(SparseIntMatrix::from_triplets(2, 2, {{0, -1, 1}}), InvalidArgument);
}

TEST(SparseMatrix, TransposeAndMultiplyMatchDense) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_matrix(rng, 1 + trial % 7, 1 + trial % 5, 0.4, 9);
    auto b = random_matrix(rng, a.cols(), 1 + trial % 6, 0.4, 9);
    EXPECT_EQ(a.transposed().transposed(), a);
    auto da = a.to_dense(), db = b.to_dense(), dc = multiply(a, b).to_dense();
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < b.cols(); ++j) {
        std::int64_t s = 0;
        for (int k = 0; k < a.cols(); ++k) s += da[i][k] * db[k][j];
        ASSERT_EQ(dc[i][j], s);
      }
    }
  }
}

TEST(SparseMatrix, MultiplyOverflowIsDetected) {
  const std::int64_t big = std::int64_t{1} << 40;
  auto a = SparseIntMatrix::from_triplets(1, 1, {{0, 0, big}});
  EXPECT_THROW(multiply(a, a), IntegrityError);
  EXPECT_THROW(multiply(a, SparseIntMatrix(2, 1)), InvalidArgument);
}

TEST(MatrixMarket, RoundTripAndPattern) {
  std::mt19937_64 rng(2);
  auto m = random_matrix(rng, 6, 9, 0.3, 50);
  std::stringstream ss;
  write_matrix_market(ss, m);
  EXPECT_EQ(ss.str().rfind("%%MatrixMarket matrix coordinate integer general", 0), 0u);
  EXPECT_EQ(read_matrix_market(ss), m);

  std::istringstream pat(
      "%%MatrixMarket matrix coordinate pattern general\n% c\n2 3 2\n1 1\n2 3\n");
  auto p = read_matrix_market(pat);
  EXPECT_EQ(p, SparseIntMatrix::from_triplets(2, 3, {{0, 0, 1}, {1, 2, 1}}));

  std::istringstream bad("%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 5\n");
  EXPECT_THROW(read_matrix_market(bad), ValidationError);
  std::istringstream garbage("hello\n");
  EXPECT_THROW(read_matrix_market(garbage), ValidationError);
}

TEST(Rank, Primes) {
  EXPECT_TRUE(is_prime(kDefaultPrimaryPrime));
  EXPECT_TRUE(is_prime(kDefaultConfirmationPrime));
  for (std::uint64_t n = kDefaultConfirmationPrime + 1; n < kDefaultPrimaryPrime; ++n) {
    EXPECT_FALSE(is_prime(n)) << n;
  }
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(561));
}

TEST(Rank, ConfigValidation) {
  RankConfig ok;
  EXPECT_NO_THROW(ok.validate());
  RankConfig same = ok;
  same.confirmation_prime = same.primary_prime;
  EXPECT_THROW(same.validate(), ConfigError);
  RankConfig composite = ok;
  composite.primary_prime = 2147483645u;
  EXPECT_THROW(composite.validate(), ConfigError);
  RankConfig tiny = ok;
  tiny.primary_prime = 101;
  EXPECT_THROW(tiny.validate(), ConfigError);
}

TEST(Rank, MatchesRationalOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 12);
    const int cols = 1 + static_cast<int>(rng() % 12);
    SparseIntMatrix m = trial % 2 ? random_matrix(rng, rows, cols, 0.3, 2)
                                  : low_rank(rng, rows, cols, 1 + static_cast<int>(rng() % 4));
    const int expected = gctop::oracle::dense_rational_rank(m.to_dense());
    ASSERT_EQ(rank_exact(m), expected);
    for (int threshold : {0, 4, 64}) {
      ASSERT_EQ(rank_mod_p(m, kDefaultPrimaryPrime, threshold), expected);
      ASSERT_EQ(rank_mod_p(m, kDefaultConfirmationPrime, threshold), expected);
    }
    ASSERT_EQ(rank_mod_p(m.transposed(), kDefaultPrimaryPrime), expected);
    CertifiedRank cr = certified_rank(m, RankConfig{});
    ASSERT_EQ(cr.rank, expected);
    ASSERT_EQ(cr.certainty, RankCertainty::ModularAgreed);
  }
}

TEST(Rank, SmallPrimeDropsRank) {
  // det = 7: rank 2 over Q, rank 1 mod 7.
  auto m = SparseIntMatrix::from_triplets(2, 2, {{0, 0, 3}, {0, 1, 1}, {1, 0, 1}, {1, 1, 5}});
  EXPECT_EQ(rank_mod_p(m, 7), 1);
  EXPECT_EQ(rank_mod_p(m, kDefaultPrimaryPrime), 2);
  EXPECT_EQ(rank_exact(m), 2);
}

TEST(Rank, DisagreementFallsBackOrThrows) {
  // det = 2^31 - 1: singular modulo the primary prime only.
  const std::int64_t p = kDefaultPrimaryPrime;
  auto m = SparseIntMatrix::from_triplets(2, 2, {{0, 0, p}, {1, 1, 1}});
  RankConfig cfg;
  CertifiedRank cr = certified_rank(m, cfg);
  EXPECT_EQ(cr.rank, 2);
  EXPECT_EQ(cr.certainty, RankCertainty::Exact);
  cfg.exact_fallback = false;
  EXPECT_THROW(certified_rank(m, cfg), IntegrityError);
}

TEST(Rank, EmptyAndZero) {
  EXPECT_EQ(rank_mod_p(SparseIntMatrix(0, 5), kDefaultPrimaryPrime), 0);
  EXPECT_EQ(rank_mod_p(SparseIntMatrix(4, 0), kDefaultPrimaryPrime), 0);
  EXPECT_EQ(rank_exact(SparseIntMatrix(3, 3)), 0);
}

TEST(Rank, LargeSparseAgreesAcrossThresholds) {
  std::mt19937_64 rng(4);
  auto m = low_rank(rng, 300, 260, 120);
  const int dense = rank_mod_p(m, kDefaultPrimaryPrime, 100000);
  EXPECT_EQ(rank_mod_p(m, kDefaultPrimaryPrime, 0), dense);
  EXPECT_EQ(rank_mod_p(m, kDefaultPrimaryPrime, 64), dense);
  EXPECT_LE(dense, 120);
}
