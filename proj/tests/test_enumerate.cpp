#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "gctop/canonical.hpp"
#include "gctop/enumerate.hpp"
#include "gctop/errors.hpp"
#include "oracles.hpp"

using namespace gctop;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("gctop_test_" + name + "_" +
                                              std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<GraphBytes> keys(const std::vector<StableGraph>& gs) {
  std::vector<GraphBytes> out;
  for (const auto& g : gs) out.push_back(serialize(g));
  return out;
}

}  // namespace

TEST(Enumerate, GenusTwoStrata) {
  std::vector<std::size_t> counts;
  for (int p = 0; p <= 3; ++p) counts.push_back(enumerate_graphs({2, 0, p}).size());
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 2, 2, 2}));
}

TEST(Enumerate, FourPointedLineHasThreeBoundaryPoints) {
  auto graphs = enumerate_graphs({0, 4, 1});
  ASSERT_EQ(graphs.size(), 3u);
  std::set<std::set<int>> pairings;
  for (const auto& g : graphs) {
    std::set<int> with_one;
    const int v = g.leg_vertex(1);
    for (int l = 1; l <= 4; ++l) {
      if (g.leg_vertex(l) == v) with_one.insert(l);
    }
    pairings.insert(with_one);
  }
  EXPECT_EQ(pairings, (std::set<std::set<int>>{{1, 2}, {1, 3}, {1, 4}}));
}

TEST(Enumerate, CvModeExcludesPositiveGenus) {
  EXPECT_TRUE(enumerate_graphs({1, 1, 0, Mode::CV}).empty());
  auto one = enumerate_graphs({1, 1, 1, Mode::CV});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].is_loop(0));
}

TEST(Enumerate, RejectsInvalidSpecs) {
  EXPECT_THROW(enumerate_graphs({0, 2, 0}), InvalidArgument);
  EXPECT_THROW(enumerate_graphs({1, 0, 0}), InvalidArgument);
  EXPECT_THROW(enumerate_graphs({2, 0, 4}), InvalidArgument);
  EXPECT_THROW(enumerate_graphs({2, 0, -1}), InvalidArgument);
}

TEST(Enumerate, ResourceCap) {
  EnumOptions opts;
  opts.max_classes = 3;
  EXPECT_THROW(enumerate_graphs({3, 0, 6}, opts), ResourceError);
}

TEST(Enumerate, MatchesNaiveOracle) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 6}, {1, 1}, {1, 2}, {1, 4}, {2, 0}, {2, 1}, {2, 2}}) {
    for (int p = 0; p <= 3 * g - 3 + n; ++p) {
      for (Mode mode : {Mode::Full, Mode::CV}) {
        auto fast = enumerate_graphs({g, n, p, mode});
        auto slow = oracle::naive_enumeration(g, n, p, mode == Mode::CV);
        ASSERT_EQ(fast.size(), slow.size()) << g << "," << n << "," << p;
        const auto fast_keys = keys(fast);
        std::set<GraphBytes> a(fast_keys.begin(), fast_keys.end());
        std::set<GraphBytes> b;
        for (const auto& s : slow) b.insert(canonical_bytes(s));
        ASSERT_EQ(a, b);
      }
    }
  }
}

TEST(Enumerate, OutputInvariants) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 5}, {1, 3}, {2, 2}, {3, 1}}) {
    for (int p = 0; p <= 3 * g - 3 + n; ++p) {
      for (Mode mode : {Mode::Full, Mode::CV}) {
        auto graphs = enumerate_graphs({g, n, p, mode});
        auto k = keys(graphs);
        ASSERT_TRUE(std::is_sorted(k.begin(), k.end()));
        ASSERT_EQ(std::set<GraphBytes>(k.begin(), k.end()).size(), k.size());
        for (const auto& x : graphs) {
          ASSERT_TRUE(is_stable(x));
          ASSERT_EQ(total_genus(x), g);
          ASSERT_EQ(x.num_legs(), n);
          ASSERT_EQ(x.num_edges(), p);
          ASSERT_EQ(serialize(x), canonical_bytes(x));
          if (mode == Mode::CV) {
            for (int gv : x.genera()) ASSERT_EQ(gv, 0);
          }
        }
      }
    }
  }
}

TEST(Enumerate, RequireOrientableFilters) {
  auto all = enumerate_graphs({3, 0, 6});
  auto orient = enumerate_graphs({3, 0, 6, Mode::Full, true});
  std::size_t expected = 0;
  for (const auto& g : all) expected += is_orientable(g) ? 1 : 0;
  EXPECT_EQ(orient.size(), expected);
  for (const auto& g : orient) EXPECT_TRUE(is_orientable(g));
}

TEST(Enumerate, ClosedUnderContraction) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 0}, {1, 3}}) {
    for (int p = 1; p <= 3 * g - 3 + n; ++p) {
      auto lower = keys(enumerate_graphs({g, n, p - 1}));
      std::set<GraphBytes> lower_set(lower.begin(), lower.end());
      for (const auto& x : enumerate_graphs({g, n, p})) {
        for (int e = 0; e < x.num_edges(); ++e) {
          ASSERT_TRUE(lower_set.count(canonical_bytes(contract_edge(x, e))));
        }
      }
    }
  }
}

TEST(Enumerate, SerialAndParallelAgree) {
  for (int p = 0; p <= 9; ++p) {
    EnumOptions serial, parallel;
    parallel.parallel.threads = 4;
    ASSERT_EQ(keys(enumerate_graphs({4, 0, p}, serial)),
              keys(enumerate_graphs({4, 0, p}, parallel)));
  }
}

TEST(Cache, ColdWarmAndCorrupt) {
  const fs::path dir = fresh_dir("cache");
  const EnumSpec spec{2, 0, 3};
  std::vector<std::string> warnings;
  auto warn = [&](const std::string& w) { warnings.push_back(w); };

  CacheResult cold = cache_get_or_build(spec, dir, {}, warn);
  EXPECT_FALSE(cold.hit);
  EXPECT_EQ(cold.graphs.size(), 2u);
  const fs::path file = cache_file(dir, spec);
  ASSERT_TRUE(fs::exists(file));
  EXPECT_EQ(file.parent_path().filename(), "gctop");
  EXPECT_EQ(file.filename(), cold.digest + ".graphs");

  CacheResult warm = cache_get_or_build(spec, dir, {}, warn);
  EXPECT_TRUE(warm.hit);
  EXPECT_EQ(keys(warm.graphs), keys(cold.graphs));
  EXPECT_TRUE(warnings.empty());

  // Truncate: rebuilt transparently, same list, one warning.
  fs::resize_file(file, fs::file_size(file) / 2);
  CacheResult rebuilt = cache_get_or_build(spec, dir, {}, warn);
  EXPECT_FALSE(rebuilt.hit);
  EXPECT_EQ(keys(rebuilt.graphs), keys(cold.graphs));
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_TRUE(cache_get_or_build(spec, dir, {}, warn).hit);

  // Version mismatch in the header.
  {
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    text.replace(0, text.find('\n'), "GCTOP-GRAPHS 999");
    std::ofstream(file, std::ios::trunc) << text;
  }
  CacheResult again = cache_get_or_build(spec, dir, {}, warn);
  EXPECT_FALSE(again.hit);
  EXPECT_EQ(keys(again.graphs), keys(cold.graphs));
  EXPECT_EQ(warnings.size(), 2u);
  fs::remove_all(dir);
}

TEST(Cache, DigestSeparatesSpecs) {
  std::set<std::string> digests;
  for (int p = 0; p <= 3; ++p) {
    for (Mode m : {Mode::Full, Mode::CV}) {
      for (bool orient : {false, true}) digests.insert(cache_digest({2, 0, p, m, orient}));
    }
  }
  EXPECT_EQ(digests.size(), 16u);
  EXPECT_EQ(cache_digest({2, 0, 1}), cache_digest({2, 0, 1}));
  EXPECT_EQ(cache_digest({2, 0, 1}).size(), 64u);
}
