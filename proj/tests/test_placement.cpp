#include <gtest/gtest.h>

#include "cpda/placement.hpp"

using cpda::validate;

TEST(NodeCache, Contents) {
  EXPECT_EQ(cpda::node_cache_contents(validate(10, 3, 2), 1), (std::vector<int>{9, 6}));
  EXPECT_EQ(cpda::node_cache_contents(validate(5, 2, 1), 3), (std::vector<int>{2}));
  EXPECT_TRUE(cpda::node_cache_contents(validate(6, 2, 0), 4).empty());
  EXPECT_THROW(cpda::node_cache_contents(validate(6, 2, 1), 7), cpda::ParameterError);
  EXPECT_THROW(cpda::node_cache_contents(validate(6, 2, 1), 0), cpda::ParameterError);
}

TEST(NodeCache, NeighboursOfExampleOne) {
  const auto p = validate(10, 3, 2);
  EXPECT_EQ(cpda::node_cache_contents(p, 2), (std::vector<int>{10, 7}));
  EXPECT_EQ(cpda::node_cache_contents(p, 3), (std::vector<int>{1, 8}));
  EXPECT_EQ(cpda::accessible_nodes(p, 9), (std::vector<int>{9, 10, 1}));
}

TEST(PlacementArrays, UserColumnOfExampleOne) {
  const auto arrays = cpda::build_placement_arrays(validate(10, 3, 2));
  for (int j = 1; j <= 10; ++j) {
    const bool expected = j == 1 || j >= 6;
    EXPECT_EQ(arrays.user_array.at(j, 1), expected) << "row " << j;
  }
}

TEST(PlacementArrays, DegenerateMemories) {
  const auto none = cpda::build_placement_arrays(validate(7, 3, 0));
  const auto all = cpda::build_placement_arrays(validate(6, 2, 3));
  for (int j = 1; j <= 7; ++j) {
    for (int k = 1; k <= 7; ++k) EXPECT_FALSE(none.user_array.at(j, k));
  }
  for (int j = 1; j <= 6; ++j) {
    for (int k = 1; k <= 6; ++k) EXPECT_TRUE(all.user_array.at(j, k));
  }
}

// U is checked against the retrieval window [j : j+t-1]_K of each subfile,
// a third description independent of both derivations inside the builder.
TEST(PlacementArrays, CountsAndWindowsOverSweep) {
  for (int K = 1; K <= 40; ++K) {
    for (int L = 1; L <= K; ++L) {
      for (int gamma = 0; gamma <= K / L; ++gamma) {
        const auto p = validate(K, L, gamma);
        const auto arrays = cpda::build_placement_arrays(p);
        for (int j = 1; j <= K; ++j) {
          std::vector<char> window(static_cast<std::size_t>(K) + 1, 0);
          for (int x : cpda::cyclic_range(j, j + p.t - 1, K)) window[x] = 1;
          for (int k = 1; k <= K; ++k) {
            ASSERT_EQ(arrays.user_array.at(j, k), window[k] == 1)
                << "K=" << K << " L=" << L << " gamma=" << gamma;
          }
          ASSERT_EQ(arrays.user_array.row_count(j), p.t);
        }
        for (int k = 1; k <= K; ++k) {
          ASSERT_EQ(arrays.node_array.column_count(k), gamma);
          ASSERT_EQ(arrays.user_array.column_count(k), p.t);
        }
        ASSERT_TRUE(cpda::check_local_gain(p)) << "K=" << K << " L=" << L;
      }
    }
  }
}

TEST(PlacementArrays, RenderedGrid) {
  const auto arrays = cpda::build_placement_arrays(validate(4, 2, 1));
  EXPECT_EQ(cpda::render_grid(arrays.user_array),
            "* * . .\n"
            ". * * .\n"
            ". . * *\n"
            "* . . *\n");
}
