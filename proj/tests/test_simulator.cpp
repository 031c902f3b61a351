#include <gtest/gtest.h>

#include "cpda/simulator.hpp"

using cpda::Rational;
using cpda::validate;

TEST(Place, NodeMemoryMatchesGammaOverK) {
  for (auto [K, L, gamma] : {std::tuple{10, 3, 2}, {5, 2, 1}, {11, 2, 3}, {7, 1, 0}, {6, 2, 3}}) {
    const auto p = validate(K, L, gamma);
    const auto pda = cpda::build_scheme(p).pda;
    const auto store = cpda::FileStore::random(p.N, pda.F(), 64, 1);
    const auto caches = cpda::place(p, pda, store);
    const std::size_t library = store.file_size() * static_cast<std::size_t>(p.N);
    for (int k = 1; k <= K; ++k) {
      ASSERT_EQ(Rational(static_cast<std::int64_t>(caches.bytes_stored(k)),
                         static_cast<std::int64_t>(library)),
                Rational(gamma, K));
    }
  }
}

TEST(Place, FullMemoryReachesEverything) {
  const auto p = validate(6, 2, 3);
  const auto pda = cpda::build_scheme(p).pda;
  const auto store = cpda::FileStore::random(p.N, pda.F(), 8, 3);
  const auto caches = cpda::place(p, pda, store);
  for (int k = 1; k <= 6; ++k) {
    for (int r = 1; r <= pda.F(); ++r) {
      bool reachable = false;
      for (int node : cpda::accessible_nodes(p, k)) {
        reachable = reachable || caches.holds(node, 1, r);
      }
      ASSERT_TRUE(reachable);
    }
  }
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(caches.bytes_stored(k), store.file_size() * 6 * 3 / 6);
}

TEST(Deliver, MessageCountsAndLoad) {
  const auto s1 = cpda::simulate(validate(10, 3, 2), 64, cpda::worst_case_demand(10, 10), 5);
  EXPECT_EQ(s1.messages, 10U);
  EXPECT_EQ(s1.load, Rational(1));
  EXPECT_TRUE(s1.all_decoded());

  const auto p2 = validate(5, 2, 1);
  for (const auto& d : {cpda::worst_case_demand(5, 5), cpda::equal_demand(5),
                        cpda::random_demand(5, 5, 11)}) {
    const auto s2 = cpda::simulate(p2, 64, d, 9);
    EXPECT_EQ(s2.messages, 15U);
    EXPECT_EQ(s2.load, Rational(3, 2));
    EXPECT_EQ(s2.users_decoded, 5);
  }

  const auto full = cpda::simulate(validate(6, 2, 3), 64, cpda::equal_demand(6), 1);
  EXPECT_EQ(full.messages, 0U);
  EXPECT_EQ(full.load, Rational(0));
  EXPECT_TRUE(full.all_decoded());

  const auto none = cpda::simulate(validate(7, 2, 0), 16, cpda::worst_case_demand(7, 7), 1);
  EXPECT_EQ(none.load, Rational(7));
  EXPECT_TRUE(none.all_decoded());
}

TEST(Deliver, FewerFilesThanUsers) {
  const auto p = validate(9, 2, 2, 4);
  EXPECT_EQ(cpda::worst_case_demand(9, 4), (std::vector<int>{1, 2, 3, 4, 1, 2, 3, 4, 1}));
  const auto rep = cpda::simulate(p, 32, cpda::worst_case_demand(9, 4), 4);
  EXPECT_TRUE(rep.all_decoded());
  EXPECT_EQ(rep.load, cpda::rate_closed_form(9, 4));
}

TEST(Deliver, RejectsBadDemand) {
  const auto p = validate(5, 2, 1);
  const auto pda = cpda::build_scheme(p).pda;
  const auto store = cpda::FileStore::random(p.N, pda.F(), 8, 1);
  EXPECT_THROW(cpda::deliver(p, pda, store, {1, 2, 3}), cpda::ParameterError);
  EXPECT_THROW(cpda::deliver(p, pda, store, {1, 2, 3, 4, 6}), cpda::ParameterError);
  EXPECT_THROW(cpda::deliver(p, pda, store, {0, 2, 3, 4, 5}), cpda::ParameterError);
}

TEST(Transcript, DumpCarriesTotals) {
  const auto p = validate(5, 2, 1);
  const auto pda = cpda::build_scheme(p).pda;
  const auto store = cpda::FileStore::random(p.N, pda.F(), 8, 1);
  const auto tr = cpda::deliver(p, pda, store, cpda::worst_case_demand(5, 5));
  const auto doc = nlohmann::json::parse(tr.dump());
  EXPECT_EQ(doc["messages"].size(), 15U);
  EXPECT_EQ(doc["messages"][0]["bytes"], 8);
  EXPECT_EQ(doc["messages"][0]["served"].size(), 2U);
  EXPECT_EQ(doc["totals"]["load_num"], 3);
  EXPECT_EQ(doc["totals"]["load_den"], 2);
  EXPECT_EQ(tr.dump(), cpda::deliver(p, pda, store, cpda::worst_case_demand(5, 5)).dump());
}

TEST(Decode, XorRoundTripAcrossSeeds) {
  const auto p = validate(11, 2, 3);
  const auto pda = cpda::build_scheme(p).pda;
  const auto idx = cpda::index_symbols(pda);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto store = cpda::FileStore::random(p.N, pda.F(), 16, seed);
    const auto caches = cpda::place(p, pda, store);
    const auto demand = cpda::random_demand(p.K, p.N, seed);
    const auto tr = cpda::deliver(p, idx, store, demand);
    for (int k = 1; k <= p.K; ++k) {
      ASSERT_EQ(cpda::decode(p, pda, idx, caches, tr, k, demand), store.file(demand[k - 1]));
    }
  }
}

// A star relabelled with an existing symbol makes that symbol's other users
// need a subpacket they cannot reach.
TEST(Decode, FailsOnCorruptedArray) {
  const auto p = validate(10, 3, 2);
  const auto good = cpda::build_scheme(p).pda;
  const auto bad = good.with_cell(1, 1, good(2, 1));
  const auto store = cpda::FileStore::random(p.N, bad.F(), 16, 2);
  const auto caches = cpda::place(p, bad, store);
  const auto demand = cpda::worst_case_demand(10, 10);
  const auto tr = cpda::deliver(p, bad, store, demand);
  const auto idx = cpda::index_symbols(bad);
  const int s = idx.at(1, 1);
  bool failed = false;
  for (const auto& [r, k] : idx.cells[s - 1]) {
    if (k == 1) continue;
    try {
      cpda::decode(p, bad, idx, caches, tr, k, demand);
    } catch (const cpda::DecodeError& e) {
      failed = true;
      EXPECT_EQ(e.row(), r);
      EXPECT_EQ(e.symbol(), s);
    }
  }
  EXPECT_TRUE(failed);
  EXPECT_FALSE(cpda::run_delivery(p, bad, idx, store, caches, demand).all_decoded());
}

TEST(Decode, FailsWhenACacheIsMissing) {
  const auto p = validate(5, 2, 1);
  const auto pda = cpda::build_scheme(p).pda;
  const auto store = cpda::FileStore::random(p.N, pda.F(), 8, 1);
  const auto full = cpda::place(p, pda, store);
  cpda::NodeCaches empty(p.K, p.N, pda.F(), 8);
  const auto demand = cpda::worst_case_demand(5, 5);
  const auto tr = cpda::deliver(p, pda, store, demand);
  EXPECT_NO_THROW(cpda::decode(p, pda, full, tr, 1, demand));
  try {
    cpda::decode(p, pda, empty, tr, 1, demand);
    FAIL();
  } catch (const cpda::DecodeError& e) {
    EXPECT_GT(e.row(), 0);
  }
  auto truncated = tr;
  truncated.messages.pop_back();
  bool failed = false;
  for (int k = 1; k <= 5 && !failed; ++k) {
    try {
      cpda::decode(p, pda, full, truncated, k, demand);
    } catch (const cpda::DecodeError& e) {
      failed = std::string(e.what()).find("no message") != std::string::npos;
    }
  }
  EXPECT_TRUE(failed);
}

TEST(Demand, Presets) {
  EXPECT_EQ(cpda::worst_case_demand(4, 10), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(cpda::equal_demand(3, 2), (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(cpda::random_demand(8, 3, 42), cpda::random_demand(8, 3, 42));
  for (int d : cpda::random_demand(50, 3, 7)) {
    EXPECT_GE(d, 1);
    EXPECT_LE(d, 3);
  }
}
