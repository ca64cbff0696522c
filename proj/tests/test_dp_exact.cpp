#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "kep/dp_exact.hpp"
#include "kep/oracle.hpp"
#include "random_instances.hpp"

using namespace kep;
using kep::testing::sample9;
using kep::testing::id;
using kep::testing::set_of;

namespace {

std::set<MaskSet> as_set(const std::vector<MaskSet>& v) { return {v.begin(), v.end()}; }

std::set<MaskSet> sets(std::initializer_list<const char*> letters) {
    std::set<MaskSet> out;
    for (const char* s : letters) out.insert(set_of<MaskSet>(s));
    return out;
}

} // namespace

TEST(ClampLimits, Examples) {
    auto inst = sample9(4, 10, 2);
    auto c = clamp_limits(inst);
    EXPECT_EQ(c.l_p, 3);
    EXPECT_EQ(c.l_c, 2);
    EXPECT_EQ(c.t, 4);
    c = clamp_limits(sample9(4, 2, 2));
    EXPECT_EQ(c.l_p, 2);
    EXPECT_EQ(c.l_c, 2);
    c = clamp_limits(sample9(3, 5, 9));
    EXPECT_EQ(c.l_p, 2);
    EXPECT_EQ(c.l_c, 2);
    EXPECT_EQ(c.graph.edge_count(), inst.graph.edge_count());
}

TEST(StateTable, RejectsUnclampedLimits) {
    EXPECT_THROW(
        {
            try {
                build_state_table(sample9(3, 3, 2));
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::LimitsNotClamped);
                throw;
            }
        },
        Error);
}

TEST(StateTable, SampleIllustrations) {
    const auto inst = sample9(7);
    const auto table = build_state_table(inst);
    EXPECT_EQ(as_set(table.family(1, 1, id('a'), id('b'))), sets({"ab"}));
    EXPECT_EQ(as_set(table.family(2, 2, id('a'), id('c'))), sets({"abc"}));
    EXPECT_EQ(as_set(table.family(3, 1, id('f'), id('g'))), sets({"abcfg", "defg"}));
    EXPECT_EQ(as_set(table.family(5, 1, id('f'), id('g'))), sets({"abcdefg"}));

    const auto dd = as_set(table.family(4, 2, id('d'), id('d')));
    const auto de = as_set(table.family(3, 1, id('d'), id('e')));
    const auto ed = as_set(table.family(3, 1, id('e'), id('d')));
    EXPECT_TRUE(dd.count(set_of<MaskSet>("abcde")));
    EXPECT_TRUE(de.count(set_of<MaskSet>("abcde")));
    EXPECT_TRUE(ed.count(set_of<MaskSet>("abcde")));
    // The other length-2 sub-packings also complete these states.
    EXPECT_EQ(dd, sets({"abcde", "abdefg", "defgh"}));
    EXPECT_EQ(de, sets({"abcde", "abdefg", "defgh"}));
    EXPECT_EQ(ed, de);
}

TEST(StateTable, SampleMatchesOracleEverywhere) {
    const auto inst = sample9(7);
    const auto table = build_state_table(inst);
    const oracle::StateFamilyOracle oracle(inst, 14);
    for (int k = 1; k <= 9; ++k) {
        for (int l = 1; l <= 3; ++l) {
            for (Vertex v = 0; v < 9; ++v) {
                for (Vertex u = 0; u < 9; ++u) {
                    EXPECT_EQ(as_set(table.family(k, l, v, u)), oracle.family(k, l, v, u))
                        << "k=" << k << " l=" << l << " v=" << v << " u=" << u;
                }
            }
        }
    }
}

TEST(StateTable, DumpFormat) {
    const auto table = build_state_table(sample9(7));
    std::ostringstream os;
    table.dump(os);
    EXPECT_NE(os.str().find("1 1 a b 1 {a,b}\n"), std::string::npos);
    EXPECT_NE(os.str().find("5 1 f g 1 {a,b,c,d,e,f,g}\n"), std::string::npos);
}

TEST(Decide, Sample) {
    EXPECT_TRUE(decide(sample9(7, 3, 3)));
    EXPECT_FALSE(decide(sample9(8, 3, 3)));
    EXPECT_TRUE(decide(sample9(0, 3, 3)));
}

TEST(Reconstruct, SampleLengthSeven) {
    const auto inst = sample9(7);
    const auto table = build_state_table(inst);
    const auto key = table.winning_key();
    ASSERT_TRUE(key.has_value());
    const auto packing = reconstruct(table, *key);
    EXPECT_TRUE(is_feasible_packing(inst, packing));
    EXPECT_EQ(packing_total_length(packing), key->k);
    EXPECT_GE(key->k, 7);
}

TEST(Reconstruct, SingleEdge) {
    const auto inst = sample9(1, 0, 0).with_limits(0, 0);
    // With both limits at zero nothing is feasible.
    EXPECT_FALSE(decide(inst));
    const auto one = sample9(2).with_target(2).with_limits(1, 1);
    const auto table = build_state_table(one);
    const auto packing = reconstruct(table, StateKey{1, 1, id('a'), id('b')});
    ASSERT_EQ(packing.segments().size(), 1U);
    EXPECT_EQ(packing.segments()[0].vertices(), (std::vector<Vertex>{id('a'), id('b')}));
}

TEST(Reconstruct, ClosedTwoCycleState) {
    const auto inst = sample9(4, 3, 3).with_limits(3, 3).with_target(4);
    const auto table = build_state_table(inst);
    const auto packing = reconstruct(table, StateKey{4, 2, id('d'), id('d')});
    EXPECT_TRUE(is_feasible_packing(inst, packing));
    EXPECT_EQ(packing_total_length(packing), 4);
}

TEST(Solve, SamplePipeline) {
    const auto yes = solve_exact(sample9(7));
    EXPECT_TRUE(yes.decision);
    ASSERT_TRUE(yes.witness.has_value());
    EXPECT_EQ(packing_total_length(*yes.witness), 7);
    EXPECT_FALSE(solve_exact(sample9(8)).decision);
}

TEST(StateTable, RandomInstancesMatchOracle) {
    kep::testing::RandomSuite suite;
    suite.max_t = 4;
    suite.clamped = true;
    suite.base_seed = 11;
    for (int i = 0; i < 300; ++i) {
        const auto inst = suite.instance(i);
        const auto table = build_state_table(inst);
        const oracle::StateFamilyOracle oracle(inst, 2 * inst.t);
        for (int k = 1; k <= 2 * inst.t; ++k) {
            for (int l = 1; l <= k; ++l) {
                for (Vertex v = 0; v < inst.n(); ++v) {
                    for (Vertex u = 0; u < inst.n(); ++u) {
                        const auto got = as_set(table.family(k, l, v, u));
                        ASSERT_EQ(got, oracle.family(k, l, v, u)) << "instance " << i << " k=" << k << " l=" << l;
                        for (const auto& s : got) {
                            ASSERT_GE(s.size(), static_cast<std::size_t>(k));
                            ASSERT_LE(s.size(), static_cast<std::size_t>(2 * k));
                            ASSERT_TRUE(s.contains(v) && s.contains(u));
                        }
                    }
                }
            }
        }
        EXPECT_EQ(decide(inst), oracle::solve_exhaustive(inst).decision) << "instance " << i;
    }
}
