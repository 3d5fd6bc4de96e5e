#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dsb/datalog.hpp"
#include "dsb/error.hpp"
#include "dsb/implsys.hpp"
#include "dsb/oracle.hpp"
#include "support/generators.hpp"

using namespace dsb;
using testkit::naive_closure;

namespace {

// a=0, b=1, c=2 over three literals (bottom = 3).
ImplicationalSystem chain() { return ImplicationalSystem(3, {{{0}, 1}, {{1}, 2}}); }

ImplicationalSystem triangle() { return ImplicationalSystem(3, {{{0, 1}, 2}, {{2}, 0}, {{2}, 1}}); }

// Occurring-slot counts per rule, read off the rule lists by hand.
const std::vector<std::size_t> kHorn3Slots{3, 4, 3, 3, 2, 1, 4, 5, 5, 5, 5, 6, 6, 5, 7, 7, /* completion */ 2, 3, 3, 4};
const std::vector<std::size_t> kTwoSatSlots{1, 2, 2, 3, 3, 3, 3, 2, 1, /* completion */ 2, 2, 2, 2};

std::size_t slot_count_groundings(const std::vector<std::size_t>& slots, std::size_t n) {
    std::size_t total = 0;
    for (auto k : slots) {
        total += static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), static_cast<double>(k))));
    }
    return total;
}

std::vector<Implication> all_implications(const ImplicationalSystem& sigma) {
    std::vector<Implication> out;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        out.push_back(sigma.implication(i));
    }
    return out;
}

} // namespace

TEST(GroundSigma, Horn3SingleVariableDropsTrivialSymmetry) {
    const auto sigma = ground_sigma(TemplateId::Horn3, 1);
    EXPECT_EQ(sigma.literal_count(), 3u);
    EXPECT_EQ(sigma.bottom(), 3u);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto body = sigma.body(i);
        EXPECT_EQ(std::count(body.begin(), body.end(), sigma.head(i)), 0);
    }
    // Rule (1) on one variable would be {and(0,0,0)} -> and(0,0,0).
    const auto imps = all_implications(sigma);
    EXPECT_EQ(std::count(imps.begin(), imps.end(), Implication{{2}, 2}), 0);
}

TEST(GroundSigma, TwoSatRule1Groundings) {
    const auto sigma = ground_sigma(TemplateId::TwoSat, 2);
    const auto imps = all_implications(sigma);
    const LiteralId imp00 = encode(TemplateId::TwoSat, 2, 1, {0, 0, 0});
    const LiteralId imp11 = encode(TemplateId::TwoSat, 2, 1, {1, 1, 0});
    EXPECT_EQ(std::count(imps.begin(), imps.end(), Implication{{}, imp00}), 1);
    EXPECT_EQ(std::count(imps.begin(), imps.end(), Implication{{}, imp11}), 1);
}

TEST(GroundSigma, BottomImpliesEveryLiteral) {
    const auto sigma = ground_sigma(TemplateId::TwoSat, 2);
    const auto imps = all_implications(sigma);
    for (LiteralId x = 0; x < sigma.literal_count(); ++x) {
        EXPECT_EQ(std::count(imps.begin(), imps.end(), Implication{{sigma.bottom()}, x}), 1);
    }
}

TEST(GroundSigma, TwoSatPublishedRuleBound) {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::size_t groundings = 0;
        for (const auto& r : builtin_rules(TemplateId::TwoSat).rules) {
            if (!r.is_stop()) {
                groundings += static_cast<std::size_t>(std::pow(n, r.occurring_slots().size()));
            }
        }
        EXPECT_LE(groundings, 5 * n * n * n + 2 * n * n);
    }
}

TEST(GroundSigma, RawCountMatchesSlotArity) {
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_EQ(ground_sigma(TemplateId::Horn3, n).raw_groundings(), slot_count_groundings(kHorn3Slots, n));
        EXPECT_EQ(ground_sigma(TemplateId::TwoSat, n).raw_groundings(), slot_count_groundings(kTwoSatSlots, n));
    }
}

TEST(GroundSigma, SizeGrowsWithVariables) {
    for (auto t : kAllTemplates) {
        std::size_t previous = 0;
        for (std::size_t n = 2; n <= 4; ++n) {
            const auto sigma = ground_sigma(t, n);
            EXPECT_GT(sigma.size(), previous);
            EXPECT_LE(sigma.size(), sigma.raw_groundings() + sigma.literal_count());
            previous = sigma.size();
        }
    }
}

TEST(Closure, Examples) {
    const auto sigma = chain();
    EXPECT_EQ(closure(sigma, LiteralSet{0}), (LiteralSet{0, 1, 2}));
    EXPECT_EQ(closure(sigma, LiteralSet{1, 2}), (LiteralSet{1, 2}));
    EXPECT_EQ(closure(sigma, LiteralSet{}), (LiteralSet{}));
}

TEST(Closure, BottomSaturates) {
    const ImplicationalSystem sigma(3, {{{0, 1}, 3}});
    EXPECT_EQ(closure(sigma, LiteralSet{0, 1}), (LiteralSet{0, 1, 2, 3}));
    EXPECT_EQ(closure(sigma, LiteralSet{3}), (LiteralSet{0, 1, 2, 3}));
}

TEST(Closure, CounterAlgorithmMatchesRescan) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t literals = 4 + trial % 12;
        auto imps = testkit::random_implications(rng, literals, 3 + trial % 25, 3);
        if (trial % 5 == 0) {
            imps.push_back(Implication{{static_cast<LiteralId>(rng() % literals)}, static_cast<LiteralId>(literals)});
        }
        const ImplicationalSystem sigma(literals, imps);
        const LiteralSet start = testkit::random_subset(rng, literals, 0.2);
        ASSERT_EQ(closure(sigma, start), naive_closure(imps, literals, start));
    }
}

TEST(Closure, ClosureOperatorLaws) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t literals = 6 + trial % 10;
        const ImplicationalSystem sigma(literals, testkit::random_implications(rng, literals, 20, 3));
        const LiteralSet a = testkit::random_subset(rng, literals, 0.2);
        LiteralSet b = a;
        for (auto id : testkit::random_subset(rng, literals, 0.2)) {
            b.push_back(id);
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());

        const auto ca = closure(sigma, a);
        EXPECT_TRUE(testkit::includes(ca, a));
        EXPECT_EQ(closure(sigma, ca), ca);
        EXPECT_TRUE(testkit::includes(closure(sigma, b), ca));
    }
}

TEST(Implies, Examples) {
    const ImplicationalSystem sigma(3, {{{0}, 1}});
    EXPECT_TRUE(implies(sigma, LiteralSet{0, 2}, LiteralSet{0, 2}));
    EXPECT_TRUE(implies(sigma, LiteralSet{0}, LiteralSet{1}));
    EXPECT_FALSE(implies(sigma, LiteralSet{0}, LiteralSet{1, 2}));
}

TEST(Implies, Transitive) {
    std::mt19937 rng(31);
    int chains = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t literals = 6;
        const ImplicationalSystem sigma(literals, testkit::random_implications(rng, literals, 12, 2));
        const auto a = testkit::random_subset(rng, literals, 0.4);
        const auto b = testkit::random_subset(rng, literals, 0.4);
        const auto c = testkit::random_subset(rng, literals, 0.4);
        if (implies(sigma, a, b) && implies(sigma, b, c)) {
            ++chains;
            EXPECT_TRUE(implies(sigma, a, c));
        }
    }
    EXPECT_GT(chains, 50);
}

TEST(MinimizeKey, Examples) {
    const ImplicationalSystem sigma(3, {{{0}, 1}});
    EXPECT_EQ(minimize_key(sigma, LiteralSet{0, 1}, LiteralSet{0, 1}), (LiteralSet{0}));
    EXPECT_EQ(minimize_key(sigma, LiteralSet{0}, LiteralSet{0, 1}), (LiteralSet{0}));
    EXPECT_THROW(minimize_key(sigma, LiteralSet{1}, LiteralSet{0}), InvalidArgument);
}

TEST(MinimizeKey, DescendingDropOrder) {
    // Both {0} and {1} generate {0,1}; dropping from the top keeps the lowest id.
    const ImplicationalSystem sigma(2, {{{0}, 1}, {{1}, 0}});
    EXPECT_EQ(minimize_key(sigma, LiteralSet{0, 1}, LiteralSet{0, 1}), (LiteralSet{0}));
}

TEST(MinimizeKey, ResultIsMinimal) {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t literals = 8;
        const ImplicationalSystem sigma(literals, testkit::random_implications(rng, literals, 14, 2));
        const auto target = testkit::random_subset(rng, literals, 0.3);
        LiteralSet everything(literals);
        std::iota(everything.begin(), everything.end(), 0);
        const auto key = minimize_key(sigma, everything, target);
        EXPECT_TRUE(implies(sigma, key, target));
        for (std::size_t i = 0; i < key.size(); ++i) {
            LiteralSet smaller = key;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
            EXPECT_FALSE(implies(sigma, smaller, target));
        }
    }
}

TEST(EnumerateMinimalKeys, Triangle) {
    const auto keys = enumerate_minimal_keys(triangle(), LiteralSet{0, 1, 2}, LiteralSet{0, 1, 2}, 100);
    EXPECT_EQ(keys.keys, (std::vector<LiteralSet>{{2}, {0, 1}}));
    EXPECT_FALSE(keys.truncated);
}

TEST(EnumerateMinimalKeys, EmptyTarget) {
    const auto keys = enumerate_minimal_keys(triangle(), LiteralSet{}, LiteralSet{0, 1, 2}, 100);
    EXPECT_EQ(keys.keys, (std::vector<LiteralSet>{{}}));
}

TEST(EnumerateMinimalKeys, Errors) {
    EXPECT_THROW(enumerate_minimal_keys(triangle(), LiteralSet{0}, LiteralSet{0, 1, 2}, 0), InvalidArgument);
    EXPECT_THROW(enumerate_minimal_keys(triangle(), LiteralSet{2}, LiteralSet{0}, 10), NoKey);
    EXPECT_THROW(enumerate_minimal_keys(triangle(), LiteralSet{2}, LiteralSet{0, 3}, 10), InvalidArgument);
}

TEST(EnumerateMinimalKeys, Truncation) {
    // Four interchangeable literals: each alone generates the rest.
    std::vector<Implication> imps;
    for (LiteralId a = 0; a < 4; ++a) {
        for (LiteralId b = 0; b < 4; ++b) {
            if (a != b) {
                imps.push_back({{a}, b});
            }
        }
    }
    const ImplicationalSystem sigma(4, imps);
    const LiteralSet all{0, 1, 2, 3};
    const auto full = enumerate_minimal_keys(sigma, all, all, 10);
    EXPECT_EQ(full.keys.size(), 4u);
    EXPECT_FALSE(full.truncated);
    const auto cut = enumerate_minimal_keys(sigma, all, all, 2);
    EXPECT_EQ(cut.keys.size(), 2u);
    EXPECT_TRUE(cut.truncated);
    const auto exact = enumerate_minimal_keys(sigma, all, all, 4);
    EXPECT_FALSE(exact.truncated);
}

TEST(EnumerateMinimalKeys, TwoSatExample) {
    Instance inst(TemplateId::TwoSat, 2);
    inst.add(0, {0, 1, 0});
    inst.add(2, {0, 1, 0});
    const auto sigma = ground_sigma(TemplateId::TwoSat, 2);
    const auto target = closure(sigma, constraints_of(inst));
    ASSERT_EQ(target.size(), 6u);
    const auto keys = enumerate_minimal_keys(sigma, target, target, 100);
    const auto brute = testkit::brute_force_keys(all_implications(sigma), sigma.literal_count(), target, target);
    EXPECT_EQ(keys.keys, brute);
    ASSERT_EQ(keys.keys.size(), 4u);
    const LiteralId or01 = 1, or10 = 2, nand01 = 9, nand10 = 10;
    EXPECT_EQ(keys.keys, (std::vector<LiteralSet>{{or01, nand01}, {or01, nand10}, {or10, nand01}, {or10, nand10}}));
}

TEST(EnumerateMinimalKeys, MatchesSubsetSweep) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t literals = 3 + trial % 10;
        auto imps = testkit::random_implications(rng, literals, 1 + trial % 25, 3);
        if (trial % 4 == 0) {
            imps.push_back(Implication{{static_cast<LiteralId>(rng() % literals),
                                        static_cast<LiteralId>(rng() % literals)},
                                       static_cast<LiteralId>(literals)});
        }
        const ImplicationalSystem sigma(literals, imps);
        // allowed must be closed and contain the target.
        LiteralSet allowed = naive_closure(imps, literals, testkit::random_subset(rng, literals, 0.6));
        if (!allowed.empty() && allowed.back() == literals) {
            allowed.pop_back();
        }
        LiteralSet target;
        for (auto id : allowed) {
            if (rng() % 2 == 0) {
                target.push_back(id);
            }
        }
        const auto expected = testkit::brute_force_keys(imps, literals, target, allowed);
        const auto got = enumerate_minimal_keys(sigma, target, allowed, 100000);
        ASSERT_EQ(got.keys, expected) << "trial " << trial;
    }
}

TEST(DsBasis, GroundedClosureEqualsDensification) {
    std::mt19937 rng(43);
    for (auto t : kAllTemplates) {
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto sigma = ground_sigma(t, n);
            std::vector<Instance> corpus;
            if (n == 1) {
                LiteralSet all(universe_size(t, n));
                std::iota(all.begin(), all.end(), 0);
                corpus = testkit::all_instances_over(all, Instance(t, n));
            } else {
                for (int i = 0; i < (n <= 3 ? 500 : 150); ++i) {
                    corpus.push_back(testkit::random_instance(rng, t, n, n + 4));
                }
            }
            for (const auto& inst : corpus) {
                const auto closed = closure(sigma, constraints_of(inst));
                const auto reference = oracle_densify(inst);
                const bool bottom = closed.back() == sigma.bottom();
                ASSERT_EQ(bottom, reference.status == Status::Unsat);
                if (!bottom) {
                    EXPECT_EQ(closed, reference.dense_set);
                }
            }
        }
    }
}
