#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace spreadlab;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<long long>> c) { return Permutation::from_cycles(n, c); }

Permutation random_perm(oracle::Sampler& s, std::size_t n) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(img[i - 1], img[s.below(static_cast<std::uint32_t>(i))]);
    return Permutation(img);
}

}  // namespace

TEST(Compose, IdentityIsNeutral) {
    Permutation g = cyc(5, {{1, 3, 5}, {2, 4}});
    EXPECT_EQ(compose(Permutation::identity(5), g), g);
    EXPECT_EQ(compose(g, Permutation::identity(5)), g);
}

TEST(Compose, SquareOfThreeCycleIsInverse) {
    Permutation a = Permutation(std::vector<Point>{1, 2, 0});
    EXPECT_EQ(compose(a, a), Permutation(std::vector<Point>{2, 0, 1}));
    EXPECT_EQ(compose(a, a), inverse(a));
}

TEST(Compose, AgreesWithPointLoopOn11Points) {
    oracle::Sampler s(11);
    for (int k = 0; k < 500; ++k) {
        Permutation a = random_perm(s, 11), b = random_perm(s, 11);
        EXPECT_EQ(oracle::images(compose(a, b)), oracle::compose_points(oracle::images(a), oracle::images(b)));
    }
}

TEST(Compose, DegreeMismatchThrows) {
    EXPECT_THROW(compose(Permutation::identity(3), Permutation::identity(4)), DegreeMismatch);
}

TEST(Permutation, RejectsNonBijection) {
    EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), Error);
    EXPECT_THROW(Permutation::from_cycles(3, {{1, 4}}), Error);
    EXPECT_THROW(Permutation::from_cycles(3, {{1, 2}, {2, 3}}), Error);
}

TEST(Permutation, CycleNotationIsOneBased) {
    Permutation p = cyc(5, {{1, 2, 3}});
    EXPECT_EQ(p(0), 1u);
    EXPECT_EQ(p.to_string(), "(1 2 3)");
    EXPECT_EQ(Permutation::identity(4).to_string(), "()");
}

TEST(ElementOrder, Basics) {
    EXPECT_EQ(element_order(Permutation::identity(5)), 1u);
    EXPECT_EQ(element_order(cyc(5, {{1, 2}, {3, 4, 5}})), 6u);
}

TEST(ElementOrder, A5OrdersMatchRepeatedMultiplication) {
    auto spec = oracle::spec("a5");
    GroupIndex idx = enumerate_elements(build_chain(spec.generators));
    for (const auto& g : idx.elements()) {
        auto o = element_order(g);
        EXPECT_TRUE(o == 1 || o == 2 || o == 3 || o == 5);
        EXPECT_EQ(o, oracle::order_by_powers(g));
    }
}

TEST(Inverse, Properties) {
    oracle::Sampler s(5);
    for (int k = 0; k < 200; ++k) {
        Permutation a = random_perm(s, 9);
        EXPECT_EQ(compose(a, inverse(a)), Permutation::identity(9));
        EXPECT_EQ(element_order(inverse(a)), element_order(a));
    }
}

TEST(BuildChain, A5FromTwoCycles) {
    auto c = build_chain({Permutation(std::vector<Point>{1, 2, 3, 4, 0}), Permutation(std::vector<Point>{1, 2, 0, 3, 4})});
    EXPECT_EQ(c.order(), 60);
    EXPECT_EQ(oracle::closure({Permutation(std::vector<Point>{1, 2, 3, 4, 0}), Permutation(std::vector<Point>{1, 2, 0, 3, 4})}, 5).size(), 60u);
}

TEST(BuildChain, IdentityGenerator) { EXPECT_EQ(build_chain({Permutation::identity(6)}).order(), 1); }

TEST(BuildChain, M11MatchesClosureAndDeclaredOrder) {
    auto spec = oracle::spec("m11");
    auto c = build_chain(spec.generators);
    EXPECT_EQ(c.order(), 7920);
    EXPECT_EQ(c.order(), spec.order);
    EXPECT_EQ(oracle::closure(spec.generators, spec.degree).size(), 7920u);
}

TEST(BuildChain, OrderMatchesClosureOnFixtureCorpus) {
    for (const char* stem : {"a5", "a6", "l2_8", "l2_11", "l2_13", "l2_16", "l2_19", "m11"}) {
        auto spec = oracle::spec(stem);
        if (spec.order > 5000) continue;
        EXPECT_EQ(build_chain(spec.generators).order(), oracle::closure(spec.generators, spec.degree).size()) << stem;
        for (const auto& m : spec.maximals)
            EXPECT_EQ(build_chain(m.generators).order(), oracle::closure(m.generators, spec.degree).size())
                << stem << " " << m.name;
    }
}

TEST(BuildChain, RandomSubgroupsOfS7MatchClosure) {
    oracle::Sampler s(7);
    for (int k = 0; k < 40; ++k) {
        std::vector<Permutation> gens{random_perm(s, 7)};
        if (k % 2) gens.push_back(random_perm(s, 7));
        EXPECT_EQ(build_chain(gens).order(), oracle::closure(gens, 7).size());
    }
}

TEST(Contains, Basics) {
    auto spec = oracle::spec("a5");
    auto c = build_chain(spec.generators);
    EXPECT_TRUE(contains(c, Permutation::identity(5)));
    EXPECT_FALSE(contains(c, cyc(5, {{1, 2}})));
    EXPECT_THROW(contains(c, Permutation::identity(6)), DegreeMismatch);
}

TEST(Contains, S4VersusCyclicFour) {
    auto c = build_chain({cyc(4, {{1, 2, 3, 4}})});
    auto sub = oracle::closure({cyc(4, {{1, 2, 3, 4}})}, 4);
    auto s4 = oracle::closure({cyc(4, {{1, 2, 3, 4}}), cyc(4, {{1, 2}})}, 4);
    ASSERT_EQ(s4.size(), 24u);
    for (const auto& img : s4) EXPECT_EQ(contains(c, Permutation(img)), sub.count(img) == 1);
}

TEST(Enumerate, IndexLaws) {
    for (const char* stem : {"a5", "m11"}) {
        auto spec = oracle::spec(stem);
        auto c = build_chain(spec.generators);
        GroupIndex idx = enumerate_elements(c);
        EXPECT_EQ(BigInt(idx.order()), c.order());
        EXPECT_EQ(idx.element(0), Permutation::identity(spec.degree));
        auto cl = oracle::closure(spec.generators, spec.degree);
        EXPECT_EQ(cl.size(), idx.order());
        for (Index i = 0; i < idx.order(); ++i) {
            EXPECT_EQ(idx.index_of(idx.element(i)), i);
            EXPECT_TRUE(cl.count(oracle::images(idx.element(i))));
        }
    }
}

TEST(Enumerate, CapExceeded) {
    auto c = build_chain(oracle::spec("a5").generators);
    EXPECT_THROW(enumerate_elements(c, 10), OrderExceedsCap);
}

TEST(ConjugacyClasses, A5AndM11MatchBruteForceOrbits) {
    for (const char* stem : {"a5", "m11"}) {
        auto spec = oracle::spec(stem);
        GroupIndex idx = enumerate_elements(build_chain(spec.generators));
        ClassPartition cp = conjugacy_classes(idx, spec.generators);
        auto brute = oracle::brute_classes(idx);
        ASSERT_EQ(cp.classes.size(), brute.size()) << stem;
        std::size_t total = 0;
        for (const auto& orbit : brute) {
            const auto k = cp.class_of[orbit.front()];
            EXPECT_EQ(cp.classes[k].size, orbit.size());
            for (auto x : orbit) EXPECT_EQ(cp.class_of[x], k);
            total += orbit.size();
        }
        EXPECT_EQ(total, idx.order());
    }
}

TEST(ConjugacyClasses, A5Sizes) {
    auto spec = oracle::spec("a5");
    GroupIndex idx = enumerate_elements(build_chain(spec.generators));
    ClassPartition cp = conjugacy_classes(idx, spec.generators);
    std::multiset<std::size_t> sizes;
    for (const auto& c : cp.classes) sizes.insert(c.size);
    EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 15, 20, 12, 12}));
    EXPECT_EQ(cp.classes[cp.find("2A")].size, 15u);
}

TEST(ConjugacyClasses, M11HasTenClassesClosedUnderGenerators) {
    auto spec = oracle::spec("m11");
    GroupIndex idx = enumerate_elements(build_chain(spec.generators));
    ClassPartition cp = conjugacy_classes(idx, spec.generators);
    EXPECT_EQ(cp.classes.size(), 10u);
    for (const auto& g : spec.generators) {
        auto t = idx.conjugation_table(g);
        for (Index x = 0; x < idx.order(); ++x) EXPECT_EQ(cp.class_of[t[x]], cp.class_of[x]);
    }
    for (const auto& c : cp.classes) {
        EXPECT_EQ(7920u % c.size, 0u);
        EXPECT_EQ(idx.order_of(c.rep), c.element_order);
    }
}

TEST(ConjugacyClasses, TrivialGroup) {
    auto gens = std::vector<Permutation>{Permutation::identity(3)};
    GroupIndex idx = enumerate_elements(build_chain(gens));
    ClassPartition cp = conjugacy_classes(idx, gens);
    ASSERT_EQ(cp.classes.size(), 1u);
    EXPECT_EQ(cp.classes[0].size, 1u);
}

TEST(TwoGenerates, Trivial) {
    auto spec = oracle::spec("a5");
    auto c = build_chain(spec.generators);
    Permutation x = cyc(5, {{1, 2, 3}});
    EXPECT_FALSE(two_generates(x, x, c));
    const GroupIndex idx = enumerate_elements(c);
    for (const auto& y : idx.elements()) EXPECT_FALSE(two_generates(Permutation::identity(5), y, c));
}

TEST(TwoGenerates, SymmetricAndConjugationInvariantOnA5) {
    auto spec = oracle::spec("a5");
    auto c = build_chain(spec.generators);
    GroupIndex idx = enumerate_elements(c);
    for (Index x = 1; x < idx.order(); ++x)
        for (Index y = 1; y < idx.order(); ++y) {
            bool g = two_generates(idx, x, y, c);
            EXPECT_EQ(g, two_generates(idx, y, x, c));
            for (const auto& h : spec.generators)
                EXPECT_EQ(g, two_generates(conjugate(idx.element(x), h), conjugate(idx.element(y), h), c));
            EXPECT_EQ(g, oracle::closure({idx.element(x), idx.element(y)}, 5).size() == 60);
        }
}
