#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "wamin/generators.hpp"
#include "wamin/morphism.hpp"
#include "wamin/refine.hpp"

using namespace wamin;

namespace {

const StatePartition kMinimalExamplePartition = [] {
    StatePartition p;
    p.n = 5;
    p.classes = {{0}, {1, 2}, {3}, {4}};
    return p;
}();

StatePartition initial_partition(int n_true) {
    StatePartition p;
    p.n = n_true + 2;
    std::vector<int> q(n_true);
    for (int s = 0; s < n_true; ++s) q[s] = s;
    p.classes = {std::move(q), {n_true}, {n_true + 1}};
    p.canonicalize();
    return p;
}

}  // namespace

TEST_CASE("signatures of the worked example against the big starting class") {
    auto aug = augment(fixtures::z_example());
    std::vector<int> d2 = {0, 1, 2};
    int dollar = aug.marker();

    using Sig = Signature<Integers>;
    CHECK(signature(aug, 0, d2) == Sig{{0, -1}, {1, 1}});           // {a -> -1, b -> 1}
    CHECK(signature(aug, 1, d2) == Sig{{0, 2}, {1, 1}});            // {a -> 2, b -> 1}
    CHECK(signature(aug, 2, d2) == Sig{{0, 2}, {1, 1}});
    CHECK(signature(aug, aug.i_state(), d2) == Sig{{dollar, 3}});   // {$ -> 3}

    CHECK(signature(aug, 0, {}).empty());  // empty sum

    std::vector<int> d3 = {aug.t_state()};
    CHECK(signature(aug, 1, d3) == Sig{{dollar, 1}});
    CHECK(signature(aug, 2, d3) == Sig{{dollar, 1}});
}

TEST_CASE("signatures of the nondeterministic boolean example") {
    auto aug = augment(fixtures::nondet_bool_example());
    using Sig = Signature<Boolean>;
    CHECK(signature(aug, 0, {2, 3}) == Sig{{0, true}});
    CHECK(signature(aug, 1, {2, 3}) == Sig{{0, true}});
    CHECK(signature(aug, 0, {3}) == Sig{{0, true}});
    CHECK(signature(aug, 1, {3}) == Sig{{0, true}});
    CHECK(signature(aug, 0, {2}) == Sig{{0, true}});
    CHECK(signature(aug, 1, {2}).empty());  // the value 0: no entry at all
}

TEST_CASE("global signatures in the first round") {
    auto aug = augment(fixtures::z_example());
    auto p0 = initial_partition(3);  // class 0 = {p,q,r}, 1 = {i}, 2 = {t}
    auto sigs = global_signatures(aug, p0, 0);
    REQUIRE(sigs.size() == 3);

    using G = GlobalSignature<Integers>;
    std::map<int, G> by_state;
    for (auto& [s, g] : sigs) by_state[s] = g;
    int dollar = aug.marker();
    CHECK(by_state[0] == G{{{0, 0}, -1}, {{0, 1}, 1}});
    CHECK(by_state[1] == G{{{0, 0}, 2}, {{0, 1}, 1}, {{2, dollar}, 1}});
    CHECK(by_state[2] == G{{{0, 0}, 2}, {{0, 1}, 1}, {{2, dollar}, 1}});
}

TEST_CASE("global signatures in the second round agree for the merged pair") {
    auto aug = augment(fixtures::z_example());
    auto sigs = global_signatures(aug, kMinimalExamplePartition, 1);  // class {q,r}
    REQUIRE(sigs.size() == 2);
    CHECK(sigs[0].second == sigs[1].second);
    CHECK(sigs[0].second.size() == 4);
}

TEST_CASE("domain split minimises the worked example in two rounds") {
    auto aug = augment(fixtures::z_example());
    MinimiseStats st;
    MinimiseOptions opt;
    opt.stats = &st;
    CHECK(dsa_minimise(aug, opt) == kMinimalExamplePartition);
    CHECK(st.rounds == 2);
    CHECK(st.splits == 1);
}

TEST_CASE("predecessor class split follows the worked trace") {
    auto aug = augment(fixtures::z_example());
    MinimiseStats st;
    MinimiseOptions opt;
    opt.stats = &st;
    CHECK(pcsa_minimise(aug, opt) == kMinimalExamplePartition);
    // processes {p,q,r}, {t}, then the two subclasses; one split in total
    CHECK(st.dequeue_events == 4);
    CHECK(st.splits == 1);
    CHECK(st.states_dequeued == 3 + 1 + 1 + 2);
}

TEST_CASE("fast splitter strategy agrees on the worked example") {
    auto aug = augment(fixtures::z_example());
    CHECK(simplifiable_signatures(aug));
    CHECK(fpcsa_minimise(aug) == kMinimalExamplePartition);
}

TEST_CASE("one-state automaton without transitions") {
    Automaton<Integers> a(1, {"a"});
    auto aug = augment(a);
    StatePartition expected;
    expected.n = 3;
    expected.classes = {{0}, {1}, {2}};
    CHECK(dsa_minimise(aug) == expected);
    MinimiseStats st;
    MinimiseOptions opt;
    opt.stats = &st;
    // already minimal: the queue drains with zero splits
    CHECK(pcsa_minimise(aug, opt) == expected);
    CHECK(st.splits == 0);
}

TEST_CASE("empty automaton minimises to the two marker classes") {
    Automaton<Boolean> a(0, {});
    auto aug = augment(a);
    StatePartition expected;
    expected.n = 2;
    expected.classes = {{0}, {1}};
    CHECK(dsa_minimise(aug) == expected);
    CHECK(pcsa_minimise(aug) == expected);
    CHECK(brute_force_coarsest_congruence(aug) == expected);
}

TEST_CASE("empty-alphabet automata split by final weights alone") {
    Automaton<Integers> a(3, {});
    a.add_initial(0, 1);
    a.add_final(0, 2);
    a.add_final(1, 7);
    a.add_final(2, 7);
    auto aug = augment(a);
    StatePartition expected;
    expected.n = 5;
    expected.classes = {{0}, {1, 2}, {3}, {4}};
    CHECK(dsa_minimise(aug) == expected);
    CHECK(pcsa_minimise(aug) == expected);
    CHECK(fpcsa_minimise(aug) == expected);
    CHECK(brute_force_coarsest_congruence(aug) == expected);
}

TEST_CASE("a minimal deterministic automaton needs one split to separate finality") {
    // two states distinguished by finality, complete over one letter
    Automaton<Boolean> a(2, {"a"});
    a.add_transition(0, 0, true, 1);
    a.add_transition(1, 0, true, 0);
    a.add_initial(0, true);
    a.add_final(1, true);
    auto aug = augment(a);
    MinimiseStats st;
    MinimiseOptions opt;
    opt.stats = &st;
    auto p = pcsa_minimise(aug, opt);
    CHECK(p.classes.size() == 4);
    CHECK(st.splits == 1);  // only the letter/finality split of the initial class

    // re-minimising its quotient does nothing
    auto q = quotient(a, p);
    MinimiseStats st2;
    MinimiseOptions opt2;
    opt2.stats = &st2;
    auto p2 = pcsa_minimise(augment(q), opt2);
    CHECK(p2.classes.size() == static_cast<std::size_t>(q.states()) + 2);
}

TEST_CASE("simplifiable signatures: ring weights, determinism, and the counterexample") {
    CHECK(simplifiable_signatures(augment(fixtures::z_example())));
    CHECK_FALSE(simplifiable_signatures(augment(fixtures::nondet_bool_example())));

    // incomplete deterministic boolean automaton
    Automaton<Boolean> det(3, {"a", "b"});
    det.add_transition(0, 0, true, 1);
    det.add_transition(1, 1, true, 2);
    det.add_initial(0, true);
    det.add_final(2, true);
    CHECK(simplifiable_signatures(augment(det)));

    // two initial states make the augmented automaton nondeterministic at i
    Automaton<Boolean> twoinit(2, {"a"});
    twoinit.add_initial(0, true);
    twoinit.add_initial(1, true);
    twoinit.add_final(0, true);
    CHECK_FALSE(simplifiable_signatures(augment(twoinit)));
}

TEST_CASE("explicit fast-splitter request fails on non-simplifiable input") {
    auto aug = augment(fixtures::nondet_bool_example());
    CHECK_THROWS_AS(fpcsa_minimise(aug), NotSimplifiableError);
    // the fallback the error asks for works and matches the oracle: the two
    // non-final and the two final states merge pairwise
    StatePartition expected;
    expected.n = 6;
    expected.classes = {{0, 1}, {2, 3}, {4}, {5}};
    CHECK(pcsa_minimise(aug) == expected);
    CHECK(dsa_minimise(aug) == expected);
    CHECK(brute_force_coarsest_congruence(aug) == expected);
}

TEST_CASE("tropical automata minimise like any other semiring") {
    // states 1 and 2 act identically (weight-5 arc to 0, final weight 0);
    // state 0 reaches them with different weights, which signatures combine
    // by minimum
    Automaton<MinPlus> a(3, {"a"});
    a.add_transition(0, 0, 2, 1);
    a.add_transition(0, 0, 3, 2);
    a.add_transition(1, 0, 5, 0);
    a.add_transition(2, 0, 5, 0);
    a.add_initial(0, 0);
    a.add_final(1, 0);
    a.add_final(2, 0);
    auto aug = augment(a);
    CHECK(signature(aug, 0, {1, 2}) == Signature<MinPlus>{{0, 2}});

    StatePartition expected;
    expected.n = 5;
    expected.classes = {{0}, {1, 2}, {3}, {4}};
    CHECK(dsa_minimise(aug) == expected);
    CHECK(pcsa_minimise(aug) == expected);
    CHECK(brute_force_coarsest_congruence(aug) == expected);
    CHECK_THROWS_AS(fpcsa_minimise(aug), NotSimplifiableError);  // min is not cancellative

    auto q = quotient(a, expected);
    CHECK(q.stats() == std::pair<long, long>{2, 2});  // the parallel arcs take their minimum
    CHECK_FALSE(first_coefficient_difference(a, q, 6).has_value());
}

TEST_CASE("signature additivity over partitions of the domain") {
    std::mt19937_64 rng(23);
    for (int instance = 0; instance < 40; ++instance) {
        auto a = random_automaton<Integers>(2 + static_cast<int>(rng() % 5), 2, 0.5, rng());
        auto aug = augment(a);
        int n = aug.states();
        std::vector<int> dom;
        std::vector<int> block_of(n, 0);
        std::vector<std::vector<int>> blocks(2);
        for (int s = 0; s < n; ++s) {
            if (rng() % 2) continue;
            dom.push_back(s);
            int b = static_cast<int>(rng() % 2);
            blocks[b].push_back(s);
        }
        for (int p = 0; p < n; ++p) {
            std::map<int, Integers::Value> whole, sum;
            for (auto& [l, k] : signature(aug, p, dom)) whole[l] = k;
            for (const auto& block : blocks)
                for (auto& [l, k] : signature(aug, p, block)) {
                    auto [it, fresh] = sum.try_emplace(l, k);
                    if (!fresh) it->second = Integers::add(it->second, k);
                }
            std::erase_if(sum, [](const auto& e) { return is_zero<Integers>(e.second); });
            CHECK(whole == sum);
        }
    }
}

TEST_CASE("splitting a big class by a pair moves only the pair") {
    // once pair splitters take over, each split of a Theta(n) class must cost
    // O(2): the untouched remainder keeps its class without being scanned
    const long n = 128;
    auto aug = augment(railroad_automaton(n));
    MinimiseStats st;
    MinimiseOptions opt;
    opt.stats = &st;
    fpcsa_minimise(aug, opt);
    CHECK(st.splits > static_cast<std::uint64_t>(n - 4));         // one split per stage
    CHECK(st.moved_states <= static_cast<std::uint64_t>(5 * n));  // pairs, plus one bulk split

    // the plain splitter queue stays quadratic: big classes are re-dequeued,
    // and their predecessor blocks re-touched, once per stage
    pcsa_minimise(aug, opt);
    CHECK(st.states_dequeued > static_cast<std::uint64_t>(n) * n / 2);
}

TEST_CASE("fast splitter requeues only the pairs on the railroad") {
    const long n = 512;
    auto aug = augment(railroad_automaton(n));
    MinimiseStats st;
    MinimiseOptions opt;
    opt.stats = &st;
    fpcsa_minimise(aug, opt);
    CHECK(st.states_dequeued <= static_cast<std::uint64_t>(6 * n));
    for (int s = 0; s < aug.true_states(); ++s) CHECK(st.per_state_dequeues[s] <= 3);
}

TEST_CASE("per-state dequeues stay logarithmic under the fast strategy") {
    for (int k : {8, 10, 12}) {
        auto aut = fibonacci_automaton(k);
        auto aug = augment(aut);
        MinimiseStats st;
        MinimiseOptions opt;
        opt.stats = &st;
        fpcsa_minimise(aug, opt);
        std::uint32_t bound = 1;
        while ((1u << bound) < static_cast<std::uint32_t>(aug.true_states())) ++bound;
        ++bound;  // ceil(log2 n) + 1
        for (int s = 0; s < aug.true_states(); ++s) CHECK(st.per_state_dequeues[s] <= bound);
    }
}

TEST_CASE("work bounds: each transition is touched at most n times") {
    std::mt19937_64 rng(31);
    for (int instance = 0; instance < 30; ++instance) {
        auto a = random_automaton<Integers>(1 + static_cast<int>(rng() % 6), 2, 0.5, rng());
        auto aug = augment(a);
        std::uint64_t n = aug.true_states(), m = aug.transition_count();
        MinimiseStats st;
        MinimiseOptions opt;
        opt.stats = &st;
        dsa_minimise(aug, opt);
        CHECK(st.transitions_touched <= n * m + m);
        for (int s = 0; s < aug.states(); ++s) CHECK(st.per_state_dequeues[s] <= n + 1);
        pcsa_minimise(aug, opt);
        CHECK(st.transitions_touched <= n * m + m);
        for (int s = 0; s < aug.states(); ++s) CHECK(st.per_state_dequeues[s] <= n + 1);
    }
}

TEST_CASE("the three algorithms agree and return congruences") {
    std::mt19937_64 rng(47);
    for (int instance = 0; instance < 60; ++instance) {
        int n = 1 + static_cast<int>(rng() % 6);
        std::uint64_t seed = rng();
        bool boolean = rng() % 2;
        auto run = [&](const auto& aut) {
            auto aug = augment(aut);
            auto dsa = dsa_minimise(aug);
            auto pcsa = pcsa_minimise(aug);
            CHECK(dsa == pcsa);
            CHECK(is_congruence(aug, dsa));
            if (simplifiable_signatures(aug)) CHECK(fpcsa_minimise(aug) == dsa);
            // {i} and {t} always end up alone
            for (const auto& c : dsa.classes) {
                if (c.front() == aug.i_state() || c.front() == aug.t_state())
                    CHECK(c.size() == 1);
            }
        };
        if (boolean)
            run(random_automaton<Boolean>(n, 2, 0.4, seed));
        else
            run(random_automaton<Integers>(n, 2, 0.4, seed));
    }
}

TEST_CASE("differential stress beyond the oracle guard") {
    // bigger instances exercise splitter self-splits, queue invalidation and
    // remainder bookkeeping; the three algorithms must still coincide
    std::mt19937_64 rng(71);
    for (int instance = 0; instance < 300; ++instance) {
        int n = 2 + static_cast<int>(rng() % 11);
        int alpha = 1 + static_cast<int>(rng() % 3);
        double density = 0.1 + 0.2 * static_cast<double>(rng() % 4);
        std::uint64_t seed = rng();
        auto run = [&](const auto& aut) {
            auto aug = augment(aut);
            auto dsa = dsa_minimise(aug);
            auto pcsa = pcsa_minimise(aug);
            CHECK(dsa == pcsa);
            CHECK(is_congruence(aug, dsa));
            if (simplifiable_signatures(aug)) CHECK(fpcsa_minimise(aug) == dsa);
            auto quot = quotient(aut, dsa);
            auto again = pcsa_minimise(augment(quot));
            CHECK(again.classes.size() == static_cast<std::size_t>(quot.states()) + 2);
        };
        switch (instance % 3) {
            case 0: run(random_automaton<Boolean>(n, alpha, density, seed)); break;
            case 1: run(random_automaton<Integers>(n, alpha, density, seed)); break;
            default: run(random_automaton<MinPlus>(n, alpha, density, seed)); break;
        }
    }
}

TEST_CASE("every intermediate partition stays coarser than the coarsest congruence") {
    std::mt19937_64 rng(61);
    for (int instance = 0; instance < 20; ++instance) {
        auto a = random_automaton<Integers>(2 + static_cast<int>(rng() % 5), 2, 0.5, rng());
        auto aug = augment(a);
        auto coarsest = brute_force_coarsest_congruence(aug);
        MinimiseOptions opt;
        opt.iteration_hook = [&](const Partition& part) {
            CHECK(coarser_or_equal(part.snapshot(), coarsest));
        };
        dsa_minimise(aug, opt);
        pcsa_minimise(aug, opt);
        fpcsa_minimise(aug, opt);
    }
}
