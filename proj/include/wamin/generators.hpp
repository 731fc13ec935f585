#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wamin/automaton.hpp"
#include "wamin/semiring.hpp"

namespace wamin {

// k-th word of the substitution a -> ab, b -> a, built iteratively. Grows as
// the Fibonacci numbers: |word| for k = 14 is 987.
inline std::string fibonacci_word(int k) {
    if (k < 0 || k > 30) throw std::invalid_argument("fibonacci index out of range");
    std::string w = "a";
    for (int i = 0; i < k; ++i) {
        std::string next;
        next.reserve(w.size() * 2);
        for (char c : w) {
            if (c == 'a')
                next += "ab";
            else
                next += 'a';
        }
        w = std::move(next);
    }
    return w;
}

// Boolean automaton whose states form one cycle spelling the k-th Fibonacci
// word; state 0 is initial and every state is final. Deterministic, so the
// fast splitter strategy applies, and known to force Theta(n log n) work out
// of Hopcroft-style refinement.
inline Automaton<Boolean> fibonacci_automaton(int k) {
    if (k < 1) throw std::invalid_argument("fibonacci parameter must be positive");
    std::string w = fibonacci_word(k);
    int n = static_cast<int>(w.size());
    Automaton<Boolean> a(n, {"a", "b"});
    for (int j = 0; j < n; ++j) {
        int letter = w[j] == 'a' ? 0 : 1;
        a.add_transition(j, letter, true, (j + 1) % n);
    }
    a.add_initial(0, true);
    for (int j = 0; j < n; ++j) a.add_final(j, true);
    return a;
}

// Integer-weighted automaton with 2n states numbered here 0..2n-1 (the pair
// (2p, 2p+1) is stage p). Each stage feeds the next through crossing weights
// 1/2 versus 2/1, so the two states of a stage stay congruent while never
// carrying identical transitions. State 0 is initial; the last stage is
// final. Splits peel off one stage at a time, which keeps quadratic
// splitter queues busy.
inline Automaton<Integers> railroad_automaton(long n) {
    if (n < 1) throw std::invalid_argument("railroad parameter must be positive");
    if (n > (1L << 24)) throw std::invalid_argument("railroad parameter out of range");
    Automaton<Integers> a(static_cast<int>(2 * n), {"a"});
    for (long p = 0; p + 1 < n; ++p) {
        int top = static_cast<int>(2 * p), bottom = top + 1;
        int ntop = top + 2, nbottom = top + 3;
        a.add_transition(top, 0, 1, ntop);
        a.add_transition(top, 0, 2, nbottom);
        a.add_transition(bottom, 0, 2, ntop);
        a.add_transition(bottom, 0, 1, nbottom);
    }
    a.add_initial(0, 1);
    a.add_final(static_cast<int>(2 * n - 2), 1);
    a.add_final(static_cast<int>(2 * n - 1), 1);
    return a;
}

namespace detail {

// mt19937_64 output is pinned by the standard; the derived draws below avoid
// std distributions, whose sequences are not, so seeds reproduce everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t bound) { return eng_() % bound; }
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

template <Semiring S>
typename S::Value random_weight(Rng& rng);

template <>
inline Boolean::Value random_weight<Boolean>(Rng&) {
    return true;
}
template <>
inline Integers::Value random_weight<Integers>(Rng& rng) {
    // uniform on [-3,3] minus zero
    long v = static_cast<long>(rng.below(6)) - 3;
    return v >= 0 ? v + 1 : v;
}
template <>
inline MinPlus::Value random_weight<MinPlus>(Rng& rng) {
    return static_cast<long long>(rng.below(7)) - 3;
}

}  // namespace detail

// Reproducible random automaton: every (p,a,q) transition present with the
// given probability, states initial/final with probability 0.3 each, at
// least one of each forced.
template <Semiring S>
Automaton<S> random_automaton(int states, int alphabet_size, double density, std::uint64_t seed) {
    if (states < 1 || alphabet_size < 0 || density <= 0.0 || density > 1.0)
        throw std::invalid_argument("bad random automaton parameters");
    static const std::vector<std::string> names = {"a", "b", "c", "d", "e", "f", "g", "h"};
    if (alphabet_size > static_cast<int>(names.size()))
        throw std::invalid_argument("alphabet too large");
    detail::Rng rng(seed);
    Automaton<S> a(states,
                   std::vector<std::string>(names.begin(), names.begin() + alphabet_size));
    for (int p = 0; p < states; ++p)
        for (int l = 0; l < alphabet_size; ++l)
            for (int q = 0; q < states; ++q)
                if (rng.unit() < density) a.add_transition(p, l, detail::random_weight<S>(rng), q);
    for (int p = 0; p < states; ++p)
        if (rng.unit() < 0.3) a.add_initial(p, detail::random_weight<S>(rng));
    for (int p = 0; p < states; ++p)
        if (rng.unit() < 0.3) a.add_final(p, detail::random_weight<S>(rng));
    if (a.initial_weights().empty()) a.add_initial(0, S::one());
    if (a.final_weights().empty()) a.add_final(states - 1, S::one());
    return a;
}

}  // namespace wamin
