#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wamin/io.hpp"
#include "wamin/morphism.hpp"
#include "wamin/refine.hpp"

namespace wamin {

enum class Algo { Dsa, Pcsa, Fpcsa, Auto };

inline std::optional<Algo> algo_from_name(std::string_view s) {
    if (s == "dsa") return Algo::Dsa;
    if (s == "pcsa") return Algo::Pcsa;
    if (s == "fpcsa") return Algo::Fpcsa;
    if (s == "auto") return Algo::Auto;
    return std::nullopt;
}

inline std::string algo_name(Algo a) {
    switch (a) {
        case Algo::Dsa: return "dsa";
        case Algo::Pcsa: return "pcsa";
        case Algo::Fpcsa: return "fpcsa";
        default: return "auto";
    }
}

struct MinimiseOutcome {
    StatePartition partition;  // over the augmented state set
    MinimiseStats stats;
    Algo used = Algo::Auto;
};

// Runs the requested algorithm; `auto` takes the fast splitter strategy
// whenever it is sound and otherwise the plain one. An explicit fpcsa request
// on an unsuitable input propagates NotSimplifiableError.
inline MinimiseOutcome minimise_automaton(const AnyAutomaton& any, Algo algo,
                                          const MinimiseOptions& base = {}) {
    return std::visit(
        [&](const auto& aut) {
            auto aug = augment(aut);
            MinimiseOutcome out;
            MinimiseOptions opt = base;
            opt.stats = &out.stats;
            Algo chosen = algo;
            if (algo == Algo::Auto)
                chosen = simplifiable_signatures(aug) ? Algo::Fpcsa : Algo::Pcsa;
            switch (chosen) {
                case Algo::Dsa: out.partition = dsa_minimise(aug, opt); break;
                case Algo::Pcsa: out.partition = pcsa_minimise(aug, opt); break;
                default: out.partition = fpcsa_minimise(aug, opt); break;
            }
            out.used = chosen;
            return out;
        },
        any);
}

inline AnyAutomaton quotient_automaton(const AnyAutomaton& any, const StatePartition& p) {
    return std::visit([&](const auto& aut) { return AnyAutomaton(quotient(aut, p)); }, any);
}

inline bool congruence_of(const AnyAutomaton& any, const StatePartition& p) {
    return std::visit([&](const auto& aut) { return is_congruence(augment(aut), p); }, any);
}

inline bool simplifiable_of(const AnyAutomaton& any) {
    return std::visit([&](const auto& aut) { return simplifiable_signatures(augment(aut)); }, any);
}

inline std::pair<long, long> stats_of(const AnyAutomaton& any) {
    return std::visit([](const auto& aut) { return aut.stats(); }, any);
}

inline int true_state_count(const AnyAutomaton& any) {
    return std::visit([](const auto& aut) { return aut.states(); }, any);
}

// First word (shortest, then alphabet order) up to the given length whose
// coefficients differ, rendered as a string; nullopt when none. Throws
// std::invalid_argument when semiring or alphabet differ.
inline std::optional<std::string> first_difference_word(const AnyAutomaton& x,
                                                        const AnyAutomaton& y, int max_len) {
    if (x.index() != y.index()) throw std::invalid_argument("semiring mismatch");
    return std::visit(
        [&](const auto& a) -> std::optional<std::string> {
            using T = std::decay_t<decltype(a)>;
            const T& b = std::get<T>(y);
            auto w = first_coefficient_difference(a, b, max_len);
            if (!w) return std::nullopt;
            return a.word_name(*w);
        },
        x);
}

}  // namespace wamin
