#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "wamin/semiring.hpp"

namespace wamin {

// Letters are dense ids into the declared alphabet; words are letter
// sequences. The marker used by the augmented form is not part of any user
// alphabet and always gets the id `alphabet_size`.
using Word = std::vector<int>;

inline constexpr std::string_view kMarkerName = "$";

struct AutomatonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A weighted automaton over a free monoid: states 0..n-1, one weight per
// (source, letter, target) triple, plus initial and final weight vectors.
// Zero weights are never stored; adding transitions sums weights and erases
// entries that cancel to zero.
template <Semiring S>
class Automaton {
public:
    using SemiringType = S;
    using K = typename S::Value;
    using Triple = std::tuple<int, int, int>;  // (p, letter, q)

    Automaton() = default;
    Automaton(int states, std::vector<std::string> letters)
        : states_(states), letters_(std::move(letters)) {
        if (states < 0) throw AutomatonError("negative state count");
        for (const auto& l : letters_) {
            if (l == kMarkerName) throw AutomatonError("the marker letter is reserved");
            if (l.size() != 1) throw AutomatonError("letters must be single characters");
        }
        for (std::size_t i = 0; i < letters_.size(); ++i)
            for (std::size_t j = i + 1; j < letters_.size(); ++j)
                if (letters_[i] == letters_[j]) throw AutomatonError("duplicate letter");
    }

    int states() const { return states_; }
    int alphabet_size() const { return static_cast<int>(letters_.size()); }
    const std::vector<std::string>& letters() const { return letters_; }
    const std::string& letter_name(int a) const { return letters_.at(a); }

    int letter_id(std::string_view name) const {
        for (std::size_t i = 0; i < letters_.size(); ++i)
            if (letters_[i] == name) return static_cast<int>(i);
        return -1;
    }

    Word word(std::string_view text) const {
        Word w;
        w.reserve(text.size());
        for (char c : text) {
            int a = letter_id(std::string_view(&c, 1));
            if (a < 0) throw AutomatonError("letter not in alphabet: " + std::string(1, c));
            w.push_back(a);
        }
        return w;
    }

    std::string word_name(std::span<const int> w) const {
        std::string s;
        for (int a : w) s += letter_name(a);
        return s;
    }

    // E(p,a,q) += k, dropping the entry if the sum is zero.
    void add_transition(int p, int a, const K& k, int q) {
        check_state(p);
        check_state(q);
        if (a < 0 || a >= alphabet_size()) throw AutomatonError("unknown letter id");
        accumulate(transitions_, Triple{p, a, q}, k);
    }

    void add_initial(int p, const K& k) {
        check_state(p);
        accumulate(initial_, p, k);
    }

    void add_final(int p, const K& k) {
        check_state(p);
        accumulate(final_, p, k);
    }

    const std::map<Triple, K>& transitions() const { return transitions_; }
    const std::map<int, K>& initial_weights() const { return initial_; }
    const std::map<int, K>& final_weights() const { return final_; }

    K weight(int p, int a, int q) const {
        auto it = transitions_.find(Triple{p, a, q});
        return it == transitions_.end() ? S::zero() : it->second;
    }

    // (state count, transition count)
    std::pair<long, long> stats() const {
        return {states_, static_cast<long>(transitions_.size())};
    }

    // Weight of the word in the realised series, by sparse vector-matrix
    // products. O(m * |w|); intended as an oracle, not a hot path.
    K coefficient(std::span<const int> w) const {
        std::vector<K> v(states_, S::zero());
        for (const auto& [p, k] : initial_) v[p] = k;
        return run(std::move(v), w);
    }

    // Weight of the word in the future of state p (p as the only initial
    // state, with weight one).
    K future_coefficient(int p, std::span<const int> w) const {
        check_state(p);
        std::vector<K> v(states_, S::zero());
        v[p] = S::one();
        return run(std::move(v), w);
    }

private:
    template <class KeyT>
    static void accumulate(std::map<KeyT, K>& table, const KeyT& key, const K& k) {
        if (is_zero<S>(k)) return;
        auto it = table.find(key);
        if (it == table.end()) {
            table.emplace(key, k);
            return;
        }
        it->second = S::add(it->second, k);
        if (is_zero<S>(it->second)) table.erase(it);
    }

    void check_state(int p) const {
        if (p < 0 || p >= states_) throw AutomatonError("unknown state id");
    }

    K run(std::vector<K> v, std::span<const int> w) const {
        for (int a : w) {
            if (a < 0 || a >= alphabet_size()) throw AutomatonError("unknown letter id");
            std::vector<K> next(states_, S::zero());
            for (const auto& [triple, k] : transitions_) {
                const auto& [p, letter, q] = triple;
                if (letter != a || is_zero<S>(v[p])) continue;
                next[q] = S::add(next[q], S::mul(v[p], k));
            }
            v = std::move(next);
        }
        K out = S::zero();
        for (const auto& [p, k] : final_) out = S::add(out, S::mul(v[p], k));
        return out;
    }

    int states_ = 0;
    std::vector<std::string> letters_;
    std::map<Triple, K> transitions_;
    std::map<int, K> initial_;
    std::map<int, K> final_;
};

// Augmented (normalised) form: two fresh states i and t, and the initial and
// final weights turned into marker-labelled transitions i->p and q->t. All
// the refinement algorithms run on this form, with adjacency stored twice:
// outgoing arcs for domain splitting, incoming arcs for predecessor-class
// splitting. No arc enters i and no arc leaves t.
template <Semiring S>
class Augmented {
public:
    using SemiringType = S;
    using K = typename S::Value;
    struct Arc {
        int peer;  // target in `out`, source in `in`
        int letter;
        K weight;
    };

    explicit Augmented(const Automaton<S>& base)
        : n_true_(base.states()),
          alphabet_size_(base.alphabet_size()),
          letters_(base.letters()) {
        letters_.emplace_back(kMarkerName);
        out_.resize(n_true_ + 2);
        in_.resize(n_true_ + 2);
        for (const auto& [triple, k] : base.transitions()) {
            const auto& [p, a, q] = triple;
            out_[p].push_back({q, a, k});
            in_[q].push_back({p, a, k});
            ++m_;
        }
        for (const auto& [p, k] : base.initial_weights()) {
            out_[i_state()].push_back({p, marker(), k});
            in_[p].push_back({i_state(), marker(), k});
            ++m_;
        }
        for (const auto& [q, k] : base.final_weights()) {
            out_[q].push_back({t_state(), marker(), k});
            in_[t_state()].push_back({q, marker(), k});
            ++m_;
        }
        auto by_letter_peer = [](const Arc& x, const Arc& y) {
            return std::tie(x.letter, x.peer) < std::tie(y.letter, y.peer);
        };
        for (auto& arcs : out_) std::sort(arcs.begin(), arcs.end(), by_letter_peer);
        for (auto& arcs : in_) std::sort(arcs.begin(), arcs.end(), by_letter_peer);
    }

    int true_states() const { return n_true_; }
    int states() const { return n_true_ + 2; }
    int i_state() const { return n_true_; }
    int t_state() const { return n_true_ + 1; }
    int marker() const { return alphabet_size_; }
    int alphabet_size() const { return alphabet_size_; }  // without the marker
    long transition_count() const { return m_; }
    std::pair<long, long> stats() const { return {states(), m_}; }
    const std::string& letter_name(int a) const { return letters_.at(a); }

    const std::vector<Arc>& out(int p) const { return out_[p]; }
    const std::vector<Arc>& in(int q) const { return in_[q]; }

    K arc_weight(int p, int a, int q) const {
        for (const Arc& arc : out_[p])
            if (arc.letter == a && arc.peer == q) return arc.weight;
        return S::zero();
    }

    // At most one outgoing transition per (state, letter), marker included.
    bool deterministic() const {
        for (const auto& arcs : out_) {
            for (std::size_t j = 1; j < arcs.size(); ++j)
                if (arcs[j].letter == arcs[j - 1].letter) return false;
        }
        return true;
    }

    // Weight of a word over the augmented alphabet, from i to t.
    K coefficient(std::span<const int> w) const {
        std::vector<K> v(states(), S::zero());
        v[i_state()] = S::one();
        for (int a : w) {
            std::vector<K> next(states(), S::zero());
            for (int p = 0; p < states(); ++p) {
                if (is_zero<S>(v[p])) continue;
                for (const Arc& arc : out_[p]) {
                    if (arc.letter != a) continue;
                    next[arc.peer] = S::add(next[arc.peer], S::mul(v[p], arc.weight));
                }
            }
            v = std::move(next);
        }
        return v[t_state()];
    }

private:
    int n_true_;
    int alphabet_size_;
    long m_ = 0;
    std::vector<std::string> letters_;  // alphabet plus the marker
    std::vector<std::vector<Arc>> out_, in_;
};

template <Semiring S>
Augmented<S> augment(const Automaton<S>& base) {
    return Augmented<S>(base);
}

}  // namespace wamin
