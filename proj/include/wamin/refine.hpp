#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wamin/automaton.hpp"
#include "wamin/partition.hpp"
#include "wamin/semiring.hpp"
#include "wamin/weak_sort.hpp"

namespace wamin {

// Signature of a state with respect to a set of states: letters mapped to the
// summed weights of the transitions entering the set, zero sums dropped. The
// entry order is the emission order of the pass that produced the signature;
// for the standalone operation below that is ascending letter order.
template <Semiring S>
using Signature = std::vector<std::pair<int, typename S::Value>>;

// Aggregation of the signatures with respect to every class of a partition,
// keyed by (class index, letter).
template <Semiring S>
using GlobalSignature = std::vector<std::pair<std::pair<int, int>, typename S::Value>>;

struct NotSimplifiableError : std::runtime_error {
    NotSimplifiableError()
        : std::runtime_error("automaton does not have simplifiable signatures") {}
};

struct MinimiseStats {
    std::uint64_t transitions_touched = 0;
    std::uint64_t dequeue_events = 0;
    std::uint64_t states_dequeued = 0;  // sum of |D| over dequeued classes D
    std::uint64_t splits = 0;
    std::uint64_t rounds = 0;  // domain split only
    std::uint64_t moved_states = 0;
    std::vector<std::uint32_t> per_state_dequeues;
};

struct MinimiseOptions {
    MinimiseStats* stats = nullptr;
    // Called after every iteration with the current partition.
    std::function<void(const Partition&)> iteration_hook;
};

template <Semiring S>
Signature<S> signature(const Augmented<S>& aut, int p, std::span<const int> dom) {
    std::vector<char> in_dom(aut.states(), 0);
    for (int q : dom) in_dom.at(q) = 1;
    Signature<S> sig;
    for (const auto& arc : aut.out(p)) {
        if (!in_dom[arc.peer]) continue;
        if (!sig.empty() && sig.back().first == arc.letter) {
            sig.back().second = S::add(sig.back().second, arc.weight);
            if (is_zero<S>(sig.back().second)) sig.pop_back();
        } else {
            sig.emplace_back(arc.letter, arc.weight);
        }
    }
    return sig;
}

template <Semiring S>
Signature<S> signature(const Augmented<S>& aut, int p, std::initializer_list<int> dom) {
    return signature(aut, p, std::span<const int>(dom.begin(), dom.size()));
}

// Signatures are simplifiable when the semiring addition is cancellative or
// the automaton (markers included) is deterministic. Both are sufficient
// conditions; nothing further is decided here.
template <Semiring S>
bool simplifiable_signatures(const Augmented<S>& aut) {
    return S::additively_cancellative || aut.deterministic();
}

namespace detail {

// Shared machinery of the refinement algorithms: the partition, the bucket
// structures of the signature passes, per-state signature scratch, grouping
// by signature content and the split itself. One refiner owns one run.
template <Semiring S>
class Refiner {
public:
    using K = typename S::Value;
    using SigEntry = std::pair<std::uint64_t, K>;

    explicit Refiner(const Augmented<S>& aut)
        : aut_(aut),
          part_(aut.states(), initial_classes(aut)),
          group_map_(0, SigHash{this}, SigEq{this}) {
        sig_.resize(aut.states());
        sig_hash_.resize(aut.states());
        seen_.assign(aut.states(), 0);
        stats_.per_state_dequeues.assign(aut.states(), 0);
    }

    // Moore-style refinement: process a class, compute the global signatures
    // of its states against the whole current partition, and split it.
    // Iterations are gathered into rounds; a round without any split proves
    // the partition is a congruence.
    StatePartition domain_split(const MinimiseOptions& opt) {
        if (part_.size(kTrueHeader) >= 2) part_.enqueue(kTrueHeader);
        while (true) {
            std::size_t round_len = part_.queue_length();
            if (round_len == 0) break;
            bool any_split = false;
            for (std::size_t i = 0; i < round_len; ++i) {
                int c = part_.dequeue();
                if (c < 0) break;
                any_split |= domain_split_iteration(c);
                if (opt.iteration_hook) opt.iteration_hook(part_);
            }
            ++stats_.rounds;
            if (!any_split) break;
        }
        return finish(opt);
    }

    // Hopcroft-style refinement: process a class as splitter, compute the
    // signatures of its predecessors and split every class containing some of
    // them. With `all_but_largest`, a split class that was not queued
    // re-enqueues all its subclasses except one largest.
    StatePartition pred_class_split(bool all_but_largest, const MinimiseOptions& opt) {
        if (part_.size(kTrueHeader) >= 1) part_.enqueue(kTrueHeader);
        part_.enqueue(kFinalHeader);
        int d;
        while ((d = part_.dequeue()) >= 0) {
            pred_class_split_iteration(d, all_but_largest);
            if (opt.iteration_hook) opt.iteration_hook(part_);
        }
        return finish(opt);
    }

private:
    // header layout of the starting partition: true states, {i}, {t}
    static constexpr int kTrueHeader = 0;
    static constexpr int kFinalHeader = 2;

    static std::vector<std::vector<int>> initial_classes(const Augmented<S>& aut) {
        std::vector<int> q(aut.true_states());
        for (int s = 0; s < aut.true_states(); ++s) q[s] = s;
        return {std::move(q), {aut.i_state()}, {aut.t_state()}};
    }

    static std::uint64_t pack(int letter, int header) {
        return (static_cast<std::uint64_t>(letter) << 32) | static_cast<std::uint32_t>(header);
    }

    bool domain_split_iteration(int c) {
        ++stats_.dequeue_events;
        stats_.states_dequeued += part_.size(c);

        // pass 1: bucket (letter, target class); contributions of one state
        // to one bucket arrive consecutively and are merged on arrival
        pair_buckets_.clear();
        part_.for_each_member(c, [&](int p) {
            ++stats_.per_state_dequeues[p];
            for (const auto& arc : aut_.out(p)) {
                ++stats_.transitions_touched;
                pair_buckets_.insert_merge_last(
                    pack(arc.letter, part_.header_of(arc.peer)), p, arc.weight,
                    [](const K& x, const K& y) { return S::add(x, y); },
                    [](const K& x) { return is_zero<S>(x); });
            }
        });

        // pass 2: append to the per-state global signatures in bucket order,
        // so equal signatures come out as identical lists
        touched_.clear();
        ++epoch_;
        pair_buckets_.for_each_bucket([&](std::uint64_t key, const std::vector<std::pair<int, K>>& items) {
            for (const auto& [p, k] : items) {
                if (seen_[p] != epoch_) {
                    seen_[p] = epoch_;
                    touched_.push_back(p);
                }
                sig_[p].emplace_back(key, k);
            }
        });

        bool was_split = split_touched_class(c).split;
        if (was_split) {
            for (const auto& sub : outcome_.subclasses)
                if (sub.size >= 2) part_.enqueue(sub.header);
        } else if (part_.size(c) >= 2) {
            part_.enqueue(c);
        }
        release_touched();
        return was_split;
    }

    void pred_class_split_iteration(int d, bool all_but_largest) {
        ++stats_.dequeue_events;
        stats_.states_dequeued += part_.size(d);

        // pass 1: plain letter buckets over the incoming transitions
        letter_buckets_.clear();
        part_.for_each_member(d, [&](int q) {
            ++stats_.per_state_dequeues[q];
            for (const auto& arc : aut_.in(q)) {
                ++stats_.transitions_touched;
                letter_buckets_.insert(arc.letter, {arc.peer, arc.weight});
            }
        });

        // pass 2: merge into per-state signatures, letter by letter
        touched_.clear();
        ++epoch_;
        letter_buckets_.for_each_bucket([&](int letter, const std::vector<std::pair<int, K>>& items) {
            for (const auto& [p, k] : items) {
                if (seen_[p] != epoch_) {
                    seen_[p] = epoch_;
                    touched_.push_back(p);
                }
                auto& sig = sig_[p];
                if (!sig.empty() && sig.back().first == static_cast<std::uint64_t>(letter)) {
                    sig.back().second = S::add(sig.back().second, k);
                    if (is_zero<S>(sig.back().second)) sig.pop_back();
                } else {
                    sig.emplace_back(static_cast<std::uint64_t>(letter), k);
                }
            }
        });

        // split every class holding predecessors whose signature is nonempty;
        // states whose contributions cancelled out stay with the untouched rest
        class_buckets_.clear();
        for (int p : touched_) {
            if (sig_[p].empty()) continue;
            class_buckets_.insert(part_.header_of(p), p);
        }
        class_buckets_.for_each_bucket([&](int c, const std::vector<int>& states) {
            bool was_queued = part_.queued(c);
            const SplitOutcome& outcome = split_states_of_class(c, states);
            if (!outcome.split) return;
            if (!all_but_largest || was_queued) {
                for (const auto& sub : outcome_.subclasses) part_.enqueue(sub.header);
            } else {
                std::size_t skip = 0;
                for (std::size_t j = 1; j < outcome_.subclasses.size(); ++j)
                    if (outcome_.subclasses[j].size > outcome_.subclasses[skip].size) skip = j;
                for (std::size_t j = 0; j < outcome_.subclasses.size(); ++j)
                    if (j != skip) part_.enqueue(outcome_.subclasses[j].header);
            }
        });
        release_touched();
    }

    struct Subclass {
        int header;
        int size;
    };
    struct SplitOutcome {
        bool split = false;
        // fresh groups in emission order; the surviving remainder, whose size
        // is known by difference without scanning it, comes last
        std::vector<Subclass> subclasses;
    };

    // Groups the states of class `c` whose signature is nonempty (all touched
    // states for the domain split) by signature content, then splits.
    const SplitOutcome& split_touched_class(int c) {
        group_states_.clear();
        for (int p : touched_)
            if (!sig_[p].empty()) group_states_.push_back(p);
        return split_states_of_class(c, group_states_);
    }

    const SplitOutcome& split_states_of_class(int c, const std::vector<int>& states) {
        group_by_content(states);
        outcome_.split = false;
        outcome_.subclasses.clear();
        int moved = 0;
        for (std::size_t g = 0; g < group_count_; ++g) moved += static_cast<int>(groups_[g].size());
        int rem = part_.size(c) - moved;
        if (group_count_ == 0 || (group_count_ == 1 && rem == 0)) return outcome_;

        for (std::size_t g = 0; g < group_count_; ++g) {
            int h = part_.extract_group(c, groups_[g]);
            outcome_.subclasses.push_back({h, static_cast<int>(groups_[g].size())});
        }
        part_.refresh_id(c);
        if (rem > 0) outcome_.subclasses.push_back({c, rem});
        outcome_.split = true;
        ++stats_.splits;
        return outcome_;
    }

    struct SigHash {
        const Refiner* r;
        std::size_t operator()(int p) const { return r->sig_hash_[p]; }
    };
    struct SigEq {
        const Refiner* r;
        bool operator()(int p, int q) const {
            const auto& a = r->sig_[p];
            const auto& b = r->sig_[q];
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i].first != b[i].first || !S::eq(a[i].second, b[i].second)) return false;
            return true;
        }
    };

    void group_by_content(const std::vector<int>& states) {
        for (std::size_t g = 0; g < group_count_; ++g) groups_[g].clear();
        group_count_ = 0;
        for (int p : states) {
            std::size_t h = 0;
            for (const auto& [key, w] : sig_[p]) {
                h = hash_combine(h, static_cast<std::size_t>(key));
                h = hash_combine(h, S::hash(w));
            }
            sig_hash_[p] = h;
            auto [it, fresh] = group_map_.try_emplace(p, group_count_);
            if (fresh) {
                if (group_count_ == groups_.size()) groups_.emplace_back();
                ++group_count_;
            }
            groups_[it->second].push_back(p);
        }
        for (std::size_t g = 0; g < group_count_; ++g) group_map_.erase(groups_[g].front());
    }

    void release_touched() {
        for (int p : touched_) sig_[p].clear();
    }

    StatePartition finish(const MinimiseOptions& opt) {
        stats_.moved_states = part_.moved_states();
        if (opt.stats) *opt.stats = stats_;
        return part_.snapshot();
    }

    const Augmented<S>& aut_;
    Partition part_;
    MinimiseStats stats_;

    OrderedBucketMap<std::uint64_t, std::pair<int, K>> pair_buckets_;
    OrderedBucketMap<int, std::pair<int, K>> letter_buckets_;
    OrderedBucketMap<int, int> class_buckets_;

    std::vector<std::vector<SigEntry>> sig_;
    std::vector<std::size_t> sig_hash_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t epoch_ = 0;
    std::vector<int> touched_;
    std::vector<int> group_states_;

    std::unordered_map<int, std::size_t, SigHash, SigEq> group_map_;
    std::vector<std::vector<int>> groups_;
    std::size_t group_count_ = 0;

    SplitOutcome outcome_;
};

}  // namespace detail

// Domain Split: the coarsest congruence by rounds of whole-class signature
// refinement. O(n(m+n)).
template <Semiring S>
StatePartition dsa_minimise(const Augmented<S>& aut, const MinimiseOptions& opt = {}) {
    detail::Refiner<S> refiner(aut);
    return refiner.domain_split(opt);
}

// Predecessor Class Split: the coarsest congruence by splitter queue.
// O(n(m+n)).
template <Semiring S>
StatePartition pcsa_minimise(const Augmented<S>& aut, const MinimiseOptions& opt = {}) {
    detail::Refiner<S> refiner(aut);
    return refiner.pred_class_split(false, opt);
}

// Fast Predecessor Class Split: the "all but the largest" strategy, sound
// only for simplifiable signatures. O((m+n) log n). Throws
// NotSimplifiableError otherwise; callers fall back to pcsa_minimise.
template <Semiring S>
StatePartition fpcsa_minimise(const Augmented<S>& aut, const MinimiseOptions& opt = {}) {
    if (!simplifiable_signatures(aut)) throw NotSimplifiableError{};
    detail::Refiner<S> refiner(aut);
    return refiner.pred_class_split(true, opt);
}

// Global signatures of the members of P.classes[cls], keyed by
// (class index, letter). Entries follow the shared bucket emission order, so
// two states have equal global signatures iff their lists are equal.
template <Semiring S>
std::vector<std::pair<int, GlobalSignature<S>>> global_signatures(const Augmented<S>& aut,
                                                                  const StatePartition& p,
                                                                  int cls) {
    using K = typename S::Value;
    if (p.n != aut.states() || !p.valid()) throw std::invalid_argument("malformed partition");
    auto class_of = p.class_of();
    OrderedBucketMap<std::uint64_t, std::pair<int, K>> buckets;
    for (int s : p.classes.at(cls)) {
        for (const auto& arc : aut.out(s)) {
            std::uint64_t key = (static_cast<std::uint64_t>(arc.letter) << 32) |
                                static_cast<std::uint32_t>(class_of[arc.peer]);
            buckets.insert_merge_last(
                key, s, arc.weight, [](const K& x, const K& y) { return S::add(x, y); },
                [](const K& x) { return is_zero<S>(x); });
        }
    }
    std::vector<std::pair<int, GlobalSignature<S>>> result;
    std::unordered_map<int, std::size_t> index;
    for (int s : p.classes.at(cls)) {
        index[s] = result.size();
        result.push_back({s, {}});
    }
    buckets.for_each_bucket([&](std::uint64_t key, const std::vector<std::pair<int, K>>& items) {
        int cls_idx = static_cast<int>(key & 0xffffffffu);
        int letter = static_cast<int>(key >> 32);
        for (const auto& [s, k] : items)
            result[index[s]].second.push_back({{cls_idx, letter}, k});
    });
    return result;
}

}  // namespace wamin
