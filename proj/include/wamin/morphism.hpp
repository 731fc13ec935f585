#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wamin/automaton.hpp"
#include "wamin/partition.hpp"
#include "wamin/refine.hpp"
#include "wamin/semiring.hpp"

namespace wamin {

// True iff the partition of the augmented state set is a congruence: {i} and
// {t} are singleton classes and, within every class, all states have equal
// summed outgoing weight into every class for every letter (marker included).
// One bucket pass per class, O(m+n) overall.
template <Semiring S>
bool is_congruence(const Augmented<S>& aut, const StatePartition& p) {
    using K = typename S::Value;
    if (p.n != aut.states() || !p.valid()) throw std::invalid_argument("malformed partition");
    auto class_of = p.class_of();
    if (p.classes[class_of[aut.i_state()]].size() != 1) return false;
    if (p.classes[class_of[aut.t_state()]].size() != 1) return false;

    OrderedBucketMap<std::uint64_t, std::pair<int, K>> buckets;
    std::vector<std::vector<std::pair<std::uint64_t, K>>> sig(aut.states());
    for (const auto& cls : p.classes) {
        if (cls.size() == 1) continue;
        buckets.clear();
        for (int s : cls) {
            for (const auto& arc : aut.out(s)) {
                std::uint64_t key = (static_cast<std::uint64_t>(arc.letter) << 32) |
                                    static_cast<std::uint32_t>(class_of[arc.peer]);
                buckets.insert_merge_last(
                    key, s, arc.weight, [](const K& x, const K& y) { return S::add(x, y); },
                    [](const K& x) { return is_zero<S>(x); });
            }
        }
        buckets.for_each_bucket([&](std::uint64_t key, const std::vector<std::pair<int, K>>& items) {
            for (const auto& [s, k] : items) sig[s].emplace_back(key, k);
        });
        const auto& ref = sig[cls.front()];
        bool equal = true;
        for (int s : cls) {
            if (sig[s].size() != ref.size()) {
                equal = false;
                break;
            }
            for (std::size_t j = 0; j < ref.size(); ++j) {
                if (sig[s][j].first != ref[j].first || !S::eq(sig[s][j].second, ref[j].second)) {
                    equal = false;
                    break;
                }
            }
            if (!equal) break;
        }
        for (int s : cls) sig[s].clear();
        if (!equal) return false;
    }
    return true;
}

// True-state classes of an augmented-state partition, canonical order.
inline std::vector<std::vector<int>> true_classes(const StatePartition& p, int n_true) {
    std::vector<std::vector<int>> out;
    for (const auto& cls : p.classes) {
        if (cls.size() == 1 && (cls.front() == n_true || cls.front() == n_true + 1)) continue;
        out.push_back(cls);
    }
    return out;
}

// Quotient automaton by a congruence of the augmented automaton. Class C gets
// initial weight sum_{p in C} I_p, final weight T(rep(C)) and transitions
// F(C,a,D) = sum_{r in D} E(rep(C),a,r). Representatives default to the
// smallest member; any member gives the same rows, which tests assert. Throws
// if the partition is not a congruence.
template <Semiring S>
Automaton<S> quotient(const Automaton<S>& base, const StatePartition& congruence,
                      const std::vector<int>* reps = nullptr) {
    Augmented<S> aug(base);
    if (!is_congruence(aug, congruence)) throw std::invalid_argument("partition is not a congruence");

    auto classes = true_classes(congruence, base.states());
    std::vector<int> cls_of(base.states(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int s : classes[c]) cls_of[s] = static_cast<int>(c);

    Automaton<S> q(static_cast<int>(classes.size()), base.letters());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        int rep = reps ? (*reps)[c] : classes[c].front();
        if (cls_of[rep] != static_cast<int>(c)) throw std::invalid_argument("representative outside class");
        for (int s : classes[c]) {
            auto it = base.initial_weights().find(s);
            if (it != base.initial_weights().end()) q.add_initial(static_cast<int>(c), it->second);
        }
        auto fin = base.final_weights().find(rep);
        if (fin != base.final_weights().end()) q.add_final(static_cast<int>(c), fin->second);
    }
    for (const auto& [triple, k] : base.transitions()) {
        const auto& [s, a, t] = triple;
        int c = cls_of[s];
        int rep = reps ? (*reps)[c] : classes[c].front();
        if (s != rep) continue;
        q.add_transition(c, a, k, cls_of[t]);
    }
    return q;
}

// Sparse K-matrix with zero-free rows sorted by column.
template <Semiring S>
struct SparseMatrix {
    using K = typename S::Value;
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, K>>> row;

    SparseMatrix(int r, int c) : rows(r), cols(c), row(r) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row[i].emplace_back(i, S::one());
        return m;
    }

    void set(int r, int c, const K& k) {
        if (!is_zero<S>(k)) row.at(r).emplace_back(c, k);
    }

    void normalize() {
        for (auto& entries : row) {
            std::sort(entries.begin(), entries.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            std::vector<std::pair<int, K>> merged;
            for (const auto& [c, k] : entries) {
                if (!merged.empty() && merged.back().first == c)
                    merged.back().second = S::add(merged.back().second, k);
                else
                    merged.emplace_back(c, k);
            }
            std::erase_if(merged, [](const auto& e) { return is_zero<S>(e.second); });
            entries = std::move(merged);
        }
    }

    SparseMatrix mul(const SparseMatrix& other) const {
        if (cols != other.rows) throw std::invalid_argument("dimension mismatch");
        SparseMatrix out(rows, other.cols);
        std::map<int, K> acc;
        for (int r = 0; r < rows; ++r) {
            acc.clear();
            for (const auto& [mid, k1] : row[r])
                for (const auto& [c, k2] : other.row[mid]) {
                    auto [it, fresh] = acc.try_emplace(c, S::mul(k1, k2));
                    if (!fresh) it->second = S::add(it->second, S::mul(k1, k2));
                }
            for (const auto& [c, k] : acc)
                if (!is_zero<S>(k)) out.row[r].emplace_back(c, k);
        }
        return out;
    }

    bool equal(const SparseMatrix& other) const {
        if (rows != other.rows || cols != other.cols) return false;
        for (int r = 0; r < rows; ++r) {
            if (row[r].size() != other.row[r].size()) return false;
            for (std::size_t j = 0; j < row[r].size(); ++j)
                if (row[r][j].first != other.row[r][j].first ||
                    !S::eq(row[r][j].second, other.row[r][j].second))
                    return false;
        }
        return true;
    }
};

template <Semiring S>
SparseMatrix<S> letter_matrix(const Automaton<S>& a, int letter) {
    SparseMatrix<S> m(a.states(), a.states());
    for (const auto& [triple, k] : a.transitions()) {
        const auto& [p, l, q] = triple;
        if (l == letter) m.set(p, q, k);
    }
    m.normalize();
    return m;
}

template <Semiring S>
SparseMatrix<S> initial_row(const Automaton<S>& a) {
    SparseMatrix<S> m(1, a.states());
    for (const auto& [p, k] : a.initial_weights()) m.set(0, p, k);
    m.normalize();
    return m;
}

template <Semiring S>
SparseMatrix<S> final_column(const Automaton<S>& a) {
    SparseMatrix<S> m(a.states(), 1);
    for (const auto& [p, k] : a.final_weights()) m.set(p, 0, k);
    m.normalize();
    return m;
}

// A surjective state map as a matrix: one `one` per row, at the image column.
template <Semiring S>
SparseMatrix<S> amalgamation_matrix(const std::vector<int>& phi, int cols) {
    SparseMatrix<S> m(static_cast<int>(phi.size()), cols);
    for (std::size_t q = 0; q < phi.size(); ++q) {
        if (phi[q] < 0 || phi[q] >= cols) throw std::invalid_argument("image out of range");
        m.set(static_cast<int>(q), phi[q], S::one());
    }
    return m;
}

// Checks the transfer identities I.X = J, E_a.X = X.F_a for every letter,
// and T = X.U.
template <Semiring S>
bool verify_conjugacy(const Automaton<S>& a, const Automaton<S>& b, const SparseMatrix<S>& x) {
    if (x.rows != a.states() || x.cols != b.states())
        throw std::invalid_argument("dimension mismatch");
    if (a.letters() != b.letters()) throw std::invalid_argument("alphabet mismatch");
    if (!initial_row(a).mul(x).equal(initial_row(b))) return false;
    for (int l = 0; l < a.alphabet_size(); ++l) {
        if (!letter_matrix(a, l).mul(x).equal(x.mul(letter_matrix(b, l)))) return false;
    }
    return final_column(a).equal(x.mul(final_column(b)));
}

// A surjective map is a morphism iff its amalgamation matrix is a conjugacy.
template <Semiring S>
bool verify_morphism(const Automaton<S>& a, const Automaton<S>& b, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != a.states()) throw std::invalid_argument("map size mismatch");
    std::vector<char> hit(b.states(), 0);
    for (int img : phi) {
        if (img < 0 || img >= b.states()) throw std::invalid_argument("image out of range");
        hit[img] = 1;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
        throw std::invalid_argument("map is not surjective");
    return verify_conjugacy(a, b, amalgamation_matrix<S>(phi, b.states()));
}

namespace detail {

// Enumerates all partitions of {0..n-1} as restricted growth strings.
template <class F>
void for_each_set_partition(int n, F f) {
    std::vector<int> rgs(n, 0);
    auto rec = [&](auto&& self, int i, int mx) -> void {
        if (i == n) {
            f(rgs);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            rgs[i] = v;
            self(self, i + 1, std::max(mx, v));
        }
    };
    if (n == 0) {
        f(rgs);
        return;
    }
    rgs[0] = 0;
    rec(rec, 1, 0);
}

}  // namespace detail

// Exhaustive search for the coarsest congruence: every partition of the true
// states, each extended with {i} and {t}, is tested; the congruence with the
// fewest classes is returned after checking it is unique at that count and
// coarser than or equal to every other congruence found. Guarded to at most
// 8 true states (4140 partitions).
template <Semiring S>
StatePartition brute_force_coarsest_congruence(const Augmented<S>& aut) {
    int n = aut.true_states();
    if (n > 8) throw std::invalid_argument("brute-force oracle capped at 8 true states");

    std::vector<StatePartition> congruences;
    detail::for_each_set_partition(n, [&](const std::vector<int>& rgs) {
        StatePartition p;
        p.n = aut.states();
        int k = 0;
        for (int c : rgs) k = std::max(k, c + 1);
        p.classes.resize(k);
        for (int s = 0; s < n; ++s) p.classes[rgs[s]].push_back(s);
        p.classes.push_back({aut.i_state()});
        p.classes.push_back({aut.t_state()});
        p.canonicalize();
        if (is_congruence(aut, p)) congruences.push_back(std::move(p));
    });

    const StatePartition* best = nullptr;
    for (const auto& p : congruences)
        if (!best || p.classes.size() < best->classes.size()) best = &p;
    if (!best) throw std::logic_error("no congruence found (identity must be one)");
    int at_best = 0;
    for (const auto& p : congruences) {
        if (p.classes.size() == best->classes.size()) ++at_best;
        if (!coarser_or_equal(*best, p))
            throw std::logic_error("coarsest congruence does not dominate another congruence");
    }
    if (at_best != 1) throw std::logic_error("coarsest congruence is not unique");
    return *best;
}

// First word of length <= max_len (shortest first, then alphabet order) whose
// coefficients differ, if any. Both automata must share the alphabet.
template <Semiring S>
std::optional<Word> first_coefficient_difference(const Automaton<S>& x, const Automaton<S>& y,
                                                 int max_len) {
    if (x.letters() != y.letters()) throw std::invalid_argument("alphabet mismatch");
    int alpha = x.alphabet_size();
    for (int len = 0; len <= max_len; ++len) {
        if (len > 0 && alpha == 0) break;
        Word w(len, 0);
        while (true) {
            if (!S::eq(x.coefficient(w), y.coefficient(w))) return w;
            int pos = len - 1;
            while (pos >= 0 && w[pos] == alpha - 1) w[pos--] = 0;
            if (pos < 0) break;
            ++w[pos];
        }
    }
    return std::nullopt;
}

}  // namespace wamin
