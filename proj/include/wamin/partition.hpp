#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

namespace wamin {

// Plain value form of a partition: classes listed with sorted members,
// ordered by smallest member. This is the form tests, files and the public
// API exchange; the refinement engine below has its own mutable structure.
struct StatePartition {
    int n = 0;
    std::vector<std::vector<int>> classes;

    void canonicalize() {
        for (auto& c : classes) std::sort(c.begin(), c.end());
        std::sort(classes.begin(), classes.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
    }

    static StatePartition from_class_of(std::span<const int> class_of) {
        int k = 0;
        for (int c : class_of) k = std::max(k, c + 1);
        StatePartition p;
        p.n = static_cast<int>(class_of.size());
        p.classes.resize(k);
        for (int s = 0; s < p.n; ++s) p.classes[class_of[s]].push_back(s);
        std::erase_if(p.classes, [](const auto& c) { return c.empty(); });
        p.canonicalize();
        return p;
    }

    std::vector<int> class_of() const {
        std::vector<int> out(n, -1);
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int s : classes[c]) out[s] = static_cast<int>(c);
        return out;
    }

    // True iff this is a partition of exactly 0..n-1.
    bool valid() const {
        std::vector<char> seen(n, 0);
        for (const auto& c : classes) {
            if (c.empty()) return false;
            for (int s : c) {
                if (s < 0 || s >= n || seen[s]) return false;
                seen[s] = 1;
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char x) { return x != 0; });
    }

    bool operator==(const StatePartition&) const = default;
};

// `coarse` is coarser than or equal to `fine`: every class of `fine` lies
// inside one class of `coarse`.
inline bool coarser_or_equal(const StatePartition& coarse, const StatePartition& fine) {
    if (coarse.n != fine.n) return false;
    auto cls = coarse.class_of();
    for (const auto& c : fine.classes)
        for (int s : c)
            if (cls[s] != cls[c.front()]) return false;
    return true;
}

// Mutable partition used by the refinement algorithms. Classes are intrusive
// doubly-linked lists threaded through state-indexed arrays, so removing a
// state from its class is O(1); a FIFO work queue of class ids completes the
// structure. Splitting renumbers the surviving class, which invalidates any
// stale queue entry without touching the states it still holds: queue entries
// carry the id they were enqueued under and are skipped once it goes stale.
class Partition {
public:
    // Starts with the classes given (empty ones allowed; they are dead on
    // arrival). Header indices follow the order of `classes`.
    Partition(int n, const std::vector<std::vector<int>>& classes) : n_(n) {
        next_.assign(n, -1);
        prev_.assign(n, -1);
        header_of_.assign(n, -1);
        headers_.reserve(classes.size() + n);
        for (const auto& members : classes) {
            int h = static_cast<int>(headers_.size());
            headers_.push_back(Header{});
            headers_[h].id = next_id_++;
            for (int s : members) link_back(h, s);
            if (!members.empty()) ++live_;
        }
        for (int s = 0; s < n; ++s)
            if (header_of_[s] < 0) throw std::invalid_argument("state not covered by any class");
    }

    int states() const { return n_; }
    int header_count() const { return static_cast<int>(headers_.size()); }
    int class_count() const { return live_; }

    int header_of(int s) const { return header_of_[s]; }
    std::uint64_t id(int h) const { return headers_[h].id; }
    int size(int h) const { return headers_[h].size; }
    bool alive(int h) const { return headers_[h].size > 0; }

    template <class F>
    void for_each_member(int h, F f) const {
        for (int s = headers_[h].head; s >= 0; s = next_[s]) f(s);
    }

    std::vector<int> members(int h) const {
        std::vector<int> out;
        out.reserve(headers_[h].size);
        for_each_member(h, [&](int s) { out.push_back(s); });
        return out;
    }

    // Unlinks the given states (all currently in `from`) into a fresh class;
    // cost linear in the number of states moved.
    int extract_group(int from, std::span<const int> states) {
        int h = static_cast<int>(headers_.size());
        headers_.push_back(Header{});
        headers_[h].id = next_id_++;
        for (int s : states) {
            assert(header_of_[s] == from);
            unlink(from, s);
            link_back(h, s);
            ++moved_states_;
        }
        ++live_;
        if (!alive(from)) --live_;
        return h;
    }

    // Gives the class a fresh id, orphaning any queue entry that still refers
    // to the old one.
    void refresh_id(int h) {
        headers_[h].id = next_id_++;
        headers_[h].in_queue = false;
    }

    bool queued(int h) const { return headers_[h].in_queue; }

    void enqueue(int h) {
        assert(alive(h));
        assert(!headers_[h].in_queue);
        headers_[h].in_queue = true;
        fifo_.push_back(Entry{h, headers_[h].id});
    }

    // Next live class in FIFO order, or -1. Stale entries are dropped here.
    int dequeue() {
        while (!fifo_.empty()) {
            Entry e = fifo_.front();
            fifo_.pop_front();
            if (headers_[e.header].id != e.id || !alive(e.header)) continue;
            headers_[e.header].in_queue = false;
            return e.header;
        }
        return -1;
    }

    std::size_t queue_length() const { return fifo_.size(); }
    std::uint64_t moved_states() const { return moved_states_; }

    StatePartition snapshot() const {
        StatePartition p;
        p.n = n_;
        for (int h = 0; h < header_count(); ++h) {
            if (!alive(h)) continue;
            p.classes.push_back(members(h));
        }
        p.canonicalize();
        return p;
    }

private:
    struct Header {
        int head = -1;
        int tail = -1;
        int size = 0;
        std::uint64_t id = 0;
        bool in_queue = false;
    };
    struct Entry {
        int header;
        std::uint64_t id;
    };

    void link_back(int h, int s) {
        Header& c = headers_[h];
        prev_[s] = c.tail;
        next_[s] = -1;
        if (c.tail >= 0)
            next_[c.tail] = s;
        else
            c.head = s;
        c.tail = s;
        ++c.size;
        header_of_[s] = h;
    }

    void unlink(int h, int s) {
        Header& c = headers_[h];
        if (prev_[s] >= 0)
            next_[prev_[s]] = next_[s];
        else
            c.head = next_[s];
        if (next_[s] >= 0)
            prev_[next_[s]] = prev_[s];
        else
            c.tail = prev_[s];
        --c.size;
    }

    int n_;
    int live_ = 0;
    std::uint64_t next_id_ = 0;
    std::uint64_t moved_states_ = 0;
    std::vector<int> next_, prev_, header_of_;
    std::vector<Header> headers_;
    std::deque<Entry> fifo_;
};

}  // namespace wamin
