#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wamin {

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    // splitmix64-style mixing
    v += 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return seed ^ (v ^ (v >> 31));
}

// Hash-directed bucket map that remembers the order in which keys were first
// inserted. Iterating the buckets visits exactly the distinct keys seen so
// far, in first-insertion order, never any wider key universe. The directory
// grows with the distinct keys only, and clear() costs O(distinct keys); the
// bucket storage is pooled so a map reused across many rounds stops
// allocating once it has seen its peak size.
template <class Key, class Item, class Hash = std::hash<Key>, class Eq = std::equal_to<Key>>
class OrderedBucketMap {
public:
    struct Bucket {
        Key key{};
        std::vector<Item> items;
    };

    OrderedBucketMap() = default;
    OrderedBucketMap(Hash h, Eq e) : directory_(0, std::move(h), std::move(e)) {}

    void insert(const Key& key, Item item) { bucket_for(key).items.push_back(std::move(item)); }

    // Insertion used when items are (owner, weight) pairs and consecutive
    // contributions of one owner must be summed in place: if the bucket's
    // last item has the same owner, the weights are added; a zero sum drops
    // the pair entirely.
    template <class Owner, class Weight, class AddFn, class IsZeroFn>
    void insert_merge_last(const Key& key, const Owner& owner, const Weight& w, AddFn add,
                           IsZeroFn zero) {
        auto& items = bucket_for(key).items;
        if (!items.empty() && items.back().first == owner) {
            items.back().second = add(items.back().second, w);
            if (zero(items.back().second)) items.pop_back();
            return;
        }
        items.emplace_back(owner, w);
    }

    std::size_t key_count() const { return used_; }
    std::size_t item_count() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < used_; ++i) n += buckets_[i].items.size();
        return n;
    }
    bool empty() const { return used_ == 0; }

    const Bucket& bucket(std::size_t i) const { return buckets_[i]; }

    template <class F>
    void for_each_bucket(F f) const {
        for (std::size_t i = 0; i < used_; ++i) f(buckets_[i].key, buckets_[i].items);
    }

    void clear() {
        for (std::size_t i = 0; i < used_; ++i) {
            directory_.erase(buckets_[i].key);
            buckets_[i].items.clear();
        }
        used_ = 0;
    }

private:
    Bucket& bucket_for(const Key& key) {
        auto [it, fresh] = directory_.try_emplace(key, used_);
        if (fresh) {
            if (used_ == buckets_.size()) buckets_.emplace_back();
            buckets_[used_].key = key;
            ++used_;
        }
        return buckets_[it->second];
    }

    std::unordered_map<Key, std::size_t, Hash, Eq> directory_;
    std::vector<Bucket> buckets_;
    std::size_t used_ = 0;
};

// Result of a weak sort: the input reordered so that items with equal
// evaluation are contiguous, plus the [begin,end) offsets of each group in
// first-occurrence order.
template <class Item>
struct WeakSorted {
    std::vector<Item> items;
    std::vector<std::pair<std::size_t, std::size_t>> groups;
};

// Bucket-sorts `items` by `eval` without ordering the evaluations themselves.
// Linear in the number of items (amortised).
template <class Item, class EvalFn>
auto weak_sort(const std::vector<Item>& items, EvalFn eval)
    -> WeakSorted<Item> {
    using Key = std::decay_t<decltype(eval(items.front()))>;
    OrderedBucketMap<Key, Item> map;
    for (const auto& it : items) map.insert(eval(it), it);
    WeakSorted<Item> out;
    out.items.reserve(items.size());
    map.for_each_bucket([&](const Key&, const std::vector<Item>& bucket) {
        std::size_t begin = out.items.size();
        out.items.insert(out.items.end(), bucket.begin(), bucket.end());
        out.groups.emplace_back(begin, out.items.size());
    });
    return out;
}

}  // namespace wamin
