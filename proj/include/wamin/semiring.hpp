#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

namespace wamin {

// A weight domain. Instances are stateless tag types: all structure lives in
// static members, so a semiring value is just its Value and can be copied,
// shared and hashed freely.
template <class S>
concept Semiring = requires(const typename S::Value& x, const typename S::Value& y) {
    typename S::Value;
    { S::zero() } -> std::convertible_to<typename S::Value>;
    { S::one() } -> std::convertible_to<typename S::Value>;
    { S::add(x, y) } -> std::convertible_to<typename S::Value>;
    { S::mul(x, y) } -> std::convertible_to<typename S::Value>;
    { S::eq(x, y) } -> std::convertible_to<bool>;
    { S::hash(x) } -> std::convertible_to<std::size_t>;
    { S::additively_cancellative } -> std::convertible_to<bool>;
    { S::tag() } -> std::convertible_to<std::string>;
};

template <class S>
bool is_zero(const typename S::Value& x) {
    return S::eq(x, S::zero());
}

// Two-element Boolean semiring: add = or, mul = and.
struct Boolean {
    using Value = bool;
    static Value zero() { return false; }
    static Value one() { return true; }
    static Value add(Value x, Value y) { return x || y; }
    static Value mul(Value x, Value y) { return x && y; }
    static bool eq(Value x, Value y) { return x == y; }
    static std::size_t hash(Value x) { return x ? 0x9e3779b97f4a7c15ull : 0; }
    // 1+1 = 1+0 but 1 != 0.
    static constexpr bool additively_cancellative = false;
    static std::string tag() { return "B"; }
};

// Ring of integers with arbitrary precision, so that weights accumulated over
// long automata never overflow. Hashing is linear in the digit count; for the
// word-sized values produced by the generators this is effectively constant.
struct Integers {
    using Value = boost::multiprecision::cpp_int;
    static Value zero() { return 0; }
    static Value one() { return 1; }
    static Value add(const Value& x, const Value& y) { return x + y; }
    static Value mul(const Value& x, const Value& y) { return x * y; }
    static bool eq(const Value& x, const Value& y) { return x == y; }
    static std::size_t hash(const Value& x) { return boost::hash<Value>{}(x); }
    static constexpr bool additively_cancellative = true;
    static std::string tag() { return "Z"; }
};

// Tropical (min,+) semiring over exact integers. The additive zero is +inf,
// which only ever appears as a transient value: automata never store it.
struct MinPlus {
    using Value = long long;
    static constexpr Value infinity = std::numeric_limits<long long>::max();
    static Value zero() { return infinity; }
    static Value one() { return 0; }
    static Value add(Value x, Value y) { return x < y ? x : y; }
    static Value mul(Value x, Value y) {
        if (x == infinity || y == infinity) return infinity;
        return x + y;
    }
    static bool eq(Value x, Value y) { return x == y; }
    static std::size_t hash(Value x) { return std::hash<long long>{}(x); }
    // min(3,5) = min(3,7) but 5 != 7.
    static constexpr bool additively_cancellative = false;
    static std::string tag() { return "min-plus"; }
};

}  // namespace wamin
