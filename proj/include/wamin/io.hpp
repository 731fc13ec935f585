#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "wamin/automaton.hpp"
#include "wamin/partition.hpp"
#include "wamin/semiring.hpp"

namespace wamin {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnyAutomaton = std::variant<Automaton<Boolean>, Automaton<Integers>, Automaton<MinPlus>>;

// Canonical JSON automaton format. An object with exactly the keys
//   semiring    "B" | "Z" | "min-plus"
//   alphabet    array of single-character strings (the marker is reserved)
//   states      state count, states are 0..states-1
//   initial     [state, weight] pairs; bare states for "B"
//   final       same
//   transitions [p, letter, weight, q]; [p, letter, q] for "B"
// Zero weights are never written and are rejected on input, as are duplicate
// (p, letter, q) triples. serialize() sorts all arrays by (p, letter, q), so
// serialize -> parse -> serialize is byte-identical. Integer weights that do
// not fit a 64-bit integer travel as decimal strings.
AnyAutomaton parse_automaton(const std::string& text);
AnyAutomaton load_automaton(const std::string& path);
std::string serialize_automaton(const AnyAutomaton& a);
void save_automaton(const AnyAutomaton& a, const std::string& path);

std::string semiring_tag_of(const AnyAutomaton& a);

// Partition files: one class of true states per line, ids whitespace
// separated; the {i} and {t} classes are implicit. parse_partition returns
// the partition over the augmented state set (i = n_true, t = n_true + 1).
std::string format_partition(const StatePartition& p, int n_true);
StatePartition parse_partition(const std::string& text, int n_true);

}  // namespace wamin
