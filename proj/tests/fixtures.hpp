#pragma once

#include "wamin/automaton.hpp"
#include "wamin/semiring.hpp"

namespace fixtures {

// Three-state integer automaton over {a,b} whose minimal quotient merges the
// last two states (states p,q,r = 0,1,2):
//   I = (2,1,0), T = (0,1,1)
//   E = [ -a    -b    2b     ]
//       [  a    -b    a+2b   ]
//       [  a     a    b      ]
inline wamin::Automaton<wamin::Integers> z_example() {
    wamin::Automaton<wamin::Integers> a(3, {"a", "b"});
    a.add_transition(0, 0, -1, 0);
    a.add_transition(0, 1, -1, 1);
    a.add_transition(0, 1, 2, 2);
    a.add_transition(1, 0, 1, 0);
    a.add_transition(1, 1, -1, 1);
    a.add_transition(1, 0, 1, 2);
    a.add_transition(1, 1, 2, 2);
    a.add_transition(2, 0, 1, 0);
    a.add_transition(2, 0, 1, 1);
    a.add_transition(2, 1, 1, 2);
    a.add_initial(0, 2);
    a.add_initial(1, 1);
    a.add_final(1, 1);
    a.add_final(2, 1);
    return a;
}

// Nondeterministic Boolean automaton over {a} (states p,q,r,s = 0,1,2,3):
// p has the two a-successors r and s, q only s. Its signatures are not
// simplifiable: the signature against {r} cannot be recovered from those
// against {r,s} and {s}.
inline wamin::Automaton<wamin::Boolean> nondet_bool_example() {
    wamin::Automaton<wamin::Boolean> b(4, {"a"});
    b.add_transition(0, 0, true, 2);
    b.add_transition(0, 0, true, 3);
    b.add_transition(1, 0, true, 3);
    b.add_initial(0, true);
    b.add_initial(1, true);
    b.add_final(2, true);
    b.add_final(3, true);
    return b;
}

}  // namespace fixtures
