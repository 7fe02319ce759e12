#pragma once

#include "modsm/module.hpp"

#include <vector>

namespace modsm::decompose {

enum class mode {
    pos,            // positive dependencies only
    pos_hidden,     // positive dependencies plus hidden-atom closure
    posneg_hidden,  // positive and negative dependencies plus hidden closure
};

/// R[D]: choice rules with heads projected onto D, weight rules with head in
/// D. D may not touch the input signature.
program rules_defining(const module& m, const atom_set& d);

/// <R[D], (Hb(R[D]) minus D) within I+O, D within O, D within H>. Hidden body
/// atoms outside D stay hidden in the piece so the result is a well-formed
/// module even when D is not hidden-closed.
module induced_submodule(const module& m, const atom_set& d);

struct decomposition {
    std::vector<module> parts;  // topological order, residual module first
    /// Set in mode pos when hidden atoms exist: pieces may share hidden atoms
    /// and their join may be undefined.
    bool hidden_unsafe = false;
};

/// Splits `m` along the strongly connected components of the mode's
/// dependency graph, grouped by hidden-atom closure in the hidden modes. A
/// residual module carries declared atoms that occur in no rule.
decomposition split(const module& m, mode md);

/// n-ary join of the parts; for split() output this reproduces a module
/// modularly equivalent to the original.
module recompose(const std::vector<module>& parts);

} // namespace modsm::decompose
