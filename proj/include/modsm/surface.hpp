#pragma once

#include "modsm/module.hpp"
#include "modsm/rule.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace modsm {

/// Surface rule forms as read from input, before canonicalization.
/// Weight and choice rules map to themselves; the rest is syntactic sugar.
namespace surface {

struct literal {
    atom_id atom = 0;
    bool negated = false;
};

struct weight_body_rule {         // a :- w <= { b=wb, not c=wc, ... }
    atom_id head = 0;
    std::int64_t bound = 0;
    std::vector<std::pair<literal, std::int64_t>> body;
};

struct cardinality_body_rule {    // a :- l { b, not c, ... }
    atom_id head = 0;
    std::int64_t bound = 0;
    std::vector<literal> body;
};

struct basic_body_rule {          // a :- b, not c, ...
    atom_id head = 0;
    std::vector<literal> body;
};

struct choice_body_rule {         // { a, ... } :- b, not c, ...
    atom_set heads;
    std::vector<literal> body;
};

struct constraint_rule {          // :- b, not c, ...
    std::vector<literal> body;
};

struct compute_statement {        // compute { b, not c, ... }
    std::vector<literal> body;
};

using surface_rule = std::variant<weight_body_rule, cardinality_body_rule, basic_body_rule,
                                  choice_body_rule, constraint_rule, compute_statement>;

} // namespace surface

namespace core {

/// Desugars surface rules into canonical weight/choice rules; allocates at
/// most one shared integrity atom per program and reports it (0 if unused).
class desugarer {
public:
    explicit desugarer(symbol_table& symbols) : symbols_(symbols) {}

    /// Appends the canonical rules for `r` to `out`.
    void desugar(const surface::surface_rule& r, program& out);

    /// The shared integrity atom, or 0 when no constraint was desugared.
    atom_id integrity_atom() const { return integrity_atom_; }

private:
    atom_id require_integrity_atom();

    symbol_table& symbols_;
    atom_id integrity_atom_ = 0;
};

/// One-shot convenience for a single surface rule.
program desugar(const surface::surface_rule& r, symbol_table& symbols,
                atom_id* integrity_atom = nullptr);

} // namespace core
} // namespace modsm
