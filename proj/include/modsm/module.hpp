#pragma once

#include "modsm/atoms.hpp"
#include "modsm/errors.hpp"
#include "modsm/rule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modsm {

/// An interpretation is a set of atoms considered true.
using interpretation = atom_set;

/// Canonically ordered (lexicographic by id) set of interpretations.
using model_set = std::vector<interpretation>;

inline void canonicalize_models(model_set& ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

/// A program module: rules plus disjoint input/output/hidden signatures.
/// Atom ids are local to the module's symbol table; modules produced by the
/// library are canonical (see canonical()).
struct module {
    symbol_table symbols;
    program rules;
    atom_set input;
    atom_set output;
    atom_set hidden;
    std::optional<std::string> name;

    atom_set hb() const { return set_union(set_union(input, output), hidden); }
    atom_set visible() const { return set_union(input, output); }

    friend bool operator==(const module& a, const module& b) {
        return a.symbols == b.symbols && a.rules == b.rules && a.input == b.input &&
               a.output == b.output && a.hidden == b.hidden;
    }
};

namespace core {

struct violation {
    std::string clause;      // which condition of the module definition failed
    std::vector<std::string> atoms;
};

/// Checks the four module conditions; violations are returned as data.
std::vector<violation> validate_module(const module& m);

inline bool is_valid(const module& m) { return validate_module(m).empty(); }

/// Renumbers atoms into canonical order (named atoms sorted by name, then
/// nameless atoms in prior id order), sorts signatures and deduplicates rules.
module canonical(const module& m);

/// As canonical(), also reporting the old-id to new-id mapping.
module canonical_mapped(const module& m, std::vector<atom_id>& old_to_new);

/// Drops symbol-table entries outside Hb(m) and canonicalizes; used when a
/// module is carved out of a larger one.
module compact(const module& m);

/// Builds a canonical module from parts, without validating.
module make_module(symbol_table symbols, program rules, atom_set input, atom_set output,
                   atom_set hidden, std::optional<std::string> name = std::nullopt);

/// Views a plain program as the module <rules, {}, Hb(rules), {}>.
module program_as_module(symbol_table symbols, program rules);

/// Adds the atoms of `actual` as facts and moves the whole input signature
/// into the output signature.
module instantiate(const module& m, const atom_set& actual);

/// Moves `atoms` (a subset of the hidden signature) into the output signature.
module reveal(const module& m, const atom_set& atoms);

/// Name of `a` for diagnostics; nameless atoms print as _<id>.
std::string atom_label(const module& m, atom_id a);

std::vector<std::string> atom_labels(const module& m, const atom_set& s);

/// True when the modules are equal after hidden atom names are ignored
/// (structural isomorphism that fixes all visible atoms by name).
bool equal_modulo_hidden_names(const module& a, const module& b);

} // namespace core
} // namespace modsm
