#pragma once

#include "modsm/atoms.hpp"

#include <cstdint>
#include <functional>
#include <tuple>
#include <variant>
#include <vector>

namespace modsm {

struct weighted_literal {
    atom_id atom = 0;
    std::uint32_t weight = 0;

    friend bool operator==(const weighted_literal&, const weighted_literal&) = default;
    friend bool operator<(const weighted_literal& a, const weighted_literal& b) {
        return std::tie(a.atom, a.weight) < std::tie(b.atom, b.weight);
    }
};

/// Sorted by atom, one entry per atom.
using wlit_vec = std::vector<weighted_literal>;

/// head <- bound <= { pos..., not neg... } with non-negative weights.
/// Every non-choice rule is kept in this shape; facts are bound-0 rules.
struct weight_rule {
    atom_id head = 0;
    std::uint64_t bound = 0;
    wlit_vec pos;
    wlit_vec neg;

    friend bool operator==(const weight_rule&, const weight_rule&) = default;
};

/// { heads... } <- pos..., not neg... ; heads is non-empty.
struct choice_rule {
    atom_set heads;
    atom_set pos;
    atom_set neg;

    friend bool operator==(const choice_rule&, const choice_rule&) = default;
};

using rule = std::variant<weight_rule, choice_rule>;

inline bool rule_less(const rule& a, const rule& b) {
    if (a.index() != b.index())
        return a.index() < b.index();
    if (std::holds_alternative<weight_rule>(a)) {
        const auto& x = std::get<weight_rule>(a);
        const auto& y = std::get<weight_rule>(b);
        return std::tie(x.head, x.bound, x.pos, x.neg) < std::tie(y.head, y.bound, y.pos, y.neg);
    }
    const auto& x = std::get<choice_rule>(a);
    const auto& y = std::get<choice_rule>(b);
    return std::tie(x.heads, x.pos, x.neg) < std::tie(y.heads, y.pos, y.neg);
}

inline atom_set rule_heads(const rule& r) {
    if (const auto* w = std::get_if<weight_rule>(&r))
        return {w->head};
    return std::get<choice_rule>(r).heads;
}

inline atom_set rule_pos_body(const rule& r) {
    if (const auto* w = std::get_if<weight_rule>(&r)) {
        atom_set out;
        out.reserve(w->pos.size());
        for (const auto& l : w->pos)
            out.push_back(l.atom);
        return out;
    }
    return std::get<choice_rule>(r).pos;
}

inline atom_set rule_neg_body(const rule& r) {
    if (const auto* w = std::get_if<weight_rule>(&r)) {
        atom_set out;
        out.reserve(w->neg.size());
        for (const auto& l : w->neg)
            out.push_back(l.atom);
        return out;
    }
    return std::get<choice_rule>(r).neg;
}

inline atom_set rule_atoms(const rule& r) {
    atom_set out = rule_heads(r);
    for (atom_id a : rule_pos_body(r))
        out.push_back(a);
    for (atom_id a : rule_neg_body(r))
        out.push_back(a);
    sort_unique(out);
    return out;
}

/// True for weight rules that encode a basic (normal) rule: all weights one
/// and the bound equal to the body size.
inline bool is_normal(const rule& r) {
    const auto* w = std::get_if<weight_rule>(&r);
    if (!w)
        return false;
    for (const auto& l : w->pos)
        if (l.weight != 1)
            return false;
    for (const auto& l : w->neg)
        if (l.weight != 1)
            return false;
    return w->bound == w->pos.size() + w->neg.size();
}

inline rule make_fact(atom_id a) {
    return weight_rule{a, 0, {}, {}};
}

/// Basic rule head <- pos, not neg as its canonical weight rule.
inline rule make_basic(atom_id head, atom_set pos, atom_set neg) {
    weight_rule w;
    w.head = head;
    sort_unique(pos);
    sort_unique(neg);
    for (atom_id a : pos)
        w.pos.push_back({a, 1});
    for (atom_id a : neg)
        w.neg.push_back({a, 1});
    w.bound = w.pos.size() + w.neg.size();
    return w;
}

using program = std::vector<rule>;

inline void canonicalize_rules(program& rules) {
    std::sort(rules.begin(), rules.end(), rule_less);
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
}

inline atom_set program_atoms(const program& rules) {
    atom_set out;
    for (const rule& r : rules)
        for (atom_id a : rule_atoms(r))
            out.push_back(a);
    sort_unique(out);
    return out;
}

inline atom_set program_heads(const program& rules) {
    atom_set out;
    for (const rule& r : rules)
        for (atom_id a : rule_heads(r))
            out.push_back(a);
    sort_unique(out);
    return out;
}

inline atom_set program_bodies(const program& rules) {
    atom_set out;
    for (const rule& r : rules) {
        for (atom_id a : rule_pos_body(r))
            out.push_back(a);
        for (atom_id a : rule_neg_body(r))
            out.push_back(a);
    }
    sort_unique(out);
    return out;
}

/// Atoms with a head occurrence in a choice rule.
inline atom_set program_choiceheads(const program& rules) {
    atom_set out;
    for (const rule& r : rules)
        if (const auto* c = std::get_if<choice_rule>(&r))
            for (atom_id a : c->heads)
                out.push_back(a);
    sort_unique(out);
    return out;
}

/// Applies an id remapping to every atom occurrence of `r`.
template <typename Map>
rule remap_rule(const rule& r, const Map& f) {
    if (const auto* w = std::get_if<weight_rule>(&r)) {
        weight_rule out;
        out.head = f(w->head);
        out.bound = w->bound;
        out.pos.reserve(w->pos.size());
        out.neg.reserve(w->neg.size());
        for (const auto& l : w->pos)
            out.pos.push_back({f(l.atom), l.weight});
        for (const auto& l : w->neg)
            out.neg.push_back({f(l.atom), l.weight});
        std::sort(out.pos.begin(), out.pos.end());
        std::sort(out.neg.begin(), out.neg.end());
        return out;
    }
    const auto& c = std::get<choice_rule>(r);
    choice_rule out;
    out.heads.reserve(c.heads.size());
    for (atom_id a : c.heads)
        out.heads.push_back(f(a));
    out.pos.reserve(c.pos.size());
    for (atom_id a : c.pos)
        out.pos.push_back(f(a));
    out.neg.reserve(c.neg.size());
    for (atom_id a : c.neg)
        out.neg.push_back(f(a));
    sort_unique(out.heads);
    sort_unique(out.pos);
    sort_unique(out.neg);
    return out;
}

template <typename Map>
atom_set remap_set(const atom_set& s, const Map& f) {
    atom_set out;
    out.reserve(s.size());
    for (atom_id a : s)
        out.push_back(f(a));
    sort_unique(out);
    return out;
}

} // namespace modsm
