#include "modsm/translate.hpp"

#include "modsm/algebra.hpp"
#include "modsm/equivalence.hpp"
#include "modsm/errors.hpp"

#include <string>

namespace modsm::translate {

namespace {

// All (B', C') pairs whose weight sum reaches the bound, emitted as basic
// rules. The expansion is exponential in the body size by construction.
void expand_weight_rule(const weight_rule& w, expansion mode, std::uint64_t rule_cap,
                        std::uint64_t& emitted, program& out) {
    const std::size_t k = w.pos.size() + w.neg.size();
    if (k > 24)
        throw cap_exceeded("tr_nlp: weight rule with " + std::to_string(k) +
                           " body literals expands past the rule cap");
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::uint64_t(1) << i))
                sum += i < w.pos.size() ? w.pos[i].weight : w.neg[i - w.pos.size()].weight;
        if (sum < w.bound)
            continue;
        if (mode == expansion::subset_minimal) {
            bool minimal = true;
            for (std::size_t i = 0; i < k && minimal; ++i) {
                if (!(mask & (std::uint64_t(1) << i)))
                    continue;
                std::uint64_t weight =
                    i < w.pos.size() ? w.pos[i].weight : w.neg[i - w.pos.size()].weight;
                if (sum - weight >= w.bound)
                    minimal = false;
            }
            if (!minimal)
                continue;
        }
        atom_set pos, neg;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::uint64_t(1) << i)) {
                if (i < w.pos.size())
                    pos.push_back(w.pos[i].atom);
                else
                    neg.push_back(w.neg[i - w.pos.size()].atom);
            }
        out.push_back(make_basic(w.head, std::move(pos), std::move(neg)));
        if (++emitted > rule_cap)
            throw cap_exceeded("tr_nlp: expansion exceeds the rule cap of " +
                               std::to_string(rule_cap));
    }
}

} // namespace

translation tr_nlp_mapped(const module& m, expansion mode, std::uint64_t rule_cap) {
    translation t;
    module raw = m;  // atom ids preserved; marker atoms appended
    t.complement_of.assign(m.symbols.size() + 1, 0);

    atom_set choice_heads = program_choiceheads(m.rules);
    for (atom_id a : choice_heads) {
        atom_id marker;
        if (auto n = m.symbols.name(a)) {
            std::string marker_name = "__not_" + std::string(*n);
            if (m.symbols.lookup(marker_name) != 0)
                throw error("tr_nlp: marker name " + marker_name + " already taken");
            marker = raw.symbols.intern(marker_name);
        } else {
            marker = raw.symbols.fresh();
        }
        t.complement_of[a] = marker;
        set_insert(raw.hidden, marker);
    }

    program rules;
    std::uint64_t emitted = 0;
    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            for (atom_id a : c->heads) {
                atom_set neg = c->neg;
                set_insert(neg, t.complement_of[a]);
                rules.push_back(make_basic(a, c->pos, std::move(neg)));
                if (++emitted > rule_cap)
                    throw cap_exceeded("tr_nlp: expansion exceeds the rule cap");
            }
            continue;
        }
        expand_weight_rule(std::get<weight_rule>(r), mode, rule_cap, emitted, rules);
    }
    for (atom_id a : choice_heads) {
        rules.push_back(make_basic(t.complement_of[a], {}, {a}));
        ++emitted;
    }
    raw.rules = std::move(rules);

    std::vector<atom_id> cmap;
    t.translated = core::canonical_mapped(raw, cmap);
    t.map.assign(m.symbols.size() + 1, 0);
    for (atom_id a = 1; a <= m.symbols.size(); ++a)
        t.map[a] = cmap[a];
    for (atom_id a : choice_heads)
        t.complement_of[a] = cmap[t.complement_of[a]];
    return t;
}

module tr_nlp(const module& m, expansion mode, std::uint64_t rule_cap) {
    return tr_nlp_mapped(m, mode, rule_cap).translated;
}

condition_report check_translation_conditions(const module& m1, const module& m2,
                                              std::uint64_t cap) {
    condition_report out;
    translation t1 = tr_nlp_mapped(m1);
    translation t2 = tr_nlp_mapped(m2);

    auto faithful = [&](const module& m, const translation& t) {
        module revealed = core::reveal(m, m.hidden);
        atom_set hidden_image = remap_set(m.hidden, [&](atom_id a) { return t.map[a]; });
        module revealed_tr = core::reveal(t.translated, hidden_image);
        return equivalence::modular_eq(revealed, revealed_tr,
                                       equivalence::eq_method::direct, cap);
    };
    out.faithful_ok = faithful(m1, t1) && faithful(m2, t2);
    if (!out.faithful_ok)
        out.detail += "faithfulness after reveal failed; ";

    out.join_preserved = algebra::joinable(t1.translated, t2.translated);
    if (!out.join_preserved)
        out.detail += "join of translations undefined; ";

    if (out.join_preserved) {
        module lhs = algebra::join(t1.translated, t2.translated);
        module rhs = tr_nlp(algebra::join(m1, m2));
        out.modular_ok = lhs == rhs;
        if (!out.modular_ok)
            out.detail += "translation does not distribute over the join; ";
    }
    return out;
}

} // namespace modsm::translate
