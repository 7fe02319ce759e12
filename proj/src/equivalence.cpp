#include "modsm/equivalence.hpp"

#include "modsm/algebra.hpp"
#include "modsm/errors.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace modsm::equivalence {

namespace {

std::vector<std::string> names_of(const module& m, const interpretation& atoms) {
    std::vector<std::string> out;
    for (atom_id a : atoms)
        if (auto n = m.symbols.name(a))
            out.emplace_back(*n);
    std::sort(out.begin(), out.end());
    return out;
}

// Multiset of visible projections, as sorted name lists.
std::map<std::vector<std::string>, std::size_t> visible_projections(const module& m,
                                                                    std::uint64_t cap) {
    std::map<std::vector<std::string>, std::size_t> out;
    for (const interpretation& model :
         semantics::stable_models(m, semantics::strategy::brute_force, cap))
        ++out[names_of(m, set_inter(model, m.visible()))];
    return out;
}

} // namespace

bool weak_eq(const module& p, const module& q, std::uint64_t cap) {
    if (!p.input.empty() || !q.input.empty())
        throw interface_mismatch("weak equivalence requires empty input signatures");
    // Full model sets compared by atom label; nameless atoms compare by
    // their canonical position, which is structure-derived.
    auto labelled = [&](const module& m) {
        std::vector<std::vector<std::string>> out;
        for (const interpretation& model :
             semantics::stable_models(m, semantics::strategy::brute_force, cap)) {
            std::vector<std::string> labels;
            for (atom_id a : model)
                labels.push_back(m.symbols.name(a) ? std::string(*m.symbols.name(a))
                                                   : "#" + std::to_string(a));
            std::sort(labels.begin(), labels.end());
            out.push_back(std::move(labels));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return labelled(p) == labelled(q);
}

bool visible_eq(const module& p, const module& q, std::uint64_t cap) {
    if (names_of(p, p.visible()) != names_of(q, q.visible()))
        return false;
    // A projection-preserving bijection exists iff the per-projection model
    // counts coincide.
    return visible_projections(p, cap) == visible_projections(q, cap);
}

bool modular_eq(const module& p, const module& q, eq_method method, std::uint64_t cap) {
    if (method == eq_method::direct) {
        if (names_of(p, p.input) != names_of(q, q.input))
            return false;
        return visible_eq(p, q, cap);
    }
    if (names_of(p, p.input) != names_of(q, q.input) ||
        names_of(p, p.output) != names_of(q, q.output))
        throw interface_mismatch("generator method requires the same input/output interface");
    std::vector<std::string> inputs;
    for (atom_id a : p.input) {
        auto n = p.symbols.name(a);
        if (!n)
            throw interface_mismatch("generator method requires named input atoms");
        inputs.emplace_back(*n);
    }
    module gen = input_generator(inputs);
    return visible_eq(algebra::join(p, gen), algebra::join(q, gen), cap);
}

module input_generator(const std::vector<std::string>& input_names) {
    symbol_table symbols;
    atom_set atoms;
    for (const std::string& n : input_names)
        atoms.push_back(symbols.intern(n));
    sort_unique(atoms);
    program rules;
    if (!atoms.empty())
        rules.push_back(choice_rule{atoms, {}, {}});
    return core::make_module(std::move(symbols), std::move(rules), {}, std::move(atoms), {});
}

module hidden_part(const module& m) {
    program rules;
    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            atom_set heads = set_inter(c->heads, m.hidden);
            if (!heads.empty())
                rules.push_back(choice_rule{std::move(heads), c->pos, c->neg});
            continue;
        }
        if (set_contains(m.hidden, std::get<weight_rule>(r).head))
            rules.push_back(r);
    }
    return core::make_module(m.symbols, std::move(rules), m.visible(), m.hidden, {});
}

bool eva(const module& m, std::uint64_t cap) {
    module hid = hidden_part(m);
    const atom_set visible = hid.input;   // I + O of the original
    const atom_set hidden = hid.output;   // H of the original
    if (visible.size() + hidden.size() >= 64 ||
        (std::uint64_t(1) << (visible.size() + hidden.size())) > cap)
        throw cap_exceeded("eva: enumeration exceeds the cap");

    // At most one hidden completion per visible interpretation: visible
    // parts then determine stable models. Interpretations whose hidden part
    // has no stable model at all (constraints firing) do not spoil that.
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << visible.size()); ++v) {
        interpretation n;
        for (std::size_t i = 0; i < visible.size(); ++i)
            if (v & (std::uint64_t(1) << i))
                n.push_back(visible[i]);
        std::size_t count = 0;
        for (std::uint64_t h = 0; h < (std::uint64_t(1) << hidden.size()); ++h) {
            interpretation cand = n;
            for (std::size_t i = 0; i < hidden.size(); ++i)
                if (h & (std::uint64_t(1) << i))
                    cand.push_back(hidden[i]);
            sort_unique(cand);
            if (semantics::is_stable(hid, cand) && ++count > 1)
                return false;
        }
    }
    return true;
}

bool sem_modular_eq_sampled(const module& p, const module& q,
                            const std::vector<module>& contexts, std::uint64_t cap) {
    for (const module& r : contexts) {
        if (!algebra::compose_check(p, r).ok || !algebra::compose_check(q, r).ok)
            continue;
        if (!algebra::check_semantical_join(p, r, cap) ||
            !algebra::check_semantical_join(q, r, cap))
            continue;
        if (!visible_eq(algebra::compose(p, r), algebra::compose(q, r), cap))
            return false;
    }
    return true;
}

} // namespace modsm::equivalence
