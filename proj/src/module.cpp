#include "modsm/module.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace modsm::core {

std::string atom_label(const module& m, atom_id a) {
    if (auto n = m.symbols.name(a))
        return std::string(*n);
    return "_" + std::to_string(a);
}

std::vector<std::string> atom_labels(const module& m, const atom_set& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (atom_id a : s)
        out.push_back(atom_label(m, a));
    return out;
}

std::vector<violation> validate_module(const module& m) {
    std::vector<violation> out;
    atom_set io = set_inter(m.input, m.output);
    atom_set ih = set_inter(m.input, m.hidden);
    atom_set oh = set_inter(m.output, m.hidden);
    atom_set overlap = set_union(set_union(io, ih), oh);
    if (!overlap.empty())
        out.push_back({"I, O, H pairwise disjoint", atom_labels(m, overlap)});

    atom_set stray = set_diff(program_atoms(m.rules), m.hb());
    if (!stray.empty())
        out.push_back({"Hb(R) subset of I+O+H", atom_labels(m, stray)});

    atom_set head_inputs = set_inter(program_heads(m.rules), m.input);
    if (!head_inputs.empty())
        out.push_back({"head(R) disjoint from I", atom_labels(m, head_inputs)});

    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            if (c->heads.empty()) {
                out.push_back({"choice rule with empty head", {}});
                break;
            }
        }
    }
    return out;
}

module canonical_mapped(const module& m, std::vector<atom_id>& to_new) {
    // Order: named atoms sorted by name, then nameless atoms by old id.
    std::vector<atom_id> order;
    order.reserve(m.symbols.size());
    std::map<std::string_view, atom_id> named;
    for (atom_id a = 1; a <= m.symbols.size(); ++a) {
        if (auto n = m.symbols.name(a))
            named.emplace(*n, a);
    }
    for (const auto& [name, a] : named)
        order.push_back(a);
    for (atom_id a = 1; a <= m.symbols.size(); ++a)
        if (!m.symbols.name(a))
            order.push_back(a);

    to_new.assign(m.symbols.size() + 1, 0);
    symbol_table symbols;
    for (atom_id old : order) {
        atom_id fresh = m.symbols.name(old) ? symbols.intern(*m.symbols.name(old))
                                            : symbols.fresh();
        to_new[old] = fresh;
    }
    auto f = [&](atom_id a) { return to_new[a]; };

    module out;
    out.symbols = std::move(symbols);
    out.name = m.name;
    out.rules.reserve(m.rules.size());
    for (const rule& r : m.rules)
        out.rules.push_back(remap_rule(r, f));
    canonicalize_rules(out.rules);
    out.input = remap_set(m.input, f);
    out.output = remap_set(m.output, f);
    out.hidden = remap_set(m.hidden, f);
    return out;
}

module canonical(const module& m) {
    std::vector<atom_id> unused;
    return canonical_mapped(m, unused);
}

module compact(const module& m) {
    atom_set keep = m.hb();
    symbol_table symbols;
    std::vector<atom_id> to_new(m.symbols.size() + 1, 0);
    for (atom_id a : keep) {
        auto n = m.symbols.name(a);
        to_new[a] = n ? symbols.intern(*n) : symbols.fresh();
    }
    auto f = [&](atom_id a) { return to_new[a]; };
    module out;
    out.symbols = std::move(symbols);
    out.name = m.name;
    out.rules.reserve(m.rules.size());
    for (const rule& r : m.rules)
        out.rules.push_back(remap_rule(r, f));
    canonicalize_rules(out.rules);
    out.input = remap_set(m.input, f);
    out.output = remap_set(m.output, f);
    out.hidden = remap_set(m.hidden, f);
    return canonical(out);
}

module make_module(symbol_table symbols, program rules, atom_set input, atom_set output,
                   atom_set hidden, std::optional<std::string> name) {
    module m;
    m.symbols = std::move(symbols);
    m.rules = std::move(rules);
    m.input = std::move(input);
    m.output = std::move(output);
    m.hidden = std::move(hidden);
    m.name = std::move(name);
    sort_unique(m.input);
    sort_unique(m.output);
    sort_unique(m.hidden);
    return canonical(m);
}

module program_as_module(symbol_table symbols, program rules) {
    atom_set hb = program_atoms(rules);
    return make_module(std::move(symbols), std::move(rules), {}, std::move(hb), {});
}

module instantiate(const module& m, const atom_set& actual) {
    if (!set_subset(actual, m.input))
        throw input_mismatch("instantiate: actual input is not a subset of the input signature");
    module out = m;
    for (atom_id a : actual)
        out.rules.push_back(make_fact(a));
    out.output = set_union(m.input, m.output);
    out.input.clear();
    return canonical(out);
}

module reveal(const module& m, const atom_set& atoms) {
    if (!set_subset(atoms, m.hidden))
        throw signature_error("reveal: atoms are not all hidden");
    module out = m;
    out.output = set_union(m.output, atoms);
    out.hidden = set_diff(m.hidden, atoms);
    return canonical(out);
}

bool equal_modulo_hidden_names(const module& a, const module& b) {
    if (a.rules.size() != b.rules.size() || a.hidden.size() != b.hidden.size())
        return false;
    // Erase hidden names, re-canonicalize, compare. Hidden atoms keep their
    // relative canonical order on both sides, so renamings line up.
    auto strip = [](const module& m) {
        symbol_table symbols;
        std::vector<atom_id> to_new(m.symbols.size() + 1, 0);
        for (atom_id x = 1; x <= m.symbols.size(); ++x) {
            bool hid = set_contains(m.hidden, x);
            auto n = m.symbols.name(x);
            to_new[x] = (n && !hid) ? symbols.intern(*n) : symbols.fresh();
        }
        auto f = [&](atom_id x) { return to_new[x]; };
        module out;
        out.symbols = std::move(symbols);
        for (const rule& r : m.rules)
            out.rules.push_back(remap_rule(r, f));
        canonicalize_rules(out.rules);
        out.input = remap_set(m.input, f);
        out.output = remap_set(m.output, f);
        out.hidden = remap_set(m.hidden, f);
        return canonical(out);
    };
    return strip(a) == strip(b);
}

} // namespace modsm::core
