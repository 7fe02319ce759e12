#include "modsm/decompose.hpp"

#include "modsm/algebra.hpp"
#include "modsm/errors.hpp"
#include "modsm/graphs.hpp"

#include <queue>

namespace modsm::decompose {

program rules_defining(const module& m, const atom_set& d) {
    if (!set_inter(d, m.input).empty())
        throw signature_error("rules_defining: set touches the input signature");
    program out;
    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            atom_set heads = set_inter(c->heads, d);
            if (!heads.empty())
                out.push_back(choice_rule{std::move(heads), c->pos, c->neg});
            continue;
        }
        if (set_contains(d, std::get<weight_rule>(r).head))
            out.push_back(r);
    }
    canonicalize_rules(out);
    return out;
}

namespace {

// Builds a piece with its own compact symbol table. `scratch` must be sized
// to the parent table and zeroed; it is zeroed again before returning, so
// one buffer serves a whole decomposition without quadratic copying.
// `visible` caches m.visible() across pieces.
module build_piece(const module& m, const atom_set& visible, const atom_set& d, program rules,
                   std::vector<atom_id>& scratch) {
    atom_set hb_rules = program_atoms(rules);
    atom_set outside = set_diff(hb_rules, d);
    atom_set piece_atoms = set_union(d, hb_rules);

    module piece;
    bool ordered = true;  // canonical parents yield canonical pieces directly
    std::string_view previous_name;
    bool seen_nameless = false;
    for (atom_id a : piece_atoms) {
        auto n = m.symbols.name(a);
        if (n) {
            if (seen_nameless || (!previous_name.empty() && !(previous_name < *n)))
                ordered = false;
            previous_name = *n;
            scratch[a] = piece.symbols.intern(*n);
        } else {
            seen_nameless = true;
            scratch[a] = piece.symbols.fresh();
        }
    }
    auto f = [&](atom_id a) { return scratch[a]; };
    piece.rules.reserve(rules.size());
    for (const rule& r : rules)
        piece.rules.push_back(remap_rule(r, f));
    canonicalize_rules(piece.rules);
    piece.input = remap_set(set_inter(outside, visible), f);
    piece.output = remap_set(set_inter(d, m.output), f);
    // Hidden body atoms outside D (possible when D is not hidden-closed)
    // remain hidden here; the composition check reports them as leaks.
    piece.hidden = remap_set(
        set_union(set_inter(d, m.hidden), set_inter(outside, m.hidden)), f);
    for (atom_id a : piece_atoms)
        scratch[a] = 0;
    return ordered ? piece : core::canonical(piece);
}

} // namespace

module induced_submodule(const module& m, const atom_set& d) {
    if (!set_subset(d, set_diff(m.hb(), m.input)))
        throw signature_error("induced_submodule: set not within Hb minus input");
    std::vector<atom_id> scratch(m.symbols.size() + 1, 0);
    return build_piece(m, m.visible(), d, rules_defining(m, d), scratch);
}

decomposition split(const module& m, mode md) {
    decomposition out;
    graphs::dep_graph graph = graphs::build_dep_graph(
        m, md == mode::posneg_hidden ? graphs::dep_mode::positive_negative
                                     : graphs::dep_mode::positive);
    graphs::scc_partition partition = graphs::sccs(graph);

    atom_set used = program_atoms(m.rules);
    std::vector<atom_set> components;
    for (atom_set& comp : partition.components) {
        if (!set_inter(comp, m.input).empty())
            continue;
        if (comp.size() == 1 && !set_contains(used, comp[0]))
            continue;  // declared atom with no rule occurrence
        components.push_back(std::move(comp));
    }

    // Group components; hidden closure merges components tied through hidden
    // body atoms.
    std::vector<atom_set> groups;
    if (md == mode::pos) {
        groups = components;
        out.hidden_unsafe = !m.hidden.empty();
    } else {
        for (const auto& group : graphs::dep_h(m, graph, components)) {
            atom_set merged;
            for (std::uint32_t ci : group)
                merged = set_union(merged, components[ci]);
            groups.push_back(std::move(merged));
        }
    }

    // Topological order, ties by smallest atom id: Kahn's algorithm over the
    // group quotient with a min-heap. Quotient cycles (possible in mode
    // pos_hidden) drain through the same heap once no source remains.
    const std::size_t k = groups.size();
    std::vector<std::uint32_t> group_of(m.symbols.size() + 1, k);
    for (std::size_t i = 0; i < k; ++i)
        for (atom_id a : groups[i])
            group_of[a] = static_cast<std::uint32_t>(i);
    std::vector<std::vector<std::uint32_t>> quotient_succ(k);
    std::vector<std::size_t> indegree(k, 0);
    for (atom_id v : graph.vertices) {
        if (v >= group_of.size() || group_of[v] >= k)
            continue;
        for (atom_id w : graph.succ[v]) {
            if (group_of[w] >= k || group_of[w] == group_of[v])
                continue;
            quotient_succ[group_of[v]].push_back(group_of[w]);
        }
    }
    for (auto& s : quotient_succ) {
        sort_unique(s);
        for (std::uint32_t t : s)
            ++indegree[t];
    }
    auto key = [&](std::uint32_t g) { return groups[g].empty() ? 0 : groups[g][0]; };
    auto cmp = [&](std::uint32_t a, std::uint32_t b) { return key(a) > key(b); };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(cmp)> ready(cmp);
    std::vector<bool> emitted(k, false);
    for (std::uint32_t g = 0; g < k; ++g)
        if (indegree[g] == 0)
            ready.push(g);
    std::vector<std::uint32_t> order;
    while (order.size() < k) {
        if (ready.empty()) {
            std::uint32_t best = k;
            for (std::uint32_t g = 0; g < k; ++g)
                if (!emitted[g] && (best == k || key(g) < key(best)))
                    best = g;
            ready.push(best);
            indegree[best] = 0;
        }
        std::uint32_t g = ready.top();
        ready.pop();
        if (emitted[g])
            continue;
        emitted[g] = true;
        order.push_back(g);
        for (std::uint32_t t : quotient_succ[g])
            if (!emitted[t] && --indegree[t] == 0)
                ready.push(t);
    }

    std::vector<atom_id> scratch(m.symbols.size() + 1, 0);

    // Residual module for declared atoms with no rule occurrence.
    atom_set unused_in = set_diff(m.input, used);
    atom_set unused_out = set_diff(m.output, used);
    atom_set unused_hid = set_diff(m.hidden, used);
    if (!unused_in.empty() || !unused_out.empty() || !unused_hid.empty()) {
        module residual;
        for (atom_id a : set_union(set_union(unused_in, unused_out), unused_hid)) {
            auto n = m.symbols.name(a);
            scratch[a] = n ? residual.symbols.intern(*n) : residual.symbols.fresh();
        }
        auto f = [&](atom_id a) { return scratch[a]; };
        residual.input = remap_set(unused_in, f);
        residual.output = remap_set(unused_out, f);
        residual.hidden = remap_set(unused_hid, f);
        for (atom_id a : set_union(set_union(unused_in, unused_out), unused_hid))
            scratch[a] = 0;
        out.parts.push_back(core::canonical(residual));
    }

    // Bulk rule distribution: one pass over the rules, heads route to their
    // groups; choice rules split by head projection.
    std::vector<program> per_group(k);
    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            std::vector<std::pair<std::uint32_t, atom_set>> pieces;
            for (atom_id a : c->heads) {
                std::uint32_t g = group_of[a];
                auto it = std::find_if(pieces.begin(), pieces.end(),
                                       [&](const auto& p) { return p.first == g; });
                if (it == pieces.end())
                    pieces.push_back({g, {a}});
                else
                    it->second.push_back(a);
            }
            for (auto& [g, heads] : pieces) {
                sort_unique(heads);
                per_group[g].push_back(choice_rule{std::move(heads), c->pos, c->neg});
            }
            continue;
        }
        per_group[group_of[std::get<weight_rule>(r).head]].push_back(r);
    }
    atom_set visible = m.visible();
    for (std::uint32_t g : order)
        out.parts.push_back(
            build_piece(m, visible, groups[g], std::move(per_group[g]), scratch));
    return out;
}

module recompose(const std::vector<module>& parts) {
    return algebra::join_all(parts);
}

} // namespace modsm::decompose
