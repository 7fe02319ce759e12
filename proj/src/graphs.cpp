#include "modsm/graphs.hpp"

#include "modsm/algebra.hpp"
#include "modsm/errors.hpp"

#include <algorithm>
#include <sstream>

namespace modsm::graphs {

dep_graph build_dep_graph(const module& m, dep_mode mode) {
    dep_graph g;
    g.mode = mode;
    g.vertices = m.hb();
    g.succ.assign(m.symbols.size() + 1, {});
    const bool with_negative = mode == dep_mode::positive_negative;
    for (const rule& r : m.rules) {
        if (const auto* w = std::get_if<weight_rule>(&r)) {
            for (const auto& l : w->pos)
                g.succ[l.atom].push_back(w->head);
            if (with_negative)
                for (const auto& l : w->neg)
                    g.succ[l.atom].push_back(w->head);
            continue;
        }
        const auto& c = std::get<choice_rule>(r);
        for (atom_id b : c.pos)
            for (atom_id a : c.heads)
                g.succ[b].push_back(a);
        if (with_negative)
            for (atom_id b : c.neg)
                for (atom_id a : c.heads)
                    g.succ[b].push_back(a);
    }
    for (auto& s : g.succ)
        sort_unique(s);
    return g;
}

namespace {

// Iterative Tarjan; emits components with all reachable components first,
// then reverses so that dependencies precede dependents.
struct tarjan {
    const dep_graph& g;
    std::vector<std::uint32_t> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<atom_id> stack;
    std::uint32_t counter = 1;
    std::vector<atom_set> components;

    explicit tarjan(const dep_graph& graph)
        : g(graph),
          index(graph.succ.size(), 0),
          lowlink(graph.succ.size(), 0),
          on_stack(graph.succ.size(), false) {}

    void run(atom_id root) {
        struct frame {
            atom_id v;
            std::size_t next_child;
        };
        std::vector<frame> frames{{root, 0}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            frame& f = frames.back();
            const auto& succ = g.succ[f.v];
            if (f.next_child < succ.size()) {
                atom_id w = succ[f.next_child++];
                if (index[w] == 0) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                if (lowlink[f.v] == index[f.v]) {
                    atom_set comp;
                    for (;;) {
                        atom_id w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == f.v)
                            break;
                    }
                    sort_unique(comp);
                    components.push_back(std::move(comp));
                }
                atom_id child = f.v;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[child]);
            }
        }
    }
};

} // namespace

scc_partition sccs(const dep_graph& g) {
    tarjan t(g);
    for (atom_id v : g.vertices)
        if (t.index[v] == 0)
            t.run(v);
    std::reverse(t.components.begin(), t.components.end());
    scc_partition out;
    out.components = std::move(t.components);
    out.component_of.assign(g.succ.size(), 0);
    for (std::uint32_t i = 0; i < out.components.size(); ++i)
        for (atom_id a : out.components[i])
            out.component_of[a] = i;
    return out;
}

bool mutually_dependent(const module& m1, const module& m2) {
    algebra::composition c = algebra::compose_mapped(m1, m2);
    dep_graph g = build_dep_graph(c.combined, dep_mode::positive);
    scc_partition p = sccs(g);
    atom_set out1 = remap_set(m1.output, [&](atom_id a) { return c.map1()[a]; });
    atom_set out2 = remap_set(m2.output, [&](atom_id a) { return c.map2()[a]; });
    for (const atom_set& comp : p.components)
        if (!set_inter(comp, out1).empty() && !set_inter(comp, out2).empty())
            return true;
    return false;
}

std::vector<std::vector<std::uint32_t>> dep_h(const module& m, const dep_graph& g,
                                              const std::vector<atom_set>& components) {
    const std::uint32_t n = static_cast<std::uint32_t>(components.size());
    std::vector<std::uint32_t> comp_of(m.symbols.size() + 1, n);  // n = not grouped
    for (std::uint32_t i = 0; i < n; ++i)
        for (atom_id a : components[i])
            comp_of[a] = i;

    // Union components whenever a hidden body atom and a head atom of one
    // rule land in distinct components. Edges are symmetric, so connected
    // components of the merge relation are exactly the SCCs of Dep^h.
    std::vector<std::uint32_t> parent(n);
    for (std::uint32_t i = 0; i < n; ++i)
        parent[i] = i;
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    };

    for (const rule& r : m.rules) {
        atom_set hidden_body = set_inter(set_union(rule_pos_body(r), rule_neg_body(r)), m.hidden);
        if (hidden_body.empty())
            continue;
        atom_set heads = rule_heads(r);
        for (atom_id a : hidden_body) {
            if (comp_of[a] >= n)
                continue;
            for (atom_id b : heads)
                if (comp_of[b] < n)
                    unite(comp_of[a], comp_of[b]);
        }
    }

    std::vector<std::vector<std::uint32_t>> groups_by_root(n);
    for (std::uint32_t i = 0; i < n; ++i)
        groups_by_root[find(i)].push_back(i);

    // Order groups topologically by the quotient of g: an edge between groups
    // when some atom edge crosses them. Ties and any cycles introduced by
    // merging resolve through SCC condensation of the quotient.
    std::vector<std::uint32_t> roots;
    for (std::uint32_t i = 0; i < n; ++i)
        if (!groups_by_root[i].empty())
            roots.push_back(i);
    std::vector<std::uint32_t> group_index(n, 0);
    for (std::uint32_t k = 0; k < roots.size(); ++k)
        group_index[roots[k]] = k;

    dep_graph quotient;
    quotient.succ.assign(roots.size(), {});
    for (std::uint32_t k = 0; k < roots.size(); ++k)
        quotient.vertices.push_back(k);
    for (atom_id v : g.vertices) {
        if (comp_of[v] >= n)
            continue;
        std::uint32_t from = group_index[find(comp_of[v])];
        for (atom_id w : g.succ[v]) {
            if (comp_of[w] >= n)
                continue;
            std::uint32_t to = group_index[find(comp_of[w])];
            if (from != to)
                quotient.succ[from].push_back(to);
        }
    }
    for (auto& s : quotient.succ)
        sort_unique(s);

    scc_partition order = sccs(quotient);
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(roots.size());
    for (const atom_set& qc : order.components)
        for (atom_id k : qc) {
            std::vector<std::uint32_t> group = groups_by_root[roots[k]];
            std::sort(group.begin(), group.end());
            out.push_back(std::move(group));
        }
    return out;
}

std::vector<atom_set> loops(const program& rules, std::size_t max_atoms) {
    atom_set hb = program_atoms(rules);
    if (hb.size() > max_atoms)
        throw cap_exceeded("loops: program has " + std::to_string(hb.size()) +
                           " atoms, cap is " + std::to_string(max_atoms));

    module view;
    for (atom_id a : hb)
        while (view.symbols.size() < a)
            view.symbols.fresh();
    view.rules = rules;
    view.output = hb;
    dep_graph g = build_dep_graph(view, dep_mode::positive);
    scc_partition p = sccs(g);

    std::vector<atom_set> out;
    for (const atom_set& comp : p.components) {
        const std::size_t k = comp.size();
        if (k == 0 || k > 8 * sizeof(std::uint64_t))
            continue;
        // Every loop lies inside one SCC; enumerate its subsets.
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << k); ++mask) {
            atom_set candidate;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::uint64_t(1) << i))
                    candidate.push_back(comp[i]);
            if (candidate.size() == 1) {
                if (g.has_edge(candidate[0], candidate[0]))
                    out.push_back(candidate);
                continue;
            }
            // Strong connectivity of the induced subgraph.
            const std::size_t c = candidate.size();
            std::vector<std::vector<bool>> reach(c, std::vector<bool>(c, false));
            for (std::size_t i = 0; i < c; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    reach[i][j] = g.has_edge(candidate[i], candidate[j]);
            for (std::size_t via = 0; via < c; ++via)
                for (std::size_t i = 0; i < c; ++i)
                    if (reach[i][via])
                        for (std::size_t j = 0; j < c; ++j)
                            if (reach[via][j])
                                reach[i][j] = true;
            bool strongly_connected = true;
            for (std::size_t i = 0; i < c && strongly_connected; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    if (!reach[i][j]) {
                        strongly_connected = false;
                        break;
                    }
            if (strongly_connected)
                out.push_back(candidate);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_dot(const dep_graph& g, const module& m) {
    std::ostringstream os;
    os << "digraph dep {\n";
    for (atom_id v : g.vertices)
        os << "  \"" << core::atom_label(m, v) << "\";\n";
    for (atom_id v : g.vertices)
        for (atom_id w : g.succ[v])
            os << "  \"" << core::atom_label(m, v) << "\" -> \"" << core::atom_label(m, w)
               << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace modsm::graphs
