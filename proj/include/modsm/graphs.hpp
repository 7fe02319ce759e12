#pragma once

#include "modsm/module.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace modsm::graphs {

enum class dep_mode { positive, positive_negative };

/// Atom-level dependency graph: edge (b, a) when b occurs in a body whose
/// head contains a (negative body occurrences included in positive_negative
/// mode only).
struct dep_graph {
    atom_set vertices;                       // Hb of the module
    std::vector<std::vector<atom_id>> succ;  // indexed by atom id
    dep_mode mode = dep_mode::positive;

    bool has_edge(atom_id from, atom_id to) const {
        if (from >= succ.size())
            return false;
        const auto& s = succ[from];
        return std::binary_search(s.begin(), s.end(), to);
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& s : succ)
            n += s.size();
        return n;
    }
};

/// Disjoint components covering the vertex set, topologically sorted with
/// dependencies before dependents; deterministic for canonical atom order.
struct scc_partition {
    std::vector<atom_set> components;
    std::vector<std::uint32_t> component_of;  // indexed by atom id

    std::uint32_t index_of(atom_id a) const { return component_of[a]; }
};

dep_graph build_dep_graph(const module& m, dep_mode mode = dep_mode::positive);

scc_partition sccs(const dep_graph& g);

/// True when Dep(m1 (+) m2) has an SCC intersecting both output signatures.
bool mutually_dependent(const module& m1, const module& m2);

/// Groups the given components so that every component is closed under
/// dependencies caused by hidden atoms: components are merged whenever a
/// hidden atom of one occurs in a body whose head lies in another. Returns
/// the grouping as lists of indices into `components`, in topological order
/// of the grouped graph (cycles between groups, which the merge may create,
/// are broken deterministically).
std::vector<std::vector<std::uint32_t>> dep_h(const module& m, const dep_graph& g,
                                              const std::vector<atom_set>& components);

/// All loops of the positive dependency graph of `rules`: non-empty vertex
/// sets whose induced subgraph is strongly connected with at least one edge.
/// Singletons count when a self-edge exists.
std::vector<atom_set> loops(const program& rules, std::size_t max_atoms = 20);

/// DOT text of the graph for debugging.
std::string to_dot(const dep_graph& g, const module& m);

} // namespace modsm::graphs
