#include "support.hpp"

#include <doctest.h>

using namespace support;

namespace {

std::set<std::pair<std::string, std::string>> edge_names(const module& m,
                                                         const graphs::dep_graph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (atom_id v : g.vertices)
        for (atom_id w : g.succ[v])
            out.insert({core::atom_label(m, v), core::atom_label(m, w)});
    return out;
}

} // namespace

TEST_CASE("dependency graph edges run from bodies to heads") {
    module composed = algebra::compose(mod("#input b. #output a. a :- b."),
                                       mod("#input a. #output b. b :- a."));
    graphs::dep_graph g = graphs::build_dep_graph(composed);
    CHECK(edge_names(composed, g) ==
          std::set<std::pair<std::string, std::string>>{{"b", "a"}, {"a", "b"}});

    module choice_only = mod("#output a. {a}.");
    CHECK(graphs::build_dep_graph(choice_only).edge_count() == 0);

    module p = mod("a :- not b.\nb :- not a.\nc :- a.");
    CHECK(edge_names(p, graphs::build_dep_graph(p, graphs::dep_mode::positive)) ==
          std::set<std::pair<std::string, std::string>>{{"a", "c"}});
    CHECK(edge_names(p, graphs::build_dep_graph(p, graphs::dep_mode::positive_negative)) ==
          std::set<std::pair<std::string, std::string>>{{"b", "a"}, {"a", "b"}, {"a", "c"}});
}

TEST_CASE("strongly connected components in topological order") {
    module loop = algebra::compose(mod("#input b. #output a. a :- b."),
                                   mod("#input a. #output b. b :- a."));
    graphs::scc_partition p = graphs::sccs(graphs::build_dep_graph(loop));
    REQUIRE(p.components.size() == 1);
    CHECK(model_names(loop, p.components[0]) == std::vector<std::string>{"a", "b"});

    module edgeless = mod("#output a, b, c.");
    CHECK(graphs::sccs(graphs::build_dep_graph(edgeless)).components.size() == 3);

    module program = mod("a :- not b.\nb :- not a.\nc :- a.");
    graphs::scc_partition q =
        graphs::sccs(graphs::build_dep_graph(program, graphs::dep_mode::positive_negative));
    REQUIRE(q.components.size() == 2);
    CHECK(model_names(program, q.components[0]) == std::vector<std::string>{"a", "b"});
    CHECK(model_names(program, q.components[1]) == std::vector<std::string>{"c"});
}

TEST_CASE("sccs agree with a reachability oracle") {
    rng_t rng(7301);
    for (int iter = 0; iter < 120; ++iter) {
        gen_options opt;
        opt.max_atoms = iter % 3 == 0 ? 40 : 10;
        opt.max_rules = 14;
        module m = random_module(rng, opt);
        graphs::dep_graph g = graphs::build_dep_graph(
            m, chance(rng, 50) ? graphs::dep_mode::positive
                               : graphs::dep_mode::positive_negative);
        graphs::scc_partition p = graphs::sccs(g);

        std::set<atom_set> got(p.components.begin(), p.components.end());
        CHECK(got == oracle_sccs(g));

        // Topological: an edge never points into an earlier component.
        for (atom_id v : g.vertices)
            for (atom_id w : g.succ[v])
                CHECK(p.index_of(v) <= p.index_of(w));
    }
}

TEST_CASE("mutual dependence is a shared output SCC") {
    module p1 = mod("#input b. #output a. a :- b.");
    module p2 = mod("#input a. #output b. b :- a.");
    CHECK(graphs::mutually_dependent(p1, p2));

    module p = mod("#input b. #output a, c.\na :- b.\na :- not c.");
    module q = mod("#input a. #output b. b :- a.");
    CHECK(graphs::mutually_dependent(p, q));

    CHECK(!graphs::mutually_dependent(hc_select(2), hc_reach(2)));
}

TEST_CASE("mutual dependence is symmetric") {
    rng_t rng(7302);
    for (int iter = 0; iter < 40; ++iter) {
        gen_options opt;
        opt.prefix = "l";
        module m1 = random_module(rng, opt);
        opt.prefix = "r";
        module m2 = random_module(rng, opt);
        if (!algebra::compose_check(m1, m2).ok)
            continue;
        CHECK(graphs::mutually_dependent(m1, m2) == graphs::mutually_dependent(m2, m1));
    }
}

TEST_CASE("hidden closure groups components") {
    module no_hidden = mod("a :- b.\nb.\nc.");
    graphs::dep_graph g = graphs::build_dep_graph(no_hidden);
    graphs::scc_partition p = graphs::sccs(g);
    auto groups = graphs::dep_h(no_hidden, g, p.components);
    CHECK(groups.size() == p.components.size());

    // Hidden h in the body of b <- h ties h's component to b's; the rule
    // h <- a contributes no tie since a is visible.
    module tied = mod("#output a, b. #hidden h.\nh :- a.\nb :- h.\na.");
    graphs::dep_graph g2 = graphs::build_dep_graph(tied);
    graphs::scc_partition p2 = graphs::sccs(g2);
    REQUIRE(p2.components.size() == 3);
    auto groups2 = graphs::dep_h(tied, g2, p2.components);
    REQUIRE(groups2.size() == 2);
    std::set<std::size_t> group_sizes;
    for (const auto& g : groups2)
        group_sizes.insert(g.size());
    CHECK(group_sizes == std::set<std::size_t>{1, 2});
}

TEST_CASE("hidden closure never increases the component count") {
    rng_t rng(7303);
    for (int iter = 0; iter < 60; ++iter) {
        module m = random_module(rng);
        graphs::dep_graph g = graphs::build_dep_graph(m);
        std::vector<atom_set> components;
        for (atom_set& comp : graphs::sccs(g).components)
            if (set_inter(comp, m.input).empty())
                components.push_back(std::move(comp));
        auto groups = graphs::dep_h(m, g, components);
        CHECK(groups.size() <= components.size());
        std::size_t covered = 0;
        for (const auto& group : groups)
            covered += group.size();
        CHECK(covered == components.size());
    }
}

TEST_CASE("loop enumeration matches the definition") {
    module two_cycle = mod("a :- b.\nb :- a.");
    auto loops = graphs::loops(two_cycle.rules);
    REQUIRE(loops.size() == 1);
    CHECK(model_names(two_cycle, loops[0]) == std::vector<std::string>{"a", "b"});

    CHECK(graphs::loops(mod("a :- not b.").rules).empty());

    module with_self = mod("a :- a.\na :- b.\nb :- a.");
    auto all = graphs::loops(with_self.rules);
    REQUIRE(all.size() == 2);
    std::set<std::vector<std::string>> names;
    for (const atom_set& l : all)
        names.insert(model_names(with_self, l));
    CHECK(names == std::set<std::vector<std::string>>{{"a"}, {"a", "b"}});
}

TEST_CASE("loops agree with the exhaustive subset oracle") {
    rng_t rng(7304);
    for (int iter = 0; iter < 60; ++iter) {
        gen_options opt;
        opt.max_atoms = 6;
        opt.input_pct = 0;
        opt.hidden_pct = 0;
        module m = random_module(rng, opt);
        graphs::dep_graph g = graphs::build_dep_graph(m);
        std::set<atom_set> got;
        for (const atom_set& l : graphs::loops(m.rules))
            got.insert(l);

        atom_set hb = program_atoms(m.rules);
        std::set<atom_set> expected;
        const std::uint64_t limit = std::uint64_t(1) << hb.size();
        for (std::uint64_t v = 1; v < limit; ++v) {
            atom_set candidate;
            for (std::size_t i = 0; i < hb.size(); ++i)
                if (v & (std::uint64_t(1) << i))
                    candidate.push_back(hb[i]);
            if (oracle_is_loop(g, candidate))
                expected.insert(candidate);
        }
        CHECK(got == expected);

        // Every loop sits inside one positive SCC; every SCC of size >= 2 is
        // itself a loop.
        graphs::scc_partition p = graphs::sccs(g);
        for (const atom_set& l : got) {
            std::set<std::uint32_t> owners;
            for (atom_id a : l)
                owners.insert(p.index_of(a));
            CHECK(owners.size() == 1);
        }
        for (const atom_set& comp : p.components)
            if (comp.size() >= 2)
                CHECK(got.count(comp) == 1);
    }
}

TEST_CASE("loop enumeration respects the atom cap") {
    std::ostringstream os;
    for (int i = 0; i < 25; ++i)
        os << "x" << i << " :- x" << (i + 1) % 25 << ".\n";
    module big = mod(os.str());
    CHECK_THROWS_AS(graphs::loops(big.rules), cap_exceeded);
    CHECK(graphs::loops(big.rules, 30).size() == 1);
}

TEST_CASE("dot export names every vertex") {
    module m = mod("a :- b.");
    std::string dot = graphs::to_dot(graphs::build_dep_graph(m), m);
    CHECK(dot.find("\"b\" -> \"a\"") != std::string::npos);
}
