#include "modsm/algebra.hpp"

#include "modsm/errors.hpp"
#include "modsm/graphs.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace modsm::algebra {

namespace {

std::unordered_set<std::string_view> name_set(const module& m, const atom_set& atoms) {
    std::unordered_set<std::string_view> out;
    for (atom_id a : atoms)
        if (auto n = m.symbols.name(a))
            out.insert(*n);
    return out;
}

} // namespace

compose_report compose_check(const module& m1, const module& m2) {
    compose_report out;
    auto out2 = name_set(m2, m2.output);
    for (atom_id a : m1.output)
        if (auto n = m1.symbols.name(a))
            if (out2.count(*n))
                out.output_clash.emplace_back(*n);

    auto hb2 = name_set(m2, m2.hb());
    for (atom_id a : m1.hidden)
        if (auto n = m1.symbols.name(a))
            if (hb2.count(*n))
                out.hidden_leak.emplace_back(*n);
    auto hb1 = name_set(m1, m1.hb());
    for (atom_id a : m2.hidden)
        if (auto n = m2.symbols.name(a))
            if (hb1.count(*n) && !std::count(out.hidden_leak.begin(), out.hidden_leak.end(), *n))
                out.hidden_leak.emplace_back(*n);

    std::sort(out.output_clash.begin(), out.output_clash.end());
    std::sort(out.hidden_leak.begin(), out.hidden_leak.end());
    out.ok = out.output_clash.empty() && out.hidden_leak.empty();
    return out;
}

composition compose_all_mapped(const std::vector<module>& modules) {
    std::vector<atom_set> hbs;
    hbs.reserve(modules.size());
    for (const module& m : modules)
        hbs.push_back(m.hb());

    // Global preconditions equal the pairwise ones: no output name owned
    // twice, and every hidden name confined to its own module.
    std::unordered_map<std::string_view, int> hb_owners;   // name -> #modules
    std::unordered_map<std::string_view, int> out_owners;  // name -> #modules with it as output
    std::vector<std::string> output_clash, hidden_leak;
    for (std::size_t i = 0; i < modules.size(); ++i) {
        const module& m = modules[i];
        for (atom_id a : hbs[i])
            if (auto n = m.symbols.name(a))
                ++hb_owners[*n];
        for (atom_id a : m.output)
            if (auto n = m.symbols.name(a))
                ++out_owners[*n];
    }
    for (const auto& [n, count] : out_owners)
        if (count > 1)
            output_clash.emplace_back(n);
    for (const module& m : modules)
        for (atom_id a : m.hidden)
            if (auto n = m.symbols.name(a))
                if (hb_owners[*n] > 1)
                    hidden_leak.emplace_back(*n);
    std::sort(output_clash.begin(), output_clash.end());
    output_clash.erase(std::unique(output_clash.begin(), output_clash.end()), output_clash.end());
    std::sort(hidden_leak.begin(), hidden_leak.end());
    hidden_leak.erase(std::unique(hidden_leak.begin(), hidden_leak.end()), hidden_leak.end());
    if (!output_clash.empty() || !hidden_leak.empty()) {
        std::string what = "composition undefined:";
        if (!output_clash.empty()) {
            what += " output clash on";
            for (const auto& n : output_clash)
                what += " " + n;
        }
        if (!hidden_leak.empty()) {
            what += " hidden atoms leak:";
            for (const auto& n : hidden_leak)
                what += " " + n;
        }
        throw composition_error(what, std::move(output_clash), std::move(hidden_leak));
    }

    // The combined table is canonical by construction: named atoms sorted,
    // then nameless atoms module by module.
    std::vector<std::string_view> names;
    names.reserve(hb_owners.size());
    for (const auto& [n, count] : hb_owners)
        names.push_back(n);
    std::sort(names.begin(), names.end());
    composition out;
    symbol_table symbols;
    for (std::string_view n : names)
        symbols.intern(n);

    std::vector<std::vector<atom_id>> maps(modules.size());
    for (std::size_t i = 0; i < modules.size(); ++i) {
        const module& m = modules[i];
        maps[i].assign(m.symbols.size() + 1, 0);
        for (atom_id a : hbs[i]) {
            auto n = m.symbols.name(a);
            maps[i][a] = n ? symbols.lookup(*n) : symbols.fresh();
        }
    }

    module combined;
    combined.symbols = std::move(symbols);
    std::size_t total_rules = 0;
    for (const module& m : modules)
        total_rules += m.rules.size();
    combined.rules.reserve(total_rules);
    atom_set all_inputs, all_outputs, all_hidden;
    for (std::size_t i = 0; i < modules.size(); ++i) {
        const module& m = modules[i];
        auto f = [&](atom_id a) { return maps[i][a]; };
        for (const rule& r : m.rules)
            combined.rules.push_back(remap_rule(r, f));
        for (atom_id a : m.input)
            all_inputs.push_back(f(a));
        for (atom_id a : m.output)
            all_outputs.push_back(f(a));
        for (atom_id a : m.hidden)
            all_hidden.push_back(f(a));
    }
    canonicalize_rules(combined.rules);
    sort_unique(all_inputs);
    sort_unique(all_outputs);
    sort_unique(all_hidden);
    combined.input = set_diff(all_inputs, all_outputs);
    combined.output = all_outputs;
    combined.hidden = all_hidden;

    out.combined = std::move(combined);
    out.maps = std::move(maps);
    return out;
}

composition compose_mapped(const module& m1, const module& m2) {
    return compose_all_mapped({m1, m2});
}

module compose(const module& m1, const module& m2) {
    return compose_mapped(m1, m2).combined;
}

namespace {

// Shared positive SCC across any two output signatures; returns the first
// offending SCC (combined ids) or an empty set.
atom_set shared_output_scc(const module& combined, const std::vector<atom_set>& outputs) {
    graphs::dep_graph g = graphs::build_dep_graph(combined, graphs::dep_mode::positive);
    graphs::scc_partition p = graphs::sccs(g);
    std::vector<int> owner(combined.symbols.size() + 1, -1);
    for (std::size_t i = 0; i < outputs.size(); ++i)
        for (atom_id a : outputs[i])
            owner[a] = static_cast<int>(i);
    for (const atom_set& comp : p.components) {
        int seen = -1;
        for (atom_id a : comp) {
            if (owner[a] < 0)
                continue;
            if (seen < 0) {
                seen = owner[a];
            } else if (seen != owner[a]) {
                return comp;
            }
        }
    }
    return {};
}

module join_impl(const std::vector<module>& modules) {
    composition c = compose_all_mapped(modules);
    std::vector<atom_set> outputs;
    outputs.reserve(modules.size());
    for (std::size_t i = 0; i < modules.size(); ++i) {
        outputs.push_back(
            remap_set(modules[i].output, [&](atom_id a) { return c.maps[i][a]; }));
    }
    atom_set witness = shared_output_scc(c.combined, outputs);
    if (!witness.empty()) {
        std::vector<std::string> labels = core::atom_labels(c.combined, witness);
        std::string what = "join undefined: modules are mutually dependent through {";
        for (std::size_t i = 0; i < labels.size(); ++i)
            what += (i ? "," : "") + labels[i];
        what += "}";
        throw mutual_dependence_error(what, std::move(labels));
    }
    return c.combined;
}

} // namespace

bool joinable(const module& m1, const module& m2) {
    if (!compose_check(m1, m2).ok)
        return false;
    return !graphs::mutually_dependent(m1, m2);
}

module join(const module& m1, const module& m2) {
    return join_impl({m1, m2});
}

module join_all(const std::vector<module>& modules) {
    if (modules.empty())
        return module{};
    return join_impl(modules);
}

bool compatible(const interpretation& m1_int, const interpretation& m2_int, const module& m1,
                const module& m2) {
    auto visible2 = name_set(m2, m2.visible());
    auto visible1 = name_set(m1, m1.visible());
    std::vector<std::string_view> left, right;
    for (atom_id a : m1_int)
        if (auto n = m1.symbols.name(a))
            if (visible2.count(*n))
                left.push_back(*n);
    for (atom_id a : m2_int)
        if (auto n = m2.symbols.name(a))
            if (visible1.count(*n))
                right.push_back(*n);
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    return left == right;
}

model_set natural_join(const model_set& a1, const model_set& a2, const module& m1,
                       const module& m2) {
    return natural_join_all({a1, a2}, {m1, m2});
}

model_set natural_join_all(const std::vector<model_set>& sets,
                           const std::vector<module>& modules) {
    if (modules.empty())
        return {interpretation{}};
    composition c = compose_all_mapped(modules);

    model_set acc{interpretation{}};
    std::vector<std::vector<std::size_t>> acc_members{{}};  // chosen index per module
    for (std::size_t i = 0; i < modules.size(); ++i) {
        model_set next;
        std::vector<std::vector<std::size_t>> next_members;
        for (std::size_t ai = 0; ai < acc.size(); ++ai) {
            for (std::size_t mi = 0; mi < sets[i].size(); ++mi) {
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j)
                    ok = compatible(sets[j][acc_members[ai][j]], sets[i][mi], modules[j],
                                    modules[i]);
                if (!ok)
                    continue;
                interpretation lifted =
                    remap_set(sets[i][mi], [&](atom_id a) { return c.maps[i][a]; });
                next.push_back(set_union(acc[ai], lifted));
                auto members = acc_members[ai];
                members.push_back(mi);
                next_members.push_back(std::move(members));
            }
        }
        acc = std::move(next);
        acc_members = std::move(next_members);
    }
    canonicalize_models(acc);
    return acc;
}

theorem_report check_module_theorem(const module& m1, const module& m2, std::uint64_t cap) {
    module joined = join(m1, m2);
    theorem_report out;
    out.joined = semantics::stable_models(joined, semantics::strategy::brute_force, cap);
    out.natural = natural_join(semantics::stable_models(m1, semantics::strategy::brute_force, cap),
                               semantics::stable_models(m2, semantics::strategy::brute_force, cap),
                               m1, m2);
    for (const auto& m : out.joined)
        if (!std::binary_search(out.natural.begin(), out.natural.end(), m))
            out.only_joined.push_back(m);
    for (const auto& m : out.natural)
        if (!std::binary_search(out.joined.begin(), out.joined.end(), m))
            out.only_natural.push_back(m);
    out.ok = out.only_joined.empty() && out.only_natural.empty();
    return out;
}

bool check_semantical_join(const module& m1, const module& m2, std::uint64_t cap) {
    composition c = compose_mapped(m1, m2);
    atom_set hb = c.combined.hb();
    if (hb.size() >= 64 || (std::uint64_t(1) << hb.size()) > cap)
        throw cap_exceeded("check_semantical_join: 2^" + std::to_string(hb.size()) +
                           " exceeds the cap of " + std::to_string(cap));

    // Inverses of the operand maps, to project combined interpretations.
    std::vector<atom_id> inv1(c.combined.symbols.size() + 1, 0);
    std::vector<atom_id> inv2(c.combined.symbols.size() + 1, 0);
    for (atom_id a = 1; a < c.map1().size(); ++a)
        if (c.map1()[a])
            inv1[c.map1()[a]] = a;
    for (atom_id a = 1; a < c.map2().size(); ++a)
        if (c.map2()[a])
            inv2[c.map2()[a]] = a;

    const std::uint64_t limit = std::uint64_t(1) << hb.size();
    for (std::uint64_t v = 0; v < limit; ++v) {
        interpretation m;
        for (std::size_t i = 0; i < hb.size(); ++i)
            if (v & (std::uint64_t(1) << i))
                m.push_back(hb[i]);
        interpretation p1;
        interpretation p2;
        for (atom_id a : m) {
            if (inv1[a])
                p1.push_back(inv1[a]);
            if (inv2[a])
                p2.push_back(inv2[a]);
        }
        sort_unique(p1);
        sort_unique(p2);
        bool whole = semantics::is_stable(c.combined, m);
        bool local = semantics::is_stable(m1, p1) && semantics::is_stable(m2, p2);
        if (whole != local)
            return false;
    }
    return true;
}

} // namespace modsm::algebra
