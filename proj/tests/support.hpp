#pragma once

#include "modsm/algebra.hpp"
#include "modsm/completion.hpp"
#include "modsm/decompose.hpp"
#include "modsm/equivalence.hpp"
#include "modsm/errors.hpp"
#include "modsm/graphs.hpp"
#include "modsm/io.hpp"
#include "modsm/module.hpp"
#include "modsm/semantics.hpp"
#include "modsm/surface.hpp"
#include "modsm/translate.hpp"

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace support {

using namespace modsm;
using rng_t = std::mt19937;

inline int pick(rng_t& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(rng_t& rng, int percent) {
    return pick(rng, 0, 99) < percent;
}

inline module mod(const std::string& text) {
    return io::parse_text(text);
}

inline std::vector<std::string> model_names(const module& m, const interpretation& atoms) {
    std::vector<std::string> out;
    for (atom_id a : atoms)
        out.push_back(core::atom_label(m, a));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::set<std::vector<std::string>> named_models(const module& m, const model_set& ms) {
    std::set<std::vector<std::string>> out;
    for (const interpretation& model : ms)
        out.insert(model_names(m, model));
    return out;
}

inline std::set<std::vector<std::string>> named_stable_models(
    const module& m, std::uint64_t cap = semantics::default_cap) {
    return named_models(m, semantics::stable_models(m, semantics::strategy::brute_force, cap));
}

// ---------------------------------------------------------------- generators

struct gen_options {
    int min_atoms = 2;
    int max_atoms = 7;
    int max_rules = 7;
    int max_body = 3;
    int input_pct = 25;
    int hidden_pct = 20;
    int choice_pct = 35;
    int weight_pct = 40;  // among non-choice rules: general weight vs basic
    std::string prefix = "x";
};

inline module random_module(rng_t& rng, const gen_options& opt = {}) {
    const int n = pick(rng, opt.min_atoms, opt.max_atoms);
    symbol_table symbols;
    std::vector<atom_id> atoms;
    for (int i = 0; i < n; ++i)
        atoms.push_back(symbols.intern(opt.prefix + std::to_string(i)));

    atom_set input, output, hidden;
    for (atom_id a : atoms) {
        int r = pick(rng, 0, 99);
        if (r < opt.input_pct)
            input.push_back(a);
        else if (r < opt.input_pct + opt.hidden_pct)
            hidden.push_back(a);
        else
            output.push_back(a);
    }
    if (input.size() == atoms.size()) {
        output.push_back(input.back());
        input.pop_back();
    }
    sort_unique(input);
    sort_unique(output);
    sort_unique(hidden);

    atom_set heads = set_diff(atom_set(atoms.begin(), atoms.end()), input);
    program rules;
    const int nr = pick(rng, 0, opt.max_rules);
    for (int i = 0; i < nr; ++i) {
        atom_set pos, neg;
        const int nb = pick(rng, 0, opt.max_body);
        for (int b = 0; b < nb; ++b)
            (chance(rng, 50) ? pos : neg).push_back(atoms[pick(rng, 0, n - 1)]);
        sort_unique(pos);
        sort_unique(neg);
        if (chance(rng, opt.choice_pct)) {
            atom_set ch;
            const int nh = pick(rng, 1, 2);
            for (int h = 0; h < nh; ++h)
                ch.push_back(heads[pick(rng, 0, static_cast<int>(heads.size()) - 1)]);
            sort_unique(ch);
            rules.push_back(choice_rule{std::move(ch), std::move(pos), std::move(neg)});
            continue;
        }
        atom_id head = heads[pick(rng, 0, static_cast<int>(heads.size()) - 1)];
        if (chance(rng, opt.weight_pct)) {
            weight_rule w;
            w.head = head;
            std::uint64_t total = 0;
            for (atom_id a : pos) {
                std::uint32_t weight = static_cast<std::uint32_t>(pick(rng, 0, 3));
                w.pos.push_back({a, weight});
                total += weight;
            }
            for (atom_id a : neg) {
                std::uint32_t weight = static_cast<std::uint32_t>(pick(rng, 0, 3));
                w.neg.push_back({a, weight});
                total += weight;
            }
            w.bound = static_cast<std::uint64_t>(pick(rng, 0, static_cast<int>(total) + 1));
            rules.push_back(std::move(w));
        } else {
            rules.push_back(make_basic(head, std::move(pos), std::move(neg)));
        }
    }
    return core::make_module(std::move(symbols), std::move(rules), std::move(input),
                             std::move(output), std::move(hidden));
}

inline module random_normal_module(rng_t& rng, gen_options opt = {}) {
    opt.choice_pct = 0;
    opt.weight_pct = 0;
    return random_module(rng, opt);
}

/// Joinable pair: disjoint output/hidden name spaces, inputs may resolve
/// against the partner; resamples until the join is defined.
inline std::pair<module, module> random_joinable_pair(rng_t& rng, gen_options opt = {},
                                                      bool normal_only = false) {
    for (;;) {
        gen_options left = opt;
        gen_options right = opt;
        left.prefix = "l";
        right.prefix = "r";
        if (normal_only) {
            left.choice_pct = right.choice_pct = 0;
            left.weight_pct = right.weight_pct = 0;
        }
        module m1 = random_module(rng, left);
        module m2 = random_module(rng, right);
        // Cross-wire some inputs to the partner's outputs by renaming.
        auto crosswire = [&](module& m, const module& other) {
            if (m.input.empty() || other.output.empty())
                return;
            symbol_table symbols;
            std::vector<atom_id> to_new(m.symbols.size() + 1, 0);
            for (atom_id a = 1; a <= m.symbols.size(); ++a) {
                if (set_contains(m.input, a) && chance(rng, 60)) {
                    atom_id pick_out =
                        other.output[pick(rng, 0, static_cast<int>(other.output.size()) - 1)];
                    std::string name(*other.symbols.name(pick_out));
                    if (m.symbols.lookup(name) == 0 || set_contains(m.input, m.symbols.lookup(name))) {
                        atom_id fresh = symbols.intern(name);
                        to_new[a] = fresh;
                        continue;
                    }
                }
                auto n = m.symbols.name(a);
                to_new[a] = n ? symbols.intern(*n) : symbols.fresh();
            }
            auto f = [&](atom_id a) { return to_new[a]; };
            module out;
            out.symbols = std::move(symbols);
            for (const rule& r : m.rules)
                out.rules.push_back(remap_rule(r, f));
            out.input = remap_set(m.input, f);
            out.output = remap_set(m.output, f);
            out.hidden = remap_set(m.hidden, f);
            m = core::canonical(out);
        };
        crosswire(m1, m2);
        crosswire(m2, m1);
        if (!core::is_valid(m1) || !core::is_valid(m2))
            continue;
        if (algebra::joinable(m1, m2))
            return {m1, m2};
    }
}

/// Renames the hidden atoms of m apart; the result is modularly equivalent
/// by construction.
inline module rename_hidden(const module& m, const std::string& suffix) {
    symbol_table symbols;
    std::vector<atom_id> to_new(m.symbols.size() + 1, 0);
    for (atom_id a = 1; a <= m.symbols.size(); ++a) {
        auto n = m.symbols.name(a);
        if (!n) {
            to_new[a] = symbols.fresh();
            continue;
        }
        std::string name(*n);
        if (set_contains(m.hidden, a))
            name += suffix;
        to_new[a] = symbols.intern(name);
    }
    auto f = [&](atom_id a) { return to_new[a]; };
    module out;
    out.symbols = std::move(symbols);
    for (const rule& r : m.rules)
        out.rules.push_back(remap_rule(r, f));
    out.input = remap_set(m.input, f);
    out.output = remap_set(m.output, f);
    out.hidden = remap_set(m.hidden, f);
    return core::canonical(out);
}

/// Random context joinable with both p and q; some context inputs are wired
/// to p's outputs so the composition is not vacuous.
inline std::optional<module> random_context(rng_t& rng, const module& p, const module& q) {
    for (int attempt = 0; attempt < 30; ++attempt) {
        gen_options opt;
        opt.max_atoms = 4;
        opt.prefix = "ctx";
        opt.hidden_pct = 10;
        module r = random_module(rng, opt);
        if (!p.output.empty() && !r.input.empty() && chance(rng, 70)) {
            symbol_table symbols;
            std::vector<atom_id> to_new(r.symbols.size() + 1, 0);
            for (atom_id a = 1; a <= r.symbols.size(); ++a) {
                if (set_contains(r.input, a) && chance(rng, 60)) {
                    atom_id target =
                        p.output[pick(rng, 0, static_cast<int>(p.output.size()) - 1)];
                    to_new[a] = symbols.intern(*p.symbols.name(target));
                } else {
                    to_new[a] = symbols.intern(*r.symbols.name(a));
                }
            }
            auto f = [&](atom_id a) { return to_new[a]; };
            module out;
            out.symbols = std::move(symbols);
            for (const rule& rr : r.rules)
                out.rules.push_back(remap_rule(rr, f));
            out.input = remap_set(r.input, f);
            out.output = remap_set(r.output, f);
            out.hidden = remap_set(r.hidden, f);
            r = core::canonical(out);
        }
        if (core::is_valid(r) && algebra::joinable(p, r) && algebra::joinable(q, r))
            return r;
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ oracles

/// Reachability-based SCC computation, independent of the Tarjan path.
inline std::set<atom_set> oracle_sccs(const graphs::dep_graph& g) {
    const std::vector<atom_id>& vs = g.vertices;
    const std::size_t n = vs.size();
    std::vector<std::size_t> index(g.succ.size(), n);
    for (std::size_t i = 0; i < n; ++i)
        index[vs[i]] = i;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (atom_id w : g.succ[vs[i]])
            reach[i][index[w]] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j])
                        reach[i][j] = true;
    std::set<atom_set> out;
    for (std::size_t i = 0; i < n; ++i) {
        atom_set comp;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i])
                comp.push_back(vs[j]);
        sort_unique(comp);
        out.insert(comp);
    }
    return out;
}

/// Loop test straight from the definition: every ordered pair joined by a
/// non-zero-length path inside the set.
inline bool oracle_is_loop(const graphs::dep_graph& g, const atom_set& candidate) {
    if (candidate.empty())
        return false;
    const std::size_t n = candidate.size();
    std::vector<std::vector<bool>> path(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            path[i][j] = g.has_edge(candidate[i], candidate[j]);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (path[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (path[k][j] && !path[i][j]) {
                            path[i][j] = true;
                            changed = true;
                        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!path[i][j])
                return false;
    return true;
}

/// Independent restatement of the four module conditions.
inline bool oracle_valid_module(const module& m) {
    std::set<atom_id> in(m.input.begin(), m.input.end());
    std::set<atom_id> out(m.output.begin(), m.output.end());
    std::set<atom_id> hid(m.hidden.begin(), m.hidden.end());
    for (atom_id a : in)
        if (out.count(a) || hid.count(a))
            return false;
    for (atom_id a : out)
        if (hid.count(a))
            return false;
    for (const rule& r : m.rules) {
        for (atom_id a : rule_atoms(r))
            if (!in.count(a) && !out.count(a) && !hid.count(a))
                return false;
        for (atom_id a : rule_heads(r))
            if (in.count(a))
                return false;
        if (const auto* c = std::get_if<choice_rule>(&r))
            if (c->heads.empty())
                return false;
    }
    return true;
}

// ------------------------------------------------- Hamiltonian cycle models

inline module hc_select(int n) {
    std::ostringstream os;
    os << "#hidden c, d.\n";
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            os << "#input arc(" << x << "," << y << ").\n";
            os << "#output hc(" << x << "," << y << ").\n";
            os << "{hc(" << x << "," << y << ")} :- arc(" << x << "," << y << ").\n";
        }
    auto list = [&](int fixed, bool row, bool negate) {
        std::string out;
        for (int k = 1; k <= n; ++k) {
            if (!out.empty())
                out += ", ";
            if (negate)
                out += "not ";
            out += "hc(";
            out += row ? std::to_string(fixed) + "," + std::to_string(k)
                       : std::to_string(k) + "," + std::to_string(fixed);
            out += ")";
        }
        return out;
    };
    for (int x = 1; x <= n; ++x) {
        os << "c :- 2 {" << list(x, true, false) << "}.\n";
        os << "c :- " << list(x, true, true) << ".\n";
        os << "c :- 2 {" << list(x, false, false) << "}.\n";
        os << "c :- " << list(x, false, true) << ".\n";
    }
    os << "d :- not d, c.\n";
    return mod(os.str());
}

inline module hc_reach(int n) {
    std::ostringstream os;
    os << "#hidden e.\n";
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            os << "#input hc(" << x << "," << y << ").\n";
    for (int y = 1; y <= n; ++y) {
        os << "#output reached(" << y << ").\n";
        os << "reached(" << y << ") :- hc(1," << y << ").\n";
        for (int x = 2; x <= n; ++x)
            os << "reached(" << y << ") :- reached(" << x << "), hc(" << x << "," << y << ").\n";
        os << "e :- not e, not reached(" << y << ").\n";
    }
    return mod(os.str());
}

inline module hc_combined(int n) {
    std::ostringstream os;
    os << "#hidden f.\n";
    for (int x = 1; x <= n; ++x) {
        os << "#output reached(" << x << ").\n";
        for (int y = 1; y <= n; ++y) {
            os << "#input arc(" << x << "," << y << ").\n";
            os << "#output hc(" << x << "," << y << ").\n";
        }
    }
    for (int x = 1; x <= n; ++x) {
        os << "{hc(1," << x << ")} :- arc(1," << x << ").\n";
        os << "f :- not f, not reached(" << x << ").\n";
        for (int y = 1; y <= n; ++y) {
            os << "{hc(" << x << "," << y << ")} :- reached(" << x << "), arc(" << x << ","
               << y << ").\n";
            os << "reached(" << y << ") :- hc(" << x << "," << y << ").\n";
            for (int z = 1; z <= n; ++z) {
                if (z != y)
                    os << "f :- not f, hc(" << x << "," << y << "), hc(" << x << "," << z
                       << ").\n";
                if (z != x)
                    os << "f :- not f, hc(" << x << "," << y << "), hc(" << z << "," << y
                       << ").\n";
            }
        }
    }
    return mod(os.str());
}

} // namespace support
