#include "modsm/semantics.hpp"

#include "modsm/errors.hpp"

#include <cstdlib>
#include <future>

namespace modsm::semantics {

namespace {

std::uint64_t weight_sum(const interpretation& m, const weight_rule& w) {
    std::uint64_t sum = 0;
    for (const auto& l : w.pos)
        if (set_contains(m, l.atom))
            sum += l.weight;
    for (const auto& l : w.neg)
        if (!set_contains(m, l.atom))
            sum += l.weight;
    return sum;
}

void check_cap(std::size_t atoms, std::uint64_t cap, const char* what) {
    if (atoms >= 64 || (std::uint64_t(1) << atoms) > cap)
        throw cap_exceeded(std::string(what) + ": 2^" + std::to_string(atoms) +
                           " candidate interpretations exceed the cap of " + std::to_string(cap));
}

// Enumerates subsets of `atoms` as binary counters (lowest id = least
// significant bit) and calls fn on each.
template <typename Fn>
void for_each_subset(const atom_set& atoms, Fn&& fn) {
    const std::size_t n = atoms.size();
    for (std::uint64_t v = 0;; ++v) {
        interpretation m;
        for (std::size_t i = 0; i < n; ++i)
            if (v & (std::uint64_t(1) << i))
                m.push_back(atoms[i]);
        fn(m);
        if (v + 1 == (std::uint64_t(1) << n) || n == 0)
            break;
    }
}

} // namespace

bool satisfies(const interpretation& m, const rule& r) {
    const auto* w = std::get_if<weight_rule>(&r);
    if (!w)
        return true;  // choice rules are always satisfied
    if (weight_sum(m, *w) < w->bound)
        return true;
    return set_contains(m, w->head);
}

bool satisfies(const interpretation& m, const program& rules) {
    for (const rule& r : rules)
        if (!satisfies(m, r))
            return false;
    return true;
}

model_set classical_models(const module& m, std::uint64_t cap) {
    atom_set hb = m.hb();
    check_cap(hb.size(), cap, "classical_models");
    model_set out;
    for_each_subset(hb, [&](const interpretation& cand) {
        if (satisfies(cand, m.rules))
            out.push_back(cand);
    });
    canonicalize_models(out);
    return out;
}

positive_program reduct(const module& m, const interpretation& m_int) {
    positive_program out;
    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            // a <- (B minus I) for a in A and M, when B's input part holds
            // in M and no negative literal is contradicted.
            if (!set_subset(set_inter(c->pos, m.input), m_int))
                continue;
            if (!set_inter(m_int, c->neg).empty())
                continue;
            atom_set heads = set_inter(c->heads, m_int);
            if (heads.empty())
                continue;
            atom_set body = set_diff(c->pos, m.input);
            for (atom_id a : heads) {
                weight_rule w;
                w.head = a;
                w.bound = body.size();
                for (atom_id b : body)
                    w.pos.push_back({b, 1});
                out.rules.push_back(std::move(w));
            }
            continue;
        }
        const auto& w = std::get<weight_rule>(r);
        std::uint64_t evaluated = 0;
        weight_rule red;
        red.head = w.head;
        for (const auto& l : w.pos) {
            if (set_contains(m.input, l.atom)) {
                if (set_contains(m_int, l.atom))
                    evaluated += l.weight;
            } else {
                red.pos.push_back(l);
            }
        }
        for (const auto& l : w.neg)
            if (!set_contains(m_int, l.atom))
                evaluated += l.weight;
        red.bound = w.bound > evaluated ? w.bound - evaluated : 0;
        out.rules.push_back(std::move(red));
    }
    return out;
}

interpretation least_model(const positive_program& p, std::size_t atom_bound) {
    // Dowling-Gallier style fixpoint: track each rule's remaining bound and
    // propagate derived atoms through per-atom watcher lists.
    std::vector<std::uint64_t> remaining(p.rules.size());
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> watchers(atom_bound + 1);
    std::vector<bool> truth(atom_bound + 1, false);
    std::vector<atom_id> queue;

    auto derive = [&](atom_id a) {
        if (!truth[a]) {
            truth[a] = true;
            queue.push_back(a);
        }
    };

    for (std::uint32_t i = 0; i < p.rules.size(); ++i) {
        const weight_rule& w = p.rules[i];
        remaining[i] = w.bound;
        if (w.bound == 0) {
            derive(w.head);
            continue;
        }
        for (const auto& l : w.pos)
            if (l.weight > 0)
                watchers[l.atom].push_back({i, l.weight});
    }
    while (!queue.empty()) {
        atom_id a = queue.back();
        queue.pop_back();
        for (auto [ri, weight] : watchers[a]) {
            if (remaining[ri] == 0)
                continue;
            remaining[ri] = remaining[ri] > weight ? remaining[ri] - weight : 0;
            if (remaining[ri] == 0)
                derive(p.rules[ri].head);
        }
    }

    interpretation out;
    for (atom_id a = 1; a <= atom_bound; ++a)
        if (truth[a])
            out.push_back(a);
    return out;
}

bool is_stable(const module& m, const interpretation& m_int) {
    positive_program red = reduct(m, m_int);
    interpretation lm = least_model(red, m.symbols.size());
    return set_diff(m_int, m.input) == lm;
}

std::uint64_t configured_cap() {
    if (const char* env = std::getenv("MODSM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return default_cap;
}

namespace {

model_set stable_models_brute(const module& m, std::uint64_t cap) {
    atom_set hb = m.hb();
    check_cap(hb.size(), cap, "stable_models");
    model_set out;
    for_each_subset(hb, [&](const interpretation& cand) {
        if (is_stable(m, cand))
            out.push_back(cand);
    });
    canonicalize_models(out);
    return out;
}

model_set stable_models_instantiated(const module& m, const atom_set& actual) {
    module inst = m;  // keep ids: add facts and clear input in place
    for (atom_id a : actual)
        inst.rules.push_back(make_fact(a));
    canonicalize_rules(inst.rules);
    inst.output = set_union(m.input, m.output);
    inst.input.clear();

    atom_set rest = set_union(m.output, m.hidden);
    model_set out;
    for_each_subset(rest, [&](const interpretation& n) {
        interpretation cand = set_union(n, actual);
        if (is_stable(inst, cand))
            out.push_back(cand);
    });
    return out;
}

model_set stable_models_by_input(const module& m, std::uint64_t cap, unsigned threads) {
    check_cap(m.hb().size(), cap, "stable_models");
    const std::size_t ni = m.input.size();
    const std::uint64_t assignments = std::uint64_t(1) << ni;

    auto solve_range = [&](std::uint64_t lo, std::uint64_t hi) {
        model_set local;
        for (std::uint64_t v = lo; v < hi; ++v) {
            atom_set actual;
            for (std::size_t i = 0; i < ni; ++i)
                if (v & (std::uint64_t(1) << i))
                    actual.push_back(m.input[i]);
            model_set part = stable_models_instantiated(m, actual);
            local.insert(local.end(), part.begin(), part.end());
        }
        return local;
    };

    model_set out;
    if (threads <= 1 || assignments < 2 * threads) {
        out = solve_range(0, assignments);
    } else {
        std::vector<std::future<model_set>> futures;
        const std::uint64_t chunk = (assignments + threads - 1) / threads;
        for (std::uint64_t lo = 0; lo < assignments; lo += chunk) {
            std::uint64_t hi = std::min(assignments, lo + chunk);
            futures.push_back(
                std::async(std::launch::async, [&, lo, hi] { return solve_range(lo, hi); }));
        }
        for (auto& f : futures) {
            model_set part = f.get();
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    canonicalize_models(out);
    return out;
}

} // namespace

model_set stable_models(const module& m, strategy s, std::uint64_t cap, unsigned threads) {
    if (s == strategy::brute_force)
        return stable_models_brute(m, cap);
    return stable_models_by_input(m, cap, threads);
}

bool is_splitting_set(const module& p, const atom_set& u) {
    for (const rule& r : p.rules) {
        for (atom_id h : rule_heads(r)) {
            if (set_contains(u, h) && !set_subset(rule_atoms(r), u))
                return false;
        }
    }
    return true;
}

namespace {

void require_normal_no_input(const module& p) {
    if (!p.input.empty())
        throw not_splitting_set("splitting requires an empty input signature");
    for (const rule& r : p.rules)
        if (!is_normal(r))
            throw non_normal_rule("splitting requires normal rules");
}

} // namespace

module partial_eval(const module& top, const atom_set& u, const interpretation& x) {
    program rules;
    for (const rule& r : top.rules) {
        if (!is_normal(r))
            throw non_normal_rule("partial_eval requires normal rules");
        atom_set pos = rule_pos_body(r);
        atom_set neg = rule_neg_body(r);
        if (!set_subset(set_inter(pos, u), x))
            continue;
        if (!set_inter(set_inter(neg, u), x).empty())
            continue;
        rules.push_back(
            make_basic(std::get<weight_rule>(r).head, set_diff(pos, u), set_diff(neg, u)));
    }
    atom_set rest = set_diff(top.hb(), u);
    return core::make_module(top.symbols, std::move(rules), {}, rest, {});
}

splitting_result splitting(const module& p, const atom_set& u, std::uint64_t cap) {
    require_normal_no_input(p);
    if (!set_subset(u, p.hb()) || !is_splitting_set(p, u))
        throw not_splitting_set("not a splitting set for the program");

    splitting_result out;
    program bottom_rules, top_rules;
    for (const rule& r : p.rules) {
        if (set_subset(rule_atoms(r), u))
            bottom_rules.push_back(r);
        else
            top_rules.push_back(r);
    }
    // Reusing p's (canonical) symbol table keeps atom ids stable across the
    // bottom, top, and solution interpretations.
    out.bottom = core::make_module(p.symbols, std::move(bottom_rules), {}, u, {});
    out.top = core::make_module(p.symbols, std::move(top_rules), u, set_diff(p.hb(), u), {});

    for (const interpretation& x : stable_models(out.bottom, strategy::brute_force, cap)) {
        module rest = partial_eval(out.top, u, x);
        for (const interpretation& y : stable_models(rest, strategy::brute_force, cap))
            out.solutions.emplace_back(x, y);
    }
    std::sort(out.solutions.begin(), out.solutions.end());
    return out;
}

bool check_splitting_theorem(const module& p, const atom_set& u, std::uint64_t cap) {
    splitting_result s = splitting(p, u, cap);
    model_set from_solutions;
    for (const auto& [x, y] : s.solutions)
        from_solutions.push_back(set_union(x, y));
    canonicalize_models(from_solutions);
    return from_solutions == stable_models(p, strategy::brute_force, cap);
}

} // namespace modsm::semantics
