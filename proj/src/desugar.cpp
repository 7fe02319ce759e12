#include "modsm/surface.hpp"

#include "modsm/errors.hpp"

#include <limits>
#include <map>

namespace modsm::core {

using namespace surface;

namespace {

void check_weight(std::int64_t w, const char* what) {
    if (w < 0)
        throw desugar_error(std::string("negative ") + what + " in rule");
    if (w > std::numeric_limits<std::uint32_t>::max())
        throw desugar_error(std::string(what) + " out of range");
}

// Splits literals into positive/negative atom sets; duplicates collapse.
void split_literals(const std::vector<literal>& body, atom_set& pos, atom_set& neg) {
    for (const literal& l : body)
        (l.negated ? neg : pos).push_back(l.atom);
    sort_unique(pos);
    sort_unique(neg);
}

// Duplicate weighted literals of one polarity merge by summing weights.
wlit_vec merge_weights(const std::map<atom_id, std::uint64_t>& acc) {
    wlit_vec out;
    out.reserve(acc.size());
    for (auto [a, w] : acc) {
        if (w > std::numeric_limits<std::uint32_t>::max())
            throw desugar_error("merged weight out of range");
        out.push_back({a, static_cast<std::uint32_t>(w)});
    }
    return out;
}

rule canonical_weight(atom_id head, std::int64_t bound,
                      const std::vector<std::pair<literal, std::int64_t>>& body) {
    check_weight(bound, "bound");
    std::map<atom_id, std::uint64_t> pos, neg;
    for (const auto& [l, w] : body) {
        check_weight(w, "weight");
        (l.negated ? neg : pos)[l.atom] += static_cast<std::uint64_t>(w);
    }
    weight_rule out;
    out.head = head;
    out.bound = static_cast<std::uint64_t>(bound);
    out.pos = merge_weights(pos);
    out.neg = merge_weights(neg);
    return out;
}

rule cardinality_as_weight(atom_id head, std::int64_t bound, const std::vector<literal>& body) {
    check_weight(bound, "bound");
    atom_set pos, neg;
    split_literals(body, pos, neg);
    weight_rule out;
    out.head = head;
    out.bound = static_cast<std::uint64_t>(bound);
    for (atom_id a : pos)
        out.pos.push_back({a, 1});
    for (atom_id a : neg)
        out.neg.push_back({a, 1});
    return out;
}

} // namespace

atom_id desugarer::require_integrity_atom() {
    if (integrity_atom_ == 0)
        integrity_atom_ = symbols_.fresh();
    return integrity_atom_;
}

void desugarer::desugar(const surface_rule& r, program& out) {
    if (const auto* w = std::get_if<weight_body_rule>(&r)) {
        out.push_back(canonical_weight(w->head, w->bound, w->body));
        return;
    }
    if (const auto* c = std::get_if<cardinality_body_rule>(&r)) {
        out.push_back(cardinality_as_weight(c->head, c->bound, c->body));
        return;
    }
    if (const auto* b = std::get_if<basic_body_rule>(&r)) {
        atom_set pos, neg;
        split_literals(b->body, pos, neg);
        out.push_back(make_basic(b->head, std::move(pos), std::move(neg)));
        return;
    }
    if (const auto* c = std::get_if<choice_body_rule>(&r)) {
        if (c->heads.empty())
            throw desugar_error("choice rule with empty head");
        choice_rule out_rule;
        out_rule.heads = c->heads;
        sort_unique(out_rule.heads);
        split_literals(c->body, out_rule.pos, out_rule.neg);
        out.push_back(std::move(out_rule));
        return;
    }
    if (const auto* ic = std::get_if<constraint_rule>(&r)) {
        // <- body becomes f <- body, not f with the shared integrity atom f.
        atom_id f = require_integrity_atom();
        atom_set pos, neg;
        split_literals(ic->body, pos, neg);
        set_insert(neg, f);
        out.push_back(make_basic(f, std::move(pos), std::move(neg)));
        return;
    }
    const auto& cs = std::get<compute_statement>(r);
    // compute {b, not c} is the constraint set { <- not b ; <- c }.
    for (const literal& l : cs.body) {
        constraint_rule ic;
        ic.body.push_back({l.atom, !l.negated});
        desugar(ic, out);
    }
}

program desugar(const surface_rule& r, symbol_table& symbols, atom_id* integrity_atom) {
    desugarer ctx(symbols);
    program out;
    ctx.desugar(r, out);
    if (integrity_atom)
        *integrity_atom = ctx.integrity_atom();
    return out;
}

} // namespace modsm::core
