#include "modsm/completion.hpp"

#include "modsm/errors.hpp"
#include "modsm/graphs.hpp"
#include "modsm/translate.hpp"

#include <sstream>

namespace modsm::completion {

prop_formula prop_formula::atom(atom_id a) {
    prop_formula f;
    f.kind_ = kind::atom;
    f.atom_ = a;
    return f;
}

prop_formula prop_formula::verum() {
    prop_formula f;
    f.kind_ = kind::verum;
    return f;
}

prop_formula prop_formula::falsum() {
    prop_formula f;
    f.kind_ = kind::falsum;
    return f;
}

prop_formula prop_formula::negation(prop_formula inner) {
    prop_formula f;
    f.kind_ = kind::negation;
    f.children_ = std::make_shared<std::vector<prop_formula>>();
    f.children_->push_back(std::move(inner));
    return f;
}

prop_formula prop_formula::conjunction(std::vector<prop_formula> fs) {
    if (fs.empty())
        return verum();
    prop_formula f;
    f.kind_ = kind::conjunction;
    f.children_ = std::make_shared<std::vector<prop_formula>>(std::move(fs));
    return f;
}

prop_formula prop_formula::disjunction(std::vector<prop_formula> fs) {
    if (fs.empty())
        return falsum();
    prop_formula f;
    f.kind_ = kind::disjunction;
    f.children_ = std::make_shared<std::vector<prop_formula>>(std::move(fs));
    return f;
}

prop_formula prop_formula::implication(prop_formula lhs, prop_formula rhs) {
    prop_formula f;
    f.kind_ = kind::implication;
    f.children_ = std::make_shared<std::vector<prop_formula>>();
    f.children_->push_back(std::move(lhs));
    f.children_->push_back(std::move(rhs));
    return f;
}

prop_formula prop_formula::equivalence(prop_formula lhs, prop_formula rhs) {
    prop_formula f;
    f.kind_ = kind::equivalence;
    f.children_ = std::make_shared<std::vector<prop_formula>>();
    f.children_->push_back(std::move(lhs));
    f.children_->push_back(std::move(rhs));
    return f;
}

bool prop_formula::eval(const interpretation& m) const {
    switch (kind_) {
    case kind::atom:
        return set_contains(m, atom_);
    case kind::verum:
        return true;
    case kind::falsum:
        return false;
    case kind::negation:
        return !(*children_)[0].eval(m);
    case kind::conjunction:
        for (const auto& c : *children_)
            if (!c.eval(m))
                return false;
        return true;
    case kind::disjunction:
        for (const auto& c : *children_)
            if (c.eval(m))
                return true;
        return false;
    case kind::implication:
        return !(*children_)[0].eval(m) || (*children_)[1].eval(m);
    case kind::equivalence:
        return (*children_)[0].eval(m) == (*children_)[1].eval(m);
    }
    return false;
}

std::string prop_formula::to_string(const module& names) const {
    switch (kind_) {
    case kind::atom:
        return core::atom_label(names, atom_);
    case kind::verum:
        return "true";
    case kind::falsum:
        return "false";
    case kind::negation:
        return "!" + (*children_)[0].to_string(names);
    case kind::conjunction:
    case kind::disjunction: {
        std::string sep = kind_ == kind::conjunction ? " & " : " | ";
        std::string out = "(";
        for (std::size_t i = 0; i < children_->size(); ++i)
            out += (i ? sep : "") + (*children_)[i].to_string(names);
        return out + ")";
    }
    case kind::implication:
        return "(" + (*children_)[0].to_string(names) + " -> " +
               (*children_)[1].to_string(names) + ")";
    case kind::equivalence:
        return "(" + (*children_)[0].to_string(names) + " <-> " +
               (*children_)[1].to_string(names) + ")";
    }
    return "";
}

namespace {

void require_normal(const module& m) {
    for (const rule& r : m.rules)
        if (!is_normal(r))
            throw non_normal_rule("completion requires normal rules");
}

prop_formula body_conjunction(const rule& r) {
    std::vector<prop_formula> parts;
    for (atom_id b : rule_pos_body(r))
        parts.push_back(prop_formula::atom(b));
    for (atom_id c : rule_neg_body(r))
        parts.push_back(prop_formula::negation(prop_formula::atom(c)));
    return prop_formula::conjunction(std::move(parts));
}

} // namespace

prop_formula clark_completion(const module& m) {
    require_normal(m);
    // Input atoms have no defining rules by the module conditions, so the
    // completion ranges over the output and hidden atoms only.
    std::vector<prop_formula> parts;
    atom_set defined = set_union(m.output, m.hidden);
    for (atom_id a : defined) {
        std::vector<prop_formula> bodies;
        for (const rule& r : m.rules)
            if (std::get<weight_rule>(r).head == a)
                bodies.push_back(body_conjunction(r));
        parts.push_back(prop_formula::equivalence(prop_formula::atom(a),
                                                  prop_formula::disjunction(std::move(bodies))));
    }
    return prop_formula::conjunction(std::move(parts));
}

std::vector<prop_formula> loop_formulas(const module& m, std::size_t loop_cap) {
    require_normal(m);
    std::vector<prop_formula> out;
    for (const atom_set& loop : graphs::loops(m.rules, loop_cap)) {
        // External bodies: rules with head in the loop whose positive body
        // avoids the loop.
        std::vector<prop_formula> external;
        for (const rule& r : m.rules) {
            const auto& w = std::get<weight_rule>(r);
            if (!set_contains(loop, w.head))
                continue;
            if (!set_inter(rule_pos_body(r), loop).empty())
                continue;
            external.push_back(body_conjunction(r));
        }
        std::vector<prop_formula> all_false;
        for (atom_id a : loop)
            all_false.push_back(prop_formula::negation(prop_formula::atom(a)));
        out.push_back(prop_formula::implication(
            prop_formula::negation(prop_formula::disjunction(std::move(external))),
            prop_formula::conjunction(std::move(all_false))));
    }
    return out;
}

bool stable_by_lin_zhao(const module& m, const interpretation& m_int, std::size_t loop_cap) {
    if (!clark_completion(m).eval(m_int))
        return false;
    for (const prop_formula& lf : loop_formulas(m, loop_cap))
        if (!lf.eval(m_int))
            return false;
    return true;
}

bool stable_by_lin_zhao_smodels(const module& m, const interpretation& m_int,
                                std::size_t loop_cap) {
    translate::translation t = translate::tr_nlp_mapped(m);
    // The stable models of the translation are the images of the originals
    // under M |-> M + { not-a markers for unchosen choice heads }.
    interpretation lifted = remap_set(m_int, [&](atom_id a) { return t.map[a]; });
    for (atom_id a : program_choiceheads(m.rules))
        if (!set_contains(m_int, a))
            set_insert(lifted, t.complement_of[a]);
    return stable_by_lin_zhao(t.translated, lifted, loop_cap);
}

std::string export_formulas(const module& m, std::size_t loop_cap) {
    std::ostringstream os;
    os << clark_completion(m).to_string(m) << "\n";
    for (const prop_formula& lf : loop_formulas(m, loop_cap))
        os << lf.to_string(m) << "\n";
    return os.str();
}

} // namespace modsm::completion
