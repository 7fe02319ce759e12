#pragma once

#include "modsm/module.hpp"

#include <memory>
#include <string>
#include <vector>

namespace modsm::completion {

/// Propositional formulas over atoms. Empty conjunction is verum, empty
/// disjunction is falsum; both are kept explicit.
class prop_formula {
public:
    enum class kind { atom, verum, falsum, negation, conjunction, disjunction, implication,
                      equivalence };

    static prop_formula atom(atom_id a);
    static prop_formula verum();
    static prop_formula falsum();
    static prop_formula negation(prop_formula f);
    static prop_formula conjunction(std::vector<prop_formula> fs);
    static prop_formula disjunction(std::vector<prop_formula> fs);
    static prop_formula implication(prop_formula lhs, prop_formula rhs);
    static prop_formula equivalence(prop_formula lhs, prop_formula rhs);

    bool eval(const interpretation& m) const;

    kind node_kind() const { return kind_; }
    atom_id atom_of() const { return atom_; }
    const std::vector<prop_formula>& children() const { return *children_; }

    /// Infix text: !, &, |, ->, <->, true, false.
    std::string to_string(const module& names) const;

private:
    kind kind_ = kind::verum;
    atom_id atom_ = 0;
    std::shared_ptr<std::vector<prop_formula>> children_;
};

/// Clark completion of a normal-rule module: one equivalence per non-input
/// atom; atoms without rules complete to falsum.
prop_formula clark_completion(const module& m);

/// One loop formula per loop of the positive dependency graph.
std::vector<prop_formula> loop_formulas(const module& m, std::size_t loop_cap = 20);

/// Lin-Zhao characterization: M is stable iff it models the completion and
/// every loop formula. Normal-rule modules only.
bool stable_by_lin_zhao(const module& m, const interpretation& m_int, std::size_t loop_cap = 20);

/// Lifts the check to arbitrary modules through the normal-form translation.
bool stable_by_lin_zhao_smodels(const module& m, const interpretation& m_int,
                                std::size_t loop_cap = 20);

/// Completion plus loop formulas as a text file body, one formula per line.
std::string export_formulas(const module& m, std::size_t loop_cap = 20);

} // namespace modsm::completion
