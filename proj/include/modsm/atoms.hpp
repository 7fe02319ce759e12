#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modsm {

/// Atoms are interned per document; 0 is never a valid id.
using atom_id = std::uint32_t;

/// Sorted duplicate-free vector of atom ids.
using atom_set = std::vector<atom_id>;

inline void sort_unique(atom_set& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool set_contains(const atom_set& s, atom_id a) {
    return std::binary_search(s.begin(), s.end(), a);
}

inline atom_set set_union(const atom_set& a, const atom_set& b) {
    atom_set out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline atom_set set_inter(const atom_set& a, const atom_set& b) {
    atom_set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline atom_set set_diff(const atom_set& a, const atom_set& b) {
    atom_set out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool set_subset(const atom_set& a, const atom_set& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool set_disjoint(const atom_set& a, const atom_set& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return false;
    }
    return true;
}

inline void set_insert(atom_set& s, atom_id a) {
    auto it = std::lower_bound(s.begin(), s.end(), a);
    if (it == s.end() || *it != a)
        s.insert(it, a);
}

/// Per-document symbol table. Ids are dense and 1-based; an empty name marks
/// a machine-generated hidden atom that has not been given a printable name.
class symbol_table {
public:
    /// Returns the id registered for `name`, interning it if new.
    atom_id intern(std::string_view name) {
        auto it = index_.find(std::string(name));
        if (it != index_.end())
            return it->second;
        names_.emplace_back(name);
        atom_id id = static_cast<atom_id>(names_.size());
        index_.emplace(names_.back(), id);
        return id;
    }

    /// Allocates a fresh nameless atom.
    atom_id fresh() {
        names_.emplace_back();
        return static_cast<atom_id>(names_.size());
    }

    /// Name of `id`, or nullopt for nameless atoms.
    std::optional<std::string_view> name(atom_id id) const {
        if (id == 0 || id > names_.size() || names_[id - 1].empty())
            return std::nullopt;
        return std::string_view(names_[id - 1]);
    }

    /// Id registered for `name`, or 0 if absent.
    atom_id lookup(std::string_view name) const {
        auto it = index_.find(std::string(name));
        return it == index_.end() ? 0 : it->second;
    }

    std::size_t size() const { return names_.size(); }

    bool operator==(const symbol_table& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, atom_id> index_;
};

} // namespace modsm
