#include "modsm/io.hpp"

#include "modsm/errors.hpp"
#include "modsm/surface.hpp"

#include <charconv>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace modsm::io {

namespace {

constexpr std::int64_t max_atom_id = std::int64_t(1) << 31;

class int_scanner {
public:
    explicit int_scanner(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

    std::size_t pos() const { return pos_; }
    std::size_t line() const { return line_; }

    bool at_end() {
        skip_space();
        return pos_ >= data_.size();
    }

    bool at(char c) {
        skip_space();
        return pos_ < data_.size() && data_[pos_] == c;
    }

    std::int64_t next_int(const char* what) {
        skip_space();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(data_.data() + pos_, data_.data() + data_.size(), value);
        if (ec != std::errc())
            throw parse_error(std::string("expected ") + what, line_, 1);
        pos_ = static_cast<std::size_t>(ptr - data_.data());
        return value;
    }

    std::string next_token(const char* what) {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])))
            ++pos_;
        if (start == pos_)
            throw parse_error(std::string("expected ") + what, line_, 1);
        return std::string(data_.substr(start, pos_ - start));
    }

    // Consumes the rest of the current line.
    std::string rest_of_line() {
        std::size_t start = pos_;
        while (pos_ < data_.size() && data_[pos_] != '\n')
            ++pos_;
        return std::string(data_.substr(start, pos_ - start));
    }

private:
    void skip_space() {
        while (pos_ < data_.size() && std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            if (data_[pos_] == '\n')
                ++line_;
            ++pos_;
        }
    }

    std::string_view data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

struct raw_rule {
    int type = 0;
    std::int64_t head = 0;
    std::int64_t bound = 0;
    std::vector<std::int64_t> heads;
    std::vector<std::int64_t> pos;
    std::vector<std::int64_t> neg;
    std::vector<std::int64_t> pos_weights;
    std::vector<std::int64_t> neg_weights;
};

std::int64_t read_atom(int_scanner& sc) {
    std::int64_t a = sc.next_int("an atom id");
    if (a < 1 || a >= max_atom_id)
        throw parse_error("atom id out of range: " + std::to_string(a), sc.line(), 1);
    return a;
}

std::int64_t read_validated(std::int64_t a, const int_scanner& sc) {
    if (a < 1 || a >= max_atom_id)
        throw parse_error("atom id out of range: " + std::to_string(a), sc.line(), 1);
    return a;
}

raw_rule read_rule(int_scanner& sc, int type) {
    raw_rule r;
    r.type = type;
    if (type == 3) {
        std::int64_t nheads = sc.next_int("a head count");
        if (nheads < 1)
            throw parse_error("choice rule needs at least one head", sc.line(), 1);
        for (std::int64_t i = 0; i < nheads; ++i)
            r.heads.push_back(read_atom(sc));
    } else {
        r.head = read_atom(sc);
    }
    if (type == 5)
        r.bound = sc.next_int("a bound");
    std::int64_t nbody = sc.next_int("a body size");
    std::int64_t nneg = sc.next_int("a negative body size");
    if (nbody < 0 || nneg < 0 || nneg > nbody)
        throw parse_error("malformed body counts", sc.line(), 1);
    if (type == 2)
        r.bound = sc.next_int("a bound");
    for (std::int64_t i = 0; i < nneg; ++i)
        r.neg.push_back(read_atom(sc));
    for (std::int64_t i = 0; i < nbody - nneg; ++i)
        r.pos.push_back(read_atom(sc));
    if (type == 5) {
        for (std::int64_t i = 0; i < nneg; ++i)
            r.neg_weights.push_back(sc.next_int("a weight"));
        for (std::int64_t i = 0; i < nbody - nneg; ++i)
            r.pos_weights.push_back(sc.next_int("a weight"));
    }
    return r;
}

} // namespace

module decode_smodels_at(std::string_view data, std::size_t& pos) {
    int_scanner sc(data, pos);

    std::vector<std::int64_t> header_inputs, header_hidden;
    if (sc.at('%')) {
        std::string line = sc.rest_of_line();
        const std::string prefix = "% modsm-iface";
        if (line.compare(0, prefix.size(), prefix) != 0)
            throw parse_error("unknown directive line in numeric input", sc.line(), 1);
        int_scanner hs(line, prefix.size());
        for (;;) {
            std::int64_t v = hs.next_int("an input id or 0");
            if (v == 0)
                break;
            header_inputs.push_back(v);
        }
        for (;;) {
            std::int64_t v = hs.next_int("a hidden id or 0");
            if (v == 0)
                break;
            header_hidden.push_back(v);
        }
        for (std::int64_t v : header_inputs)
            if (v < 1 || v >= max_atom_id)
                throw parse_error("interface header id out of range", 1, 1);
        for (std::int64_t v : header_hidden)
            if (v < 1 || v >= max_atom_id)
                throw parse_error("interface header id out of range", 1, 1);
    }

    std::vector<raw_rule> raw;
    for (;;) {
        std::int64_t type = sc.next_int("a rule type");
        if (type == 0)
            break;
        if (type == 6)
            throw unsupported_feature("minimize rules (type 6) are not supported");
        if (type != 1 && type != 2 && type != 3 && type != 5)
            throw parse_error("unknown rule type " + std::to_string(type), sc.line(), 1);
        raw.push_back(read_rule(sc, static_cast<int>(type)));
    }

    std::map<std::int64_t, std::string> names;
    std::unordered_set<std::string> taken_names;
    for (;;) {
        std::string tok = sc.next_token("a symbol id or 0");
        if (tok == "0")
            break;
        std::int64_t id = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || id < 1 || id >= max_atom_id)
            throw parse_error("malformed symbol line", sc.line(), 1);
        std::string name = sc.next_token("an atom name");
        if (!taken_names.insert(name).second)
            throw parse_error("duplicate symbol name " + name, sc.line(), 1);
        if (!names.emplace(id, std::move(name)).second)
            throw parse_error("duplicate symbol id " + std::to_string(id), sc.line(), 1);
    }

    std::vector<std::int64_t> bplus, bminus;
    if (sc.next_token("B+") != "B+")
        throw parse_error("expected B+ section", sc.line(), 1);
    for (;;) {
        std::int64_t v = sc.next_int("an atom id or 0");
        if (v == 0)
            break;
        bplus.push_back(read_validated(v, sc));
    }
    if (sc.next_token("B-") != "B-")
        throw parse_error("expected B- section", sc.line(), 1);
    for (;;) {
        std::int64_t v = sc.next_int("an atom id or 0");
        if (v == 0)
            break;
        bminus.push_back(read_validated(v, sc));
    }
    sc.next_int("a model count");
    pos = sc.pos();

    // Local atoms in ascending foreign-id order; named when a symbol line
    // exists, nameless (hidden by default) otherwise.
    std::vector<std::int64_t> foreign;
    for (const raw_rule& r : raw) {
        if (r.type == 3)
            foreign.insert(foreign.end(), r.heads.begin(), r.heads.end());
        else
            foreign.push_back(r.head);
        foreign.insert(foreign.end(), r.pos.begin(), r.pos.end());
        foreign.insert(foreign.end(), r.neg.begin(), r.neg.end());
    }
    for (const auto& [id, name] : names)
        foreign.push_back(id);
    foreign.insert(foreign.end(), header_inputs.begin(), header_inputs.end());
    foreign.insert(foreign.end(), header_hidden.begin(), header_hidden.end());
    foreign.insert(foreign.end(), bplus.begin(), bplus.end());
    foreign.insert(foreign.end(), bminus.begin(), bminus.end());
    std::sort(foreign.begin(), foreign.end());
    foreign.erase(std::unique(foreign.begin(), foreign.end()), foreign.end());

    symbol_table symbols;
    std::unordered_map<std::int64_t, atom_id> local;
    local.reserve(foreign.size() * 2);
    for (std::int64_t id : foreign) {
        auto it = names.find(id);
        local.emplace(id, it != names.end() ? symbols.intern(it->second) : symbols.fresh());
    }
    auto lookup = [&](std::int64_t id) { return local.at(id); };

    core::desugarer desugar(symbols);
    program rules;
    for (const raw_rule& r : raw) {
        if (r.type == 3) {
            surface::choice_body_rule c;
            for (std::int64_t h : r.heads)
                c.heads.push_back(lookup(h));
            sort_unique(c.heads);
            for (std::int64_t b : r.pos)
                c.body.push_back({lookup(b), false});
            for (std::int64_t b : r.neg)
                c.body.push_back({lookup(b), true});
            desugar.desugar(c, rules);
        } else if (r.type == 1) {
            surface::basic_body_rule b;
            b.head = lookup(r.head);
            for (std::int64_t x : r.pos)
                b.body.push_back({lookup(x), false});
            for (std::int64_t x : r.neg)
                b.body.push_back({lookup(x), true});
            desugar.desugar(b, rules);
        } else if (r.type == 2) {
            surface::cardinality_body_rule c;
            c.head = lookup(r.head);
            c.bound = r.bound;
            for (std::int64_t x : r.pos)
                c.body.push_back({lookup(x), false});
            for (std::int64_t x : r.neg)
                c.body.push_back({lookup(x), true});
            desugar.desugar(c, rules);
        } else {
            surface::weight_body_rule w;
            w.head = lookup(r.head);
            w.bound = r.bound;
            for (std::size_t i = 0; i < r.pos.size(); ++i)
                w.body.push_back({{lookup(r.pos[i]), false}, r.pos_weights[i]});
            for (std::size_t i = 0; i < r.neg.size(); ++i)
                w.body.push_back({{lookup(r.neg[i]), true}, r.neg_weights[i]});
            desugar.desugar(w, rules);
        }
    }
    if (!bplus.empty() || !bminus.empty()) {
        surface::compute_statement cs;
        for (std::int64_t a : bplus)
            cs.body.push_back({lookup(a), false});
        for (std::int64_t a : bminus)
            cs.body.push_back({lookup(a), true});
        desugar.desugar(cs, rules);
    }

    atom_set input, hidden, output;
    for (std::int64_t id : header_inputs)
        input.push_back(lookup(id));
    for (std::int64_t id : header_hidden)
        hidden.push_back(lookup(id));
    sort_unique(input);
    sort_unique(hidden);
    if (!set_inter(input, hidden).empty())
        throw parse_error("interface header lists an atom as both input and hidden", 1, 1);
    for (atom_id a = 1; a <= symbols.size(); ++a) {
        if (!symbols.name(a)) {
            if (!set_contains(input, a))
                set_insert(hidden, a);
            continue;
        }
        if (!set_contains(input, a) && !set_contains(hidden, a))
            output.push_back(a);
    }
    if (atom_id f = desugar.integrity_atom())
        set_insert(hidden, f);
    sort_unique(output);

    atom_set bad_heads = set_inter(program_heads(rules), input);
    if (!bad_heads.empty())
        throw parse_error("interface violation: input atoms may not occur in rule heads", 1, 1);

    return core::make_module(std::move(symbols), std::move(rules), std::move(input),
                             std::move(output), std::move(hidden));
}

module decode_smodels(std::string_view bytes) {
    std::size_t pos = 0;
    module m = decode_smodels_at(bytes, pos);
    int_scanner rest(bytes, pos);
    if (!rest.at_end())
        throw parse_error("trailing bytes after the module", rest.line(), 1);
    return m;
}

namespace {

void append_int(std::string& out, std::uint64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

void append_sep(std::string& out, std::uint64_t v) {
    out.push_back(' ');
    append_int(out, v);
}

} // namespace

std::string encode_smodels(const module& m) {
    for (atom_id a : m.visible())
        if (!m.symbols.name(a))
            throw error("encode: visible atoms must be named");

    std::string out;
    out.reserve(m.rules.size() * 16 + 64);

    atom_set used = program_atoms(m.rules);
    atom_set listed_hidden;
    for (atom_id a : m.hidden)
        if (m.symbols.name(a) || !set_contains(used, a))
            listed_hidden.push_back(a);
    if (!m.input.empty() || !listed_hidden.empty()) {
        out += "% modsm-iface";
        for (atom_id a : m.input)
            append_sep(out, a);
        out += " 0";
        for (atom_id a : listed_hidden)
            append_sep(out, a);
        out += " 0\n";
    }

    for (const rule& r : m.rules) {
        if (const auto* c = std::get_if<choice_rule>(&r)) {
            out.push_back('3');
            append_sep(out, c->heads.size());
            for (atom_id a : c->heads)
                append_sep(out, a);
            append_sep(out, c->pos.size() + c->neg.size());
            append_sep(out, c->neg.size());
            for (atom_id a : c->neg)
                append_sep(out, a);
            for (atom_id a : c->pos)
                append_sep(out, a);
            out.push_back('\n');
            continue;
        }
        const auto& w = std::get<weight_rule>(r);
        bool all_one = true;
        for (const auto& l : w.pos)
            all_one = all_one && l.weight == 1;
        for (const auto& l : w.neg)
            all_one = all_one && l.weight == 1;
        if (is_normal(r)) {
            out.push_back('1');
            append_sep(out, w.head);
            append_sep(out, w.pos.size() + w.neg.size());
            append_sep(out, w.neg.size());
            for (const auto& l : w.neg)
                append_sep(out, l.atom);
            for (const auto& l : w.pos)
                append_sep(out, l.atom);
        } else if (all_one) {
            out.push_back('2');
            append_sep(out, w.head);
            append_sep(out, w.pos.size() + w.neg.size());
            append_sep(out, w.neg.size());
            append_sep(out, w.bound);
            for (const auto& l : w.neg)
                append_sep(out, l.atom);
            for (const auto& l : w.pos)
                append_sep(out, l.atom);
        } else {
            out.push_back('5');
            append_sep(out, w.head);
            append_sep(out, w.bound);
            append_sep(out, w.pos.size() + w.neg.size());
            append_sep(out, w.neg.size());
            for (const auto& l : w.neg)
                append_sep(out, l.atom);
            for (const auto& l : w.pos)
                append_sep(out, l.atom);
            for (const auto& l : w.neg)
                append_sep(out, l.weight);
            for (const auto& l : w.pos)
                append_sep(out, l.weight);
        }
        out.push_back('\n');
    }
    out += "0\n";
    for (atom_id a = 1; a <= m.symbols.size(); ++a) {
        if (auto n = m.symbols.name(a)) {
            append_int(out, a);
            out.push_back(' ');
            out += *n;
            out.push_back('\n');
        }
    }
    out += "0\nB+\n0\nB-\n0\n1\n";
    return out;
}

} // namespace modsm::io
