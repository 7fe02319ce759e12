#include "modsm/io.hpp"

#include "modsm/errors.hpp"
#include "modsm/surface.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace modsm::io {

namespace {

struct token {
    enum class kind { ident, number, dot, comma, implied_by, lbrace, rbrace, eq, le, hash, end };
    kind type = kind::end;
    std::string text;
    std::int64_t value = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class lexer {
public:
    explicit lexer(std::string_view text) : text_(text) {}

    const token& peek() {
        if (!current_)
            current_ = scan();
        return *current_;
    }

    token take() {
        token t = peek();
        current_.reset();
        return t;
    }

    [[noreturn]] void fail(const token& at, const std::string& message) const {
        throw parse_error(message, at.line, at.column);
    }

private:
    token scan() {
        skip_blank();
        token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            t.type = token::kind::end;
            return t;
        }
        char c = text_[pos_];
        if (c == '.') return punct(t, token::kind::dot);
        if (c == ',') return punct(t, token::kind::comma);
        if (c == '{') return punct(t, token::kind::lbrace);
        if (c == '}') return punct(t, token::kind::rbrace);
        if (c == '=') return punct(t, token::kind::eq);
        if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
            advance();
            advance();
            t.type = token::kind::le;
            return t;
        }
        if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
            advance();
            advance();
            t.type = token::kind::implied_by;
            return t;
        }
        if (c == '#') {
            advance();
            t.type = token::kind::hash;
            t.text = ident_chars();
            if (t.text.empty())
                throw parse_error("expected a directive name after '#'", t.line, t.column);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.type = token::kind::number;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                advance();
            t.text = std::string(text_.substr(start, pos_ - start));
            t.value = std::stoll(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.type = token::kind::ident;
            t.text = ident_chars();
            if (pos_ < text_.size() && text_[pos_] == '(')
                t.text += argument_list(t);
            return t;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", t.line, t.column);
    }

    token punct(token& t, token::kind k) {
        advance();
        t.type = k;
        return t;
    }

    std::string ident_chars() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                advance();
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    // Argument lists are part of the flat atom name; whitespace inside is
    // dropped so arc(1, 2) and arc(1,2) intern identically.
    std::string argument_list(const token& at) {
        std::string out;
        int depth = 0;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            if (c == '%')
                throw parse_error("comment inside an argument list", line_, column_);
            advance();
            out += c;
            if (c == '(')
                ++depth;
            if (c == ')' && --depth == 0)
                return out;
        }
        throw parse_error("unterminated argument list", at.line, at.column);
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::optional<token> current_;
};

enum class decl_class { input, output, hidden };

class text_parser {
public:
    explicit text_parser(std::string_view text) : lex_(text), desugar_(symbols_) {}

    module run() {
        while (lex_.peek().type != token::kind::end)
            statement();
        return finish();
    }

private:
    void statement() {
        const token& t = lex_.peek();
        if (t.type == token::kind::hash) {
            header();
            return;
        }
        if (t.type == token::kind::ident && t.text == "compute") {
            compute();
            return;
        }
        rule_statement();
    }

    void header() {
        token t = lex_.take();
        if (t.text == "module") {
            token name = expect(token::kind::ident, "a module name");
            module_name_ = name.text;
            expect(token::kind::dot, "'.'");
            return;
        }
        decl_class cls;
        if (t.text == "input")
            cls = decl_class::input;
        else if (t.text == "output")
            cls = decl_class::output;
        else if (t.text == "hidden")
            cls = decl_class::hidden;
        else
            lex_.fail(t, "unknown directive #" + t.text);
        for (;;) {
            token a = expect(token::kind::ident, "an atom");
            declare(a, cls);
            if (lex_.peek().type != token::kind::comma)
                break;
            lex_.take();
        }
        expect(token::kind::dot, "'.'");
    }

    void declare(const token& at, decl_class cls) {
        atom_id a = symbols_.intern(at.text);
        auto [it, fresh] = declared_.emplace(a, cls);
        if (!fresh && it->second != cls)
            lex_.fail(at, "atom " + at.text + " declared in two interface classes");
    }

    void compute() {
        lex_.take();
        expect(token::kind::lbrace, "'{'");
        surface::compute_statement cs;
        if (lex_.peek().type != token::kind::rbrace)
            cs.body = literal_list();
        expect(token::kind::rbrace, "'}'");
        expect(token::kind::dot, "'.'");
        desugar_.desugar(cs, rules_);
    }

    void rule_statement() {
        std::optional<atom_id> head;
        atom_set choice_heads;
        bool is_choice = false;

        const token& t = lex_.peek();
        if (t.type == token::kind::lbrace) {
            lex_.take();
            is_choice = true;
            for (;;) {
                token a = expect(token::kind::ident, "an atom");
                choice_heads.push_back(symbols_.intern(a.text));
                if (lex_.peek().type != token::kind::comma)
                    break;
                lex_.take();
            }
            sort_unique(choice_heads);
            expect(token::kind::rbrace, "'}'");
        } else if (t.type == token::kind::ident) {
            head = symbols_.intern(lex_.take().text);
        }

        bool has_body = lex_.peek().type == token::kind::implied_by;
        if (!has_body && !head && !is_choice)
            lex_.fail(lex_.peek(), "expected a rule");
        if (!has_body) {
            expect(token::kind::dot, "'.'");
            emit_plain(head, is_choice, choice_heads, {});
            return;
        }
        lex_.take();  // :-

        if (lex_.peek().type == token::kind::number) {
            token bound = lex_.take();
            if (is_choice)
                lex_.fail(bound, "choice rules take a plain body");
            if (!head)
                lex_.fail(bound, "integrity constraints take a plain body");
            if (lex_.peek().type == token::kind::le) {
                lex_.take();
                expect(token::kind::lbrace, "'{'");
                surface::weight_body_rule w;
                w.head = *head;
                w.bound = bound.value;
                if (lex_.peek().type != token::kind::rbrace) {
                    for (;;) {
                        surface::literal l = literal();
                        expect(token::kind::eq, "'='");
                        token wt = expect(token::kind::number, "a weight");
                        w.body.emplace_back(l, wt.value);
                        if (lex_.peek().type != token::kind::comma)
                            break;
                        lex_.take();
                    }
                }
                expect(token::kind::rbrace, "'}'");
                expect(token::kind::dot, "'.'");
                desugar_.desugar(w, rules_);
                return;
            }
            expect(token::kind::lbrace, "'{'");
            surface::cardinality_body_rule c;
            c.head = *head;
            c.bound = bound.value;
            if (lex_.peek().type != token::kind::rbrace)
                c.body = literal_list();
            expect(token::kind::rbrace, "'}'");
            expect(token::kind::dot, "'.'");
            desugar_.desugar(c, rules_);
            return;
       }

        std::vector<surface::literal> body = literal_list();
        expect(token::kind::dot, "'.'");
        emit_plain(head, is_choice, choice_heads, std::move(body));
    }

    void emit_plain(std::optional<atom_id> head, bool is_choice, atom_set choice_heads,
                    std::vector<surface::literal> body) {
        if (is_choice) {
            surface::choice_body_rule c;
            c.heads = std::move(choice_heads);
            c.body = std::move(body);
            desugar_.desugar(c, rules_);
        } else if (head) {
            surface::basic_body_rule b;
            b.head = *head;
            b.body = std::move(body);
            desugar_.desugar(b, rules_);
        } else {
            surface::constraint_rule ic;
            ic.body = std::move(body);
            desugar_.desugar(ic, rules_);
        }
    }

    std::vector<surface::literal> literal_list() {
        std::vector<surface::literal> out;
        for (;;) {
            out.push_back(literal());
            if (lex_.peek().type != token::kind::comma)
                break;
            lex_.take();
        }
        return out;
    }

    surface::literal literal() {
        token t = expect(token::kind::ident, "a literal");
        if (t.text == "not") {
            token a = expect(token::kind::ident, "an atom after 'not'");
            return {symbols_.intern(a.text), true};
        }
        return {symbols_.intern(t.text), false};
    }

    token expect(token::kind k, const std::string& what) {
        token t = lex_.take();
        if (t.type != k)
            lex_.fail(t, "expected " + what);
        return t;
    }

    module finish() {
        atom_set input, output, hidden;
        for (auto [a, cls] : declared_) {
            switch (cls) {
            case decl_class::input: input.push_back(a); break;
            case decl_class::output: output.push_back(a); break;
            case decl_class::hidden: hidden.push_back(a); break;
            }
        }
        sort_unique(input);
        sort_unique(output);
        sort_unique(hidden);
        if (atom_id f = desugar_.integrity_atom())
            set_insert(hidden, f);
        // Undeclared atoms default to the output signature.
        atom_set known = set_union(set_union(input, output), hidden);
        for (atom_id a : set_diff(program_atoms(rules_), known))
            set_insert(output, a);

        atom_set bad_heads = set_inter(program_heads(rules_), input);
        if (!bad_heads.empty()) {
            std::string names;
            for (atom_id a : bad_heads)
                names += (names.empty() ? "" : ", ") + std::string(*symbols_.name(a));
            throw parse_error("interface violation: input atoms may not occur in rule heads: " +
                                  names,
                              1, 1);
        }
        return core::make_module(std::move(symbols_), std::move(rules_), std::move(input),
                                 std::move(output), std::move(hidden),
                                 module_name_.empty() ? std::nullopt
                                                      : std::optional<std::string>(module_name_));
    }

    lexer lex_;
    symbol_table symbols_;
    core::desugarer desugar_;
    program rules_;
    std::map<atom_id, decl_class> declared_;
    std::string module_name_;
};

std::string atom_name(const module& m, atom_id a) {
    auto n = m.symbols.name(a);
    return n ? std::string(*n) : "_" + std::to_string(a);
}

std::string literal_text(const module& m, atom_id a, bool negated) {
    return (negated ? "not " : "") + atom_name(m, a);
}

std::string rule_text(const module& m, const rule& r) {
    if (const auto* c = std::get_if<choice_rule>(&r)) {
        std::string out = "{";
        for (std::size_t i = 0; i < c->heads.size(); ++i)
            out += (i ? ", " : "") + atom_name(m, c->heads[i]);
        out += "}";
        if (!c->pos.empty() || !c->neg.empty()) {
            out += " :- ";
            bool first = true;
            for (atom_id a : c->pos) {
                out += (first ? "" : ", ") + literal_text(m, a, false);
                first = false;
            }
            for (atom_id a : c->neg) {
                out += (first ? "" : ", ") + literal_text(m, a, true);
                first = false;
            }
        }
        return out + ".";
    }
    const auto& w = std::get<weight_rule>(r);
    bool all_one = true;
    for (const auto& l : w.pos)
        all_one = all_one && l.weight == 1;
    for (const auto& l : w.neg)
        all_one = all_one && l.weight == 1;
    std::string head = atom_name(m, w.head);
    if (is_normal(r)) {
        if (w.pos.empty() && w.neg.empty())
            return head + ".";
        std::string out = head + " :- ";
        bool first = true;
        for (const auto& l : w.pos) {
            out += (first ? "" : ", ") + literal_text(m, l.atom, false);
            first = false;
        }
        for (const auto& l : w.neg) {
            out += (first ? "" : ", ") + literal_text(m, l.atom, true);
            first = false;
        }
        return out + ".";
    }
    if (all_one) {
        std::string out = head + " :- " + std::to_string(w.bound) + " {";
        bool first = true;
        for (const auto& l : w.pos) {
            out += (first ? "" : ", ") + literal_text(m, l.atom, false);
            first = false;
        }
        for (const auto& l : w.neg) {
            out += (first ? "" : ", ") + literal_text(m, l.atom, true);
            first = false;
        }
        return out + "}.";
    }
    std::string out = head + " :- " + std::to_string(w.bound) + " <= {";
    bool first = true;
    for (const auto& l : w.pos) {
        out += (first ? "" : ", ") + literal_text(m, l.atom, false) + "=" +
               std::to_string(l.weight);
        first = false;
    }
    for (const auto& l : w.neg) {
        out += (first ? "" : ", ") + literal_text(m, l.atom, true) + "=" +
               std::to_string(l.weight);
        first = false;
    }
    return out + "}.";
}

} // namespace

module parse_text(std::string_view text) {
    return text_parser(text).run();
}

module with_hidden_names(const module& m, std::size_t& hidden_counter) {
    bool any_nameless = false;
    for (atom_id a = 1; a <= m.symbols.size(); ++a)
        if (!m.symbols.name(a))
            any_nameless = true;
    if (!any_nameless)
        return m;
    symbol_table symbols;
    std::vector<atom_id> to_new(m.symbols.size() + 1, 0);
    for (atom_id a = 1; a <= m.symbols.size(); ++a) {
        if (auto n = m.symbols.name(a)) {
            to_new[a] = symbols.intern(*n);
            continue;
        }
        std::string candidate;
        do {
            candidate = "_h" + std::to_string(hidden_counter++);
        } while (m.symbols.lookup(candidate) != 0);
        to_new[a] = symbols.intern(candidate);
    }
    auto f = [&](atom_id a) { return to_new[a]; };
    module out;
    out.symbols = std::move(symbols);
    out.name = m.name;
    for (const rule& r : m.rules)
        out.rules.push_back(remap_rule(r, f));
    out.input = remap_set(m.input, f);
    out.output = remap_set(m.output, f);
    out.hidden = remap_set(m.hidden, f);
    return core::canonical(out);
}

std::string print_text(const module& m, std::size_t& hidden_counter) {
    module named = with_hidden_names(m, hidden_counter);
    std::ostringstream os;
    if (named.name)
        os << "#module " << *named.name << ".\n";
    auto header = [&](const char* directive, const atom_set& atoms) {
        if (atoms.empty())
            return;
        os << directive << " ";
        for (std::size_t i = 0; i < atoms.size(); ++i)
            os << (i ? ", " : "") << atom_name(named, atoms[i]);
        os << ".\n";
    };
    header("#input", named.input);
    header("#output", named.output);
    header("#hidden", named.hidden);
    std::vector<std::string> lines;
    lines.reserve(named.rules.size());
    for (const rule& r : named.rules)
        lines.push_back(rule_text(named, r));
    std::sort(lines.begin(), lines.end());
    for (const std::string& line : lines)
        os << line << "\n";
    return os.str();
}

std::string print_text(const module& m) {
    std::size_t counter = 1;
    return print_text(m, counter);
}

} // namespace modsm::io
