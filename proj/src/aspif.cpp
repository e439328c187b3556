#include "aspex/aspif.hpp"

#include <charconv>
#include <sstream>

namespace aspex {

aspif_error::aspif_error(kind k, std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), kind_(k), line_(line) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

class line_reader {
public:
    line_reader(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    bool at_end() {
        skip_space();
        return pos_ == text_.size();
    }

    std::int64_t next_int(const char* what) {
        skip_space();
        if (pos_ == text_.size()) {
            throw aspif_error(aspif_error::kind::truncated_statement, line_, std::string("missing ") + what);
        }
        std::size_t end = pos_;
        while (end < text_.size() && !is_space(text_[end])) ++end;
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
        if (ec != std::errc() || ptr != text_.data() + end) {
            throw aspif_error(aspif_error::kind::malformed_statement, line_,
                              std::string("expected integer for ") + what + ", got '" +
                                  std::string(text_.substr(pos_, end - pos_)) + "'");
        }
        pos_ = end;
        return value;
    }

    std::int64_t next_count(const char* what) {
        auto n = next_int(what);
        if (n < 0) throw aspif_error(aspif_error::kind::malformed_statement, line_, std::string("negative ") + what);
        return n;
    }

    // Symbols may contain blanks, so they are read by their declared length.
    std::string next_chars(std::size_t n) {
        if (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
        if (pos_ + n > text_.size()) {
            throw aspif_error(aspif_error::kind::truncated_statement, line_, "symbol shorter than declared length");
        }
        std::string out(text_.substr(pos_, n));
        pos_ += n;
        return out;
    }

    void expect_end() {
        if (!at_end()) {
            throw aspif_error(aspif_error::kind::malformed_statement, line_,
                              "unexpected trailing fields '" + std::string(text_.substr(pos_)) + "'");
        }
    }

    std::size_t line() const { return line_; }

private:
    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

void check_literal(std::int64_t lit, const line_reader& in) {
    if (lit == 0) throw aspif_error(aspif_error::kind::malformed_statement, in.line(), "literal 0 is not allowed");
}

void check_atom(std::int64_t atom, const line_reader& in) {
    if (atom <= 0) throw aspif_error(aspif_error::kind::malformed_statement, in.line(), "atom ids must be positive");
}

rule_statement parse_rule(line_reader& in) {
    rule_statement r;
    auto ht = in.next_int("head type");
    if (ht != 0 && ht != 1) throw aspif_error(aspif_error::kind::malformed_statement, in.line(), "bad head type");
    r.head = static_cast<head_type>(ht);
    auto n = in.next_count("head size");
    for (std::int64_t i = 0; i < n; ++i) {
        auto a = in.next_int("head atom");
        check_atom(a, in);
        r.head_atoms.push_back(a);
    }
    auto bt = in.next_int("body type");
    if (bt == 0) {
        r.body.kind = body_kind::normal;
        auto m = in.next_count("body size");
        for (std::int64_t i = 0; i < m; ++i) {
            auto l = in.next_int("body literal");
            check_literal(l, in);
            r.body.literals.push_back(l);
        }
    } else if (bt == 1) {
        r.body.kind = body_kind::weight;
        r.body.lower_bound = in.next_int("lower bound");
        auto m = in.next_count("body size");
        for (std::int64_t i = 0; i < m; ++i) {
            auto l = in.next_int("body literal");
            check_literal(l, in);
            auto w = in.next_int("weight");
            if (w < 0) throw aspif_error(aspif_error::kind::malformed_statement, in.line(), "negative weight");
            r.body.literals.push_back(l);
            r.body.weights.push_back(w);
        }
    } else {
        throw aspif_error(aspif_error::kind::malformed_statement, in.line(), "bad body type");
    }
    return r;
}

output_statement parse_output(line_reader& in) {
    output_statement o;
    auto len = in.next_count("symbol length");
    o.symbol = in.next_chars(static_cast<std::size_t>(len));
    if (o.symbol.empty()) throw aspif_error(aspif_error::kind::malformed_statement, in.line(), "empty symbol");
    auto n = in.next_count("condition size");
    for (std::int64_t i = 0; i < n; ++i) {
        auto l = in.next_int("condition literal");
        check_literal(l, in);
        o.condition.push_back(l);
    }
    return o;
}

void parse_header(std::string_view line, std::size_t lineno, aspif_program& p) {
    std::istringstream in{std::string(line)};
    std::string word;
    in >> word;
    if (word != "asp") throw aspif_error(aspif_error::kind::malformed_header, lineno, "expected 'asp <major> <minor> <rev>'");
    for (auto& v : p.version) {
        if (!(in >> v)) throw aspif_error(aspif_error::kind::malformed_header, lineno, "incomplete version triple");
    }
    while (in >> word) p.header_tags.push_back(word);
    if (p.version != std::array<int, 3>{1, 0, 0}) {
        throw aspif_error(aspif_error::kind::malformed_header, lineno, "unsupported aspif version");
    }
}

}  // namespace

aspif_program parse_aspif(std::string_view text) {
    aspif_program program;
    bool have_header = false;
    bool terminated = false;
    std::size_t lineno = 0;

    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;

        auto line = trim(raw);
        if (line.empty() || line.front() == '%') continue;
        if (terminated) {
            throw aspif_error(aspif_error::kind::malformed_statement, lineno, "content after terminator");
        }
        if (!have_header) {
            parse_header(line, lineno, program);
            have_header = true;
            continue;
        }

        line_reader in(line, lineno);
        auto tag = in.next_int("statement tag");
        switch (tag) {
            case 0:
                in.expect_end();
                terminated = true;
                break;
            case 1:
                program.statements.emplace_back(parse_rule(in));
                in.expect_end();
                break;
            case 4:
                program.statements.emplace_back(parse_output(in));
                in.expect_end();
                break;
            case 5: {
                external_statement e;
                e.atom = in.next_int("external atom");
                check_atom(e.atom, in);
                e.value = in.next_int("external value");
                in.expect_end();
                program.statements.emplace_back(e);
                break;
            }
            default:
                if (tag < 0) throw aspif_error(aspif_error::kind::malformed_statement, lineno, "negative statement tag");
                program.statements.emplace_back(opaque_statement{static_cast<int>(tag), std::string(line)});
                break;
        }
    }

    if (!have_header) throw aspif_error(aspif_error::kind::malformed_header, 0, "missing aspif header");
    if (!terminated) throw aspif_error(aspif_error::kind::missing_terminator, lineno, "missing terminating '0' line");
    return program;
}

std::string emit_statement(const statement& s) {
    std::ostringstream out;
    if (const auto* r = std::get_if<rule_statement>(&s)) {
        out << "1 " << static_cast<int>(r->head) << ' ' << r->head_atoms.size();
        for (auto a : r->head_atoms) out << ' ' << a;
        if (r->body.kind == body_kind::normal) {
            out << " 0 " << r->body.literals.size();
            for (auto l : r->body.literals) out << ' ' << l;
        } else {
            out << " 1 " << r->body.lower_bound << ' ' << r->body.literals.size();
            for (std::size_t i = 0; i < r->body.literals.size(); ++i) {
                out << ' ' << r->body.literals[i] << ' ' << r->body.weights[i];
            }
        }
    } else if (const auto* o = std::get_if<output_statement>(&s)) {
        out << "4 " << o->symbol.size() << ' ' << o->symbol << ' ' << o->condition.size();
        for (auto l : o->condition) out << ' ' << l;
    } else if (const auto* e = std::get_if<external_statement>(&s)) {
        out << "5 " << e->atom << ' ' << e->value;
    } else {
        out << std::get<opaque_statement>(s).text;
    }
    return out.str();
}

std::string emit_aspif(const aspif_program& program) {
    std::string out = "asp " + std::to_string(program.version[0]) + ' ' + std::to_string(program.version[1]) + ' ' +
                      std::to_string(program.version[2]);
    for (const auto& tag : program.header_tags) out += ' ' + tag;
    out += '\n';
    for (const auto& s : program.statements) {
        out += emit_statement(s);
        out += '\n';
    }
    out += "0\n";
    return out;
}

}  // namespace aspex
