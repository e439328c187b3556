#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aspex {

using atom_id = std::int64_t;
/// Signed atom reference: positive means the atom, negative its default negation.
using literal_id = std::int64_t;

class aspif_error : public std::runtime_error {
public:
    enum class kind { malformed_header, truncated_statement, malformed_statement, missing_terminator };

    aspif_error(kind k, std::size_t line, const std::string& message);

    kind code() const noexcept { return kind_; }
    /// 1-based line number of the offending line (0 when not line specific).
    std::size_t line() const noexcept { return line_; }

private:
    kind kind_;
    std::size_t line_;
};

enum class head_type : int { disjunction = 0, choice = 1 };
enum class body_kind : int { normal = 0, weight = 1 };

struct body_spec {
    body_kind kind = body_kind::normal;
    std::vector<literal_id> literals;
    std::vector<std::int64_t> weights;  // weight bodies only, parallel to literals
    std::int64_t lower_bound = 0;       // weight bodies only

    bool operator==(const body_spec&) const = default;
};

struct rule_statement {
    head_type head = head_type::disjunction;
    std::vector<atom_id> head_atoms;
    body_spec body;

    bool is_constraint() const noexcept { return head == head_type::disjunction && head_atoms.empty(); }
    bool operator==(const rule_statement&) const = default;
};

struct output_statement {
    std::string symbol;
    std::vector<literal_id> condition;

    bool operator==(const output_statement&) const = default;
};

struct external_statement {
    atom_id atom = 0;
    std::int64_t value = 0;

    bool operator==(const external_statement&) const = default;
};

/// Any statement other than rule/output/external, kept verbatim.
struct opaque_statement {
    int tag = 0;
    std::string text;

    bool operator==(const opaque_statement&) const = default;
};

using statement = std::variant<rule_statement, output_statement, external_statement, opaque_statement>;

struct aspif_program {
    std::array<int, 3> version{1, 0, 0};
    std::vector<std::string> header_tags;  // e.g. "incremental"
    std::vector<statement> statements;     // file order

    std::vector<rule_statement> rules() const { return collect<rule_statement>(); }
    std::vector<output_statement> outputs() const { return collect<output_statement>(); }
    std::vector<external_statement> externals() const { return collect<external_statement>(); }

    bool operator==(const aspif_program&) const = default;

private:
    template <class T>
    std::vector<T> collect() const {
        std::vector<T> out;
        for (const auto& s : statements) {
            if (const auto* p = std::get_if<T>(&s)) out.push_back(*p);
        }
        return out;
    }
};

/// Parses the textual aspif format. Blank lines and lines starting with '%' are skipped.
aspif_program parse_aspif(std::string_view text);

std::string emit_statement(const statement& s);
std::string emit_aspif(const aspif_program& program);

}  // namespace aspex
