#pragma once

#include <string>
#include <string_view>

#include "dsb/core.hpp"
#include "dsb/implsys.hpp"

namespace dsb {

// Instance files:
//
//   template horn3          # or 2sat
//   vars 3
//   one 0
//   and 0 0 1
//
// Horn3 constraints are `zero v`, `one v`, `and i j k`; TwoSat constraints are
// `or u v`, `imp u v`, `nand u v`. `#` starts a comment, blank lines are ignored,
// and repeated constraints collapse.

/// Throws ParseError with the offending line number.
Instance parse_instance(std::string_view text);

/// Header, then one constraint per line in ascending literal id order.
std::string emit_instance(const Instance& instance);

std::string literal_text(TemplateId t, std::size_t n, LiteralId id);

TemplateId parse_template_name(std::string_view name);

// Sigma files: `template`, `vars` and `universe` headers (universe counts the
// ordinary literals; bottom is written BOT), then one `b1,b2,... -> h` per line.

std::string emit_sigma(const ImplicationalSystem& sigma);

struct SigmaFile {
    TemplateId template_id;
    std::size_t vars;
    ImplicationalSystem sigma;
};

SigmaFile parse_sigma(std::string_view text);

} // namespace dsb
