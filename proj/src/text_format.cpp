#include "dsb/text_format.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "dsb/error.hpp"

namespace dsb {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> words;
};

std::vector<std::string_view> split_words(std::string_view text) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
            ++i;
        }
        if (i > start) {
            words.push_back(text.substr(start, i - start));
        }
    }
    return words;
}

// Non-blank lines with comments stripped.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (!words.empty()) {
            lines.push_back(Line{number, std::move(words)});
        }
        pos = end + 1;
    }
    return lines;
}

std::size_t parse_count(std::string_view word, std::size_t line) {
    std::size_t value = 0;
    const auto* first = word.data();
    const auto* last = word.data() + word.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || word.empty()) {
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(word) + "'");
    }
    return value;
}

std::pair<TemplateId, std::size_t> parse_header(const std::vector<Line>& lines, std::size_t& next) {
    if (lines.empty()) {
        throw ParseError(1, "missing 'template' header");
    }
    const Line& first = lines[0];
    if (first.words[0] != "template") {
        throw ParseError(first.number, first.words[0] == "vars" ? "'template' must precede 'vars'"
                                                                : "missing 'template' header");
    }
    if (first.words.size() != 2) {
        throw ParseError(first.number, "expected 'template horn3|2sat'");
    }
    TemplateId t{};
    try {
        t = parse_template_name(first.words[1]);
    } catch (const InvalidArgument& e) {
        throw ParseError(first.number, e.what());
    }
    if (lines.size() < 2 || lines[1].words[0] != "vars") {
        throw ParseError(lines.size() < 2 ? first.number : lines[1].number, "missing 'vars' header");
    }
    if (lines[1].words.size() != 2) {
        throw ParseError(lines[1].number, "expected 'vars <n>'");
    }
    const std::size_t n = parse_count(lines[1].words[1], lines[1].number);
    if (n == 0) {
        throw ParseError(lines[1].number, "an instance needs at least one variable");
    }
    next = 2;
    return {t, n};
}

} // namespace

TemplateId parse_template_name(std::string_view name) {
    if (name == "horn3") {
        return TemplateId::Horn3;
    }
    if (name == "2sat") {
        return TemplateId::TwoSat;
    }
    throw InvalidArgument("unknown template '" + std::string(name) + "' (expected horn3 or 2sat)");
}

Instance parse_instance(std::string_view text) {
    const auto lines = content_lines(text);
    std::size_t next = 0;
    const auto [t, n] = parse_header(lines, next);
    const auto& tmpl = Template::get(t);
    Instance instance(t, n);
    for (; next < lines.size(); ++next) {
        const Line& line = lines[next];
        const auto keyword = line.words[0];
        if (keyword == "template" || keyword == "vars") {
            throw ParseError(line.number, "duplicate '" + std::string(keyword) + "' header");
        }
        RelationIndex r = tmpl.relation_count();
        for (RelationIndex i = 0; i < tmpl.relation_count(); ++i) {
            if (tmpl.relation(i).name == keyword) {
                r = i;
            }
        }
        if (r == tmpl.relation_count()) {
            throw ParseError(line.number, "unknown constraint '" + std::string(keyword) + "' for template " +
                                              std::string(tmpl.name()));
        }
        const std::size_t arity = tmpl.relation(r).arity;
        if (line.words.size() != arity + 1) {
            throw ParseError(line.number, "'" + std::string(keyword) + "' takes " + std::to_string(arity) +
                                              " variable(s)");
        }
        Tuple args{0, 0, 0};
        for (std::size_t k = 0; k < arity; ++k) {
            const std::size_t v = parse_count(line.words[k + 1], line.number);
            if (v >= n) {
                throw ParseError(line.number, "variable " + std::to_string(v) + " out of range (vars " +
                                                  std::to_string(n) + ")");
            }
            args[k] = static_cast<Var>(v);
        }
        instance.add(r, args);
    }
    return instance;
}

std::string literal_text(TemplateId t, std::size_t n, LiteralId id) {
    const auto lit = decode(t, n, id);
    const auto& rel = Template::get(t).relation(lit.relation);
    std::string out(rel.name);
    for (std::size_t k = 0; k < rel.arity; ++k) {
        out += ' ';
        out += std::to_string(lit.args[k]);
    }
    return out;
}

std::string emit_instance(const Instance& instance) {
    std::string out = "template " + std::string(template_name(instance.template_id())) + "\n";
    out += "vars " + std::to_string(instance.vars()) + "\n";
    for (LiteralId id : constraints_of(instance)) {
        out += literal_text(instance.template_id(), instance.vars(), id);
        out += '\n';
    }
    return out;
}

std::string emit_sigma(const ImplicationalSystem& sigma) {
    std::ostringstream out;
    if (sigma.template_id()) {
        out << "template " << template_name(*sigma.template_id()) << '\n';
        out << "vars " << sigma.vars() << '\n';
    }
    out << "universe " << sigma.literal_count() << '\n';
    auto write_id = [&](LiteralId id) {
        if (id == sigma.bottom()) {
            out << "BOT";
        } else {
            out << id;
        }
    };
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto body = sigma.body(i);
        for (std::size_t k = 0; k < body.size(); ++k) {
            if (k > 0) {
                out << ',';
            }
            write_id(body[k]);
        }
        out << (body.empty() ? "-> " : " -> ");
        write_id(sigma.head(i));
        out << '\n';
    }
    return out.str();
}

SigmaFile parse_sigma(std::string_view text) {
    const auto lines = content_lines(text);
    std::size_t next = 0;
    const auto [t, n] = parse_header(lines, next);
    if (next >= lines.size() || lines[next].words[0] != "universe" || lines[next].words.size() != 2) {
        throw ParseError(next < lines.size() ? lines[next].number : lines.back().number + 1, "missing 'universe <size>' header");
    }
    const std::size_t literals = parse_count(lines[next].words[1], lines[next].number);
    if (literals != universe_size(t, n)) {
        throw ParseError(lines[next].number, "universe size does not match template and vars");
    }
    ++next;
    const auto bottom = static_cast<LiteralId>(literals);
    auto parse_id = [&](std::string_view word, std::size_t line) {
        if (word == "BOT") {
            return bottom;
        }
        const std::size_t id = parse_count(word, line);
        if (id >= literals) {
            throw ParseError(line, "literal id " + std::to_string(id) + " outside the universe");
        }
        return static_cast<LiteralId>(id);
    };

    std::vector<Implication> implications;
    for (; next < lines.size(); ++next) {
        const Line& line = lines[next];
        // Rejoin: the body list contains no spaces, but be lenient about them.
        std::string joined;
        for (auto w : line.words) {
            joined += w;
        }
        const auto arrow = joined.find("->");
        if (arrow == std::string::npos) {
            throw ParseError(line.number, "expected 'body -> head'");
        }
        Implication imp;
        std::string_view body(joined.data(), arrow);
        std::size_t pos = 0;
        while (pos < body.size()) {
            const auto comma = std::min(body.find(',', pos), body.size());
            imp.body.push_back(parse_id(body.substr(pos, comma - pos), line.number));
            pos = comma + 1;
        }
        imp.head = parse_id(std::string_view(joined).substr(arrow + 2), line.number);
        implications.push_back(std::move(imp));
    }
    ImplicationalSystem sigma(literals, std::move(implications));
    sigma.set_provenance(t, n);
    return SigmaFile{t, n, std::move(sigma)};
}

} // namespace dsb
