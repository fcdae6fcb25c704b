#include "symgeo_cli/recipe_io.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "symgeo/recipe.hpp"

namespace symgeo::cli {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

void write_node(std::ostringstream& os, const ConstructionRecipe& r, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    os << pad << "node " << r.operation << " {\n";
    for (const auto& [key, value] : r.params) {
        os << pad << "  " << key << " = ";
        if (const auto* i = std::get_if<Int>(&value)) {
            os << *i;
        } else if (const auto* s = std::get_if<std::string>(&value)) {
            os << quote(*s);
        } else {
            const auto& v = std::get<std::vector<Int>>(value);
            os << '[';
            for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
            os << ']';
        }
        os << '\n';
    }
    for (const auto& note : r.notes) os << pad << "  note = " << quote(note) << '\n';
    for (const auto& child : r.inputs) write_node(os, child, depth + 1);
    os << pad << "}\n";
}

enum class Tok { ident, integer, string, lbrace, rbrace, lbracket, rbracket, comma, equals, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Int value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        auto single = [&](Tok k) {
            advance();
            t.kind = k;
            return t;
        };
        switch (c) {
            case '{': return single(Tok::lbrace);
            case '}': return single(Tok::rbrace);
            case '[': return single(Tok::lbracket);
            case ']': return single(Tok::rbracket);
            case ',': return single(Tok::comma);
            case '=': return single(Tok::equals);
            case '"': return string_token(t);
            default: break;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return number(t);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::ident;
            while (pos_ < src_.size()) {
                const char d = src_[pos_];
                if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' && d != '.' && d != '-') break;
                t.text += d;
                advance();
            }
            return t;
        }
        fail(t, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] static void fail(const Token& at, const std::string& why) {
        throw Error(ErrorCode::parse_error,
                    std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + why);
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token number(Token t) {
        std::string digits;
        if (src_[pos_] == '-') {
            digits += '-';
            advance();
        }
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            digits += src_[pos_];
            advance();
        }
        const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.value);
        if (ec != std::errc{} || p != digits.data() + digits.size()) fail(t, "malformed integer '" + digits + "'");
        t.kind = Tok::integer;
        t.text = digits;
        return t;
    }

    Token string_token(Token t) {
        advance();
        t.kind = Tok::string;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') fail(t, "unterminated string");
            char c = src_[pos_];
            advance();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= src_.size()) fail(t, "unterminated string");
                const char e = src_[pos_];
                advance();
                switch (e) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case '"':
                    case '\\': c = e; break;
                    default: fail(t, std::string("unknown escape '\\") + e + "'");
                }
            }
            t.text += c;
        }
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { bump(); }

    ConstructionRecipe document() {
        const Token head = cur_;
        if (cur_.kind != Tok::ident || cur_.text != "recipe-version") Lexer::fail(head, "expected 'recipe-version'");
        bump();
        const Token ver = expect(Tok::integer, "schema version");
        if (ver.value != kRecipeVersion)
            Lexer::fail(ver, "unsupported recipe-version " + ver.text + " (expected " +
                                 std::to_string(kRecipeVersion) + ")");
        const Token kw = cur_;
        if (kw.kind != Tok::ident || kw.text != "node") Lexer::fail(kw, "expected root 'node'");
        bump();
        ConstructionRecipe root = node(1, kw);
        if (cur_.kind != Tok::end) Lexer::fail(cur_, "trailing content after root node");
        return root;
    }

private:
    void bump() { cur_ = lex_.next(); }

    Token expect(Tok k, const char* what) {
        if (cur_.kind != k) Lexer::fail(cur_, std::string("expected ") + what);
        Token t = cur_;
        bump();
        return t;
    }

    // `start` is the already-consumed 'node' keyword.
    ConstructionRecipe node(int depth, const Token& start) {
        if (depth > kMaxRecipeDepth)
            Lexer::fail(start, "nesting deeper than " + std::to_string(kMaxRecipeDepth));
        const Token op = expect(Tok::ident, "operation name");
        if (!is_registered_operation(op.text)) Lexer::fail(op, "unknown operation '" + op.text + "'");
        const OperationSchema* schema = find_schema(op.text);

        std::string label;
        if (cur_.kind == Tok::ident && cur_.text == "as") {
            bump();
            const Token l = expect(Tok::ident, "label");
            if (labels_.count(l.text) || open_.count(l.text)) Lexer::fail(l, "duplicate label '" + l.text + "'");
            label = l.text;
            open_.insert(label);
        }
        expect(Tok::lbrace, "'{'");

        ConstructionRecipe r;
        r.operation = op.text;
        while (cur_.kind != Tok::rbrace) {
            if (cur_.kind == Tok::end) Lexer::fail(cur_, "unexpected end of input inside node '" + op.text + "'");
            const Token key = expect(Tok::ident, "parameter, 'note', 'node' or 'ref'");
            if (key.text == "node") {
                r.inputs.push_back(node(depth + 1, key));
                continue;
            }
            if (key.text == "ref") {
                const Token l = expect(Tok::ident, "label");
                if (open_.count(l.text)) Lexer::fail(l, "cyclic reference to '" + l.text + "'");
                auto it = labels_.find(l.text);
                if (it == labels_.end()) Lexer::fail(l, "unknown label '" + l.text + "'");
                r.inputs.push_back(it->second);
                continue;
            }
            expect(Tok::equals, "'='");
            if (key.text == "note") {
                r.notes.push_back(expect(Tok::string, "quoted note").text);
                continue;
            }
            const ParamSpec* spec = schema->find(key.text);
            if (!spec) Lexer::fail(key, "unknown parameter '" + key.text + "' for operation '" + op.text + "'");
            if (r.params.count(key.text)) Lexer::fail(key, "duplicate parameter '" + key.text + "'");
            const Token vt = cur_;
            ParamValue v = value();
            const bool ok = (spec->kind == ParamKind::integer && std::holds_alternative<Int>(v)) ||
                            (spec->kind == ParamKind::text && std::holds_alternative<std::string>(v)) ||
                            (spec->kind == ParamKind::integer_list && std::holds_alternative<std::vector<Int>>(v));
            if (!ok) Lexer::fail(vt, "parameter '" + key.text + "' must be " + std::string(to_string(spec->kind)));
            r.params.emplace(key.text, std::move(v));
        }
        bump();  // '}'

        try {
            check_recipe_node(r);
        } catch (const Error& e) {
            Lexer::fail(start, e.what());
        }
        if (!label.empty()) {
            open_.erase(label);
            labels_.emplace(label, r);
        }
        return r;
    }

    ParamValue value() {
        if (cur_.kind == Tok::integer) return expect(Tok::integer, "integer").value;
        if (cur_.kind == Tok::string) return expect(Tok::string, "string").text;
        if (cur_.kind == Tok::lbracket) {
            bump();
            std::vector<Int> v;
            if (cur_.kind != Tok::rbracket) {
                v.push_back(expect(Tok::integer, "integer").value);
                while (cur_.kind == Tok::comma) {
                    bump();
                    v.push_back(expect(Tok::integer, "integer").value);
                }
            }
            expect(Tok::rbracket, "']'");
            return v;
        }
        Lexer::fail(cur_, "expected integer, string or list");
    }

    Lexer lex_;
    Token cur_;
    std::map<std::string, ConstructionRecipe> labels_;
    std::set<std::string> open_;
};

}  // namespace

std::string serialize_recipe(const ConstructionRecipe& recipe) {
    std::ostringstream os;
    os << "recipe-version " << kRecipeVersion << '\n';
    write_node(os, recipe, 0);
    return os.str();
}

ConstructionRecipe parse_recipe(std::string_view text) { return Parser(text).document(); }

}  // namespace symgeo::cli
