#include "ultraharmonic/error.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <cctype>

namespace ultraharmonic {
namespace {

using K = SetExpr::Kind;

// Recursive descent over
//   expr := term { "|" term }
//   term := fact { "&" fact }
//   fact := atom { "\" atom | "+" INT | "-" INT }
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    SetExpr parse_all()
    {
        SetExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Nat integer()
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            throw DomainError("negative literal at position " + std::to_string(start));
        }
        Nat v = 0;
        bool overflow = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            Nat digit = static_cast<Nat>(text_[pos_] - '0');
            if (v > (~Nat{0} - digit) / 10) overflow = true;
            v = v * 10 + digit;
            ++pos_;
        }
        if (pos_ == start) fail("expected a positive integer");
        if (overflow) throw DomainError("integer literal out of range at position " + std::to_string(start));
        if (v == 0) throw DomainError("zero literal at position " + std::to_string(start));
        return v;
    }

    std::string word()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string quoted()
    {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted path");
        ++pos_;
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
            out.push_back(text_[pos_++]);
        }
        if (pos_ >= text_.size()) fail("unterminated string");
        ++pos_;
        return out;
    }

    template <typename F>
    SetExpr domain_checked(std::size_t at, F&& build)
    {
        try {
            return build();
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at position " + std::to_string(at));
        }
    }

    SetExpr expr()
    {
        std::vector<SetExpr> parts{term()};
        while (accept('|')) parts.push_back(term());
        return parts.size() == 1 ? parts.front() : SetExpr::union_of(std::move(parts));
    }

    SetExpr term()
    {
        std::vector<SetExpr> parts{fact()};
        while (accept('&')) parts.push_back(fact());
        return parts.size() == 1 ? parts.front() : SetExpr::intersection_of(std::move(parts));
    }

    SetExpr fact()
    {
        SetExpr e = atom();
        while (true) {
            if (accept('\\')) {
                e = SetExpr::difference(e, atom());
            } else if (accept('+')) {
                e = SetExpr::shifted(e, integer());
            } else if (accept('-')) {
                e = SetExpr::left_shifted(e, integer());
            } else {
                return e;
            }
        }
    }

    SetExpr atom()
    {
        skip_ws();
        std::size_t at = pos_;
        if (accept('(')) {
            SetExpr e = expr();
            expect(')');
            return e;
        }
        std::string w = word();
        if (w.empty()) fail("expected a set expression");
        if (w == "N") return SetExpr::naturals();
        if (w == "primes") return SetExpr::primes();
        if (w == "ap") {
            expect('(');
            Nat first = integer();
            expect(',');
            Nat diff = integer();
            expect(')');
            return SetExpr::ap(first, diff);
        }
        if (w == "pow") {
            expect('(');
            Nat b = integer();
            expect(')');
            return domain_checked(at, [&] { return SetExpr::powers(b); });
        }
        if (w == "kth") {
            expect('(');
            Nat k = integer();
            expect(')');
            return domain_checked(at, [&] { return SetExpr::kth_powers(k); });
        }
        if (w == "finite") {
            expect('{');
            std::vector<Nat> values{integer()};
            while (accept(',')) values.push_back(integer());
            expect('}');
            return SetExpr::finite(std::move(values));
        }
        if (w == "file") {
            expect('(');
            std::string path = quoted();
            expect(')');
            return SetExpr::from_file(path);
        }
        if (w == "sumset") {
            expect('(');
            SetExpr a = expr();
            expect(',');
            SetExpr b = expr();
            expect(')');
            return SetExpr::sumset(std::move(a), std::move(b));
        }
        pos_ = at;
        fail("unknown set '" + w + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool is_atom(const SetExpr& e)
{
    switch (e.kind()) {
    case K::Finite: return !e.values().empty();
    case K::AP:
    case K::Powers:
    case K::KthPowers:
    case K::Primes:
    case K::Sumset:
    case K::FromFile: return true;
    default: return false;
    }
}

std::string print_expr(const SetExpr& e);

std::string print_atom(const SetExpr& e) { return is_atom(e) ? print_expr(e) : "(" + print_expr(e) + ")"; }

// Left operand of a fact-level operator: atoms and fact chains print bare.
std::string print_fact(const SetExpr& e)
{
    switch (e.kind()) {
    case K::Shifted:
    case K::LeftShift:
    case K::Difference: return print_expr(e);
    default: return print_atom(e);
    }
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string join(const std::vector<SetExpr>& parts, const char* sep, std::string (*each)(const SetExpr&))
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += each(parts[i]);
    }
    return out;
}

std::string print_expr(const SetExpr& e)
{
    switch (e.kind()) {
    case K::Finite: {
        if (e.values().empty()) return "N\\N";  // the grammar has no empty literal
        std::string out = "finite{";
        for (std::size_t i = 0; i < e.values().size(); ++i) {
            if (i) out += ",";
            out += std::to_string(e.values()[i]);
        }
        return out + "}";
    }
    case K::AP:
        if (e.is_naturals()) return "N";
        return "ap(" + std::to_string(e.first()) + "," + std::to_string(e.diff()) + ")";
    case K::Powers: return "pow(" + std::to_string(e.base()) + ")";
    case K::KthPowers: return "kth(" + std::to_string(e.k()) + ")";
    case K::Primes: return "primes";
    case K::Shifted: return print_fact(e.children()[0]) + "+" + std::to_string(e.offset());
    case K::LeftShift: return print_fact(e.children()[0]) + "-" + std::to_string(e.offset());
    case K::Difference: return print_fact(e.children()[0]) + "\\" + print_atom(e.children()[1]);
    case K::Intersection:
        return join(e.children(), " & ", [](const SetExpr& c) {
            return c.kind() == K::Union || c.kind() == K::Intersection ? "(" + print_expr(c) + ")" : print_fact(c);
        });
    case K::Union:
        if (e.children().empty()) return "N\\N";
        return join(e.children(), " | ", [](const SetExpr& c) {
            return c.kind() == K::Union ? "(" + print_expr(c) + ")" : print_expr(c);
        });
    case K::Sumset: return "sumset(" + print_expr(e.children()[0]) + ", " + print_expr(e.children()[1]) + ")";
    case K::FromFile: return "file(\"" + escape(e.path()) + "\")";
    }
    return "?";
}

}  // namespace

std::string print(const SetExpr& e) { return print_expr(e); }

SetExpr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ultraharmonic
