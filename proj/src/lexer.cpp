#include "qrpl/lexer.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <map>

namespace qrpl {

namespace {

const std::map<std::string, Tok>& keywords() {
    static const std::map<std::string, Tok> kw = {
        {"skip", Tok::KwSkip},     {"if", Tok::KwIf},       {"then", Tok::KwThen},
        {"else", Tok::KwElse},     {"fi", Tok::KwFi},       {"while", Tok::KwWhile},
        {"do", Tok::KwDo},         {"od", Tok::KwOd},       {"qif", Tok::KwQif},
        {"fiq", Tok::KwFiq},       {"case", Tok::KwCase},   {"forall", Tok::KwForall},
        {"begin", Tok::KwBegin},   {"local", Tok::KwLocal}, {"end", Tok::KwEnd},
        {"proc", Tok::KwProc},     {"main", Tok::KwMain},   {"qubit", Tok::KwQubit},
        {"qudit", Tok::KwQudit},   {"var", Tok::KwVar},     {"gate", Tok::KwGate},
        {"int", Tok::KwInt},       {"real", Tok::KwReal},   {"bool", Tok::KwBool},
        {"true", Tok::KwTrue},     {"false", Tok::KwFalse}, {"and", Tok::KwAnd},
        {"or", Tok::KwOr},         {"not", Tok::KwNot},     {"pi", Tok::KwPi},
        {"e", Tok::KwE},           {"div", Tok::KwDiv},     {"mod", Tok::KwMod},
    };
    return kw;
}

class Scanner {
  public:
    explicit Scanner(const std::string& src) : s_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.pos = pos();
            if (eof()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                lex_word(t);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number(t);
            } else if (c == '|') {
                lex_ket(t);
            } else {
                lex_symbol(t);
            }
            out.push_back(std::move(t));
        }
    }

  private:
    bool eof() const { return i_ >= s_.size(); }
    char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
    SourcePos pos() const { return {line_, col_}; }

    char advance() {
        char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        for (;;) {
            while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '/' && peek(1) == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            return;
        }
    }

    [[noreturn]] void fail(const std::string& msg, SourcePos at) const {
        throw SyntaxError(msg, at);
    }

    void lex_word(Token& t) {
        std::string w;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            w.push_back(advance());
        auto it = keywords().find(w);
        if (it != keywords().end()) {
            t.kind = it->second;
        } else {
            t.kind = Tok::Ident;
            t.text = std::move(w);
        }
    }

    // Numbers never carry a sign; unary minus is an operator.
    void lex_number(Token& t) {
        SourcePos at = pos();
        std::string num;
        bool real = false;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            num.push_back(advance());
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            real = true;
            num.push_back(advance());
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                num.push_back(advance());
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (std::isdigit(static_cast<unsigned char>(peek(1))) ||
             ((peek(1) == '+' || peek(1) == '-') &&
              std::isdigit(static_cast<unsigned char>(peek(2)))))) {
            real = true;
            num.push_back(advance());
            if (peek() == '+' || peek() == '-') num.push_back(advance());
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                num.push_back(advance());
        }
        if (real) {
            t.kind = Tok::RealLit;
            t.rval = std::strtod(num.c_str(), nullptr);
        } else {
            errno = 0;
            t.kind = Tok::IntLit;
            t.ival = std::strtoll(num.c_str(), nullptr, 10);
            if (errno == ERANGE) fail("integer literal out of range", at);
        }
    }

    // Complex entry inside a ket vector: "a", "a+bi", "a-bi", "bi".
    cxd lex_complex() {
        skip_space();
        SourcePos at = pos();
        auto number = [&](bool allow_sign) -> double {
            std::string num;
            if (allow_sign && (peek() == '+' || peek() == '-')) num.push_back(advance());
            bool any = false;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                num.push_back(advance());
                any = true;
            }
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                num.push_back(advance());
                while (std::isdigit(static_cast<unsigned char>(peek())))
                    num.push_back(advance());
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (std::isdigit(static_cast<unsigned char>(peek(1))) ||
                 ((peek(1) == '+' || peek(1) == '-') &&
                  std::isdigit(static_cast<unsigned char>(peek(2)))))) {
                num.push_back(advance());
                if (peek() == '+' || peek() == '-') num.push_back(advance());
                while (std::isdigit(static_cast<unsigned char>(peek())))
                    num.push_back(advance());
            }
            if (!any) fail("malformed number in ket vector", at);
            return std::strtod(num.c_str(), nullptr);
        };
        double first = number(true);
        if (peek() == 'i') {
            advance();
            return cxd(0.0, first);
        }
        skip_space();
        if (peek() == '+' || peek() == '-') {
            // look ahead: an imaginary part must end in 'i'
            std::size_t save_i = i_;
            int save_line = line_, save_col = col_;
            double second = number(true);
            if (peek() == 'i') {
                advance();
                return cxd(first, second);
            }
            i_ = save_i;
            line_ = save_line;
            col_ = save_col;
        }
        return cxd(first, 0.0);
    }

    void lex_ket(Token& t) {
        SourcePos at = pos();
        advance();  // consume '|'
        char c = peek();
        if (c == '+') {
            advance();
            if (advance_expect('>', at)) t.kind = Tok::KetPlus;
            return;
        }
        if (c == '-') {
            advance();
            if (advance_expect('>', at)) t.kind = Tok::KetMinus;
            return;
        }
        if (c == '(') {
            advance();
            std::vector<cxd> amps;
            for (;;) {
                amps.push_back(lex_complex());
                skip_space();
                if (peek() == ',') {
                    advance();
                    continue;
                }
                if (peek() == ')') {
                    advance();
                    break;
                }
                fail("expected ',' or ')' in ket vector", pos());
            }
            if (advance_expect('>', at)) {
                t.kind = Tok::KetVector;
                t.amps = std::move(amps);
            }
            return;
        }
        if (c == '0' || c == '1') {
            std::string bits;
            while (peek() == '0' || peek() == '1') bits.push_back(advance());
            if (advance_expect('>', at)) {
                t.kind = Tok::KetBits;
                t.text = std::move(bits);
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                name.push_back(advance());
            if (advance_expect('>', at)) {
                t.kind = Tok::KetName;
                t.text = std::move(name);
            }
            return;
        }
        fail("malformed ket literal", at);
    }

    bool advance_expect(char want, SourcePos at) {
        if (peek() != want) fail(std::string("expected '") + want + "' to close ket", at);
        advance();
        return true;
    }

    void lex_symbol(Token& t) {
        SourcePos at = pos();
        char c = advance();
        switch (c) {
            case ':':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Assign;
                } else {
                    t.kind = Tok::Colon;
                }
                return;
            case ';': t.kind = Tok::Semi; return;
            case ',': t.kind = Tok::Comma; return;
            case '(': t.kind = Tok::LParen; return;
            case ')': t.kind = Tok::RParen; return;
            case '[': t.kind = Tok::LBracket; return;
            case ']': t.kind = Tok::RBracket; return;
            case '{': t.kind = Tok::LBrace; return;
            case '}': t.kind = Tok::RBrace; return;
            case '+': t.kind = Tok::Plus; return;
            case '-':
                if (peek() == '>') {
                    advance();
                    t.kind = Tok::Arrow;
                } else {
                    t.kind = Tok::Minus;
                }
                return;
            case '*': t.kind = Tok::Star; return;
            case '/': t.kind = Tok::Slash; return;
            case '^': t.kind = Tok::Caret; return;
            case '=': t.kind = Tok::Eq; return;
            case '!':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Ne;
                    return;
                }
                fail("unexpected '!'", at);
            case '<':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Le;
                } else {
                    t.kind = Tok::Lt;
                }
                return;
            case '>':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Ge;
                } else {
                    t.kind = Tok::Gt;
                }
                return;
            default: fail(std::string("unexpected character '") + c + "'", at);
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Token> lex(const std::string& src) { return Scanner(src).run(); }

}  // namespace qrpl
