#pragma once

#include <string>
#include <vector>

#include "qrpl/errors.hpp"
#include "qrpl/types.hpp"

namespace qrpl {

enum class Tok {
    End,
    Ident,
    IntLit,
    RealLit,
    // keywords
    KwSkip, KwIf, KwThen, KwElse, KwFi, KwWhile, KwDo, KwOd,
    KwQif, KwFiq, KwCase, KwForall, KwBegin, KwLocal, KwEnd,
    KwProc, KwMain, KwQubit, KwQudit, KwVar, KwGate,
    KwInt, KwReal, KwBool, KwTrue, KwFalse,
    KwAnd, KwOr, KwNot, KwPi, KwE, KwDiv, KwMod,
    // punctuation and operators
    Assign, Colon, Semi, Comma, LParen, RParen, LBracket, RBracket,
    LBrace, RBrace, Arrow,
    Plus, Minus, Star, Slash, Caret,
    Eq, Ne, Lt, Le, Gt, Ge,
    // ket literals, lexed as single tokens
    KetBits,    // |0110>
    KetPlus,    // |+>
    KetMinus,   // |->
    KetVector,  // |(c0, c1, ...)>
    KetName,    // |x> where x is an identifier (forall binder)
};

struct Token {
    Tok kind = Tok::End;
    SourcePos pos;
    std::string text;        // identifier, ket bits, or ket binder name
    std::int64_t ival = 0;
    double rval = 0;
    std::vector<cxd> amps;   // KetVector payload
};

// Tokenizes a whole source buffer. Throws SyntaxError on malformed input.
std::vector<Token> lex(const std::string& src);

}  // namespace qrpl
