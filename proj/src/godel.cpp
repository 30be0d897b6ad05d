#include "setlab/godel.hpp"

#include <algorithm>

#include "setlab/parser.hpp"

namespace setlab {

Nat encode(const FormulaPtr& f) {
    std::string text = canonical_print(f);
    Nat code = 0;
    for (unsigned char ch : text) {
        code <<= 8;
        code += ch;
    }
    return code;
}

std::string code_to_text(const Nat& code) {
    if (code <= 0)
        fail(Errc::syntax, "not a formula code");
    Nat n = code;
    std::string text;
    while (n > 0) {
        text += static_cast<char>(static_cast<unsigned>(n & 0xff));
        n >>= 8;
    }
    std::reverse(text.begin(), text.end());
    return text;
}

FormulaPtr decode(const Nat& code, const MacroRegistry& reg) {
    return parse_formula(code_to_text(code), reg);
}

} // namespace setlab
