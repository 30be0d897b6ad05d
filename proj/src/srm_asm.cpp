#include "setlab/srm.hpp"

#include <cctype>

namespace setlab {

std::string to_string(const SrmProgram& p) {
    std::string out;
    for (const Instruction& ins : p.lines) {
        out += to_string(ins);
        out += '\n';
    }
    return out;
}

SrmProgram assemble(const std::string& text) {
    SrmProgram p;
    std::size_t pos = 0;
    int lineNo = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineNo;
        if (std::size_t hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::vector<std::string> tok;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
                ++j;
            if (j > i)
                tok.push_back(line.substr(i, j - i));
            i = j;
        }
        if (tok.empty())
            continue;
        auto at = [&] { return " at line " + std::to_string(lineNo); };
        Instruction ins;
        bool known = false;
        for (int op = 0; op <= static_cast<int>(Op::JMem); ++op)
            if (tok[0] == detail::op_info(static_cast<Op>(op)).name) {
                ins.op = static_cast<Op>(op);
                known = true;
                break;
            }
        if (!known)
            fail(Errc::syntax, "unknown instruction '" + tok[0] + "'" + at());
        const detail::OpInfo& info = detail::op_info(ins.op);
        if (static_cast<int>(tok.size()) - 1 != info.operands)
            fail(Errc::syntax, std::string(info.name) + " takes " +
                                   std::to_string(info.operands) + " operands" + at());
        for (int k = 0; k < info.operands; ++k) {
            const std::string& t = tok[k + 1];
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 7)
                fail(Errc::syntax, "operand '" + t + "' is not a small number" + at());
            (k == 0 ? ins.a : k == 1 ? ins.b : ins.c) = std::stoi(t);
        }
        p.lines.push_back(ins);
    }
    p.validate();
    return p;
}

} // namespace setlab
