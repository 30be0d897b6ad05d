#include "setlab/srm.hpp"

#include <algorithm>
#include <unordered_map>

namespace setlab {

namespace detail {

const OpInfo& op_info(Op op) {
    static const OpInfo table[] = {
        {"CLEAR", 1, false}, {"ADD", 2, false},    {"COPY", 2, false}, {"TAKE", 2, false},
        {"REMOVE", 2, false}, {"JEMPTY", 2, true}, {"JMEM", 3, true},
    };
    return table[static_cast<int>(op)];
}

int operand(const Instruction& ins, int idx) {
    return idx == 0 ? ins.a : idx == 1 ? ins.b : ins.c;
}

} // namespace detail

namespace {

constexpr int kMaxRegister = 1023;

using detail::op_info;
using detail::operand;
using detail::OpInfo;

} // namespace

std::string to_string(const Instruction& ins) {
    const OpInfo& info = op_info(ins.op);
    std::string out = info.name;
    for (int i = 0; i < info.operands; ++i) {
        out += ' ';
        out += std::to_string(operand(ins, i));
    }
    return out;
}

int SrmProgram::register_count() const {
    int hi = -1;
    for (const Instruction& ins : lines) {
        const OpInfo& info = op_info(ins.op);
        int regs = info.operands - (info.jump ? 1 : 0);
        for (int i = 0; i < regs; ++i)
            hi = std::max(hi, operand(ins, i));
    }
    return hi + 1;
}

void SrmProgram::validate() const {
    for (std::size_t l = 0; l < lines.size(); ++l) {
        const Instruction& ins = lines[l];
        const OpInfo& info = op_info(ins.op);
        int regs = info.operands - (info.jump ? 1 : 0);
        for (int i = 0; i < regs; ++i) {
            int r = operand(ins, i);
            if (r < 0 || r > kMaxRegister)
                fail(Errc::precondition, "line " + std::to_string(l + 1) + ": register " +
                                             std::to_string(r) + " out of range");
        }
        if (info.jump) {
            int target = operand(ins, info.operands - 1);
            if (target < 1 || target > static_cast<int>(lines.size()) + 1)
                fail(Errc::bad_jump_target, "line " + std::to_string(l + 1) + ": jump to " +
                                                std::to_string(target) + " leaves the program");
        }
    }
}

std::string to_string(const OrdinalClock& c) {
    if (c.limits == 0)
        return std::to_string(c.steps);
    return "w*" + std::to_string(c.limits) + "+" + std::to_string(c.steps);
}

const char* run_status_name(RunStatus s) {
    switch (s) {
    case RunStatus::Halted:
        return "halted";
    case RunStatus::BudgetExhausted:
        return "budget_exhausted";
    default:
        return "limit_undetermined";
    }
}

namespace {

Configuration exec(SetArena& ar, const Level& lv, const Instruction& ins, Configuration c) {
    std::vector<HSet>& r = c.regs;
    std::size_t next = c.line + 1;
    switch (ins.op) {
    case Op::Clear:
        r[ins.a] = ar.empty();
        break;
    case Op::Add: {
        HSet u = ar.with_element(r[ins.b], r[ins.a]);
        if (!lv.contains(u))
            fail(Errc::value_escapes_level,
                 to_string(ins) + " produces " + u.to_string() + ", not an element of level " +
                     std::to_string(lv.index));
        r[ins.b] = u;
        break;
    }
    case Op::Copy:
        r[ins.b] = r[ins.a];
        break;
    case Op::Take:
        if (!r[ins.a].is_empty())
            r[ins.b] = lv.l_min_element(r[ins.a]);
        break;
    case Op::Remove:
        r[ins.b] = ar.without_element(r[ins.b], r[ins.a]);
        break;
    case Op::JEmpty:
        if (r[ins.a].is_empty())
            next = ins.b;
        break;
    case Op::JMem:
        if (r[ins.b].contains(r[ins.a]))
            next = ins.c;
        break;
    }
    c.line = next;
    return c;
}

std::string config_key(const Configuration& c) {
    std::string k = std::to_string(c.line);
    for (HSet r : c.regs) {
        k += ',';
        k += std::to_string(reinterpret_cast<std::uintptr_t>(r.raw()));
    }
    return k;
}

} // namespace

RunResult run(SetArena& arena, const Level& lv, const SrmProgram& p,
              const std::vector<HSet>& inputs, std::uint64_t maxSteps, std::uint64_t maxLimits,
              const TraceFn& trace) {
    p.validate();
    std::size_t rc = std::max<std::size_t>(p.register_count(), inputs.size());
    Configuration c;
    c.line = 1;
    c.regs.assign(rc, arena.empty());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!lv.contains(inputs[i]))
            fail(Errc::not_in_level,
                 "input " + inputs[i].to_string() + " is not in level " + std::to_string(lv.index));
        c.regs[i] = inputs[i];
    }
    OrdinalClock clock;
    if (trace)
        trace(clock, c);
    for (;;) {
        // One omega-segment: run until halt, budget, or a repeated
        // configuration, which passes to the limit.
        std::unordered_map<std::string, std::size_t> seen;
        std::vector<Configuration> hist;
        bool limited = false;
        while (clock.steps < maxSteps) {
            if (c.line > p.lines.size())
                return {RunStatus::Halted, clock, std::move(c)};
            auto [it, fresh] = seen.emplace(config_key(c), hist.size());
            if (!fresh) {
                if (clock.limits == maxLimits)
                    return {RunStatus::LimitUndetermined, clock, std::move(c)};
                Configuration lim = hist[it->second];
                for (std::size_t i = it->second + 1; i < hist.size(); ++i) {
                    lim.line = std::min(lim.line, hist[i].line);
                    for (std::size_t j = 0; j < rc; ++j)
                        if (lv.l_order(hist[i].regs[j], lim.regs[j]) < 0)
                            lim.regs[j] = hist[i].regs[j];
                }
                c = std::move(lim);
                clock.limits += 1;
                clock.steps = 0;
                if (trace)
                    trace(clock, c);
                limited = true;
                break;
            }
            hist.push_back(c);
            c = exec(arena, lv, p.lines[c.line - 1], std::move(c));
            clock.steps += 1;
            if (trace)
                trace(clock, c);
        }
        if (!limited)
            return {RunStatus::BudgetExhausted, clock, std::move(c)};
    }
}

std::optional<int> height(LevelBuilder& lb, const SrmProgram& p, int maxIndex,
                          std::uint64_t maxSteps, std::uint64_t maxLimits) {
    if (maxIndex > LevelBuilder::kMaxIndex)
        fail(Errc::resource_limit, "height search beyond the built range");
    const Level& widest = lb.build(maxIndex);
    for (int b = 1; b <= maxIndex; ++b) {
        const Level& home = lb.build(b);
        bool ok = true;
        for (std::size_t i = 0; ok && i < home.elements.size(); ++i) {
            bool inside = true;
            auto watch = [&](const OrdinalClock&, const Configuration& c) {
                for (HSet r : c.regs)
                    if (!home.contains(r))
                        inside = false;
            };
            try {
                RunResult r = run(lb.arena(), widest, p, {home.elements[i]}, maxSteps, maxLimits,
                                  watch);
                if (r.status != RunStatus::Halted)
                    ok = false;
            } catch (const Error& e) {
                if (e.code() != Errc::value_escapes_level)
                    throw;
                ok = false;
            }
            if (!inside)
                ok = false;
        }
        if (ok)
            return b;
    }
    return std::nullopt;
}

} // namespace setlab
