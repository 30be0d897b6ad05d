#pragma once
// Set register machines over a built level.
//
// A program is a 1-based list of instructions over registers holding sets
// from the level; the machine halts when control passes the last line.
// Register values may never leave the level: ADD is the only instruction
// that can build a new set, and it raises value_escapes_level if the result
// is not a level element.
//
//   CLEAR i      r_i := empty
//   ADD i j      r_j := r_j, with r_i adjoined as an element
//   COPY i j     r_j := r_i
//   TAKE i j     r_j := the level-least element of r_i; no-op if r_i empty
//   REMOVE i j   r_j := r_j with the element r_i discarded
//   JEMPTY i k   jump to line k when r_i is empty
//   JMEM i j k   jump to line k when r_i is an element of r_j
//
// Time is counted on an ordinal clock w*limits + steps.  When a segment of
// the run repeats a configuration exactly, the machine passes to the limit:
// the next configuration takes, pointwise, the least line and the
// level-least register values over the cycle, the limit counter advances,
// and the step counter restarts.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "setlab/formula.hpp"
#include "setlab/level.hpp"
#include "setlab/macro.hpp"

namespace setlab {

enum class Op { Clear, Add, Copy, Take, Remove, JEmpty, JMem };

struct Instruction {
    Op op;
    // Registers, except that the jump target sits in b for JEMPTY and in c
    // for JMEM.
    int a = 0;
    int b = 0;
    int c = 0;
};

std::string to_string(const Instruction& ins);

namespace detail {
// Mnemonic table shared by the printer, the assembler, and the validator.
struct OpInfo {
    const char* name;
    int operands;
    bool jump; // last operand is a line number
};
const OpInfo& op_info(Op op);
int operand(const Instruction& ins, int idx);
} // namespace detail

struct SrmProgram {
    std::vector<Instruction> lines;

    int register_count() const; // 1 + the largest register operand
    // Operand sanity: registers within bounds, jump targets inside
    // 1..length+1 (length+1 jumps halt).
    void validate() const;
};

// Canonical listing, one instruction per line.
std::string to_string(const SrmProgram& p);
// Inverse of to_string; '#' starts a comment, blank lines are skipped.
SrmProgram assemble(const std::string& text);

struct OrdinalClock {
    std::uint64_t limits = 0;
    std::uint64_t steps = 0;
};
std::string to_string(const OrdinalClock& c);

struct Configuration {
    std::size_t line = 1;
    std::vector<HSet> regs;
};

enum class RunStatus { Halted, BudgetExhausted, LimitUndetermined };
const char* run_status_name(RunStatus s);

struct RunResult {
    RunStatus status;
    OrdinalClock clock;
    Configuration config;
};

// Called on the initial configuration and after every step and limit.
using TraceFn = std::function<void(const OrdinalClock&, const Configuration&)>;

// Runs the program with the inputs in registers 0..k-1, the rest empty.
// maxSteps bounds each omega-segment, maxLimits the number of limits.
RunResult run(SetArena& arena, const Level& lv, const SrmProgram& p,
              const std::vector<HSet>& inputs, std::uint64_t maxSteps = 100000,
              std::uint64_t maxLimits = 64, const TraceFn& trace = {});

// Compiles a Delta_0 formula to a machine that reads the free variables, in
// first-occurrence order, from registers 0..k-1 and leaves the truth value
// in register 0: the numeral 1 for true, the numeral 0 for false.  The
// inputs are not otherwise disturbed, and the compiled machine never cycles.
SrmProgram compile_delta0(const FormulaPtr& f, const MacroRegistry& reg = builtin_registry());

// Least b in 1..maxIndex such that on every single input from level b the
// machine halts within the budgets and every register value along the run
// stays inside level b; nullopt when no such b exists.
std::optional<int> height(LevelBuilder& lb, const SrmProgram& p, int maxIndex,
                          std::uint64_t maxSteps = 100000, std::uint64_t maxLimits = 64);

} // namespace setlab
