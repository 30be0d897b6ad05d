#include <map>
#include <optional>

#include "setlab/complexity.hpp"
#include "setlab/srm.hpp"

namespace setlab {

namespace {

// Truth values at run time: the numeral 1 (nonempty) for true, the numeral 0
// (empty) for false, so JEMPTY reads a result register directly.
struct Compiler {
    std::vector<Instruction> code;
    std::vector<int> labels; // label -> 0-based line, -1 while unplaced
    std::map<std::string, int> env;
    int emptyReg = 0;
    int nextReg = 0;

    int new_label() {
        labels.push_back(-1);
        return static_cast<int>(labels.size()) - 1;
    }
    void place(int lbl) { labels[lbl] = static_cast<int>(code.size()); }
    void emit(Op op, int a = 0, int b = 0, int c = 0) { code.push_back({op, a, b, c}); }
    // Jumps carry the label encoded as -(label+1) until resolve().
    void jempty(int r, int lbl) { emit(Op::JEmpty, r, -lbl - 1); }
    void jmem(int r1, int r2, int lbl) { emit(Op::JMem, r1, r2, -lbl - 1); }
    void jump(int lbl) { jempty(emptyReg, lbl); }
    void set_true(int r) {
        emit(Op::Clear, r);
        emit(Op::Add, emptyReg, r);
    }

    void resolve() {
        for (Instruction& ins : code) {
            if (ins.op == Op::JEmpty && ins.b < 0)
                ins.b = labels[-ins.b - 1] + 1;
            else if (ins.op == Op::JMem && ins.c < 0)
                ins.c = labels[-ins.c - 1] + 1;
        }
    }

    int reg_of(const std::string& v) {
        auto it = env.find(v);
        if (it == env.end())
            fail(Errc::unbound_variable, "variable '" + v + "' is unbound");
        return it->second;
    }

    // Emits an inclusion test: jumps to failLbl when some element of
    // register a is not an element of register b, else falls through.
    void subset(int a, int b, int failLbl) {
        int t = nextReg++, x = nextReg++;
        int loop = new_label(), done = new_label(), ok = new_label();
        emit(Op::Copy, a, t);
        place(loop);
        jempty(t, done);
        emit(Op::Take, t, x);
        jmem(x, b, ok);
        jump(failLbl);
        place(ok);
        emit(Op::Remove, x, t);
        jump(loop);
        place(done);
        nextReg -= 2;
    }

    void compile(const FormulaPtr& f, int res) {
        switch (f->kind) {
        case FKind::Membership: {
            int yes = new_label(), end = new_label();
            emit(Op::Clear, res);
            jmem(reg_of(f->var), reg_of(f->var2), yes);
            jump(end);
            place(yes);
            emit(Op::Add, emptyReg, res);
            place(end);
            break;
        }
        case FKind::Equality: {
            int no = new_label();
            emit(Op::Clear, res);
            int a = reg_of(f->var), b = reg_of(f->var2);
            subset(a, b, no);
            subset(b, a, no);
            emit(Op::Add, emptyReg, res);
            place(no);
            break;
        }
        case FKind::Not: {
            compile(f->left, res);
            int yes = new_label(), end = new_label();
            jempty(res, yes);
            emit(Op::Clear, res);
            jump(end);
            place(yes);
            set_true(res);
            place(end);
            break;
        }
        case FKind::And: {
            compile(f->left, res);
            int end = new_label();
            jempty(res, end); // false short-circuits
            compile(f->right, res);
            place(end);
            break;
        }
        case FKind::Or: {
            compile(f->left, res);
            int more = new_label(), end = new_label();
            jempty(res, more);
            jump(end); // true short-circuits
            place(more);
            compile(f->right, res);
            place(end);
            break;
        }
        case FKind::Implies: {
            compile(f->left, res);
            int vac = new_label(), end = new_label();
            jempty(res, vac);
            compile(f->right, res);
            jump(end);
            place(vac);
            set_true(res);
            place(end);
            break;
        }
        case FKind::BoundedExists:
        case FKind::BoundedForAll: {
            bool univ = f->kind == FKind::BoundedForAll;
            int w = reg_of(f->var2); // bound read in the outer scope
            int t = nextReg++, x = nextReg++;
            auto shadowed = env.count(f->var) ? std::optional<int>(env[f->var]) : std::nullopt;
            env[f->var] = x;
            int loop = new_label(), end = new_label();
            if (univ)
                set_true(res);
            else
                emit(Op::Clear, res);
            emit(Op::Copy, w, t);
            place(loop);
            jempty(t, end);
            emit(Op::Take, t, x);
            compile(f->left, res);
            if (univ) {
                jempty(res, end); // counterexample: res is already false
            } else {
                int more = new_label();
                jempty(res, more);
                jump(end); // witness: res is already true
                place(more);
            }
            emit(Op::Remove, x, t);
            jump(loop);
            place(end);
            if (shadowed)
                env[f->var] = *shadowed;
            else
                env.erase(f->var);
            nextReg -= 2;
            break;
        }
        case FKind::InterpretedAtom:
            fail(Errc::no_evaluator, "cannot compile interpreted atom " + f->name);
        default:
            fail(Errc::precondition, "unexpected node in a Delta_0 body");
        }
    }
};

} // namespace

SrmProgram compile_delta0(const FormulaPtr& f, const MacroRegistry& reg) {
    ComplexityClass c = classify(f, reg);
    if (!(c == ComplexityClass::delta0()))
        fail(Errc::classification,
             "compile_delta0 needs a Delta_0 formula, got " + c.to_string());
    FormulaPtr body = expand_macros(f, reg);
    Compiler cp;
    std::vector<std::string> fvs = free_vars_in_order(f);
    for (std::size_t i = 0; i < fvs.size(); ++i)
        cp.env[fvs[i]] = static_cast<int>(i);
    cp.emptyReg = static_cast<int>(fvs.size());
    int res = cp.emptyReg + 1;
    cp.nextReg = cp.emptyReg + 2;
    cp.emit(Op::Clear, cp.emptyReg);
    cp.compile(body, res);
    cp.emit(Op::Copy, res, 0);
    cp.resolve();
    SrmProgram p{std::move(cp.code)};
    p.validate();
    return p;
}

} // namespace setlab
