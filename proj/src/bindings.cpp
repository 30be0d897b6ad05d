// Python bindings: a thin string-driven facade over the core library.
// Formulas travel as text (print/parse round-trips exactly) and sets as
// literals understood by SetArena::parse; one arena and level cache per
// process.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <climits>

#include "setlab/complexity.hpp"
#include "setlab/forge.hpp"
#include "setlab/godel.hpp"
#include "setlab/parser.hpp"
#include "setlab/srm.hpp"
#include "setlab/truth.hpp"

namespace py = pybind11;
using namespace setlab;

namespace {

struct Lab {
    SetArena arena;
    LevelBuilder lb{arena};
};

Lab& lab() {
    static Lab l;
    return l;
}

Assignment env_of(const std::map<std::string, std::string>& assign) {
    Assignment env;
    for (const auto& [var, lit] : assign)
        env[var] = lab().arena.parse(lit);
    return env;
}

const char* kind_name(ComplexityClass::Kind k) {
    switch (k) {
    case ComplexityClass::Kind::Delta0:
        return "Delta0";
    case ComplexityClass::Kind::Sigma:
        return "Sigma";
    case ComplexityClass::Kind::Pi:
        return "Pi";
    case ComplexityClass::Kind::USigma:
        return "USigma";
    case ComplexityClass::Kind::UPi:
        return "UPi";
    default:
        return "Unclassified";
    }
}

py::dict class_dict(const ComplexityClass& c) {
    py::dict d;
    d["class"] = kind_name(c.kind);
    d["n"] = c.n;
    return d;
}

py::dict rep_dict(const Representation& r) {
    py::dict d;
    d["label"] = r.label;
    d["var"] = rep_var(r);
    d["sigmaForm"] = print(r.sigmaForm);
    d["piDual"] = print(r.piDual);
    return d;
}

Representation rep_of(const py::dict& d) {
    return Representation{parse_formula(d["sigmaForm"].cast<std::string>()),
                          parse_formula(d["piDual"].cast<std::string>()),
                          d["label"].cast<std::string>()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite constructible levels, formula complexity, and set register machines";

    py::register_exception<Error>(m, "SetlabError");

    m.def("engine_version", [] { return "0.1.0"; });

    m.def("parse", [](const std::string& text) {
        FormulaPtr f = parse_formula(text);
        py::dict d;
        d["print"] = print(f);
        d["canonical"] = canonical_print(f);
        d["code"] = encode(f).str();
        d["freeVars"] = free_vars_in_order(f);
        return d;
    });

    m.def("classify", [](const std::string& text) { return class_dict(classify(parse_formula(text))); });

    m.def(
        "normalize",
        [](const std::string& text, int collectionLevel) {
            FormulaPtr g = parse_formula(text);
            FormulaPtr h = normalize(g, collectionLevel < 0 ? INT_MAX : collectionLevel);
            py::dict d;
            d["output"] = print(h);
            d["outputClass"] = class_dict(classify(h));
            return d;
        },
        py::arg("text"), py::arg("collection_level") = -1);

    m.def("relativize", [](const std::string& text, const std::string& bound) {
        return print(relativize(parse_formula(text), bound));
    });

    m.def("build_level", [](int n) {
        const Level& lv = lab().lb.build(n);
        py::dict d;
        d["index"] = lv.index;
        d["size"] = lv.elements.size();
        std::vector<std::string> elems;
        for (HSet s : lv.elements)
            elems.push_back(s.to_string());
        d["elements"] = elems;
        d["births"] = lv.births;
        return d;
    });

    m.def(
        "model_check",
        [](int level, const std::string& text, const std::map<std::string, std::string>& assign) {
            return model_check(lab().lb, lab().lb.build(level), parse_formula(text),
                               env_of(assign));
        },
        py::arg("level"), py::arg("text"), py::arg("assign") = std::map<std::string, std::string>{});

    m.def(
        "sigma0_truth",
        [](const std::string& text, const std::map<std::string, std::string>& assign) {
            return sigma0_truth(lab().lb, parse_formula(text), env_of(assign));
        },
        py::arg("text"), py::arg("assign") = std::map<std::string, std::string>{});

    m.def(
        "least_witness_level",
        [](const std::string& text, int maxLevel) {
            return least_witness_level(lab().lb, parse_formula(text), maxLevel);
        },
        py::arg("text"), py::arg("max_level") = 4);

    m.def(
        "run_srm",
        [](const std::string& program, int level, const std::vector<std::string>& inputs,
           std::uint64_t maxSteps, std::uint64_t maxLimits) {
            SrmProgram p = assemble(program);
            std::vector<HSet> in;
            for (const std::string& lit : inputs)
                in.push_back(lab().arena.parse(lit));
            RunResult r = run(lab().arena, lab().lb.build(level), p, in, maxSteps, maxLimits);
            py::dict d;
            d["status"] = run_status_name(r.status);
            d["limits"] = r.clock.limits;
            d["steps"] = r.clock.steps;
            d["line"] = r.config.line;
            std::vector<std::string> regs;
            for (HSet s : r.config.regs)
                regs.push_back(s.to_string());
            d["registers"] = regs;
            return d;
        },
        py::arg("program"), py::arg("level"), py::arg("inputs") = std::vector<std::string>{},
        py::arg("max_steps") = 100000, py::arg("max_limits") = 64);

    m.def("compile_d0",
          [](const std::string& text) { return to_string(compile_delta0(parse_formula(text))); });

    m.def(
        "height",
        [](const std::string& program, int maxLevel) {
            return height(lab().lb, assemble(program), maxLevel);
        },
        py::arg("program"), py::arg("max_level") = 4);

    m.def(
        "kleene",
        [](const std::string& matrix, const std::string& var) {
            return rep_dict(kleene_representation(parse_formula(matrix), var));
        },
        py::arg("matrix"), py::arg("var") = "x");

    m.def("successor",
          [](const py::dict& rep) { return rep_dict(successor_representation(rep_of(rep))); });

    m.def("exists_sentence",
          [](const py::dict& rep) { return print(exists_sentence(rep_of(rep))); });

    m.def("comp_sentence", [](const py::dict& gamma, const py::dict& delta) {
        return print(comp_sentence(rep_of(gamma), rep_of(delta)));
    });

    m.def(
        "spectrum",
        [](const std::vector<std::string>& sentences, int maxLevel) {
            std::vector<FormulaPtr> fs;
            for (const std::string& s : sentences)
                fs.push_back(parse_formula(s));
            SpectrumResult r = spectrum(lab().lb, fs, maxLevel);
            py::dict d;
            d["value"] = r.value ? py::cast(*r.value) : py::none();
            py::list per;
            for (const auto& [text, least] : r.perSentence) {
                py::dict row;
                row["sentence"] = text;
                row["least"] = least ? py::cast(*least) : py::none();
                per.append(row);
            }
            d["perSentence"] = per;
            return d;
        },
        py::arg("sentences"), py::arg("max_level") = 4);
}
