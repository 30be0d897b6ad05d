// Command-line front end: every subcommand prints one JSON document on
// stdout, diagnostics go to stderr, files are written atomically.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <climits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "setlab/complexity.hpp"
#include "setlab/forge.hpp"
#include "setlab/godel.hpp"
#include "setlab/parser.hpp"
#include "setlab/srm.hpp"
#include "setlab/truth.hpp"

using json = nlohmann::ordered_json;
using namespace setlab;

namespace {

constexpr const char* kEngineVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string level_digest(const Level& lv) {
    std::string bytes = std::to_string(lv.index);
    for (std::size_t i = 0; i < lv.elements.size(); ++i) {
        bytes += '|';
        bytes += lv.elements[i].to_string();
        bytes += ';';
        bytes += std::to_string(lv.births[i]);
    }
    return hex64(fnv1a64(bytes));
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(Errc::precondition, "cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush())
            fail(Errc::precondition, "short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::precondition, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json class_json(const ComplexityClass& c) {
    const char* name = "Unclassified";
    switch (c.kind) {
    case ComplexityClass::Kind::Delta0:
        name = "Delta0";
        break;
    case ComplexityClass::Kind::Sigma:
        name = "Sigma";
        break;
    case ComplexityClass::Kind::Pi:
        name = "Pi";
        break;
    case ComplexityClass::Kind::USigma:
        name = "USigma";
        break;
    case ComplexityClass::Kind::UPi:
        name = "UPi";
        break;
    default:
        break;
    }
    return json{{"class", name}, {"n", c.n}};
}

json level_json(const Level& lv) {
    json elements = json::array();
    json births = json::array();
    json witnesses = json::array();
    for (std::size_t i = 0; i < lv.elements.size(); ++i) {
        elements.push_back(lv.elements[i].to_string());
        births.push_back(lv.births[i]);
        if (lv.witnesses[i]) {
            json params = json::array();
            for (HSet p : lv.witnesses[i]->params)
                params.push_back(p.to_string());
            witnesses.push_back(json{{"code", lv.witnesses[i]->code.str()},
                                     {"formula", code_to_text(lv.witnesses[i]->code)},
                                     {"params", params}});
        } else {
            witnesses.push_back(nullptr);
        }
    }
    return json{{"index", lv.index},
                {"size", lv.elements.size()},
                {"elements", elements},
                {"births", births},
                {"witnesses", witnesses}};
}

// Shared output plumbing: accumulates canonical arguments for the manifest.
struct Emitter {
    bool wantManifest = false;
    std::string command;
    std::map<std::string, std::string> arguments;
    std::string levelDigest;

    void arg(const std::string& k, const std::string& v) { arguments[k] = v; }
    void arg(const std::string& k, int v) { arguments[k] = std::to_string(v); }
    void used_level(const Level& lv) { levelDigest = level_digest(lv); }

    void print(json out) const {
        if (wantManifest) {
            json args = json::object();
            for (const auto& [k, v] : arguments)
                args[k] = v;
            out["manifest"] = json{{"command", command},
                                   {"arguments", args},
                                   {"engineVersion", kEngineVersion},
                                   {"levelDigest",
                                    levelDigest.empty() ? json(nullptr) : json(levelDigest)}};
        }
        std::cout << out.dump(2) << "\n";
    }
};

Assignment parse_assignments(SetArena& arena, const std::vector<std::string>& raw,
                             Emitter& em) {
    Assignment env;
    for (const std::string& s : raw) {
        std::size_t eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            fail(Errc::syntax, "assignment '" + s + "' is not of the form var=set");
        std::string var = s.substr(0, eq);
        env[var] = arena.parse(s.substr(eq + 1));
        em.arg("assign." + var, env[var].to_string());
    }
    return env;
}

json rep_to_json(const Representation& r) {
    return json{{"label", r.label},
                {"var", rep_var(r)},
                {"sigmaForm", print(r.sigmaForm)},
                {"piDual", print(r.piDual)}};
}

Representation rep_from_file(const std::string& path) {
    json j = json::parse(read_file(path));
    return Representation{parse_formula(j.at("sigmaForm").get<std::string>()),
                          parse_formula(j.at("piDual").get<std::string>()),
                          j.at("label").get<std::string>()};
}

// Emitted forms plus the strictness property of their normalizations.
json rep_report(const Representation& r) {
    json out = rep_to_json(r);
    out["sigmaNormalClass"] = class_json(classify(normalize(r.sigmaForm)));
    return out;
}

void write_or_print(const std::optional<std::string>& outPath, const json& doc, Emitter& em) {
    if (outPath) {
        atomic_write(*outPath, doc.dump(2) + "\n");
        em.arg("out", *outPath);
        json summary{{"written", *outPath}};
        em.print(summary);
    } else {
        em.print(doc);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic laboratory for finite constructible levels, formula "
                 "complexity, and set register machines"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    bool wantManifest = false;
    app.add_flag("--manifest", wantManifest,
                 "attach a reproducibility manifest to the JSON output");

    std::string formulaText, boundVar, outPath, assignVar;
    std::string progPath, tracePath, matrixPath, repPath, gammaPath, deltaPath, theoryPath;
    std::string sentencesPath, witnessVar = "x", levelVar = "a";
    std::vector<std::string> assigns, inputLiterals;
    int levelIndex = 3, maxLevel = 4, collectionLevel = -1;
    std::uint64_t maxSteps = 100000, maxLimits = 64;
    bool audit = false;

    CLI::App* cParse = app.add_subcommand("parse", "parse a formula and report its forms");
    cParse->add_option("formula", formulaText, "formula text")->required();

    CLI::App* cClassify = app.add_subcommand("classify", "complexity class of a formula");
    cClassify->add_option("formula", formulaText, "formula text")->required();

    CLI::App* cNormalize = app.add_subcommand("normalize", "strict prenex normal form");
    cNormalize->add_option("formula", formulaText, "formula text")->required();
    cNormalize->add_option("--collection-level", collectionLevel,
                           "largest class level for Collection promotions (default: unlimited)");
    cNormalize->add_flag("--audit", audit, "include the rewrite steps");

    CLI::App* cRelativize = app.add_subcommand("relativize", "bound every unbounded quantifier");
    cRelativize->add_option("formula", formulaText, "formula text")->required();
    cRelativize->add_option("--bound", boundVar, "bounding variable")->required();

    CLI::App* cBuild = app.add_subcommand("build-level", "construct a level");
    cBuild->add_option("index", levelIndex, "level index (0..5)")->required();
    cBuild->add_option("--out", outPath, "write the level JSON to this file");

    CLI::App* cEval = app.add_subcommand("eval", "truth of a formula over a level");
    cEval->add_option("--level", levelIndex, "level index")->required();
    cEval->add_option("--formula", formulaText, "formula text")->required();
    cEval->add_option("--assign", assigns, "assignment var=set (repeatable)");

    CLI::App* cRun = app.add_subcommand("run-srm", "run a set register machine");
    cRun->add_option("program", progPath, "assembly file")->required()->check(CLI::ExistingFile);
    cRun->add_option("--level", levelIndex, "level index")->required();
    cRun->add_option("--input", inputLiterals, "input set literal (repeatable)");
    cRun->add_option("--max-steps", maxSteps, "step budget per omega-segment (default 100000)");
    cRun->add_option("--max-limits", maxLimits, "limit-stage budget (default 64)");
    cRun->add_option("--trace", tracePath, "write a JSON-lines configuration trace");

    CLI::App* cCompile = app.add_subcommand("compile-d0", "compile a Delta_0 formula to a machine");
    cCompile->add_option("formula", formulaText, "formula text")->required();
    cCompile->add_option("--out", outPath, "write the assembly to this file");

    CLI::App* cForge = app.add_subcommand("forge", "representations and derived sentences");
    cForge->require_subcommand(1);
    CLI::App* fKleene = cForge->add_subcommand("kleene", "representation from a Delta_0 matrix");
    fKleene->add_option("--matrix", matrixPath, "file with the matrix formula")
        ->required()
        ->check(CLI::ExistingFile);
    fKleene->add_option("--var", witnessVar, "designated witness variable (default x)");
    fKleene->add_option("--out", outPath, "write the representation JSON to this file");
    CLI::App* fSucc = cForge->add_subcommand("succ", "successor of a representation");
    fSucc->add_option("--rep", repPath, "representation JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    fSucc->add_option("--out", outPath, "write the representation JSON to this file");
    CLI::App* fExists = cForge->add_subcommand("exists", "existence sentence of a representation");
    fExists->add_option("--rep", repPath, "representation JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::App* fComp = cForge->add_subcommand("comp", "comparison sentence of two representations");
    fComp->add_option("--gamma", gammaPath, "representation JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    fComp->add_option("--delta", deltaPath, "representation JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::App* fRfn = cForge->add_subcommand("rfn", "reflection schema instance");
    fRfn->add_option("--theory", theoryPath, "file with the provability formula")
        ->required()
        ->check(CLI::ExistingFile);
    fRfn->add_option("--level-var", levelVar, "level variable name (default a)");
    CLI::App* fPhit = cForge->add_subcommand("phit", "soundness sentence for a coded theory");
    fPhit->add_option("--theory", theoryPath, "file with the provability formula")
        ->required()
        ->check(CLI::ExistingFile);

    CLI::App* cAnalyze = app.add_subcommand("analyze", "spectrum of a sentence list");
    cAnalyze->add_option("--sentences", sentencesPath, "file with one sentence per line")
        ->required()
        ->check(CLI::ExistingFile);
    cAnalyze->add_option("--max-level", maxLevel, "largest level index (default 4)");

    CLI::App* cHeight = app.add_subcommand("height", "least level closed under a machine");
    cHeight->add_option("program", progPath, "assembly file")->required()->check(CLI::ExistingFile);
    cHeight->add_option("--max-level", maxLevel, "largest level index (default 4)");
    cHeight->add_option("--max-steps", maxSteps, "step budget per omega-segment");
    cHeight->add_option("--max-limits", maxLimits, "limit-stage budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    SetArena arena;
    LevelBuilder lb(arena);
    Emitter em;
    em.wantManifest = wantManifest;

    try {
        if (cParse->parsed()) {
            em.command = "parse";
            em.arg("formula", formulaText);
            FormulaPtr f = parse_formula(formulaText);
            json fv = json::array();
            for (const std::string& v : free_vars_in_order(f))
                fv.push_back(v);
            em.print(json{{"print", print(f)},
                          {"canonical", canonical_print(f)},
                          {"code", encode(f).str()},
                          {"freeVars", fv}});
        } else if (cClassify->parsed()) {
            em.command = "classify";
            em.arg("formula", formulaText);
            em.print(class_json(classify(parse_formula(formulaText))));
        } else if (cNormalize->parsed()) {
            em.command = "normalize";
            em.arg("formula", formulaText);
            FormulaPtr f = parse_formula(formulaText);
            std::vector<NormalizeStep> steps;
            int cl = collectionLevel < 0 ? INT_MAX : collectionLevel;
            em.arg("collectionLevel", collectionLevel < 0 ? "unlimited" : std::to_string(cl));
            FormulaPtr g = normalize(f, cl, audit ? &steps : nullptr);
            json out{{"input", print(f)},
                     {"output", print(g)},
                     {"outputClass", class_json(classify(g))}};
            if (audit) {
                json js = json::array();
                for (const NormalizeStep& s : steps)
                    js.push_back(json{{"rule", s.rule},
                                      {"before", print(s.before)},
                                      {"after", print(s.after)},
                                      {"premiseBearing", s.premise_bearing}});
                out["steps"] = js;
            }
            em.print(out);
        } else if (cRelativize->parsed()) {
            em.command = "relativize";
            em.arg("formula", formulaText);
            em.arg("bound", boundVar);
            em.print(json{{"output", print(relativize(parse_formula(formulaText), boundVar))}});
        } else if (cBuild->parsed()) {
            em.command = "build-level";
            em.arg("index", levelIndex);
            const char* cacheDir = std::getenv("SETLAB_CACHE_DIR");
            std::string cachePath;
            if (cacheDir && *cacheDir) {
                std::filesystem::create_directories(cacheDir);
                cachePath = std::string(cacheDir) + "/level-" + kEngineVersion + "-" +
                            std::to_string(levelIndex) + ".json";
            }
            json doc;
            if (!cachePath.empty() && std::filesystem::exists(cachePath)) {
                doc = json::parse(read_file(cachePath));
                em.levelDigest = doc.at("digest").get<std::string>();
            } else {
                const Level& lv = lb.build(levelIndex);
                em.used_level(lv);
                doc = level_json(lv);
                doc["digest"] = em.levelDigest;
                if (!cachePath.empty())
                    atomic_write(cachePath, doc.dump(2) + "\n");
            }
            std::optional<std::string> op;
            if (!outPath.empty())
                op = outPath;
            write_or_print(op, doc, em);
        } else if (cEval->parsed()) {
            em.command = "eval";
            em.arg("level", levelIndex);
            em.arg("formula", formulaText);
            FormulaPtr f = parse_formula(formulaText);
            Assignment env = parse_assignments(arena, assigns, em);
            const Level& lv = lb.build(levelIndex);
            em.used_level(lv);
            bool v = model_check(lb, lv, f, env);
            em.print(json{{"level", levelIndex}, {"formula", print(f)}, {"value", v}});
        } else if (cRun->parsed()) {
            em.command = "run-srm";
            em.arg("program", progPath);
            em.arg("level", levelIndex);
            em.arg("maxSteps", std::to_string(maxSteps));
            em.arg("maxLimits", std::to_string(maxLimits));
            SrmProgram p = assemble(read_file(progPath));
            const Level& lv = lb.build(levelIndex);
            em.used_level(lv);
            std::vector<HSet> inputs;
            for (std::size_t i = 0; i < inputLiterals.size(); ++i) {
                inputs.push_back(arena.parse(inputLiterals[i]));
                em.arg("input." + std::to_string(i), inputs.back().to_string());
            }
            std::string trace;
            TraceFn fn;
            if (!tracePath.empty()) {
                em.arg("trace", tracePath);
                fn = [&](const OrdinalClock& ck, const Configuration& c) {
                    json row{{"clock", json{{"limits", ck.limits}, {"steps", ck.steps}}},
                             {"line", c.line}};
                    json regs = json::array();
                    for (HSet r : c.regs)
                        regs.push_back(r.to_string());
                    row["registers"] = regs;
                    trace += row.dump();
                    trace += '\n';
                };
            }
            RunResult r = run(arena, lv, p, inputs, maxSteps, maxLimits, fn);
            if (!tracePath.empty())
                atomic_write(tracePath, trace);
            json regs = json::array();
            for (HSet v : r.config.regs)
                regs.push_back(v.to_string());
            em.print(json{{"status", run_status_name(r.status)},
                          {"clock", json{{"limits", r.clock.limits},
                                         {"steps", r.clock.steps},
                                         {"display", to_string(r.clock)}}},
                          {"line", r.config.line},
                          {"registers", regs}});
        } else if (cCompile->parsed()) {
            em.command = "compile-d0";
            em.arg("formula", formulaText);
            FormulaPtr f = parse_formula(formulaText);
            SrmProgram p = compile_delta0(f);
            json fv = json::array();
            for (const std::string& v : free_vars_in_order(f))
                fv.push_back(v);
            std::string text = to_string(p);
            if (!outPath.empty()) {
                atomic_write(outPath, text);
                em.arg("out", outPath);
            }
            em.print(json{{"formula", print(f)},
                          {"inputRegisters", fv},
                          {"registerCount", p.register_count()},
                          {"length", p.lines.size()},
                          {"program", text}});
        } else if (cForge->parsed()) {
            em.command = "forge";
            std::optional<std::string> op;
            if (!outPath.empty())
                op = outPath;
            if (fKleene->parsed()) {
                em.command = "forge kleene";
                em.arg("matrix", matrixPath);
                em.arg("var", witnessVar);
                Representation r =
                    kleene_representation(parse_formula(read_file(matrixPath)), witnessVar);
                write_or_print(op, rep_report(r), em);
            } else if (fSucc->parsed()) {
                em.command = "forge succ";
                em.arg("rep", repPath);
                Representation r = successor_representation(rep_from_file(repPath));
                write_or_print(op, rep_report(r), em);
            } else if (fExists->parsed()) {
                em.command = "forge exists";
                em.arg("rep", repPath);
                FormulaPtr s = exists_sentence(rep_from_file(repPath));
                em.print(json{{"sentence", print(s)},
                              {"normalClass", class_json(classify(normalize(s)))}});
            } else if (fComp->parsed()) {
                em.command = "forge comp";
                em.arg("gamma", gammaPath);
                em.arg("delta", deltaPath);
                FormulaPtr s = comp_sentence(rep_from_file(gammaPath), rep_from_file(deltaPath));
                em.print(json{{"sentence", print(s)},
                              {"normalClass", class_json(classify(normalize(s)))}});
            } else if (fRfn->parsed()) {
                em.command = "forge rfn";
                em.arg("theory", theoryPath);
                em.arg("levelVar", levelVar);
                FormulaPtr s = rfn_template(parse_formula(read_file(theoryPath)), levelVar);
                em.print(json{{"sentence", print(s)}});
            } else {
                em.command = "forge phit";
                em.arg("theory", theoryPath);
                FormulaPtr s = phiT_template(parse_formula(read_file(theoryPath)));
                em.print(json{{"sentence", print(s)}});
            }
        } else if (cAnalyze->parsed()) {
            em.command = "analyze";
            em.arg("sentences", sentencesPath);
            em.arg("maxLevel", maxLevel);
            std::vector<FormulaPtr> sentences;
            std::istringstream in(read_file(sentencesPath));
            std::string line;
            while (std::getline(in, line)) {
                std::size_t a = line.find_first_not_of(" \t\r");
                if (a == std::string::npos || line[a] == '#')
                    continue;
                sentences.push_back(parse_formula(line));
            }
            SpectrumResult r = spectrum(lb, sentences, maxLevel);
            em.used_level(lb.build(maxLevel));
            json per = json::array();
            for (const auto& [text, least] : r.perSentence)
                per.push_back(json{{"sentence", text},
                                   {"least", least ? json(*least) : json(nullptr)}});
            em.print(json{{"value", r.value ? json(*r.value) : json(nullptr)},
                          {"perSentence", per}});
        } else if (cHeight->parsed()) {
            em.command = "height";
            em.arg("program", progPath);
            em.arg("maxLevel", maxLevel);
            SrmProgram p = assemble(read_file(progPath));
            std::optional<int> h = height(lb, p, maxLevel, maxSteps, maxLimits);
            em.used_level(lb.build(maxLevel));
            em.print(json{{"height", h ? json(*h) : json(nullptr)}});
        }
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
