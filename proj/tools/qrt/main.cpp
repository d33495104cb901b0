// Copyright 2026 The qrt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrt/analysis/pdg.hpp"
#include "qrt/analysis/safety.hpp"
#include "qrt/analysis/symbols.hpp"
#include "qrt/parser.hpp"
#include "qrt/printer.hpp"
#include "qrt/refactor/engine.hpp"
#include "qrt/sim/equivalence.hpp"
#include "qrt/textdiff.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// Exit codes are a stable contract.
constexpr int kOk = 0;
constexpr int kFmtDiffers = 1;
constexpr int kPrecondition = 2;
constexpr int kInequivalent = 3;
constexpr int kInputError = 4;
constexpr int kInconclusive = 5;

struct LoadedFile {
    std::string path;
    std::string text;
    qrt::syntax::Program program;
};

std::optional<std::string> readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void printDiagnostics(const std::vector<qrt::Diagnostic>& diags, const std::string& file,
                      bool json) {
    if (json) {
        std::cerr << qrt::diagnosticsToJson(diags, file) << '\n';
        return;
    }
    for (const auto& d : diags) std::cerr << qrt::formatDiagnostic(d, file) << '\n';
}

std::optional<LoadedFile> loadProgram(const std::string& path, bool json) {
    auto text = readFile(path);
    if (!text) {
        std::cerr << "qrt: cannot read " << path << '\n';
        return std::nullopt;
    }
    auto parsed = qrt::syntax::parse(*text);
    if (!parsed.ok()) {
        printDiagnostics(parsed.diagnostics, path, json);
        return std::nullopt;
    }
    return LoadedFile{path, std::move(*text), std::move(*parsed)};
}

bool writeFileAtomic(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path temp = target;
    temp += ".qrt-tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << content;
        if (!out.good()) {
            std::error_code ec;
            std::filesystem::remove(temp, ec);
            return false;
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, target, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        return false;
    }
    return true;
}

std::string defaultEntry(const qrt::syntax::Program& p) {
    for (const auto& ns : p.namespaces)
        for (const auto& c : ns.callables)
            if (c.name == "Main") return "Main";
    std::string found;
    for (const auto& ns : p.namespaces) {
        for (const auto& c : ns.callables) {
            if (c.kind == qrt::syntax::CallableKind::Operation && c.params.empty()) {
                if (!found.empty()) return {};
                found = c.name;
            }
        }
    }
    return found;
}

qrt::sim::Limits limitsFromEnvironment() {
    qrt::sim::Limits limits;
    const char* env = std::getenv("QRT_LIMITS");
    if (!env) return limits;
    nlohmann::json doc = nlohmann::json::parse(env, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        std::cerr << "qrt: ignoring malformed QRT_LIMITS\n";
        return limits;
    }
    if (doc.contains("maxQubits") && doc["maxQubits"].is_number_integer())
        limits.maxQubits = doc["maxQubits"].get<int>();
    if (doc.contains("maxBranches") && doc["maxBranches"].is_number_integer())
        limits.maxBranches = doc["maxBranches"].get<int>();
    if (doc.contains("maxSteps") && doc["maxSteps"].is_number_integer())
        limits.maxSteps = doc["maxSteps"].get<long long>();
    return limits;
}

int exitCodeForDiagnostics(const std::vector<qrt::Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.code == qrt::diag_code::Precondition) return kPrecondition;
    return kInputError;
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

int cmdList(bool json) {
    const auto& entries = qrt::refactor::catalog();
    if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& info : entries) {
            arr.push_back({{"name", info.name},
                           {"description", info.description},
                           {"catalogRows", info.catalogRows},
                           {"requiredArgs", info.requiredArgs},
                           {"optionalArgs", info.optionalArgs}});
        }
        std::cout << arr.dump(2) << '\n';
        return kOk;
    }
    for (const auto& info : entries) {
        std::cout << info.name << '\n';
        std::cout << "    " << info.description << '\n';
        std::cout << "    covers: ";
        for (size_t i = 0; i < info.catalogRows.size(); ++i) {
            if (i > 0) std::cout << "; ";
            std::cout << info.catalogRows[i];
        }
        std::cout << '\n';
        if (!info.requiredArgs.empty()) {
            std::cout << "    args: ";
            for (size_t i = 0; i < info.requiredArgs.size(); ++i) {
                if (i > 0) std::cout << ", ";
                std::cout << info.requiredArgs[i];
            }
            std::cout << '\n';
        }
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// apply
// ---------------------------------------------------------------------------

struct ApplyOptions {
    std::string file;
    std::string refactoring;
    std::string target;
    std::string symbol;
    std::vector<std::string> args;  // key=value
    std::string split;
    std::string newName;
    std::string permutation;
    std::string rule;
    std::string with;
    std::string batch;
    std::string entry;
    std::string output = "diff";
    bool noVerify = false;
    bool write = false;
    bool json = false;
};

std::optional<qrt::refactor::RefactoringRequest> buildRequest(const ApplyOptions& opt) {
    const auto* info = qrt::refactor::findRefactoring(opt.refactoring);
    if (!info) {
        std::cerr << "qrt: unknown refactoring '" << opt.refactoring
                  << "' (see `qrt list`)\n";
        return std::nullopt;
    }
    qrt::refactor::RefactoringRequest request;
    request.kind = info->kind;
    if (!opt.target.empty()) {
        auto target = qrt::refactor::parseTarget(opt.target);
        if (!target) {
            std::cerr << "qrt: malformed target '" << opt.target << "'\n";
            return std::nullopt;
        }
        request.target = *target;
    }
    request.target.symbolName = opt.symbol;
    for (const auto& kv : opt.args) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "qrt: malformed --arg '" << kv << "' (expected key=value)\n";
            return std::nullopt;
        }
        request.args[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (!opt.split.empty()) request.args["split"] = opt.split;
    if (!opt.newName.empty()) request.args["name"] = opt.newName;
    if (!opt.permutation.empty()) request.args["permutation"] = opt.permutation;
    if (!opt.rule.empty()) request.args["rule"] = opt.rule;
    if (!opt.with.empty()) request.args["with"] = opt.with;
    for (const auto& required : info->requiredArgs) {
        if (!request.args.count(required)) {
            std::cerr << "qrt: refactoring '" << info->name << "' requires argument '" << required
                      << "'\n";
            return std::nullopt;
        }
    }
    return request;
}

/// The entry to verify the edited program against, tracking entry renames.
std::string entryAfterEdit(const qrt::refactor::RefactoringRequest& request,
                           const qrt::syntax::Program& before, const std::string& entry) {
    if (request.kind != qrt::refactor::RefactoringKind::Rename) return entry;
    if (!request.target.symbolName.empty() || request.target.isRange()) return entry;
    const std::string& qualified = request.target.qualifiedName;
    size_t dot = qualified.rfind('.');
    std::string callable = dot == std::string::npos ? qualified : qualified.substr(dot + 1);
    if (callable != entry) return entry;
    auto newName = request.arg("name");
    (void)before;
    return newName.value_or(entry);
}

int cmdApply(const ApplyOptions& opt) {
    auto loaded = loadProgram(opt.file, opt.json);
    if (!loaded) return kInputError;

    std::vector<qrt::refactor::RefactoringRequest> requests;
    if (!opt.batch.empty()) {
        auto text = readFile(opt.batch);
        if (!text) {
            std::cerr << "qrt: cannot read " << opt.batch << '\n';
            return kInputError;
        }
        nlohmann::json doc = nlohmann::json::parse(*text, nullptr, false);
        if (doc.is_discarded() || !doc.is_array()) {
            std::cerr << "qrt: batch file must hold a JSON array of requests\n";
            return kInputError;
        }
        for (const auto& item : doc) {
            auto request = qrt::refactor::requestFromJson(item.dump());
            if (!request.ok()) {
                printDiagnostics(request.diagnostics, opt.batch, opt.json);
                return kInputError;
            }
            requests.push_back(std::move(*request));
        }
    } else {
        auto request = buildRequest(opt);
        if (!request) return kInputError;
        requests.push_back(std::move(*request));
    }

    qrt::sim::Limits limits = limitsFromEnvironment();

    qrt::syntax::Program current = qrt::syntax::clone(loaded->program);
    std::string entry = opt.entry.empty() ? defaultEntry(current) : opt.entry;
    std::vector<std::string> allChanges;
    std::string verification = "skipped";

    // batch requests commit sequentially in file order
    for (const auto& request : requests) {
        qrt::refactor::EditResult result = qrt::refactor::apply(current, request);
        if (!result.ok()) {
            printDiagnostics(result.diagnostics, opt.file, opt.json);
            return exitCodeForDiagnostics(result.diagnostics);
        }
        if (!opt.noVerify) {
            std::string entryB = entryAfterEdit(request, current, entry);
            if (entry.empty()) {
                verification = "inconclusive: no entry point; use --entry";
                std::cerr << "qrt: cannot verify without an entry point (use --entry or "
                             "--no-verify)\n";
                return kInconclusive;
            }
            auto verdict =
                qrt::sim::checkEquivalence(current, entry, result.program, entryB, limits);
            verification = qrt::sim::describe(verdict);
            if (verdict.kind == qrt::sim::EquivalenceVerdict::Kind::Inequivalent) {
                std::cerr << "qrt: verification failed: " << verification << '\n';
                return kInequivalent;
            }
            if (verdict.kind == qrt::sim::EquivalenceVerdict::Kind::Inconclusive) {
                std::cerr << "qrt: verification inconclusive: " << verdict.reason << '\n';
                return kInconclusive;
            }
            entry = entryB;
        }
        for (const auto& change : result.changes) allChanges.push_back(change);
        current = std::move(result.program);
    }

    std::string beforeCanonical = qrt::syntax::print(loaded->program);
    std::string afterText = qrt::syntax::print(current);
    std::string diff = qrt::unifiedDiff(beforeCanonical, afterText, "a/" + opt.file,
                                        "b/" + opt.file);

    if (opt.json) {
        nlohmann::json out{{"changes", allChanges},
                           {"diff", diff},
                           {"verification", verification}};
        std::cout << out.dump(2) << '\n';
    } else if (opt.output == "source") {
        std::cout << afterText;
    } else {
        std::cout << diff;
    }
    if (opt.write) {
        if (!writeFileAtomic(opt.file, afterText)) {
            std::cerr << "qrt: failed to write " << opt.file << '\n';
            return kInputError;
        }
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmdCheck(const std::string& fileA, const std::string& fileB, const std::string& entryOpt,
             bool json) {
    auto a = loadProgram(fileA, json);
    if (!a) return kInputError;
    auto b = loadProgram(fileB, json);
    if (!b) return kInputError;
    std::string entry = entryOpt.empty() ? defaultEntry(a->program) : entryOpt;
    if (entry.empty()) {
        std::cerr << "qrt: cannot determine an entry point; use --entry\n";
        return kInconclusive;
    }
    qrt::sim::Limits limits = limitsFromEnvironment();
    auto verdict = qrt::sim::checkEquivalence(a->program, b->program, entry, limits);
    if (json) {
        nlohmann::json out{{"verdict", verdict.kind == qrt::sim::EquivalenceVerdict::Kind::Equivalent
                                           ? "equivalent"
                            : verdict.kind == qrt::sim::EquivalenceVerdict::Kind::Inequivalent
                                ? "inequivalent"
                                : "inconclusive"},
                           {"detail", qrt::sim::describe(verdict)}};
        if (verdict.kind == qrt::sim::EquivalenceVerdict::Kind::Inequivalent) {
            out["witness"] = verdict.witnessTrace;
            out["probA"] = verdict.probA;
            out["probB"] = verdict.probB;
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << qrt::sim::describe(verdict) << '\n';
    }
    switch (verdict.kind) {
        case qrt::sim::EquivalenceVerdict::Kind::Equivalent: return kOk;
        case qrt::sim::EquivalenceVerdict::Kind::Inequivalent: return kInequivalent;
        case qrt::sim::EquivalenceVerdict::Kind::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

// ---------------------------------------------------------------------------
// pdg
// ---------------------------------------------------------------------------

int cmdPdg(const std::string& file, const std::string& callable, const std::string& format,
           bool json) {
    auto loaded = loadProgram(file, json);
    if (!loaded) return kInputError;
    auto symbols = qrt::analysis::resolve(loaded->program);
    if (!symbols.ok()) {
        printDiagnostics(symbols.diagnostics, file, json);
        return kInputError;
    }
    if (auto safety = qrt::analysis::checkQuantumSafety(loaded->program, *symbols);
        !safety.empty()) {
        printDiagnostics(safety, file, json);
        return kInputError;
    }
    // `NS.Callable` or a bare callable name when unambiguous
    const qrt::syntax::Callable* target = nullptr;
    size_t dot = callable.rfind('.');
    if (dot != std::string::npos) {
        target = qrt::syntax::findCallable(loaded->program, callable.substr(0, dot),
                                           callable.substr(dot + 1));
    }
    if (!target) target = qrt::syntax::findCallableByName(loaded->program, callable);
    if (!target) {
        std::cerr << "qrt: no callable named '" << callable << "'\n";
        return kInputError;
    }
    qrt::analysis::Pdg pdg = qrt::analysis::buildPdg(loaded->program, *target, *symbols);
    std::cout << (format == "dot" ? pdg.toDot() : pdg.toText());
    return kOk;
}

// ---------------------------------------------------------------------------
// fmt
// ---------------------------------------------------------------------------

int cmdFmt(const std::string& file, bool check, bool write, bool json) {
    auto loaded = loadProgram(file, json);
    if (!loaded) return kInputError;
    std::string canonical = qrt::syntax::print(loaded->program);
    if (check) return canonical == loaded->text ? kOk : kFmtDiffers;
    if (write) {
        if (canonical != loaded->text && !writeFileAtomic(file, canonical)) {
            std::cerr << "qrt: failed to write " << file << '\n';
            return kInputError;
        }
        return kOk;
    }
    std::cout << canonical;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qrt - a source-level refactoring toolkit for a Q# subset"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    auto* list = app.add_subcommand("list", "list the refactoring catalog");

    ApplyOptions applyOpt;
    auto* apply = app.add_subcommand("apply", "apply a refactoring and verify behavior");
    apply->add_option("file", applyOpt.file, "input .qs file")->required();
    apply->add_option("--refactoring", applyOpt.refactoring, "refactoring name (see list)");
    apply->add_option("--target", applyOpt.target,
                      "Namespace.Callable or Namespace.Callable:<path>[..<path>]");
    apply->add_option("--symbol", applyOpt.symbol, "local symbol within the target callable");
    apply->add_option("--arg", applyOpt.args, "refactoring argument key=value (repeatable)");
    apply->add_option("--split", applyOpt.split, "split partition <path>..<path>:Name,...");
    apply->add_option("--new-name", applyOpt.newName, "shorthand for --arg name=...");
    apply->add_option("--permutation", applyOpt.permutation,
                      "shorthand for --arg permutation=...");
    apply->add_option("--rule", applyOpt.rule, "shorthand for --arg rule=...");
    apply->add_option("--with", applyOpt.with, "shorthand for --arg with=...");
    apply->add_option("--batch", applyOpt.batch, "JSON file with a request array");
    apply->add_option("--entry", applyOpt.entry, "entry callable for verification");
    apply->add_option("--output", applyOpt.output, "stdout artifact: diff|source")
        ->check(CLI::IsMember({"diff", "source"}));
    apply->add_flag("--no-verify", applyOpt.noVerify, "skip the equivalence check");
    apply->add_flag("--write", applyOpt.write, "rewrite the input file in place (atomic)");

    std::string checkA, checkB, checkEntry;
    auto* check = app.add_subcommand("check", "compare observable behavior of two programs");
    check->add_option("fileA", checkA)->required();
    check->add_option("fileB", checkB)->required();
    check->add_option("--entry", checkEntry, "entry callable");

    std::string pdgFile, pdgCallable, pdgFormat = "text";
    auto* pdg = app.add_subcommand("pdg", "dump a callable's program dependence graph");
    pdg->add_option("file", pdgFile)->required();
    pdg->add_option("--callable", pdgCallable, "Namespace.Callable")->required();
    pdg->add_option("--format", pdgFormat, "text|dot")->check(CLI::IsMember({"text", "dot"}));

    std::string fmtFile;
    bool fmtCheck = false, fmtWrite = false;
    auto* fmt = app.add_subcommand("fmt", "print the canonical form");
    fmt->add_option("file", fmtFile)->required();
    fmt->add_flag("--check", fmtCheck, "exit 1 when the file is not canonical");
    fmt->add_flag("--write", fmtWrite, "rewrite the file in place");

    // simulator limit overrides land in the environment hook
    int maxQubits = -1, maxBranches = -1;
    app.add_option("--max-qubits", maxQubits, "simulator qubit limit");
    app.add_option("--max-branches", maxBranches, "simulator branch limit");

    CLI11_PARSE(app, argc, argv);

    if (maxQubits > 0 || maxBranches > 0) {
        nlohmann::json limits;
        qrt::sim::Limits defaults = limitsFromEnvironment();
        limits["maxQubits"] = maxQubits > 0 ? maxQubits : defaults.maxQubits;
        limits["maxBranches"] = maxBranches > 0 ? maxBranches : defaults.maxBranches;
        limits["maxSteps"] = defaults.maxSteps;
        setenv("QRT_LIMITS", limits.dump().c_str(), 1);
    }

    applyOpt.json = json;
    if (list->parsed()) return cmdList(json);
    if (apply->parsed()) {
        if (applyOpt.batch.empty() && applyOpt.refactoring.empty()) {
            std::cerr << "qrt: apply requires --refactoring or --batch\n";
            return kInputError;
        }
        return cmdApply(applyOpt);
    }
    if (check->parsed()) return cmdCheck(checkA, checkB, checkEntry, json);
    if (pdg->parsed()) return cmdPdg(pdgFile, pdgCallable, pdgFormat, json);
    if (fmt->parsed()) return cmdFmt(fmtFile, fmtCheck, fmtWrite, json);
    return kInputError;
}
