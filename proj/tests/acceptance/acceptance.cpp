// Acceptance suite: one PASS/FAIL line per criterion.

#include "compact_reader.hpp"
#include "corpus.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "xml_flatten.hpp"

#include "lgx/cli.hpp"
#include "lgx/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

using namespace lgx;
using namespace lgx::test;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// se rendre (surrender), brackets balanced
const char* kSeRendre = R"(ID=V_33_129
lexical-info=[cat="verb",
              verb=[lemma="rendre",ppvse="true"]]
args=(const=[pos="0",
             dist=(comp=[cat="NP",hum="true",
                       origin=(orig="N0 =: Nhum")])],
      const=[pos="1",
             dist=(comp=[cat="NP",hum="true",
                         origin=(orig="N1 =: Nhum")],
                   comp=[cat="NP",nothum="true",
                         origin=(orig="N1 =: N-hum")],
                   comp=[cat="leFaitComp",
                         origin=(orig="N1 =: le fait Qu P")])])
all-constructions=[absolute=(construction="N0 V à N1",
                             construction="N0 V"),
                  relative=(construction="[extrap]",
                            construction="Ppv =: y",
                            construction="N0hum V W sur ce point")]
example=[example="Le caporal s'est rendu à l'ennemi"]
)";

// canular, det-modif items read as siblings
const char* kCanular = R"(ID=N_fnan_29
lexical-info=[cat="noun",
  Vsup=[cat="verb",list=(value="faire")],
  noun=[notperm=[complete="canular"],noun1="canular"],
  detN=[list-det-modif=(det-modif=[det="un+une",modif="false"],
    det-modif=[det="un+une",modif="true"],
    det-modif=[det="des",modif="false"],
    det-modif=[det="<E>",modif="false"])]]
args=(const=[pos="0",
  dist=(comp=[cat="NP",hum="true"])],
  const=[pos="1",
  dist=(comp=[cat="NP",hum="true"])])
all-constructions=[absolute=(construction="N0 Vsup Det N à N1",
  construction="N0 Vsup Det N",
  construction="N0 Vsup le N de V0-inf W",
  construction="N0hum Vsup Det N à N1hum sur ce point")]
)";

bool subsumes(const CompactNode& want, const CompactNode& have);

/// Every child of `want` matched by a distinct child of `have`.
bool children_subsumed(const std::vector<CompactNode>& want, const std::vector<CompactNode>& have) {
    std::vector<bool> used(have.size(), false);
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
        if (i == want.size()) return true;
        for (std::size_t j = 0; j < have.size(); ++j) {
            if (used[j] || !subsumes(want[i], have[j])) continue;
            used[j] = true;
            if (assign(i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    return assign(0);
}

bool subsumes(const CompactNode& want, const CompactNode& have) {
    if (want.key != have.key || want.text != have.text) return false;
    if (want.text) return true;
    return want.is_set == have.is_set && children_subsumed(want.children, have.children);
}

bool flat_included(const FlatPairs& want, const FlatPairs& have) {
    FlatPairs a, b;
    for (const auto& p : want)
        if (p.first != "ID") a.insert(p);
    for (const auto& p : have)
        if (p.first != "ID") b.insert(p);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Outcome golden(const char* expected, const std::string& id) {
    Outcome o;
    const auto start = Clock::now();
    const auto corpus = load_corpus();
    const auto out = run_corpus(corpus);
    const auto entries = read_compact(out.compact);
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const CompactEntry& e) { return e.id == id; });
    if (it == entries.end()) {
        o.fail("no entry " + id);
        return o;
    }
    const auto want = read_compact(expected).at(0);
    if (!flat_included(flatten(want), flatten(*it))) o.fail("flattened pairs missing from " + id);
    for (const auto& block : want.blocks) {
        const bool found = std::any_of(it->blocks.begin(), it->blocks.end(),
                                       [&](const CompactNode& b) { return subsumes(block, b); });
        if (!found) o.fail("block " + block.key + " does not match structurally");
    }
    const auto from_xml = flatten_xml(out.xml, corpus.map);
    if (!from_xml.contains(id) || !flat_included(flatten(want), from_xml.at(id))) o.fail("xml output lacks pairs");
    const auto elapsed = seconds_since(start);
    if (elapsed >= 1.0) o.fail("took " + std::to_string(elapsed) + " s");
    if (o.pass) o.detail = id + ", " + std::to_string(static_cast<int>(elapsed * 1000)) + " ms";
    return o;
}

Outcome lexicalization() {
    Outcome o;
    const auto corpus = load_corpus();
    const auto script = compile_script(parse_script(R"(define pred predV [cat="verb",lemma="@<ENT>@"];
define lexicalRule passivePar {passivePar="@[passif par]@"};
)"));
    const auto* loaded = &corpus.classes.at(1);
    if (loaded->table.label() != "V_32H" ||
        corpus.toc.policy_of("V_32H", FeatureName("[passif par]")) != Policy::ConstantTrue) {
        o.fail("fixture is not V_32H with [passif par] constant true");
        return o;
    }
    const auto& row = loaded->table.rows().at(0);
    const auto objects = lexicalize(script, build_env(corpus.toc, loaded->table, row, script.needed, "V"));
    const auto pred = debug_string(objects.at("predV"));
    const auto rule = debug_string(objects.at("passivePar"));
    if (pred != R"(pred[cat="verb",lemma="aimer"])") o.fail("predV = " + pred);
    if (rule != R"(lexicalRule[passivePar="true"])") o.fail("passivePar = " + rule);
    if (objects.size() != 2) o.fail("unexpected objects");
    if (o.pass) o.detail = pred + " " + rule;
    return o;
}

std::string case_output(const ScriptCase& c, const ScriptAst& ast) {
    const auto lexicon = extract_lexicon(c.classes, c.toc, compile_script(ast));
    if (!lexicon.diagnostics.empty()) throw std::runtime_error(format_text(lexicon.diagnostics.front()));
    return emit_compact(lexicon, c.map);
}

Outcome order_independence() {
    Outcome o;
    const auto start = Clock::now();
    Rng rng(20240601);
    std::size_t exhaustive = 0, sampled = 0, runs = 0;
    for (int n = 0; n < 1000 && o.pass; ++n) {
        const auto c = random_script_case(rng, 6, 5);
        const auto ast = parse_script(c.script_text);
        const auto baseline = case_output(c, ast);
        std::size_t total_ops = 0;
        for (const auto& b : ast.prop_blocks) total_ops += b.ops.size();

        std::vector<std::size_t> blocks(ast.prop_blocks.size());
        std::iota(blocks.begin(), blocks.end(), 0);
        std::vector<std::vector<std::size_t>> ops;
        for (const auto& b : ast.prop_blocks) {
            ops.emplace_back(b.ops.size());
            std::iota(ops.back().begin(), ops.back().end(), 0);
        }
        auto check = [&] {
            ++runs;
            if (case_output(c, permuted(ast, blocks, ops)) != baseline) {
                o.fail("case " + std::to_string(n) + " differs under a permutation:\n" + c.script_text);
                return false;
            }
            return true;
        };

        if (total_ops <= 4) {
            ++exhaustive;
            // every block order times every op order inside each block
            std::function<bool(std::size_t)> over_ops = [&](std::size_t b) {
                if (b == ops.size()) return check();
                std::sort(ops[b].begin(), ops[b].end());
                do {
                    if (!over_ops(b + 1)) return false;
                } while (std::next_permutation(ops[b].begin(), ops[b].end()));
                return true;
            };
            do {
                if (!over_ops(0)) break;
            } while (std::next_permutation(blocks.begin(), blocks.end()));
        } else {
            ++sampled;
            for (int k = 0; k < 100; ++k) {
                std::shuffle(blocks.begin(), blocks.end(), rng);
                for (auto& v : ops) std::shuffle(v.begin(), v.end(), rng);
                if (!check()) break;
            }
        }
    }
    const auto elapsed = seconds_since(start);
    if (elapsed >= 60.0) o.fail("took " + std::to_string(elapsed) + " s");
    if (o.pass)
        o.detail = "1000 cases (" + std::to_string(exhaustive) + " exhaustive, " + std::to_string(sampled) +
                   " sampled), " + std::to_string(runs) + " runs, " + std::to_string(static_cast<int>(elapsed)) + " s";
    return o;
}

/// Corpus tables widened with every constant column of the table of classes, cells agreeing.
std::vector<LoadedClass> with_constant_columns(const Corpus& corpus) {
    std::vector<LoadedClass> out;
    for (const auto& loaded : corpus.classes) {
        const auto& table = loaded.table;
        auto features = table.features();
        auto rows = table.rows();
        const auto policies = corpus.toc.policies(table.label());
        for (std::size_t i = 0; i < corpus.toc.features().size(); ++i) {
            const auto& f = corpus.toc.features()[i];
            if (policies[i] == Policy::PerEntry || table.has_feature(f)) continue;
            features.push_back(f);
            for (auto& row : rows)
                row.cells.push_back(policies[i] == Policy::ConstantTrue ? CellValue::plus() : CellValue::minus());
        }
        out.push_back({loaded.manifest, ClassTable(table.label(), features, rows, table.source_name())});
    }
    return out;
}

std::size_t contradictions(const std::vector<Diagnostic>& a, const std::vector<Diagnostic>& b) {
    std::set<std::tuple<DiagnosticLocation, std::string>> seen;
    for (const auto* list : {&a, &b})
        for (const auto& d : *list)
            if (d.code == codes::Contradiction) seen.emplace(d.location, d.message);
    return seen.size();
}

Outcome precedence() {
    Outcome o;
    auto corpus = load_corpus();
    corpus.classes = with_constant_columns(corpus);
    const auto baseline = run_corpus(corpus);
    const auto base_lint = lint_corpus(corpus);
    if (!base_lint.empty() || !baseline.lexicon.diagnostics.empty()) {
        o.fail("widened corpus is not clean");
        return o;
    }
    const std::vector<CellValue> mutations{CellValue::plus(), CellValue::minus(), CellValue::empty(),
                                           CellValue::lexical("sur")};
    std::size_t tried = 0, disagreeing = 0;
    for (std::size_t ci = 0; ci < corpus.classes.size() && o.pass; ++ci) {
        const auto& table = corpus.classes[ci].table;
        for (std::size_t col = 0; col < table.features().size(); ++col) {
            const auto policy = corpus.toc.policy_of(table.label(), table.features()[col]);
            if (!policy || *policy == Policy::PerEntry) continue;
            const bool constant = *policy == Policy::ConstantTrue;
            for (std::size_t r = 0; r < table.rows().size(); ++r) {
                for (const auto& m : mutations) {
                    auto rows = table.rows();
                    if (rows[r].cells[col] == m) continue;
                    rows[r].cells[col] = m;
                    auto mutated = corpus;
                    mutated.classes[ci].table = ClassTable(table.label(), table.features(), rows, table.source_name());
                    const auto out = run_corpus(mutated);
                    const auto lint = lint_corpus(mutated);
                    ++tried;
                    const bool disagrees = *cell_truth(m) != constant;
                    disagreeing += disagrees;
                    const auto where = table.label() + " row " + std::to_string(r + 1) + " '" +
                                       table.features()[col].str() + "' := " + m.token();
                    if (out.compact != baseline.compact || out.xml != baseline.xml) o.fail("output changed: " + where);
                    const auto n = contradictions(lint, out.lexicon.diagnostics);
                    if (n != (disagrees ? 1u : 0u))
                        o.fail(std::to_string(n) + " contradictions for " + where);
                    if (!o.pass) break;
                }
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(tried) + " mutations, " + std::to_string(disagreeing) + " disagreeing";
    return o;
}

Outcome idempotence() {
    Outcome o;
    const auto corpus = load_corpus();
    const auto baseline = run_corpus(corpus);
    std::size_t tried = 0;
    const auto& ast = corpus.script.ast;
    for (std::size_t b = 0; b < ast.prop_blocks.size() && o.pass; ++b) {
        for (std::size_t k = 0; k < ast.prop_blocks[b].ops.size(); ++k) {
            for (const bool at_end : {false, true}) {
                auto doubled = ast;
                auto& ops = doubled.prop_blocks[b].ops;
                ops.insert(at_end ? ops.end() : ops.begin() + static_cast<long>(k), ops[k]);
                const auto out = run_corpus(with_script(corpus, doubled));
                ++tried;
                if (out.compact != baseline.compact || out.xml != baseline.xml) {
                    o.fail("duplicating '" + ast.prop_blocks[b].ops[k].source.str() + " in " +
                           ast.prop_blocks[b].ops[k].target.str() + "' changed the output");
                    break;
                }
            }
        }
    }
    Rng rng(99);
    for (int n = 0; n < 300 && o.pass; ++n) {
        const auto c = random_script_case(rng, 6, 5);
        const auto ast2 = parse_script(c.script_text);
        const auto base = case_output(c, ast2);
        auto doubled = ast2;
        auto& block = doubled.prop_blocks[rng() % doubled.prop_blocks.size()];
        block.ops.push_back(block.ops[rng() % block.ops.size()]);
        ++tried;
        if (case_output(c, doubled) != base) o.fail("random case " + std::to_string(n) + " changed");
    }
    if (o.pass) o.detail = std::to_string(tried) + " duplications";
    return o;
}

Outcome cross_format() {
    Outcome o;
    const auto corpus = load_corpus();
    const auto out = run_corpus(corpus);
    const auto a = flatten_compact(out.compact);
    const auto b = flatten_xml(out.xml, corpus.map);
    if (a.size() != out.lexicon.entries.size()) o.fail("compact reader saw " + std::to_string(a.size()) + " entries");
    for (const auto& [id, pairs] : a)
        if (!b.contains(id) || b.at(id) != pairs) o.fail("entry " + id + " differs");
    if (b.size() != a.size()) o.fail("entry sets differ");
    const auto xsd = emit_schema(corpus.map);
    if (const auto problem = validate_xml(out.xml, xsd); !problem.empty()) o.fail("schema: " + problem);
    Rng rng(5);
    std::size_t extra = 0;
    for (int n = 0; n < 200 && o.pass; ++n) {
        const auto c = random_script_case(rng);
        const auto lexicon = extract_lexicon(c.classes, c.toc, compile_script(parse_script(c.script_text)));
        if (flatten_compact(emit_compact(lexicon, c.map)) != flatten_xml(emit_xml(lexicon, c.map), c.map))
            o.fail("random case " + std::to_string(n) + " differs");
        extra += lexicon.entries.size();
    }
    if (o.pass)
        o.detail = std::to_string(a.size()) + " fixture entries, " + std::to_string(extra) + " generated entries";
    return o;
}

Outcome determinism() {
    Outcome o;
    std::map<std::string, std::uint64_t> hashes[2];
    for (int i = 0; i < 2; ++i) {
        const auto dir = scratch_dir("determinism-" + std::to_string(i));
        cli::RunConfig config;
        const auto corpus = fixture("corpus");
        config.manifest_path = corpus / "manifest.tsv";
        config.toc_path = corpus / "table_of_classes.tsv";
        config.script_path = corpus / "extract.lgs";
        config.output_map_path = corpus / "sections.map";
        config.out_dir = dir;
        std::ostringstream out, err;
        if (cli::run(config, out, err) != cli::kExitOk) {
            o.fail("run failed: " + err.str());
            return o;
        }
        for (const auto* name : {"lexicon.xml", "lexicon.xsd", "lexicon.lg"})
            hashes[i][name] = fnv1a(text::read_file(dir / name));
    }
    if (hashes[0] != hashes[1]) o.fail("hashes differ");
    if (o.pass) {
        std::ostringstream s;
        for (const auto& [name, h] : hashes[0]) s << name << '=' << std::hex << h << ' ';
        o.detail = s.str();
    }
    return o;
}

Outcome lint_suite() {
    Outcome o;
    const std::vector<std::pair<std::string, std::string_view>> cases{
        {"contradiction", codes::Contradiction},      {"orphan-feature", codes::OrphanFeature},
        {"dangling-o", codes::DanglingO},             {"unused-feature", codes::UnusedFeature},
        {"unknown-feature", codes::UnknownFeature},   {"mixed-value-kind", codes::MixedValueKind},
        {"suspicious-substitution", codes::SuspiciousSubstitution}};
    for (const auto& [dir_name, code] : cases) {
        const auto dir = overlay_corpus(fixture("lint/" + dir_name), "suite-" + dir_name);
        cli::RunConfig config;
        config.manifest_path = dir / "manifest.tsv";
        config.toc_path = dir / "table_of_classes.tsv";
        config.script_path = dir / "extract.lgs";
        config.lint_only = true;
        config.diag_format = cli::DiagFormat::Records;
        std::ostringstream out, err;
        if (cli::run(config, out, err) != cli::kExitOk) {
            o.fail(dir_name + ": run failed: " + err.str());
            continue;
        }
        std::vector<std::string> found;
        std::istringstream lines(err.str());
        for (std::string line; std::getline(lines, line);)
            if (!line.empty()) found.push_back(nlohmann::json::parse(line)["code"].get<std::string>());
        if (found != std::vector<std::string>{std::string(code)}) {
            std::string got;
            for (const auto& f : found) got += f + ' ';
            o.fail(dir_name + ": got [ " + got + "]");
        }
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " defect fixtures, one diagnostic each";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"golden-se-rendre", [] { return golden(kSeRendre, "V_33_3"); }},
        {"golden-canular", [] { return golden(kCanular, "N_fnan_4"); }},
        {"lexicalization-aimer", lexicalization},
        {"order-independence", order_independence},
        {"precedence", precedence},
        {"idempotence", idempotence},
        {"cross-format", cross_format},
        {"determinism", determinism},
        {"lint-suite", lint_suite},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << ")" << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
