#include "corpus.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include "lgx/extract.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace lgx;
using namespace lgx::test;

namespace {

const char* kAimerScript = R"(define pred predV [cat="verb",lemma="@<ENT>@"];
define lexicalRule passivePar {passivePar="@[passif par]@"};
)";

EntryContext aimer_context(const TableOfClasses& toc, const ClassTable& table, const CompiledScript& script) {
    return build_env(toc, table, table.rows()[0], script.needed, "V");
}

std::map<std::string, std::string> canonical_map(const ObjectMap& objects) {
    std::map<std::string, std::string> out;
    for (const auto& [name, object] : objects) out[name] = canonical(object);
    return out;
}

const ObjectSet& set_at(const ObjectMap& objects, const std::string& name, const std::string& attribute) {
    return std::get<ObjectSet>(*objects.at(name).find(attribute));
}

std::string constructions_of(const LinguisticObject& object, const std::string& attribute) {
    std::vector<std::string> labels;
    for (const auto& e : std::get<ObjectSet>(*object.find(attribute)).elements())
        labels.push_back(std::get<Text>(*e.find("construction")).value);
    std::sort(labels.begin(), labels.end());
    std::string out;
    for (const auto& l : labels) out += l + ";";
    return out;
}

} // namespace

TEST(Lexicalize, AimerMatchesTheLexicalizedObjects) {
    const auto table = parse_class_table("<ENT>\tN0 V N1\naimer\t+\n", "V_32H");
    const TableOfClasses toc("table", {FeatureName("[passif par]")}, {"V_32H"}, {{Policy::ConstantTrue}});
    const auto script = compile_script(parse_script(kAimerScript));
    const auto objects = lexicalize(script, aimer_context(toc, table, script));
    ASSERT_EQ(objects.size(), 2u);
    EXPECT_TRUE(structural_eq(objects.at("predV"),
                              LinguisticObject("pred", {{"cat", Text{"verb"}}, {"lemma", Text{"aimer"}}})));
    EXPECT_TRUE(structural_eq(objects.at("passivePar"),
                              LinguisticObject("lexicalRule", {{"passivePar", Text{"true"}}})));
}

TEST(Lexicalize, ConstantTemplateIsTheSameForEveryEntry) {
    const auto corpus = load_corpus();
    const auto& table = corpus.classes[0].table;
    std::optional<std::string> first;
    for (const auto& row : table.rows()) {
        const auto ctx = build_env(corpus.toc, table, row, corpus.script.needed, "V");
        const auto form = canonical(lexicalize(corpus.script, ctx).at("Nhum"));
        if (!first) first = form;
        EXPECT_EQ(form, *first);
    }
}

TEST(ApplyProps, NnrBlockFillsTheDistribution) {
    const auto script = compile_script(parse_script(R"(define const N-hum [cat="NP",nothum="true"];
define const Nhum [cat="NP",hum="true"];
define const inf [cat="VP",mood="inf"];
define const queP [cat="CP",mood="ind"];
define const quePsubj [cat="CP",mood="subj"];
define const NO [pos="0",dist=()];
define list constituents [list=()];
prop @N0 =: Nnr@{
  add NO in constituents;
  add Nhum in NO.dist;
  add N-hum in NO.dist;
  add inf in NO.dist;
  add queP in NO.dist;
  add quePsubj in NO.dist;
}
)"));
    const auto table = parse_class_table("<ENT>\tN0 =: Nnr\nx\t+\ny\t-\n", "V_4");
    const TableOfClasses toc("table", {FeatureName("N0 =: Nnr")}, {"V_4"}, {{Policy::PerEntry}});

    const auto on = apply_props(script, build_env(toc, table, table.rows()[0], script.needed), toc);
    const auto& dist = set_at(on, "NO", "dist");
    ASSERT_EQ(dist.size(), 5u);
    for (const auto* name : {"Nhum", "N-hum", "inf", "queP", "quePsubj"}) EXPECT_TRUE(dist.contains(on.at(name)));
    const auto* constituent = std::get_if<Nested>(on.at("constituents").find("const"));
    ASSERT_NE(constituent, nullptr);
    EXPECT_TRUE(structural_eq(constituent->get(), on.at("NO")));

    const auto ctx_off = build_env(toc, table, table.rows()[1], script.needed);
    EXPECT_EQ(canonical_map(apply_props(script, ctx_off, toc)), canonical_map(lexicalize(script, ctx_off)));
}

TEST(ApplyProps, SixBlocksInAll720Orders) {
    Rng rng(17);
    for (int round = 0; round < 5; ++round) {
        auto c = random_script_case_with_blocks(rng, 6, 3);
        const auto ast = parse_script(c.script_text);
        ASSERT_EQ(ast.prop_blocks.size(), 6u);
        const auto& table = c.classes[0].table;
        std::vector<std::size_t> order(6);
        std::iota(order.begin(), order.end(), 0);
        std::vector<std::vector<std::size_t>> op_orders;
        for (const auto& b : ast.prop_blocks) {
            op_orders.emplace_back(b.ops.size());
            std::iota(op_orders.back().begin(), op_orders.back().end(), 0);
        }
        std::vector<std::map<std::string, std::string>> expected;
        int seen = 0;
        do {
            const auto script = compile_script(permuted(ast, order, op_orders));
            for (std::size_t r = 0; r < table.rows().size(); ++r) {
                const auto objects = apply_props(script, build_env(c.toc, table, table.rows()[r], script.needed), c.toc);
                if (seen == 0)
                    expected.push_back(canonical_map(objects));
                else
                    ASSERT_EQ(canonical_map(objects), expected[r]);
            }
            ++seen;
        } while (std::next_permutation(order.begin(), order.end()));
        EXPECT_EQ(seen, 720);
    }
}

TEST(EntryId, Examples) {
    EXPECT_EQ(make_entry_id("V", "V_33", 129), "V_33_129");
    EXPECT_EQ(make_entry_id("N", "N_fnan", 29), "N_fnan_29");
    EXPECT_EQ(make_entry_id("V", "V_33", 1), "V_33_1");
    EXPECT_EQ(make_entry_id("V", "V_32H", 1), "V_32h_1");
}

TEST(ExtractLexicon, CorpusRecords) {
    const auto corpus = load_corpus();
    const auto lexicon = extract_lexicon(corpus.classes, corpus.toc, corpus.script);
    EXPECT_TRUE(lexicon.diagnostics.empty());
    std::vector<std::string> ids;
    for (const auto& e : lexicon.entries) ids.push_back(e.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"V_33_1", "V_33_2", "V_33_3", "V_33_4", "V_32h_1", "N_fnan_1",
                                             "N_fnan_2", "N_fnan_3", "N_fnan_4", "N_fnan_5"}));
    EXPECT_EQ(lexicon.stats.classes, 3u);
    EXPECT_EQ(lexicon.stats.rows, 10u);
    EXPECT_EQ(lexicon.stats.entries, 10u);
    EXPECT_EQ(lexicon.stats.skipped, 0u);
}

TEST(ExtractLexicon, EveryV33EntryHasTheConstantConstruction) {
    const auto corpus = load_corpus();
    const auto lexicon = extract_lexicon(corpus.classes, corpus.toc, corpus.script);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& record = lexicon.entries[i];
        ASSERT_EQ(record.class_label, "V_33");
        EXPECT_NE(constructions_of(record.objects.at("allcons"), "absolute").find("N0 V à N1;"), std::string::npos)
            << record.id;
    }
    EXPECT_EQ(constructions_of(lexicon.entries[2].objects.at("allcons"), "relative"),
              "N0hum V W sur ce point;Ppv =: y;[extrap];");
}

TEST(ExtractLexicon, EmptyManifest) {
    const auto corpus = load_corpus();
    const auto lexicon = extract_lexicon({}, corpus.toc, corpus.script);
    EXPECT_TRUE(lexicon.entries.empty());
    EXPECT_TRUE(lexicon.diagnostics.empty());
    EXPECT_EQ(lexicon.stats.entries, 0u);
}

TEST(ExtractLexicon, UncoveredClassIsSkipped) {
    auto corpus = load_corpus();
    corpus.classes.push_back({{"V_99", "x.tsv", "V", 9}, parse_class_table("<ENT>\nx\n", "V_99", {'\t', "x.tsv"})});
    const auto lexicon = extract_lexicon(corpus.classes, corpus.toc, corpus.script);
    EXPECT_EQ(lexicon.stats.entries, 10u);
    ASSERT_EQ(lexicon.diagnostics.size(), 1u);
    EXPECT_EQ(lexicon.diagnostics[0].code, codes::UncoveredClass);
    EXPECT_THROW(extract_lexicon(corpus.classes, corpus.toc, corpus.script, {true}), StrictModeFailure);
}

TEST(ExtractLexicon, FailingEntryIsSkippedWithDiagnostic) {
    const auto script = compile_script(parse_script(R"(define k a [x="1"];
define k b [y="@G@"];
prop @F@ { add b.y in a.x.z; }
)"));
    const auto table = parse_class_table("<ENT>\tF\tG\nok\t-\tv\nbad\t+\tw\n", "X_1", {'\t', "x.tsv"});
    const TableOfClasses toc("table", {FeatureName("F"), FeatureName("G")}, {"X_1"},
                             {{Policy::PerEntry, Policy::PerEntry}});
    const std::vector<LoadedClass> classes{{{"X_1", "x.tsv", "X", 1}, table}};
    const auto lexicon = extract_lexicon(classes, toc, script);
    ASSERT_EQ(lexicon.entries.size(), 1u);
    EXPECT_EQ(lexicon.entries[0].id, "X_1_1");
    EXPECT_EQ(lexicon.stats.skipped, 1u);
    ASSERT_EQ(lexicon.diagnostics.size(), 1u);
    EXPECT_EQ(lexicon.diagnostics[0].code, codes::EntryError);
    EXPECT_EQ(lexicon.diagnostics[0].location.row, 2u);
    EXPECT_EQ(lexicon.stats.entries, lexicon.stats.rows - lexicon.stats.skipped);
    try {
        extract_lexicon(classes, toc, script, {true});
        FAIL() << "strict mode did not throw";
    } catch (const StrictModeFailure& e) {
        EXPECT_EQ(e.diagnostic().code, codes::EntryError);
    }
}

TEST(ExtractLexicon, TypeConflictIsAnEntryError) {
    const auto script = compile_script(parse_script(R"(define k a [s=()];
define k b [t="x"];
prop @F@ { add b.t in a.s; }
)"));
    const auto table = parse_class_table("<ENT>\tF\nbad\t+\n", "X_1");
    const TableOfClasses toc("table", {FeatureName("F")}, {"X_1"}, {{Policy::PerEntry}});
    const std::vector<LoadedClass> classes{{{"X_1", "x.tsv", "X", 1}, table}};
    const auto lexicon = extract_lexicon(classes, toc, script);
    EXPECT_TRUE(lexicon.entries.empty());
    ASSERT_EQ(lexicon.diagnostics.size(), 1u);
    EXPECT_EQ(lexicon.diagnostics[0].code, codes::EntryError);
}

TEST(ExtractLexicon, OperationCycleIsAnEntryError) {
    const auto script = compile_script(parse_script(R"(define k a [s=()];
define k b [s=()];
prop @F@ { add a in b.s; add b in a.s; }
)"));
    const auto table = parse_class_table("<ENT>\tF\nx\t+\ny\t-\n", "X_1");
    const TableOfClasses toc("table", {FeatureName("F")}, {"X_1"}, {{Policy::PerEntry}});
    const std::vector<LoadedClass> classes{{{"X_1", "x.tsv", "X", 1}, table}};
    const auto lexicon = extract_lexicon(classes, toc, script);
    ASSERT_EQ(lexicon.entries.size(), 1u);
    ASSERT_EQ(lexicon.diagnostics.size(), 1u);
    EXPECT_NE(lexicon.diagnostics[0].message.find("cycle"), std::string::npos);
}

TEST(CompileScript, Errors) {
    EXPECT_THROW(compile_script(parse_script("define k a [x=b];")), ParseError);
    EXPECT_THROW(compile_script(parse_script("define k a [x=(\"s\")];")), ParseError);
    try {
        compile_script(parse_script("define k a [x=b];\ndefine k b [y=a];"));
        FAIL() << "no cycle error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("cyclic object reference"), std::string::npos);
    }
}

TEST(ExtractLexicon, DuplicateOperationsChangeNothing) {
    const auto corpus = load_corpus();
    auto ast = corpus.script.ast;
    for (auto& block : ast.prop_blocks) {
        const auto ops = block.ops;
        block.ops.insert(block.ops.end(), ops.begin(), ops.end());
    }
    const auto doubled = with_script(corpus, ast);
    EXPECT_EQ(run_corpus(doubled).compact, run_corpus(corpus).compact);
}
