#include "lgx/cli.hpp"
#include "lgx/emit.hpp"
#include "lgx/extract.hpp"
#include "lgx/lint.hpp"
#include "lgx/text.hpp"

#include <algorithm>
#include <ostream>

namespace lgx::cli {

namespace {

/// Lint and extraction report some findings twice, possibly at different severities.
void merge_into(std::vector<Diagnostic>& all, const std::vector<Diagnostic>& more) {
    for (const auto& d : more) {
        const auto same = std::find_if(all.begin(), all.end(), [&](const Diagnostic& e) {
            return e.code == d.code && e.location == d.location && e.message == d.message;
        });
        if (same == all.end())
            all.push_back(d);
        else if (d.severity == Severity::Error)
            same->severity = Severity::Error;
    }
}

struct Inputs {
    TableOfClasses toc;
    std::vector<LoadedClass> classes;
    CompiledScript script;
    std::optional<OutputMap> map;
};

Inputs load(const RunConfig& config) {
    TableFormat format{config.delimiter, config.toc_path.string()};
    auto toc = parse_table_of_classes(text::read_file(config.toc_path), format);
    const auto manifest = parse_manifest(text::read_file(config.manifest_path), config.manifest_path.parent_path(),
                                         config.manifest_path.string());
    auto classes = load_classes(manifest, config.delimiter);
    auto script = compile_script(parse_script(text::read_file(config.script_path), config.script_path.string()));
    std::optional<OutputMap> map;
    if (!config.output_map_path.empty()) {
        map = parse_output_map(text::read_file(config.output_map_path), config.output_map_path.string());
        validate_output_map(*map, script.ast);
    }
    return {std::move(toc), std::move(classes), std::move(script), std::move(map)};
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!config.lint_only && config.formats.empty()) throw Error("no output format selected");
        if (!config.lint_only && config.output_map_path.empty()) throw Error("--output-map is required unless --lint is given");

        auto inputs = load(config);
        std::vector<Diagnostic> diagnostics =
            lint_all(inputs.classes, inputs.toc, inputs.script.ast, {config.strict, config.script_path.string()});

        ExtractStats stats;
        std::optional<Lexicon> lexicon;
        if (config.lint_only) {
            for (const auto& loaded : inputs.classes)
                if (inputs.toc.has_class(loaded.table.label())) ++stats.classes;
        } else {
            lexicon = extract_lexicon(inputs.classes, inputs.toc, inputs.script);
            stats = lexicon->stats;
            merge_into(diagnostics, lexicon->diagnostics);
        }
        normalize_diagnostics(diagnostics);

        for (const auto& d : diagnostics)
            err << (config.diag_format == DiagFormat::Records ? format_record(d) : format_text(d)) << '\n';
        const auto warnings = count_severity(diagnostics, Severity::Warning);
        const auto errors = count_severity(diagnostics, Severity::Error);

        const bool entry_problem = lexicon && !lexicon->diagnostics.empty();
        const bool strict_failure = config.strict && (errors > 0 || entry_problem);
        if (lexicon && !strict_failure) {
            std::filesystem::create_directories(config.out_dir);
            if (config.formats.contains(Format::Xml)) {
                text::write_file(config.out_dir / "lexicon.xml", emit_xml(*lexicon, *inputs.map));
                text::write_file(config.out_dir / "lexicon.xsd", emit_schema(*inputs.map));
            }
            if (config.formats.contains(Format::Compact))
                text::write_file(config.out_dir / "lexicon.lg", emit_compact(*lexicon, *inputs.map));
        }

        out << "classes=" << stats.classes << " entries=" << stats.entries << " skipped=" << stats.skipped
            << " warnings=" << warnings << " errors=" << errors << '\n';
        if (strict_failure) {
            err << "error: strict mode: run aborted by diagnostics; no output written\n";
            return kExitStrict;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFatal;
    }
}

} // namespace lgx::cli
