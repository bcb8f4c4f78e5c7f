#include "lgx/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    lgx::cli::RunConfig config;
    std::string format = "both";
    std::string delimiter = "\\t";
    std::string diag_format = "text";

    CLI::App app{"lgextract: compile Lexicon-Grammar tables into an NLP lexicon"};
    app.add_option("--manifest", config.manifest_path, "class manifest (label, path, category)")->required();
    app.add_option("--table-of-classes", config.toc_path, "table of classes")->required();
    app.add_option("--script", config.script_path, "extraction script")->required();
    app.add_option("--output-map", config.output_map_path, "output mapping");
    app.add_option("--out", config.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", format, "xml, compact or both")
        ->check(CLI::IsMember({"xml", "compact", "both"}))
        ->capture_default_str();
    app.add_option("--delimiter", delimiter, "table cell delimiter (one character, or \\t)")->capture_default_str();
    app.add_flag("--strict", config.strict, "fail on any entry diagnostic or lint error");
    app.add_flag("--lint", config.lint_only, "only run the coherence checks");
    app.add_option("--diag-format", diag_format, "text or records")
        ->check(CLI::IsMember({"text", "records"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? lgx::cli::kExitOk : lgx::cli::kExitFatal;
    }

    if (delimiter == "\\t" || delimiter == "tab") delimiter = "\t";
    if (delimiter.size() != 1) {
        std::cerr << "error: --delimiter must be a single character\n";
        return lgx::cli::kExitFatal;
    }
    config.delimiter = delimiter.front();
    config.formats.clear();
    if (format != "compact") config.formats.insert(lgx::cli::Format::Xml);
    if (format != "xml") config.formats.insert(lgx::cli::Format::Compact);
    config.diag_format = diag_format == "records" ? lgx::cli::DiagFormat::Records : lgx::cli::DiagFormat::Text;

    return lgx::cli::run(config, std::cout, std::cerr);
}
