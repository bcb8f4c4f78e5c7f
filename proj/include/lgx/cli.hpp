#ifndef LGX_CLI_HPP
#define LGX_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <set>

namespace lgx::cli {

enum class Format { Xml, Compact };
enum class DiagFormat { Text, Records };

struct RunConfig {
    std::filesystem::path manifest_path;
    std::filesystem::path toc_path;
    std::filesystem::path script_path;
    std::filesystem::path output_map_path;
    std::filesystem::path out_dir = ".";
    std::set<Format> formats{Format::Xml, Format::Compact};
    char delimiter = '\t';
    bool strict = false;
    bool lint_only = false;
    DiagFormat diag_format = DiagFormat::Text;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitStrict = 2;

/// Runs the whole pipeline. Diagnostics and fatal errors go to `err`, the summary line
/// `classes=<n> entries=<n> skipped=<n> warnings=<n> errors=<n>` to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace lgx::cli

#endif
