#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "adrng/pipeline.hpp"

namespace adrng {

/// A parsed run configuration file plus the artifact output directory.
struct FileConfig {
    RunConfig run;
    std::string output_dir; // empty = caller decides
};

/// Parses the flat key=value configuration format ('#' comments, dotted
/// section keys, see the README reference). Unknown keys or malformed
/// values throw ConfigError naming the key.
FileConfig parse_config_text(const std::string& text);
FileConfig parse_config_file(const std::filesystem::path& path);

/// Renders a config back to text (the full resolved key set).
std::string config_to_text(const FileConfig& config);

} // namespace adrng
