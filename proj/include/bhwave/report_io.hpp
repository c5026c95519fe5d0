#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bhwave::io {

/// Write-temp-then-rename so partially written artifacts never appear.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Plain key=value configuration files; '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

/// CSV with a fixed header; cells are preformatted strings.
std::string make_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

std::string fmt(double v);  // shortest round-trip double formatting

}  // namespace bhwave::io
