#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace qclo {

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over the target.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace qclo
