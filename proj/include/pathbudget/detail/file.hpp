#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace pathbudget::detail {

// Writes through a sibling temp file and renames into place; a failed run
// leaves no partial artifact behind.
inline void write_file_atomic(const std::filesystem::path& target, std::string_view content) {
    std::filesystem::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(temp, ignored);
            throw std::runtime_error("write failed for " + temp.string());
        }
    }
    std::error_code rename_error;
    std::filesystem::rename(temp, target, rename_error);
    if (rename_error) {
        std::error_code ignored;
        std::filesystem::remove(temp, ignored);
        throw std::runtime_error("cannot move " + temp.string() + " to " + target.string() +
                                 ": " + rename_error.message());
    }
}

}  // namespace pathbudget::detail
