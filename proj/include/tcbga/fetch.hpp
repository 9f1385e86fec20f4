#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tcbga/data.hpp"

namespace tcbga {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Body of `url` (http, https or file). Throws DataError on any failure.
std::string download(const std::string& url);

struct FetchResult {
    std::filesystem::path file;
    std::string sha256;
    std::size_t bytes = 0;
};

/// Download desc.url (or `url_override`) into dest_dir/desc.file, verify the
/// checksum and the expected N, I and class count, then move it in place.
/// Nothing is left behind on failure.
FetchResult fetch_dataset(const DatasetDescriptor& desc, const std::filesystem::path& dest_dir,
                          const std::string& url_override = {});

} // namespace tcbga
