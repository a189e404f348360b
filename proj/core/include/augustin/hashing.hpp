#pragma once

#include <string>
#include <string_view>

namespace augustin {

std::string sha256_hex(std::string_view data);

/// Git's object id for a blob: SHA-1 of "blob <size>\0" followed by the data.
std::string git_blob_hash(std::string_view data);

}  // namespace augustin
