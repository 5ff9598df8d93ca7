#pragma once

#include <span>
#include <string_view>

namespace vrcap {

/// Bundled list of unique, capitalized personal names.
std::span<const std::string_view> name_wordlist();

}  // namespace vrcap
