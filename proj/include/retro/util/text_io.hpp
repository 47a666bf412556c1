#pragma once

#include <functional>
#include <string>

namespace retro {

// Streams the lines of a text file to `fn`, transparently inflating files
// whose name ends in .gz. Returns false when the file cannot be opened.
// Line terminators are stripped; a trailing \r is dropped too.
bool for_each_line(const std::string& path, const std::function<void(std::string&&)>& fn);

}  // namespace retro
