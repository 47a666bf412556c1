#include "retro/util/text_io.hpp"

#include <fstream>

#include <zlib.h>

namespace retro {

namespace {

void emit_buffered(std::string& pending, const char* data, std::size_t len,
                   const std::function<void(std::string&&)>& fn) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (data[i] == '\n') {
      pending.append(data + start, i - start);
      if (!pending.empty() && pending.back() == '\r')
        pending.pop_back();
      fn(std::move(pending));
      pending.clear();
      start = i + 1;
    }
  }
  pending.append(data + start, len - start);
}

}  // namespace

bool for_each_line(const std::string& path, const std::function<void(std::string&&)>& fn) {
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz)
      return false;
    char buf[1 << 16];
    std::string pending;
    int n;
    while ((n = gzread(gz, buf, sizeof buf)) > 0)
      emit_buffered(pending, buf, static_cast<std::size_t>(n), fn);
    gzclose(gz);
    if (!pending.empty()) {
      if (pending.back() == '\r')
        pending.pop_back();
      fn(std::move(pending));
    }
    return true;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in)
    return false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    fn(std::move(line));
    line.clear();
  }
  return true;
}

}  // namespace retro
