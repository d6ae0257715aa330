#include "sgfem/io.hpp"

#include <cstdio>
#include <fstream>

#include "sgfem/common.hpp"

namespace sgfem {

AtomicFileWriter::AtomicFileWriter(std::filesystem::path path)
    : path_(std::move(path)) {}

AtomicFileWriter::~AtomicFileWriter() {
  if (!committed_) {
    std::error_code ec;
    std::filesystem::remove(temp_path(), ec);
  }
}

void AtomicFileWriter::write(const std::string& text) { buffer_ += text; }

void AtomicFileWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void AtomicFileWriter::commit() {
  require(!committed_, "AtomicFileWriter: already committed");
  const std::filesystem::path tmp = temp_path();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open " + tmp.string() + " for writing");
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    require(out.good(), "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
  committed_ = true;
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

}  // namespace sgfem
