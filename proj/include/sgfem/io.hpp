#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sgfem {

// Buffered writer that lands on disk via temp-file + rename, so readers
// never observe a truncated file.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path path);
  ~AtomicFileWriter();

  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  void write(const std::string& text);
  void row(const std::vector<std::string>& cells);  // comma-joined + newline
  void commit();

 private:
  std::filesystem::path temp_path() const {
    return std::filesystem::path(path_.string() + ".tmp");
  }

  std::filesystem::path path_;
  std::string buffer_;
  bool committed_ = false;
};

std::uint64_t fnv1a_hash(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace sgfem
