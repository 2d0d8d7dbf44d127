// Deterministic CSV emission and the artifact manifest.  All floating point
// values are printed with 17 significant digits so identical runs produce
// byte-identical files.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fraclap {

std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  void add_row_values(const std::vector<double>& values);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

// FNV-1a 64-bit content hash, used by the run manifest.
std::uint64_t fnv1a64(const std::string& bytes);

struct ManifestEntry {
  std::string name;
  std::uint64_t checksum;
  std::size_t bytes;
};

// Writes "name checksum bytes" lines followed by "# wall_time_seconds ..."
// comments (timing lives only here, never in the CSVs).
void write_manifest(const std::string& path,
                    const std::vector<ManifestEntry>& entries,
                    const std::vector<std::pair<std::string, double>>& timings);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fraclap
