#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cevian/records.hpp"

namespace cevian {

using LogRecord = std::variant<RelationRecord, FamilyCandidate>;

inline constexpr int kSchemaVersion = 1;

/// Append-only line-delimited record log. The first line is
/// "cevian-log v<version>"; each further line is one JSON object with
/// alphabetically ordered keys. See docs/log-format.md.
///
/// Append mode holds an exclusive advisory lock for the lifetime of the
/// object; read mode takes no lock and sees the complete lines present when
/// read_all runs.
class RecordLog {
 public:
  enum class Mode { Append, Read };

  /// Creates the file (with its header) in append mode if missing. Throws
  /// SchemaMismatch if the header names another version or `schema_version`
  /// is unsupported, StoreFailure on I/O errors or a held lock. A torn final
  /// line left by a crashed writer is cut off when opening for append and
  /// reported through warnings().
  static RecordLog open(const std::filesystem::path& path, Mode mode, int schema_version = kSchemaVersion);

  RecordLog(RecordLog&& o) noexcept;
  RecordLog& operator=(RecordLog&& o) noexcept;
  RecordLog(const RecordLog&) = delete;
  RecordLog& operator=(const RecordLog&) = delete;
  ~RecordLog();

  /// Durable (flushed and synced) on return.
  void append(const LogRecord& record);
  /// One write and one sync for the whole batch.
  void append_all(std::span<const LogRecord> records);

  /// Records in append order. A torn final line is skipped and reported in
  /// warnings(); any other malformed line throws StoreFailure.
  std::vector<LogRecord> read_all();

  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  RecordLog(std::filesystem::path path, Mode mode, int fd) : path_(std::move(path)), mode_(mode), fd_(fd) {}
  void write_lines(const std::string& text);

  std::filesystem::path path_;
  Mode mode_;
  int fd_ = -1;
  std::vector<std::string> warnings_;
};

/// Line form of one record, without the trailing newline.
std::string encode_record(const LogRecord& record);
/// Throws StoreFailure on malformed input.
LogRecord decode_record(const std::string& line);

struct CoefficientKey {
  Basis basis;
  std::vector<std::int64_t> coefficients;

  friend auto operator<=>(const CoefficientKey&, const CoefficientKey&) = default;
  friend bool operator==(const CoefficientKey&, const CoefficientKey&) = default;
};

/// Relation records grouped by (basis, normalized coefficients); quadruples
/// keep append order within each group. Family records are ignored.
std::map<CoefficientKey, std::vector<CevianConfig>> group_by_coefficients(std::span<const LogRecord> records);
std::map<CoefficientKey, std::vector<CevianConfig>> group_by_coefficients(RecordLog& log);

}  // namespace cevian
