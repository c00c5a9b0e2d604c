#include "cevian/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <json.hpp>

#include "cevian/errors.hpp"

namespace cevian {

using nlohmann::json;

namespace {

std::string header_line(int version) { return "cevian-log v" + std::to_string(version); }

[[noreturn]] void io_failure(const std::string& what, const std::filesystem::path& path) {
  throw StoreFailure(what + " '" + path.string() + "': " + std::strerror(errno));
}

json encode_angle(const AngleDeg& a) { return json::array({a.num(), a.den()}); }

json encode_config(const CevianConfig& q) {
  return json::array({encode_angle(q.a), encode_angle(q.b), encode_angle(q.c), encode_angle(q.d)});
}

AngleDeg decode_angle(const json& j) { return AngleDeg(j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()); }

CevianConfig decode_config(const json& j) {
  if (!j.is_array() || j.size() != 4) throw StoreFailure("quadruple must have four angles");
  return CevianConfig::make(decode_angle(j[0]), decode_angle(j[1]), decode_angle(j[2]), decode_angle(j[3]));
}

std::string read_file(int fd, const std::filesystem::path& path) {
  std::string data;
  if (::lseek(fd, 0, SEEK_SET) < 0) io_failure("cannot seek", path);
  char buf[1 << 16];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_failure("cannot read", path);
    }
    if (n == 0) break;
    data.append(buf, static_cast<std::size_t>(n));
  }
  return data;
}

void write_fully(int fd, const std::string& text, const std::filesystem::path& path) {
  std::size_t done = 0;
  while (done < text.size()) {
    const ssize_t n = ::write(fd, text.data() + done, text.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_failure("cannot write", path);
    }
    done += static_cast<std::size_t>(n);
  }
}

int parse_header(const std::string& line) {
  constexpr std::string_view prefix = "cevian-log v";
  if (!line.starts_with(prefix)) throw SchemaMismatch("not a record log: header '" + line + "'");
  try {
    std::size_t used = 0;
    const int v = std::stoi(line.substr(prefix.size()), &used);
    if (used + prefix.size() != line.size()) throw SchemaMismatch("malformed header '" + line + "'");
    return v;
  } catch (const std::logic_error&) {
    throw SchemaMismatch("malformed header '" + line + "'");
  }
}

}  // namespace

std::string encode_record(const LogRecord& record) {
  json j;
  if (const auto* r = std::get_if<RelationRecord>(&record)) {
    j["kind"] = "relation";
    j["quadruple"] = encode_config(r->quadruple);
    j["basis"] = basis_token(r->basis);
    j["coefficients"] = r->coefficients;
    j["residual"] = r->residual;
    j["bits"] = r->precision_bits;
  } else {
    const auto& f = std::get<FamilyCandidate>(record);
    j["kind"] = "family";
    j["q1"] = encode_config(f.q1);
    j["q2"] = encode_config(f.q2);
    j["q3"] = encode_config(f.q3);
    j["basis"] = basis_token(f.basis);
    j["coefficients"] = f.coefficients;
    j["status"] = family_status_token(f.status);
    json samples = json::array();
    for (const auto& s : f.samples) samples.push_back({{"t", s.t}, {"residual", s.residual}, {"pass", s.pass}});
    j["samples"] = std::move(samples);
    j["degenerate"] = f.degenerate_samples;
    j["bits"] = f.precision_bits;
  }
  return j.dump();
}

LogRecord decode_record(const std::string& line) {
  try {
    const json j = json::parse(line);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "relation") {
      RelationRecord r;
      r.quadruple = decode_config(j.at("quadruple"));
      r.basis = parse_basis(j.at("basis").get<std::string>());
      r.coefficients = j.at("coefficients").get<std::vector<std::int64_t>>();
      r.residual = j.at("residual").get<std::string>();
      r.precision_bits = j.at("bits").get<int>();
      return r;
    }
    if (kind == "family") {
      FamilyCandidate f;
      f.q1 = decode_config(j.at("q1"));
      f.q2 = decode_config(j.at("q2"));
      f.q3 = decode_config(j.at("q3"));
      f.basis = parse_basis(j.at("basis").get<std::string>());
      f.coefficients = j.at("coefficients").get<std::vector<std::int64_t>>();
      f.status = parse_family_status(j.at("status").get<std::string>());
      for (const auto& s : j.at("samples")) {
        f.samples.push_back({s.at("t").get<std::string>(), s.at("residual").get<std::string>(), s.at("pass").get<bool>()});
      }
      f.degenerate_samples = j.at("degenerate").get<int>();
      f.precision_bits = j.at("bits").get<int>();
      return f;
    }
    throw StoreFailure("unknown record kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw StoreFailure(std::string("malformed record: ") + e.what());
  } catch (const Error& e) {
    if (dynamic_cast<const StoreFailure*>(&e)) throw;
    throw StoreFailure(std::string("malformed record: ") + e.what());
  }
}

RecordLog RecordLog::open(const std::filesystem::path& path, Mode mode, int schema_version) {
  if (schema_version != kSchemaVersion) {
    throw SchemaMismatch("unsupported log schema v" + std::to_string(schema_version) + " (this build writes v" +
                         std::to_string(kSchemaVersion) + ")");
  }
  const int flags = mode == Mode::Append ? (O_RDWR | O_CREAT | O_CLOEXEC) : (O_RDONLY | O_CLOEXEC);
  const int fd = ::open(path.c_str(), flags, 0644);
  if (fd < 0) io_failure("cannot open", path);
  RecordLog log(path, mode, fd);

  if (mode == Mode::Append && ::flock(fd, LOCK_EX | LOCK_NB) != 0) {
    if (errno == EWOULDBLOCK) throw StoreFailure("log '" + path.string() + "' is locked by another writer");
    io_failure("cannot lock", path);
  }

  const std::string data = read_file(fd, path);
  if (data.empty()) {
    if (mode == Mode::Append) log.write_lines(header_line(schema_version) + "\n");
    return log;
  }
  const auto eol = data.find('\n');
  const int found = parse_header(data.substr(0, eol));
  if (found != schema_version) {
    throw SchemaMismatch("log '" + path.string() + "' has schema v" + std::to_string(found) + ", expected v" +
                         std::to_string(schema_version));
  }
  if (mode == Mode::Append) {
    if (eol == std::string::npos) {
      log.write_lines("\n");
    } else if (data.back() != '\n') {
      const auto keep = data.rfind('\n') + 1;
      if (::ftruncate(fd, static_cast<off_t>(keep)) != 0) io_failure("cannot truncate", path);
      log.warnings_.push_back("dropped torn final line (" + std::to_string(data.size() - keep) + " bytes)");
    }
  }
  return log;
}

RecordLog::RecordLog(RecordLog&& o) noexcept
    : path_(std::move(o.path_)), mode_(o.mode_), fd_(std::exchange(o.fd_, -1)), warnings_(std::move(o.warnings_)) {}

RecordLog& RecordLog::operator=(RecordLog&& o) noexcept {
  if (this != &o) {
    if (fd_ >= 0) ::close(fd_);
    path_ = std::move(o.path_);
    mode_ = o.mode_;
    fd_ = std::exchange(o.fd_, -1);
    warnings_ = std::move(o.warnings_);
  }
  return *this;
}

RecordLog::~RecordLog() {
  if (fd_ >= 0) ::close(fd_);  // also releases the lock
}

void RecordLog::write_lines(const std::string& text) {
  if (mode_ != Mode::Append) throw StoreFailure("log '" + path_.string() + "' is open for reading");
  if (::lseek(fd_, 0, SEEK_END) < 0) io_failure("cannot seek", path_);
  write_fully(fd_, text, path_);
  if (::fsync(fd_) != 0) io_failure("cannot sync", path_);
}

void RecordLog::append(const LogRecord& record) { write_lines(encode_record(record) + "\n"); }

void RecordLog::append_all(std::span<const LogRecord> records) {
  if (records.empty()) return;
  std::string text;
  for (const auto& r : records) text += encode_record(r) + "\n";
  write_lines(text);
}

std::vector<LogRecord> RecordLog::read_all() {
  const std::string data = read_file(fd_, path_);
  std::vector<LogRecord> out;
  if (data.empty()) return out;
  std::size_t pos = data.find('\n');
  if (pos == std::string::npos) return out;
  ++pos;
  std::size_t line_no = 1;
  while (pos < data.size()) {
    ++line_no;
    const auto eol = data.find('\n', pos);
    if (eol == std::string::npos) {
      warnings_.push_back("ignored torn final line " + std::to_string(line_no) + " (" +
                          std::to_string(data.size() - pos) + " bytes)");
      break;
    }
    try {
      out.push_back(decode_record(data.substr(pos, eol - pos)));
    } catch (const StoreFailure& e) {
      throw StoreFailure(path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    pos = eol + 1;
  }
  return out;
}

std::map<CoefficientKey, std::vector<CevianConfig>> group_by_coefficients(std::span<const LogRecord> records) {
  std::map<CoefficientKey, std::vector<CevianConfig>> groups;
  for (const auto& rec : records) {
    if (const auto* r = std::get_if<RelationRecord>(&rec)) {
      groups[{r->basis, normalize_coefficients(r->coefficients)}].push_back(r->quadruple);
    }
  }
  return groups;
}

std::map<CoefficientKey, std::vector<CevianConfig>> group_by_coefficients(RecordLog& log) {
  const auto records = log.read_all();
  return group_by_coefficients(records);
}

}  // namespace cevian
