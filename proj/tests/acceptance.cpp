// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cevian/catalog.hpp"
#include "cevian/cli.hpp"
#include "cevian/discovery.hpp"
#include "cevian/locus.hpp"
#include "cevian/pslq.hpp"
#include "cevian/store.hpp"
#include "test_support.hpp"

using namespace cevian;
using cevian::testing::rel_diff;
using cevian::testing::tol;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int number, const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  std::ostringstream time;
  time.precision(3);
  time << elapsed;
  o.require(elapsed < limit_seconds, "runtime " + time.str() + "s over " + std::to_string(int(limit_seconds)) + "s");
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " AC" << number << ' ' << name << " (" << time.str() << "s)"
            << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
}

int cli(std::vector<std::string> args, std::string* stdout_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (stdout_text) *stdout_text = out.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string sci(const Real& x) { return x.to_string(3); }

const fs::path work = fs::temp_directory_path() / ("cevian-acceptance-" + std::to_string(::getpid()));

// Each determinism run writes into the same paths, so flags are identical.
struct Artifacts {
  std::string verify_jsonl, verify_stdout;
  std::string discover_log, discover_stdout;
  std::string sweep_log, families_log, families_stdout;
};

const std::vector<std::string> kVerifyArgs = {"verify",       "all",    "--samples", "100", "--precision-bits",
                                              "256",          "--seed", "0",         "--out", (work / "verify.jsonl").string()};
const std::vector<std::string> kDiscoverArgs = {"discover", "--step",  "1", "--range-around", "10,30,80,20",
                                                "--radius", "3",       "--basis", "r",       "--store",
                                                (work / "thm71.log").string()};
const std::vector<std::string> kSweepArgs = {"discover", "--step", "5", "--basis", "recip", "--store",
                                             (work / "recip.log").string()};
const std::vector<std::string> kFamiliesArgs = {"families",      "--store",   (work / "recip.log").string(),
                                                "--confirm-bits", "512",      "--samples",
                                                "5",             "--out",     (work / "families.log").string()};

void clear_outputs() {
  for (const char* f : {"verify.jsonl", "thm71.log", "recip.log", "families.log"}) fs::remove(work / f);
}

void ac1(Outcome& o) {
  const Precision p(256);
  const FigureMetrics m = metrics(build_from_angles(center_config(TriangleShape::make(90, 30, 60),
                                                                  NotableCenter::Incenter, p)));
  const Real s2 = sqrt(Real(2L, p)), s3 = sqrt(Real(3L, p)), s6 = sqrt(Real(6L, p));
  const Real closed[6] = {
      (s2 - 1L) * (s3 - 1L) / 4L,
      (-10L - 7L * s2 + 6L * s3 + 4L * s6) / 4L,
      (9L - 7L * s2 - 5L * s3 + 4L * s6) / 4L,
      (-4L - s2 + 2L * s3 + s6) / 8L,
      (-3L * s2 + 2L * s3 + s6) / 24L,
      (1L + s3 - s6) / 4L,
  };
  for (int i = 1; i <= 6; ++i) {
    const Real err = rel_diff(m.get(Quantity::Inradius, i), closed[i - 1]);
    o.require(err < tol(-45, p), "r" + std::to_string(i) + " off by " + sci(err));
  }
  for (const char* id : {"thm6.3-quartic", "thm6.3-square", "thm6.3-reciprocal", "thm6.3-linear", "thm6.3-product"}) {
    const CatalogEntry* e = find_entry(id);
    if (!e) {
      o.require(false, std::string("missing ") + id);
      continue;
    }
    const Real rel = evaluate(e->relation, m).relative;
    o.require(rel < tol(-40, p), std::string(id) + " residual " + sci(rel));
  }
}

void ac2(Outcome& o, Artifacts& a) {
  const int code = cli(kVerifyArgs, &a.verify_stdout);
  o.require(code == kExitOk, "exit " + std::to_string(code));
  a.verify_jsonl = slurp(work / "verify.jsonl");
  std::size_t passing = 0;
  std::istringstream lines(a.verify_stdout);
  for (std::string line; std::getline(lines, line);) passing += line.find(" PASS ") != std::string::npos;
  o.require(passing >= 20, std::to_string(passing) + " passing entries");
  o.require(a.verify_stdout.find(" FAIL ") == std::string::npos, "an entry failed");
}

void ac3(Outcome& o, Artifacts& a) {
  const int code = cli(kDiscoverArgs, &a.discover_stdout);
  o.require(code == kExitOk, "exit " + std::to_string(code));
  a.discover_log = slurp(work / "thm71.log");
  const CevianConfig target = CevianConfig::make(10, 30, 80, 20);
  const std::vector<std::int64_t> expected{5, 6, -1, 1, -3, -15};
  bool found = false;
  for (const LogRecord& r : RecordLog::open(work / "thm71.log", RecordLog::Mode::Read).read_all()) {
    const auto* rel = std::get_if<RelationRecord>(&r);
    if (rel && rel->quadruple == target && rel->basis == Basis::Identity && rel->coefficients == expected) found = true;
  }
  o.require(found, "relation not recorded at (10,30,80,20)");
}

void ac4(Outcome& o) {
  const Precision p(512);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coefficient(-50, 50);
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> c(6);
    for (auto& v : c) {
      do v = coefficient(rng);
      while (v == 0);
    }
    std::vector<Real> x;
    Real partial(p);
    for (std::size_t i = 0; i < 5; ++i) {
      Real v(static_cast<long>(rng() >> 1), p);
      v = v / pow2(63, p) + Real(static_cast<long>(rng() >> 40), p) * pow2(-200, p);
      x.push_back(sqrt(v + 1L) * Real::pi(p) / static_cast<long>(i + 2));
      partial += x.back() * static_cast<long>(c[i]);
    }
    x.push_back(-partial / static_cast<long>(c[5]));
    const auto r = find_integer_relation(x, 50, p);
    if (r && r->coefficients == normalize_coefficients(c)) ++recovered;
  }
  o.require(recovered == 100, std::to_string(recovered) + "/100 planted relations recovered");

  const Real phi = (1L + sqrt(Real(5L, p))) / 2L;
  const std::vector<Real> golden{Real(1L, p), phi, phi * phi};
  const auto g = find_integer_relation(golden, 100, p);
  o.require(g && g->coefficients == std::vector<std::int64_t>{1, 1, -1}, "golden ratio relation not (1, 1, -1)");
}

void ac5(Outcome& o, Artifacts& a) {
  int code = cli(kSweepArgs);
  o.require(code == kExitOk, "discover exit " + std::to_string(code));
  a.sweep_log = slurp(work / "recip.log");
  code = cli(kFamiliesArgs, &a.families_stdout);
  o.require(code == kExitOk, "families exit " + std::to_string(code));
  a.families_log = slurp(work / "families.log");
  int confirmed = 0;
  for (const LogRecord& r : RecordLog::open(work / "families.log", RecordLog::Mode::Read).read_all()) {
    const auto* f = std::get_if<FamilyCandidate>(&r);
    if (f && f->status == FamilyStatus::Confirmed && f->samples.size() >= 5 && f->precision_bits >= 512 &&
        all_six_involved(f->basis, f->coefficients)) {
      ++confirmed;
    }
  }
  o.require(confirmed >= 1, "no confirmed all-six family");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(confirmed) + " confirmed all-six families";
}

void ac6(Outcome& o) {
  const Precision p(256);
  std::mt19937_64 rng(6);
  const CatalogEntry* t74 = find_entry("thm7.4");
  const CatalogEntry* t75 = find_entry("thm7.5");
  if (!t74 || !t75) throw std::runtime_error("thm7.4/thm7.5 missing from catalog");
  Real worst_relation(p), worst_oracle(p);
  for (int n = 0; n < 1000; ++n) {
    const CevianConfig config = cevian::testing::random_config(rng);
    const FigureLengths L = build_from_angles(config, p);
    const FigureMetrics m = metrics(L);
    worst_relation = max(worst_relation, evaluate(t74->relation, m).relative);
    worst_relation = max(worst_relation, evaluate(t75->relation, m).relative);
    const auto placed = cevian::testing::place(config, p);
    const FigureLengths Lp = build_from_point(placed.A, placed.B, placed.C, placed.P, p);
    const auto x = L.named();
    const auto y = Lp.named();
    for (std::size_t i = 0; i < x.size(); ++i) worst_oracle = max(worst_oracle, abs(*x[i].second - *y[i].second));
  }
  o.require(worst_relation < tol(-40, p), "relation residual " + sci(worst_relation));
  o.require(worst_oracle < tol(-45, p), "angle vs coordinate paths differ by " + sci(worst_oracle));
}

void ac7(Outcome& o) {
  const Precision p(256);
  const TriangleShape shape = TriangleShape::equilateral();
  const LocusField field = scan(shape, 64, p);
  const Real tolerance = tol(-30, p);
  const ZeroSet zeros = extract_zero_set(field, tolerance, p);
  o.require(!zeros.empty(), "empty zero set");
  o.require(zeros.unresolved == 0, std::to_string(zeros.unresolved) + " unresolved crossings");

  const TriangleVertices& v = field.vertices;
  const PointXY center{(v.A.x + v.B.x + v.C.x) / 3L, (v.A.y + v.B.y + v.C.y) / 3L};
  auto g_at = [&](const PointXY& q) { return abs(alternating_inradius_sum(metrics(build_from_point(v.A, v.B, v.C, q, p)))); };
  o.require(g_at(center) < tolerance, "g(center) = " + sci(g_at(center)));

  // The center is not a lattice node at resolution 64; it must lie within
  // one lattice spacing of an emitted zero point.
  Real nearest(1L, p);
  std::size_t count = 0;
  Real worst(p);
  for (const LocusPolyline& line : zeros.polylines) {
    for (const PointXY& q : line.points) {
      ++count;
      worst = max(worst, g_at(q));
      const Real dx = q.x - center.x, dy = q.y - center.y;
      nearest = min(nearest, sqrt(dx * dx + dy * dy));
    }
  }
  o.require(worst < tolerance, "worst re-evaluated |g| " + sci(worst));
  o.require(nearest <= field.diameter() / 64L, "center " + sci(nearest) + " from the nearest zero point");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(count) + " zero points";
}

void ac8(Outcome& o, const Artifacts& first) {
  clear_outputs();
  Artifacts again;
  Outcome ignored;
  ac2(ignored, again);
  ac3(ignored, again);
  ac5(ignored, again);
  o.require(!first.verify_jsonl.empty() && first.verify_jsonl == again.verify_jsonl, "verify --out differs");
  o.require(first.verify_stdout == again.verify_stdout, "verify stdout differs");
  o.require(!first.discover_log.empty() && first.discover_log == again.discover_log, "discover store differs");
  o.require(first.discover_stdout == again.discover_stdout, "discover stdout differs");
  o.require(!first.sweep_log.empty() && first.sweep_log == again.sweep_log, "recip sweep store differs");
  o.require(!first.families_log.empty() && first.families_log == again.families_log, "families --out differs");
  o.require(first.families_stdout == again.families_stdout, "families stdout differs");
}

}  // namespace

int main() {
  fs::remove_all(work);
  fs::create_directories(work);
  Artifacts first;
  criterion(1, "30-60-90 incenter closed forms and relations", 1, ac1);
  criterion(2, "catalog verification", 300, [&](Outcome& o) { ac2(o, first); });
  criterion(3, "rediscovery at (10,30,80,20)", 120, [&](Outcome& o) { ac3(o, first); });
  criterion(4, "integer relation recovery", 30, ac4);
  criterion(5, "reciprocal family pipeline", 1800, [&](Outcome& o) { ac5(o, first); });
  criterion(6, "universal property suite", 300, ac6);
  criterion(7, "equilateral locus", 300, ac7);
  criterion(8, "determinism of criteria 2, 3 and 5", 2400, [&](Outcome& o) { ac8(o, first); });
  fs::remove_all(work);
  return failures;
}
