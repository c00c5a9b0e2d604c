#include "cevian/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cevian/catalog.hpp"
#include "cevian/discovery.hpp"
#include "cevian/errors.hpp"
#include "cevian/locus.hpp"
#include "cevian/parallel.hpp"

namespace cevian {

namespace {

using nlohmann::json;

/// Thrown for bad flag values that CLI11 cannot check itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int precision_bits = 256;
  int digits = 50;
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  std::string out;

  std::string echo() const {
    return "precision-bits=" + std::to_string(precision_bits) + " digits=" + std::to_string(digits) +
           " seed=" + std::to_string(seed);
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<AngleDeg> parse_angles(const std::string& text, std::size_t count, const std::string& flag) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw UsageError(flag + " expects " + std::to_string(count) + " comma-separated angles");
  }
  std::vector<AngleDeg> out;
  try {
    for (const auto& p : parts) out.push_back(AngleDeg::parse(p));
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
  return out;
}

TriangleShape parse_shape(const std::string& text) {
  const auto a = parse_angles(text, 3, "--angles");
  return TriangleShape::make(a[0], a[1], a[2]);
}

CevianConfig parse_quadruple(const std::string& text, const std::string& flag) {
  const auto a = parse_angles(text, 4, flag);
  return CevianConfig::make(a[0], a[1], a[2], a[3]);
}

// Does the entry's predicate cover this input?
bool covers(const Predicate& pred, const std::optional<TriangleShape>& shape, const std::optional<NotableCenter>& center,
            const std::optional<CevianConfig>& config) {
  switch (pred.kind) {
    case Predicate::Kind::AnyInterior: return true;
    case Predicate::Kind::Template: return false;
    case Predicate::Kind::FixedConfig: return config && *config == *pred.config;
    case Predicate::Kind::CenterOfShape:
      if (!shape || !center || *center != pred.center) return false;
      switch (pred.rule) {
        case ShapeRule::Any: return true;
        case ShapeRule::Acute: return shape->is_acute();
        case ShapeRule::AngleB: return shape->B == pred.angle_b;
        case ShapeRule::Exact: return *shape == *pred.shape;
      }
  }
  return false;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw StoreFailure("cannot write '" + path + "'");
  f << text;
  if (!f.flush()) throw StoreFailure("cannot write '" + path + "'");
}

// ---- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string center, angles, quadruple, coords;
};

int cmd_compute(const ComputeArgs& args, const RunConfig& cfg, std::ostream& out) {
  const int forms = !args.quadruple.empty() + !args.coords.empty() + (!args.center.empty() || !args.angles.empty());
  if (forms != 1) throw UsageError("compute needs exactly one of --center/--angles, --quadruple, --coords");
  const Precision p(cfg.precision_bits);

  std::optional<TriangleShape> shape;
  std::optional<NotableCenter> center;
  std::optional<CevianConfig> config;
  std::optional<FigureLengths> lengths;
  std::string input;
  if (!args.quadruple.empty()) {
    config = parse_quadruple(args.quadruple, "--quadruple");
    lengths = build_from_angles(*config, p);
    input = "quadruple=" + args.quadruple;
  } else if (!args.coords.empty()) {
    const auto parts = split(args.coords, ',');
    if (parts.size() != 8) throw UsageError("--coords expects Ax,Ay,Bx,By,Cx,Cy,Px,Py");
    std::vector<Real> v;
    try {
      for (const auto& s : parts) v.emplace_back(s, p);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--coords: ") + e.what());
    }
    lengths = build_from_point({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}, p);
    input = "coords=" + args.coords;
  } else {
    if (args.center.empty() || args.angles.empty()) throw UsageError("--center and --angles go together");
    center = parse_center(args.center);
    if (!center) throw UsageError("unknown center '" + args.center + "'");
    shape = parse_shape(args.angles);
    lengths = build_from_angles(center_config(*shape, *center, p));
    input = "center=" + args.center + " angles=" + args.angles;
  }

  const FigureMetrics m = metrics(*lengths);
  std::ostringstream text;
  text << "# compute " << input << ' ' << cfg.echo() << '\n';
  const auto deg = lengths->angles.in_degrees();
  text << "angles";
  for (const auto& d : deg) text << ' ' << d.to_string(cfg.digits);
  text << '\n';
  for (const auto& [name, ptr] : lengths->named()) text << name << ' ' << ptr->to_string(cfg.digits) << '\n';
  for (int i = 1; i <= 6; ++i) {
    text << "triangle " << i;
    for (Quantity q : {Quantity::Area, Quantity::Semiperimeter, Quantity::Inradius, Quantity::Circumradius}) {
      text << ' ' << quantity_token(q) << '=' << m.get(q, i).to_string(cfg.digits);
    }
    text << '\n';
  }
  const Real tolerance = pow10(-p.tolerance_digits(), p);
  for (const auto& e : catalog()) {
    if (!covers(e.predicate, shape, center, config)) continue;
    const Real rel = evaluate(e.relation, m).relative;
    text << "check " << e.id << " relative-residual=" << rel.to_string(6) << ' '
         << (rel < tolerance ? "holds" : "fails") << '\n';
  }
  out << text.str();

  if (!cfg.out.empty()) {
    json j;
    j["command"] = "compute";
    j["input"] = input;
    j["precision_bits"] = cfg.precision_bits;
    j["digits"] = cfg.digits;
    for (const auto& [name, value] : m.flatten(cfg.digits)) j["values"][name] = value;
    write_text_file(cfg.out, j.dump() + "\n");
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& selector, int samples, const RunConfig& cfg, std::ostream& out) {
  if (samples < 1) throw UsageError("--samples must be at least 1");
  const Precision p(cfg.precision_bits);
  const auto& checks = check_ids();
  std::vector<const CatalogEntry*> entries;
  std::vector<std::string> check_list;
  if (selector == "all") {
    for (const auto& e : catalog()) {
      if (e.predicate.verifiable()) entries.push_back(&e);
    }
    check_list = checks;
  } else if (const CatalogEntry* e = find_entry(selector)) {
    if (!e->predicate.verifiable()) throw UsageError("entry '" + selector + "' is a template and has no instances");
    entries.push_back(e);
  } else if (std::find(checks.begin(), checks.end(), selector) != checks.end()) {
    check_list.push_back(selector);
  } else {
    throw UsageError("no catalog entry or check named '" + selector + "'");
  }

  std::vector<VerificationReport> reports;
  for (const CatalogEntry* e : entries) reports.push_back(verify(*e, samples, p, cfg.seed, cfg.jobs));
  for (const auto& id : check_list) reports.push_back(verify_check(id, samples, p, cfg.seed, cfg.jobs));

  std::ostringstream machine;
  machine << json{{"command", "verify"},   {"selector", selector},          {"samples", samples},
                  {"seed", cfg.seed},       {"precision_bits", cfg.precision_bits},
                  {"tolerance_digits", p.tolerance_digits()}}
                 .dump()
          << '\n';
  int failed = 0;
  out << "# verify " << selector << " samples=" << samples << ' ' << cfg.echo() << '\n';
  for (const auto& r : reports) {
    failed += !r.pass;
    out << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << " samples=" << r.samples
        << " max-relative=" << r.max_relative.to_string(6) << " bits=" << r.precision_bits << '\n';
    json obs = json::object();
    for (const auto& [label, value] : r.observations) {
      out << "  observed " << label << " max-relative=" << value.to_string(6) << '\n';
      obs[label] = value.to_string(cfg.digits);
    }
    machine << json{{"id", r.id},
                    {"samples", r.samples},
                    {"max_relative", r.max_relative.to_string(cfg.digits)},
                    {"pass", r.pass},
                    {"precision_bits", r.precision_bits},
                    {"observations", obs}}
                   .dump()
            << '\n';
  }
  out << reports.size() << " verified, " << reports.size() - static_cast<std::size_t>(failed) << " passed, "
      << failed << " failed\n";
  if (!cfg.out.empty()) write_text_file(cfg.out, machine.str());
  return failed ? kExitVerifyFailed : kExitOk;
}

// ---- discover / families ---------------------------------------------------

struct DiscoverArgs {
  std::string step = "5";
  std::string range_around;
  std::string radius = "3";
  std::string basis = "r";
  std::string store;
  std::int64_t max_coeff = kDefaultMaxCoeff;
  bool precision_given = false;
};

int cmd_discover(const DiscoverArgs& args, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const AngleDeg step = parse_angles(args.step, 1, "--step")[0];
  if (!step.positive()) throw UsageError("--step must be positive");
  Basis basis;
  try {
    basis = parse_basis(args.basis);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (args.max_coeff < 1) throw UsageError("--max-coeff must be positive");
  GridSpec grid = GridSpec::full(step);
  std::string range = "full";
  if (!args.range_around.empty()) {
    const AngleDeg radius = parse_angles(args.radius, 1, "--radius")[0];
    grid = GridSpec::around(parse_quadruple(args.range_around, "--range-around"), radius, step);
    range = "around " + args.range_around + " radius " + radius.to_string();
  }
  const Precision p(args.precision_given ? cfg.precision_bits : kDefaultSweepBits);

  auto log = RecordLog::open(args.store, RecordLog::Mode::Append);
  for (const auto& w : log.warnings()) err << "warning: " << w << '\n';
  SweepOptions options;
  options.max_coeff = args.max_coeff;
  options.jobs = cfg.jobs;
  options.progress = [&](const SweepProgress& s) {
    err << "progress points=" << s.done << '/' << s.total << " hits=" << s.hits << " skipped=" << s.skipped << '\n';
  };
  const auto summary = sweep(grid, basis, p, &log, options);
  out << "# discover basis=" << basis_token(basis) << " step=" << step.to_string() << " range=" << range
      << " max-coeff=" << args.max_coeff << " precision-bits=" << p.bits() << '\n';
  out << "swept " << summary.points << " points, " << summary.records.size() << " records, " << summary.skipped
      << " skipped\n";
  for (const auto& r : summary.records) {
    out << "record " << r.quadruple.to_string() << ' ' << basis_relation(r.basis, r.coefficients).to_string() << '\n';
  }
  return kExitOk;
}

struct FamiliesArgs {
  std::string store;
  int confirm_bits = kDefaultConfirmBits;
  int samples = 5;
};

std::string coefficient_list(const std::vector<std::int64_t>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

int cmd_families(const FamiliesArgs& args, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (args.samples < 5) throw UsageError("--samples must be at least 5");
  if (args.confirm_bits < 64) throw UsageError("--confirm-bits must be at least 64");
  auto log = RecordLog::open(args.store, RecordLog::Mode::Read);
  const auto records = log.read_all();
  for (const auto& w : log.warnings()) err << "warning: " << w << '\n';

  const auto candidates = pair_and_extrapolate(records);
  std::vector<FamilyCandidate> results;
  int skipped = 0;
  const auto confirmed_or_error = parallel_map(candidates.size(), cfg.jobs, [&](std::size_t i) {
    try {
      return std::optional<FamilyCandidate>(confirm_family(candidates[i], Precision(args.confirm_bits), args.samples));
    } catch (const DegenerateConfig&) {
      return std::optional<FamilyCandidate>();
    }
  });
  for (const auto& r : confirmed_or_error) {
    if (r) {
      results.push_back(*r);
    } else {
      ++skipped;
    }
  }
  std::size_t confirmed = 0;
  for (const auto& f : results) confirmed += f.status == FamilyStatus::Confirmed;

  out << "# families store=" << args.store << " confirm-bits=" << args.confirm_bits << " samples=" << args.samples
      << '\n';
  out << candidates.size() << " candidates, " << confirmed << " confirmed, " << results.size() - confirmed
      << " refuted, " << skipped << " without valid samples\n";
  for (const auto& f : results) {
    if (f.status != FamilyStatus::Confirmed) continue;
    out << "family basis=" << basis_token(f.basis) << " coefficients=" << coefficient_list(f.coefficients)
        << " q1=" << f.q1.to_string() << " q2=" << f.q2.to_string() << " q3=" << f.q3.to_string() << '\n';
    out << "  " << basis_relation(f.basis, f.coefficients).to_string() << '\n';
  }

  if (!cfg.out.empty()) {
    std::filesystem::remove(cfg.out);
    auto sink = RecordLog::open(cfg.out, RecordLog::Mode::Append);
    std::vector<LogRecord> batch(results.begin(), results.end());
    sink.append_all(batch);
  }
  return kExitOk;
}

// ---- locus -----------------------------------------------------------------

struct LocusArgs {
  std::string angles;
  int resolution = 64;
  int tolerance_digits = 30;
};

int cmd_locus(const LocusArgs& args, const RunConfig& cfg, std::ostream& out) {
  if (args.angles.empty()) throw UsageError("locus needs --angles");
  if (args.resolution < 8) throw UsageError("--resolution must be at least 8");
  const TriangleShape shape = parse_shape(args.angles);
  const Precision p(cfg.precision_bits);
  const Real tol = pow10(-args.tolerance_digits, p);
  const LocusField field = scan(shape, args.resolution, p, cfg.jobs);
  const ZeroSet zero = extract_zero_set(field, tol, p);

  const std::string echo = "# locus angles=" + args.angles + " resolution=" + std::to_string(args.resolution) +
                           " tolerance=1e-" + std::to_string(args.tolerance_digits) + ' ' + cfg.echo();
  const std::string prefix = cfg.out.empty() ? "locus" : cfg.out;
  std::ostringstream field_csv, lines_csv;
  field_csv << echo << '\n';
  write_field_csv(field_csv, field, cfg.digits);
  lines_csv << echo << '\n';
  write_polylines_csv(lines_csv, zero, cfg.digits);
  write_text_file(prefix + "-field.csv", field_csv.str());
  write_text_file(prefix + "-zeros.csv", lines_csv.str());

  std::size_t points = 0;
  for (const auto& l : zero.polylines) points += l.points.size();
  out << echo << '\n';
  out << field.nodes.size() << " nodes, " << zero.polylines.size() << " polylines, " << points << " zero points";
  if (zero.unresolved) out << ", " << zero.unresolved << " crossings unresolved";
  out << '\n';
  if (zero.empty()) out << "empty zero set\n";
  for (std::size_t i = 0; i < zero.polylines.size(); ++i) {
    const auto& l = zero.polylines[i];
    out << "polyline " << i << " points=" << l.points.size();
    if (l.points.size() >= 3) out << " max-deviation=" << fit_line(l).deviation_scaled.to_string(6) << " diameters";
    out << '\n';
  }
  out << "wrote " << prefix << "-field.csv and " << prefix << "-zeros.csv\n";
  return kExitOk;
}

// ---- catalog ---------------------------------------------------------------

int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream text;
  for (const auto& e : catalog()) text << export_line(e) << '\n';
  out << text.str();
  if (!cfg.out.empty()) write_text_file(cfg.out, text.str());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Six-incircle cevian geometry toolkit", "cevian"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits")->check(CLI::Range(64, 1 << 20));
  app.add_option("--digits", cfg.digits, "significant digits in decimal output")->check(CLI::Range(1, 100000));
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 4096));
  app.add_option("--out", cfg.out, "machine-readable output path");

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "metrics of one configuration");
  c->add_option("--center", compute.center, "incenter, centroid, circumcenter, orthocenter, ...");
  c->add_option("--angles", compute.angles, "triangle angles A,B,C in degrees");
  c->add_option("--quadruple", compute.quadruple, "cevian angles a,b,c,d in degrees");
  c->add_option("--coords", compute.coords, "Ax,Ay,Bx,By,Cx,Cy,Px,Py");

  std::string selector;
  int samples = 100;
  auto* v = app.add_subcommand("verify", "check catalog relations on sampled instances");
  v->add_option("selector", selector, "entry id, check id, or 'all'")->required();
  v->add_option("--samples", samples, "instances per entry");

  DiscoverArgs discover;
  auto* d = app.add_subcommand("discover", "sweep a grid for integer relations");
  d->add_option("--step", discover.step, "grid step in degrees");
  d->add_option("--range-around", discover.range_around, "restrict to a box around a,b,c,d");
  d->add_option("--radius", discover.radius, "half-width of the --range-around box in degrees");
  d->add_option("--basis", discover.basis, "r, recip, sq, recipsq, recip4, pairs");
  d->add_option("--store", discover.store, "record log")->required();
  d->add_option("--max-coeff", discover.max_coeff, "coefficient bound");

  FamiliesArgs families;
  auto* f = app.add_subcommand("families", "pair, extrapolate and confirm families from a record log");
  f->add_option("--store", families.store, "record log")->required();
  f->add_option("--confirm-bits", families.confirm_bits, "confirmation precision");
  f->add_option("--samples", families.samples, "off-grid samples per candidate");

  LocusArgs locus;
  auto* l = app.add_subcommand("locus", "trace where r1+r3+r5 = r2+r4+r6 inside a triangle");
  l->add_option("--angles", locus.angles, "triangle angles A,B,C in degrees")->required();
  l->add_option("--resolution", locus.resolution, "barycentric lattice density");
  l->add_option("--tolerance-digits", locus.tolerance_digits, "refine until |g| < 10^-digits");

  auto* k = app.add_subcommand("catalog", "list the relation catalog");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*c) return cmd_compute(compute, cfg, out);
    if (*v) return cmd_verify(selector, samples, cfg, out);
    if (*d) {
      discover.precision_given = app.get_option("--precision-bits")->count() > 0;
      return cmd_discover(discover, cfg, out, err);
    }
    if (*f) return cmd_families(families, cfg, out, err);
    if (*l) return cmd_locus(locus, cfg, out);
    if (*k) return cmd_catalog(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionTooLow& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitEnvironment;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitEnvironment;
  }
  return kExitUsage;
}

}  // namespace cevian
