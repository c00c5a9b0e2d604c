#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cevian/pslq.hpp"
#include "cevian/records.hpp"
#include "cevian/store.hpp"

namespace cevian {

/// Rectangular box of angle quadruples on multiples of `step`, intersected
/// with the valid simplex (every angle and the apex positive).
struct GridSpec {
  AngleDeg step = 1;
  std::array<std::pair<AngleDeg, AngleDeg>, 4> ranges;  // inclusive [lo, hi] per a, b, c, d

  /// Every valid quadruple whose components are positive multiples of step.
  static GridSpec full(AngleDeg step);
  /// The box center +- radius in each component, on multiples of step.
  static GridSpec around(const CevianConfig& center, AngleDeg radius, AngleDeg step);

  /// Valid grid points in lexicographic order. Throws std::invalid_argument
  /// for a non-positive step.
  std::vector<CevianConfig> points() const;
};

inline constexpr int kDefaultSweepBits = 192;
inline constexpr int kRepassExtraBits = 128;
inline constexpr int kDefaultConfirmBits = 512;

struct SweepProgress {
  std::size_t done = 0;
  std::size_t total = 0;
  std::size_t hits = 0;
  std::size_t skipped = 0;
};

struct SweepOptions {
  std::int64_t max_coeff = kDefaultMaxCoeff;
  int jobs = 1;
  /// Called after each block of points, in order, from the calling thread.
  std::function<void(const SweepProgress&)> progress;
};

struct SweepSummary {
  std::size_t points = 0;
  std::size_t skipped = 0;
  std::vector<RelationRecord> records;  // in grid order
};

/// Every coefficient nonzero; for pairwise products, every r_i appears in a
/// term with nonzero coefficient.
bool all_six_involved(Basis basis, std::span<const std::int64_t> coefficients);

/// Relation search at one quadruple: detection at p, then an independent
/// rerun at p + 128 bits that must return the same coefficients. nullopt
/// when nothing passes both or not all six inradii are involved.
std::optional<RelationRecord> search_point(const CevianConfig& q, Basis basis, Precision p,
                                           std::int64_t max_coeff = kDefaultMaxCoeff);

/// Runs search_point over the grid and appends hits to `store` (if given) in
/// grid order, so the log is the same for any job count. Throws
/// PrecisionTooLow when p cannot support the basis length, StoreFailure on
/// write errors.
SweepSummary sweep(const GridSpec& grid, Basis basis, Precision p, RecordLog* store,
                   const SweepOptions& options = {});

/// Pairs relation records sharing basis and coefficients. Each pair
/// Q1 < Q2 yields Q3 = 2 Q2 - Q1 when Q3 is valid; pairs on an already seen
/// line of the same relation are dropped. Sorted by (basis, coefficients,
/// Q1, Q2).
std::vector<FamilyCandidate> pair_and_extrapolate(std::span<const LogRecord> records);

/// Retests the candidate's relation at `sample_count` off-grid points of the
/// line Q(t) = Q1 + t (Q2 - Q1), t in [-2, 3] clipped so every angle and the
/// apex stay at least 1 degree. Confirmed iff every sample passes at
/// 10^-tolerance_digits. Throws DegenerateConfig if no sample is valid.
FamilyCandidate confirm_family(const FamilyCandidate& candidate, Precision high, int sample_count);

/// confirm_family over many candidates, results in input order.
std::vector<FamilyCandidate> confirm_families(std::span<const FamilyCandidate> candidates, Precision high,
                                              int sample_count, int jobs);

}  // namespace cevian
