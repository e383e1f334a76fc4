#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apmeas/convolution.hpp"
#include "apmeas/measure.hpp"

namespace apmeas {

struct PeriodSet {
  double epsilon = 0.0;
  Window scan_window{-1.0, 1.0};
  double scan_step = 1.0;
  std::vector<double> members;
  double max_gap = 0.0;
  double covering_radius = 0.0;
};

/// Builds a period set from members, computing gaps (including the gaps to
/// the scan-window ends).
PeriodSet make_period_set(double epsilon, const Window& scan, double step, std::vector<double> members);

/// Grid t_i = scan.lo + i * step up to and including scan.hi.
std::vector<double> scan_grid(const Window& scan, double step);

struct PeriodOptions {
  /// Sorted candidate translates. For each grid point t, those within step/2
  /// are evaluated too and the grid point keeps the smallest distance.
  std::vector<double> snap_candidates;
};

/// ||mu - T_t mu||_U for each grid t, measured on one fixed edge-safe window.
struct DistanceScan {
  std::vector<double> ts;
  std::vector<double> distance;
  std::vector<double> witness;  // translate that realized the distance
  std::optional<Window> analysis_window;
};

/// Throws ScanExceedsTruncation.
DistanceScan norm_distances(const Measure& mu, const Window& U, const Window& scan, double step,
                            const PeriodOptions& opt = {});

PeriodSet threshold(const DistanceScan& d, double epsilon, const Window& scan, double step);

PeriodSet norm_periods(const Measure& mu, const Window& U, double epsilon, const Window& scan, double step,
                       const PeriodOptions& opt = {});

/// Sup over x of |F(x) - F(x - t)| for each grid t; x runs over samples in
/// `domain` (default: validity) with x - t valid. Throws GridMismatch.
std::vector<double> uniform_distances(const SampledFunction& F, const Window& scan, double step,
                                      std::optional<ClosedInterval> domain = std::nullopt);

PeriodSet uniform_periods(const SampledFunction& F, double epsilon, const Window& scan, double step,
                          std::optional<ClosedInterval> domain = std::nullopt);

/// Common epsilon-periods of a family, one pass per t.
PeriodSet equi_bohr_periods(std::span<const SampledFunction> family, double epsilon, const Window& scan,
                            double step, std::optional<ClosedInterval> domain = std::nullopt);

/// Periods of f under the Stepanov norm; identical by construction to the norm
/// periods of f theta at epsilon * |U|.
PeriodSet stepanov_periods(const DensityPart& f, const Window& U, double epsilon, const Window& scan,
                           double step, std::optional<Window> truncation = std::nullopt,
                           const PeriodOptions& opt = {});

/// Covering radius; +infinity when there are no members.
double relative_density(const PeriodSet& ps);

/// mu * g^dagger for every g in the family, sampled so that uniform periods on
/// `domain` are comparable with the norm periods of mu.
struct FamilyConvolutions {
  std::vector<SampledFunction> functions;
  ClosedInterval domain{0.0, 0.0};
};

/// Throws GridMismatch unless scan.lo is a multiple of step.
FamilyConvolutions family_convolutions(const Measure& mu, const Window& U, std::span<const TestFunction> family,
                                       const Window& scan, double step);

struct EquiBohrComparison {
  PeriodSet norm;
  PeriodSet equi;
  bool norm_subset_of_equi = false;
  std::size_t symmetric_difference = 0;
  std::size_t grid_points = 0;
  double slack_fraction = 0.0;
};

/// Norm periods of mu against the common uniform periods of mu * g^dagger over
/// the canonical family of the given depth.
EquiBohrComparison compare_equi_bohr(const Measure& mu, const Window& U, double epsilon, const Window& scan,
                                     double step, int depth);

struct EpsilonRow {
  double epsilon = 0.0;
  std::size_t members = 0;
  double radius_inner = 0.0;
  double radius_outer = 0.0;
  bool stable = false;
};

struct FailureWitness {
  double epsilon = 0.0;
  double gap = 0.0;
};

struct ComponentReport {
  std::string component;
  std::vector<EpsilonRow> rows;
  bool norm_ap_evidence = false;
  std::optional<FailureWitness> failure_witness;
};

struct ClassificationReport {
  Window inner_scan{-1.0, 1.0};
  Window outer_scan{-1.0, 1.0};
  double threshold = 0.0;  // declared relative-density threshold: outer scan length / 4
  std::vector<EpsilonRow> rows;
  bool norm_ap_evidence = false;
  bool strong_ap_evidence = false;
  bool equi_bohr_checked = false;
  double equi_bohr_slack = 0.0;
  std::optional<FailureWitness> failure_witness;
  std::vector<ComponentReport> components;
  std::string caveat;
};

struct ClassifyOptions {
  PeriodOptions periods;
  bool equi_bohr = true;
  int family_depth = 5;
  bool components = true;
};

/// Evidence-graded classification from two nested scan windows: the given
/// scan and its centred half.
ClassificationReport classify(const Measure& mu, const Window& U, std::span<const double> epsilons,
                              const Window& scan, double step, const ClassifyOptions& opt = {});

}  // namespace apmeas
