#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "apmeas/test_function.hpp"
#include "apmeas/window.hpp"

namespace apmeas {

/// Atoms whose positions differ by at most this much are merged.
inline constexpr double kMergeTolerance = 1e-9;

struct Atom {
  double pos = 0.0;
  cplx weight{};
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Sorts by position, merges coincident atoms by weight addition and drops
/// zero (or cancelled) weights.
std::vector<Atom> normalize_atoms(std::vector<Atom> atoms);

class PurePointPart {
 public:
  PurePointPart() = default;
  explicit PurePointPart(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }
  /// Realized certificate: max over x of the sum of |w| with |pos - x| <= 1.
  double tb_bound() const noexcept { return tb_bound_; }

 private:
  std::vector<Atom> atoms_;
  double tb_bound_ = 0.0;
};

/// Piecewise-constant density: value samples[k] on
/// [origin + k*step, origin + (k+1)*step), optionally clipped to [clip.lo, clip.hi].
class DensityPart {
 public:
  DensityPart() = default;
  DensityPart(double origin, double step, std::vector<cplx> samples,
              std::optional<ClosedInterval> clip = std::nullopt);

  double origin() const noexcept { return origin_; }
  double step() const noexcept { return step_; }
  const std::vector<cplx>& samples() const noexcept { return samples_; }
  const std::optional<ClosedInterval>& clip() const noexcept { return clip_; }
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t size() const noexcept { return samples_.size(); }

  /// Effective extent of cell k after clipping (may be empty: lo >= hi).
  ClosedInterval cell(std::size_t k) const noexcept;
  /// Hull of all cells (after clipping); {0,0} when empty.
  ClosedInterval span() const noexcept;

  cplx value_at(double x) const noexcept;
  /// Exact integral of f over [u, v].
  cplx integral(double u, double v) const noexcept;
  /// Exact integral of |f| over [u, v].
  double abs_integral(double u, double v) const noexcept;
  /// Exact integral of f * g.
  cplx integrate_against(const TestFunction& g) const noexcept;

  /// Sorted cell boundaries of nonempty cells (after clipping).
  std::vector<double> boundaries() const;

  DensityPart translated(double t) const;
  DensityPart reflected() const;
  DensityPart modulus() const;
  DensityPart conjugated() const;
  DensityPart scaled(cplx c) const;
  DensityPart restricted(const ClosedInterval& w) const;

 private:
  double antider_abs(double x) const noexcept;
  void build_prefix();

  double origin_ = 0.0;
  double step_ = 1.0;
  std::vector<cplx> samples_;
  std::optional<ClosedInterval> clip_;
  std::vector<double> abs_prefix_;  // integral of |f| from span.lo to cell k start
  std::vector<cplx> prefix_;
};

struct IfsMap {
  double ratio = 0.5;   // contraction in (0, 1)
  double offset = 0.0;  // x -> ratio * x + offset
  double prob = 0.5;
  friend bool operator==(const IfsMap&, const IfsMap&) = default;
};

/// One generator of the singular continuous component: either an IFS measure
/// of total mass `mass` realized to `depth`, or an explicit atom cloud (used
/// for sc * sc products).
struct SingularPiece {
  std::vector<IfsMap> ifs;
  int depth = 0;
  cplx mass{};
  std::vector<Atom> cloud;

  static SingularPiece from_ifs(std::vector<IfsMap> ifs, int depth, cplx mass);
  static SingularPiece from_cloud(std::vector<Atom> atoms);

  bool is_ifs() const noexcept { return !ifs.empty(); }
  std::vector<Atom> realize() const;
  ClosedInterval hull() const;

  SingularPiece translated(double t) const;
  SingularPiece reflected() const;
  /// Pushforward under x -> s*x, s > 0.
  SingularPiece dilated(double s) const;
  SingularPiece scaled(cplx c) const;
};

class SingularPart {
 public:
  SingularPart() = default;
  explicit SingularPart(std::vector<SingularPiece> pieces);

  const std::vector<SingularPiece>& pieces() const noexcept { return pieces_; }
  const std::vector<Atom>& realized_atoms() const noexcept { return realized_; }
  bool empty() const noexcept { return realized_.empty(); }
  double total_mass() const noexcept;

 private:
  std::vector<SingularPiece> pieces_;
  std::vector<Atom> realized_;
};

/// Translation-bounded measure on the real line with structural Lebesgue
/// decomposition. `truncation` is the open region on which the measure is
/// faithfully realized; when absent the measure is finite and fully known.
class Measure {
 public:
  Measure() = default;
  Measure(PurePointPart pp, DensityPart ac, SingularPart sc,
          std::optional<Window> truncation = std::nullopt);

  static Measure from_atoms(std::vector<Atom> atoms, std::optional<Window> truncation = std::nullopt);
  static Measure from_density(DensityPart f, std::optional<Window> truncation = std::nullopt);
  static Measure from_singular(SingularPart sc, std::optional<Window> truncation = std::nullopt);

  const PurePointPart& pp() const noexcept { return pp_; }
  const DensityPart& ac() const noexcept { return ac_; }
  const SingularPart& sc() const noexcept { return sc_; }
  const std::optional<Window>& truncation() const noexcept { return truncation_; }

  bool is_zero() const noexcept { return pp_.empty() && ac_.empty() && sc_.empty(); }
  bool is_finite() const noexcept { return !truncation_.has_value(); }
  /// Closed hull of everything stored; {0,0} for the zero measure.
  ClosedInterval support_hull() const;

  Measure with_truncation(std::optional<Window> w) const;

 private:
  PurePointPart pp_;
  DensityPart ac_;
  SingularPart sc_;
  std::optional<Window> truncation_;
};

Measure translate(const Measure& mu, double t);
Measure reflect(const Measure& mu);
Measure conjugate(const Measure& mu);
Measure scale(const Measure& mu, cplx c);
Measure total_variation(const Measure& mu);

/// Sum of two measures. Density grids must share step and phase; the
/// truncation of the sum is the intersection of the two realized regions.
Measure add(const Measure& a, const Measure& b);
Measure subtract(const Measure& a, const Measure& b);

/// Riesz pairing mu(g). Throws SupportOutsideTruncation.
cplx pairing(const Measure& mu, const TestFunction& g);

namespace detail {
/// Pairing without the truncation check, for callers that have already
/// established edge safety up to rounding.
cplx pairing_unchecked(const Measure& mu, const TestFunction& g);
}  // namespace detail

/// |mu|(I) for the open interval I. Throws WindowOutsideTruncation.
double mass(const Measure& mu, const Window& I);

/// mu restricted to the open window W; the truncation becomes W (intersected
/// with the realized region when W leaves it).
Measure restrict(const Measure& mu, const Window& W);

/// (pp, ac, sc) as single-component measures sharing mu's truncation.
std::tuple<Measure, Measure, Measure> components(const Measure& mu);

/// Total mass |mu|(R) of a finite measure.
double total_mass(const Measure& mu);

}  // namespace apmeas
