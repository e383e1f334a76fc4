#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "apmeas/measure.hpp"
#include "apmeas/test_function.hpp"

namespace apmeas {

enum class NormMethod { Sliding, SupFamily, Operator, CompactInf, DyadicBall };

std::string to_string(NormMethod m);

struct NormReport {
  double value = 0.0;
  double argmax_translate = 0.0;
  NormMethod method = NormMethod::Sliding;
  std::size_t family_size = 0;
};

/// Closed range of translates x with x + U inside the truncation. Without a
/// truncation the range covers every translate where x + U meets the support,
/// padded by 1. Throws EmptyScanRange.
ClosedInterval scan_range(const Measure& mu, const Window& U);

/// sup_x |mu|(x + U), exact over the critical translates.
NormReport norm_U(const Measure& mu, const Window& U);

/// sup over the critical grid and the family of |mu(T_t g)|. Throws FamilyNotInFU.
NormReport norm_via_family(const Measure& mu, const Window& U, std::span<const TestFunction> family);

/// The three orders (t then g, joint, g then t) of the family supremum.
std::array<double, 3> family_sup_orderings(const Measure& mu, const Window& U,
                                           std::span<const TestFunction> family);

/// Supremum over the whole unit ball of the dyadic hat span at the given depth:
/// for each translate this is the sum over hats of |mu(T_t phi_j)|.
NormReport norm_via_dyadic_ball(const Measure& mu, const Window& U, int depth);

/// max over f of ||mu * f||_inf / ||f||_inf for f supported in -U.
/// Throws FamilyNotInMinusU, ZeroFunctionInFamily.
NormReport operator_norm(const Measure& mu, const Window& U, std::span<const TestFunction> family);

/// sup_t min_f |mu|(T_t f) for a family of functions >= 1 on K. An upper bound
/// for |mu|(t + K) maximized over t. Throws FamilyNotDominating.
NormReport norm_K_compact(const Measure& mu, const ClosedInterval& K,
                          std::span<const TestFunction> upper_family);

/// Larger of the two covering numbers of A by translates of B and vice versa.
int window_equivalence_constant(const Window& A, const Window& B);

/// sup_x (1/|U|) integral over x + U of |f|. With no truncation the density is
/// taken as zero outside its cells.
double stepanov_norm(const DensityPart& f, const Window& U,
                     std::optional<Window> truncation = std::nullopt);

}  // namespace apmeas
