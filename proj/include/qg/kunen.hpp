#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qg/identity.hpp"
#include "qg/magma.hpp"

namespace qg {

enum class StepId {
  JEqK,               // j(x) = k(x)
  Eq1TwoSided,        // x*j(x) = x and j(x)*x = x
  ValueIdempotent,    // j(x)*j(x) = j(x)
  MapIdempotent,      // j∘j = j
  FixEqIm,            // Fix(j) = im(j)
  StarStep,           // ((x*u)*u)*u = x*u for idempotent u in im(j), then cancel u
  RightInvolution,    // (x*j(y))*j(y) = x
  LeftInvariance,     // j(a*x) = j(x)
  CoeqTerminal,       // left translations generate a one-block partition
  JConstant,          // j is constant
  IdentityTwoSided,   // the constant value of j is a two-sided identity
};

inline constexpr std::array<StepId, 11> kAllSteps = {
    StepId::JEqK,         StepId::Eq1TwoSided,     StepId::ValueIdempotent, StepId::MapIdempotent,
    StepId::FixEqIm,      StepId::StarStep,        StepId::RightInvolution, StepId::LeftInvariance,
    StepId::CoeqTerminal, StepId::JConstant,       StepId::IdentityTwoSided,
};

/// "J_EQ_K", "EQ1_TWO_SIDED", ...
std::string_view step_name(StepId id) noexcept;
std::optional<StepId> step_from_name(std::string_view name) noexcept;

struct StepResult {
  StepId step_id;
  bool passed;
  std::optional<Assignment> witness;  // present iff !passed
};

struct KunenReport {
  std::size_t model_order = 0;
  bool is_quasigroup = false;
  std::optional<LatinVerdict::Witness> latin_witness;
  bool n1_evaluated = false;
  bool n1_holds = false;
  std::optional<Assignment> n1_witness;
  std::vector<StepResult> steps;  // only populated for N1 quasigroups
  std::optional<Element> identity_element;
  bool is_loop = false;

  bool all_steps_passed() const;
};

StepResult check_right_involution(const Quasigroup& q);
StepResult check_left_invariance(const Quasigroup& q);
StepResult check_star_step(const Quasigroup& q);

struct KunenOptions {
  // Evaluate N1 even when the table is not Latin (steps stay empty).
  bool force_n1 = false;
};

/// Latin check, then N1, then every step in kAllSteps order. Steps after a
/// failure are still evaluated. Never throws on a semantic failure.
KunenReport verify_kunen(const CayleyTable& t, KunenOptions options = {});

/// Runs the eleven steps on q regardless of whether N1 holds.
std::vector<StepResult> run_steps(const Quasigroup& q);

}  // namespace qg
