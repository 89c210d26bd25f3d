#pragma once

#include <numbers>
#include <string>
#include <variant>

#include "curveflow/errors.hpp"

namespace curveflow {

/// f(L) = 2 pi / L
struct AreaPreservingSimple {
  friend bool operator==(const AreaPreservingSimple&, const AreaPreservingSimple&) = default;
};

/// f(L) = 2 pi ind / L for an immersed curve with rotation index `ind`.
struct AreaPreservingNonsimple {
  int ind = 1;
  friend bool operator==(const AreaPreservingNonsimple&, const AreaPreservingNonsimple&) = default;
};

/// f(L) = (2 pi - beta) / L; the enclosed area then changes at rate -beta.
struct PrescribedRate {
  double beta = 0.0;
  friend bool operator==(const PrescribedRate&, const PrescribedRate&) = default;
};

/// Nonlocal forcing term. Every variant has the form c / L.
class ForceSpec {
 public:
  using Variant = std::variant<AreaPreservingSimple, AreaPreservingNonsimple, PrescribedRate>;

  ForceSpec() = default;
  ForceSpec(AreaPreservingSimple v) : v_(v) {}
  ForceSpec(AreaPreservingNonsimple v) : v_(v) {
    if (v.ind == 0) throw InvalidArgument("rotation index of a nonsimple curve must be nonzero");
  }
  ForceSpec(PrescribedRate v) : v_(v) {}

  const Variant& variant() const noexcept { return v_; }

  /// The constant c in f(L) = c / L.
  double numerator() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return std::visit(
        [](const auto& v) -> double {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, AreaPreservingSimple>) {
            return two_pi;
          } else if constexpr (std::is_same_v<T, AreaPreservingNonsimple>) {
            return two_pi * v.ind;
          } else {
            return two_pi - v.beta;
          }
        },
        v_);
  }

  friend bool operator==(const ForceSpec&, const ForceSpec&) = default;

 private:
  Variant v_{AreaPreservingSimple{}};
};

inline double force(const ForceSpec& spec, double perimeter) {
  if (!(perimeter > 0.0)) {
    throw NonpositivePerimeter("forcing evaluated at nonpositive perimeter " + std::to_string(perimeter));
  }
  return spec.numerator() / perimeter;
}

}  // namespace curveflow
