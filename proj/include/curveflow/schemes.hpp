#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "curveflow/scheme_fdm.hpp"
#include "curveflow/scheme_fem.hpp"
#include "curveflow/scheme_fem_tm.hpp"

namespace curveflow {

enum class Scheme { Fdm, Fem, FemTm };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Fdm: return "fdm";
    case Scheme::Fem: return "fem";
    case Scheme::FemTm: return "fem-tm";
  }
  return "?";
}

inline Scheme scheme_from_string(std::string_view name) {
  if (name == "fdm") return Scheme::Fdm;
  if (name == "fem") return Scheme::Fem;
  if (name == "fem-tm") return Scheme::FemTm;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

/// One backward Euler step of the selected scheme. `alpha` is read by FEM-TM only.
inline StepReport advance(Scheme scheme, const GridCurve& curve, double tau, const ForceSpec& spec,
                          double alpha = 1.0) {
  switch (scheme) {
    case Scheme::Fdm: return fdm_step(curve, tau, spec);
    case Scheme::Fem: return fem_step(curve, tau, spec);
    case Scheme::FemTm: return fem_tm_step(curve, tau, spec, TangentialParams(alpha));
  }
  throw InvalidArgument("unknown scheme");
}

/// Semi-discrete right-hand side of the selected scheme.
inline std::vector<Vec2> velocity(Scheme scheme, const GridCurve& curve, const ForceSpec& spec,
                                  double alpha = 1.0) {
  switch (scheme) {
    case Scheme::Fdm: return fdm_velocity(curve, spec);
    case Scheme::Fem: return fem_velocity(curve, spec);
    case Scheme::FemTm: return fem_tm_velocity(curve, spec, TangentialParams(alpha));
  }
  throw InvalidArgument("unknown scheme");
}

}  // namespace curveflow
