#pragma once

#include "curveflow/curves.hpp"
#include "curveflow/cyclic_linalg.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/harness.hpp"
#include "curveflow/io.hpp"
#include "curveflow/manifold_distance.hpp"
#include "curveflow/norms.hpp"
#include "curveflow/schemes.hpp"
#include "curveflow/vec2.hpp"
#include "curveflow/version.hpp"
