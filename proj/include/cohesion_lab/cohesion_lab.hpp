#ifndef COHESION_LAB_COHESION_LAB_HPP
#define COHESION_LAB_COHESION_LAB_HPP

#include "bigint.hpp"
#include "cohesion.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "reduction.hpp"
#include "serialize.hpp"
#include "solvers.hpp"
#include "triangles.hpp"
#include "verify.hpp"

#endif // COHESION_LAB_COHESION_LAB_HPP
