#ifndef GHOM_GHOM_HPP
#define GHOM_GHOM_HPP

#include "diagonal.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "graded.hpp"
#include "graph.hpp"
#include "homology.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "report.hpp"
#include "smith.hpp"
#include "verdict.hpp"

#endif
