#pragma once

#include "bench.hpp"
#include "bounds.hpp"
#include "coloring.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "refine.hpp"
#include "solver.hpp"
#include "tree.hpp"
