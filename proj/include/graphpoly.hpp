#pragma once

#include "graphpoly/canonical.hpp"
#include "graphpoly/chromatic.hpp"
#include "graphpoly/coefficient_engine.hpp"
#include "graphpoly/connected_sets.hpp"
#include "graphpoly/corpus.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/generators.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/induced_algebra.hpp"
#include "graphpoly/interpolation.hpp"
#include "graphpoly/multivariate.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/oracles.hpp"
#include "graphpoly/polynomial.hpp"
#include "graphpoly/roots.hpp"
#include "graphpoly/spanning_trees.hpp"
#include "graphpoly/zero_certifier.hpp"
