#pragma once

#include "heintze/error.hpp"
#include "heintze/rational.hpp"
#include "heintze/matrix.hpp"
#include "heintze/subspace.hpp"
#include "heintze/polynomial.hpp"
#include "heintze/algebra.hpp"
#include "heintze/spectral.hpp"
#include "heintze/invariants.hpp"
#include "heintze/bch.hpp"
#include "heintze/numerics.hpp"
#include "heintze/graph.hpp"
#include "heintze/corpus.hpp"
