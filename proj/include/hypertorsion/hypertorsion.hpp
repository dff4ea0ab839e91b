#pragma once

#include "boundary.hpp"
#include "bounds.hpp"
#include "exact_linalg.hpp"
#include "harness.hpp"
#include "hypertree.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "measure.hpp"
#include "random.hpp"
#include "simplicial.hpp"
