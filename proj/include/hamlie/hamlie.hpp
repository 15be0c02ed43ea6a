#pragma once

#include "hamlie/rational.hpp"
#include "hamlie/sparse_matrix.hpp"
#include "hamlie/linalg.hpp"
#include "hamlie/symplectic.hpp"
#include "hamlie/reps.hpp"
#include "hamlie/polynomial.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/submodules.hpp"
