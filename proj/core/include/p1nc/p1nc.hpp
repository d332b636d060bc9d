#pragma once

#include "p1nc/common.hpp"
#include "p1nc/convergence.hpp"
#include "p1nc/divfree.hpp"
#include "p1nc/manufactured.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"
#include "p1nc/oracle.hpp"
#include "p1nc/pressure.hpp"
#include "p1nc/quadrature.hpp"
#include "p1nc/solver.hpp"
#include "p1nc/sparse_matrix.hpp"
