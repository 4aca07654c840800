#ifndef NULLCONE_NULLCONE_HPP
#define NULLCONE_NULLCONE_HPP

#include "nullcone/rational.hpp"
#include "nullcone/linalg.hpp"
#include "nullcone/structure_tensor.hpp"
#include "nullcone/algebra.hpp"
#include "nullcone/frame.hpp"
#include "nullcone/feasibility.hpp"
#include "nullcone/killing.hpp"
#include "nullcone/classifier.hpp"
#include "nullcone/curvature.hpp"
#include "nullcone/rootsystem.hpp"
#include "nullcone/constructor.hpp"
#include "nullcone/json_io.hpp"
#include "nullcone/catalog.hpp"
#include "nullcone/tables.hpp"

#endif  // NULLCONE_NULLCONE_HPP
