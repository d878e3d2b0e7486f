#ifndef MVQ_MVQ_HPP
#define MVQ_MVQ_HPP

#include "mvq/asymptotics.hpp"
#include "mvq/correlators.hpp"
#include "mvq/distribution.hpp"
#include "mvq/edge_polynomial.hpp"
#include "mvq/enumeration.hpp"
#include "mvq/graph_enum.hpp"
#include "mvq/numerics.hpp"
#include "mvq/perm_stats.hpp"
#include "mvq/pi_graded.hpp"
#include "mvq/rational.hpp"
#include "mvq/stable_graph.hpp"
#include "mvq/stirling.hpp"
#include "mvq/volumes.hpp"
#include "mvq/zeta.hpp"

#endif
