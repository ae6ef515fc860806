#ifndef SOCKP_SOCKP_HPP
#define SOCKP_SOCKP_HPP

#include "sockp/approx.hpp"
#include "sockp/core_knapsack.hpp"
#include "sockp/decimal.hpp"
#include "sockp/exact.hpp"
#include "sockp/guarantees.hpp"
#include "sockp/model.hpp"
#include "sockp/rkpm.hpp"

#endif  // SOCKP_SOCKP_HPP
