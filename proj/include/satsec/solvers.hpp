#pragma once

#include "satsec/solvers/dense.hpp"
#include "satsec/solvers/maxmin_sdp.hpp"
#include "satsec/solvers/tiny_lp.hpp"
