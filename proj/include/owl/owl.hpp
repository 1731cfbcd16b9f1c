#pragma once

#include "owl/atoms.hpp"
#include "owl/error.hpp"
#include "owl/isotonic.hpp"
#include "owl/linear_operator.hpp"
#include "owl/norms.hpp"
#include "owl/prox.hpp"
#include "owl/root_find.hpp"
#include "owl/solvers.hpp"
#include "owl/types.hpp"
