#pragma once

#include "arithstat/bfile.hpp"
#include "arithstat/dependence.hpp"
#include "arithstat/deviation.hpp"
#include "arithstat/ergodic.hpp"
#include "arithstat/error.hpp"
#include "arithstat/function_kind.hpp"
#include "arithstat/limit_dist.hpp"
#include "arithstat/prob_space.hpp"
#include "arithstat/rng.hpp"
#include "arithstat/sieve.hpp"
#include "arithstat/summation.hpp"
