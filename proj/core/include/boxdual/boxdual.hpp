#pragma once

#include "boxdual/dual_solver.hpp"
#include "boxdual/entropy.hpp"
#include "boxdual/error.hpp"
#include "boxdual/markov.hpp"
#include "boxdual/oracle.hpp"
#include "boxdual/problem.hpp"
#include "boxdual/problem_io.hpp"
#include "boxdual/sensitivity.hpp"
