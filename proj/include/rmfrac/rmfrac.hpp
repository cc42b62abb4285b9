#pragma once

#include "rmfrac/closed_form.hpp"
#include "rmfrac/commands.hpp"
#include "rmfrac/errors.hpp"
#include "rmfrac/figures.hpp"
#include "rmfrac/format.hpp"
#include "rmfrac/frac_series.hpp"
#include "rmfrac/hpm_solver.hpp"
#include "rmfrac/model.hpp"
#include "rmfrac/numeric_oracle.hpp"
#include "rmfrac/rl_quadrature.hpp"
#include "rmfrac/run_spec.hpp"
#include "rmfrac/special_functions.hpp"
#include "rmfrac/validation.hpp"
