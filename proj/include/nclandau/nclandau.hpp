#pragma once

#include "nclandau/constants.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/special_functions.hpp"
#include "nclandau/landau.hpp"
#include "nclandau/nc_oscillator.hpp"
#include "nclandau/eigensolver.hpp"
#include "nclandau/quadrature.hpp"
#include "nclandau/verify.hpp"
#include "nclandau/field.hpp"
#include "nclandau/commands.hpp"
