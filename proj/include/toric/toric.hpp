#pragma once

#include "binomial.hpp"
#include "constructions.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "fiber.hpp"
#include "groebner.hpp"
#include "ideal.hpp"
#include "indep.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "model.hpp"
#include "numeric.hpp"
