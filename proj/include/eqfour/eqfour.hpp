// Umbrella header.
#pragma once

#include "eqfour/arith.hpp"
#include "eqfour/brute.hpp"
#include "eqfour/elliptic.hpp"
#include "eqfour/families.hpp"
#include "eqfour/meet.hpp"
#include "eqfour/model.hpp"
#include "eqfour/pipeline.hpp"
#include "eqfour/quartic.hpp"
