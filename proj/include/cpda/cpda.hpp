#pragma once

#include "cpda/errors.hpp"
#include "cpda/modmath.hpp"
#include "cpda/rational.hpp"
#include "cpda/params.hpp"
#include "cpda/placement.hpp"
#include "cpda/pda.hpp"
#include "cpda/constructions.hpp"
#include "cpda/bounds.hpp"
#include "cpda/oracle.hpp"
#include "cpda/simulator.hpp"
#include "cpda/baselines.hpp"
